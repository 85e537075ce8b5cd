#pragma once
// Brute-force references for the tests. Everything here follows the textbook
// definition over explicit subsets and only uses the lattice's order, meet and
// join tables, never the library's derived predicates.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "lattika/lattice.hpp"

namespace oracle {

using lattika::Elem;
using lattika::ElemSet;
using lattika::Lattice;

inline std::vector<ElemSet> all_subsets(const Lattice& L) {
  std::vector<ElemSet> out;
  const std::uint64_t limit = std::uint64_t{1} << L.size();
  for (std::uint64_t m = 0; m < limit; ++m) out.emplace_back(m);
  return out;
}

inline bool is_filter(const Lattice& L, ElemSet X) {
  if (X.empty()) return false;
  for (Elem u : X) {
    for (Elem v : X)
      if (!X.contains(L.meet(u, v))) return false;
    for (Elem w = 0; w < L.size(); ++w)
      if (L.leq(u, w) && !X.contains(w)) return false;
  }
  return true;
}

inline std::vector<ElemSet> filters(const Lattice& L) {
  std::vector<ElemSet> out;
  for (ElemSet X : oracle::all_subsets(L))
    if (oracle::is_filter(L, X)) out.push_back(X);
  return out;
}

inline bool is_vee_closed(const Lattice& L, ElemSet X) {
  if (!X.contains(L.bottom())) return false;
  for (Elem s : X)
    for (Elem t : X)
      if (!X.contains(L.join(s, t))) return false;
  return true;
}

inline std::vector<ElemSet> vee_closed_sets(const Lattice& L) {
  std::vector<ElemSet> out;
  for (ElemSet X : oracle::all_subsets(L))
    if (oracle::is_vee_closed(L, X)) out.push_back(X);
  return out;
}

inline bool is_proper(const Lattice& L, ElemSet q) { return !q.contains(L.bottom()); }

inline bool is_s_filter(const Lattice& L, ElemSet S, ElemSet q) {
  if (!oracle::is_filter(L, q) || !oracle::is_proper(L, q)) return false;
  for (Elem u : S)
    for (Elem v = 0; v < L.size(); ++v)
      if (q.contains(L.join(u, v)) && !q.contains(v)) return false;
  return true;
}

inline bool is_prime(const Lattice& L, ElemSet q) {
  if (!oracle::is_filter(L, q) || !oracle::is_proper(L, q)) return false;
  for (Elem u = 0; u < L.size(); ++u)
    for (Elem v = 0; v < L.size(); ++v)
      if (q.contains(L.join(u, v)) && !q.contains(u) && !q.contains(v)) return false;
  return true;
}

inline bool is_maximal(const Lattice& L, ElemSet q) {
  if (!oracle::is_filter(L, q) || !oracle::is_proper(L, q)) return false;
  for (ElemSet h : oracle::filters(L))
    if (h != q && q.subset_of(h) && h != L.all()) return false;
  return true;
}

inline ElemSet saturate(const Lattice& L, ElemSet S, ElemSet p) {
  ElemSet out;
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem t : S)
      if (p.contains(L.join(a, t))) out.insert(a);
  return out;
}

inline ElemSet elementwise_join(const Lattice& L, ElemSet F, ElemSet G) {
  ElemSet out;
  for (Elem a : F)
    for (Elem b : G) out.insert(L.join(a, b));
  return out;
}

inline ElemSet residual(const Lattice& L, ElemSet q, ElemSet p) {
  ElemSet out;
  for (Elem x = 0; x < L.size(); ++x) {
    bool all = true;
    for (Elem w : p) all = all && q.contains(L.join(x, w));
    if (all) out.insert(x);
  }
  return out;
}

/// For all filter pairs (r, p): r v p inside q and r meeting S force p inside q.
inline bool pair_condition(const Lattice& L, ElemSet S, ElemSet q) {
  const auto fs = oracle::filters(L);
  for (ElemSet r : fs)
    for (ElemSet p : fs)
      if (oracle::elementwise_join(L, r, p).subset_of(q) && r.intersects(S) && !p.subset_of(q)) return false;
  return true;
}

inline bool is_complemented(const Lattice& L) {
  for (Elem a = 0; a < L.size(); ++a) {
    bool found = false;
    for (Elem b = 0; b < L.size(); ++b)
      found = found || (L.join(a, b) == L.top() && L.meet(a, b) == L.bottom());
    if (!found) return false;
  }
  return true;
}

inline bool is_distributive(const Lattice& L) {
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem b = 0; b < L.size(); ++b)
      for (Elem c = 0; c < L.size(); ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) return false;
  return true;
}

/// Order isomorphism by permutation search; fine up to about 9 elements.
inline bool isomorphic(const Lattice& A, const Lattice& B) {
  if (A.size() != B.size()) return false;
  std::vector<Elem> perm(A.size());
  std::iota(perm.begin(), perm.end(), Elem{0});
  do {
    bool ok = true;
    for (Elem i = 0; ok && i < A.size(); ++i)
      for (Elem j = 0; ok && j < A.size(); ++j) ok = A.leq(i, j) == B.leq(perm[i], perm[j]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Every map A -> B preserving meet and join.
inline std::vector<std::vector<Elem>> homs(const Lattice& A, const Lattice& B) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> m(A.size(), 0);
  while (true) {
    bool ok = true;
    for (Elem i = 0; ok && i < A.size(); ++i)
      for (Elem j = 0; ok && j < A.size(); ++j)
        ok = m[A.join(i, j)] == B.join(m[i], m[j]) && m[A.meet(i, j)] == B.meet(m[i], m[j]);
    if (ok) out.push_back(m);
    std::size_t k = 0;
    while (k < A.size() && ++m[k] == B.size()) m[k++] = 0;
    if (k == A.size()) break;
  }
  return out;
}

}  // namespace oracle
