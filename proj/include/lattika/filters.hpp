#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "lattika/elemset.hpp"
#include "lattika/error.hpp"
#include "lattika/lattice.hpp"

namespace lattika {

/// Nonempty, meet-closed, upward-closed subset: nonempty, contains every
/// element above a member, and contains the meet of all its members (a finite
/// lattice's filter is closed under finite meets exactly when that one meet
/// is inside).
inline bool is_filter(const Lattice& L, ElemSet xs) {
  if (xs.empty() || !xs.subset_of(L.all())) return false;
  for (Elem x : xs)
    if (!L.up(x).subset_of(xs)) return false;
  return xs.contains(L.meet_of(xs));
}

/// A validated filter of one particular lattice. The improper filter (every
/// element) is representable; properness is a predicate, not an invariant.
class FilterSet {
 public:
  static FilterSet make(const Lattice& L, ElemSet xs) {
    if (!is_filter(L, xs)) throw Error(ErrorKind::NotAFilter, L.format(xs) + " is not a filter");
    return FilterSet(L.id(), xs);
  }

  ElemSet members() const { return members_; }
  std::uint64_t lattice_id() const { return lattice_id_; }
  bool contains(Elem e) const { return members_.contains(e); }
  std::size_t size() const { return members_.size(); }

  bool operator==(const FilterSet&) const = default;

 private:
  FilterSet(std::uint64_t id, ElemSet xs) : lattice_id_(id), members_(xs) {}
  friend FilterSet principal_filter(const Lattice&, Elem);

  std::uint64_t lattice_id_ = 0;
  ElemSet members_;
};

inline bool filter_less(const FilterSet& a, const FilterSet& b) {
  return canonical_less(a.members(), b.members());
}

namespace detail {
inline void require_same(const Lattice& L, const FilterSet& F) {
  if (F.lattice_id() != L.id()) throw Error(ErrorKind::MixedLattices, "filter belongs to a different lattice");
}
}  // namespace detail

/// T({a}): the up-set of a.
inline FilterSet principal_filter(const Lattice& L, Elem a) { return FilterSet(L.id(), L.up(a)); }

inline bool is_proper(const Lattice& L, const FilterSet& F) { return !F.contains(L.bottom()); }

/// Least filter containing xs: the up-set of the meet of all generators.
inline FilterSet generate_filter(const Lattice& L, ElemSet xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyGeneratorSet, "cannot generate a filter from the empty set");
  return principal_filter(L, L.meet_of(xs));
}

/// Every filter, canonical order. In a finite lattice these are the n
/// principal filters.
inline std::vector<FilterSet> all_filters(const Lattice& L) {
  std::vector<FilterSet> out;
  out.reserve(L.size());
  for (Elem a = 0; a < L.size(); ++a) out.push_back(principal_filter(L, a));
  std::sort(out.begin(), out.end(), filter_less);
  return out;
}

inline bool is_prime_filter(const Lattice& L, ElemSet xs) {
  if (!is_filter(L, xs) || xs.contains(L.bottom())) return false;
  for (Elem u = 0; u < L.size(); ++u) {
    if (xs.contains(u)) continue;
    for (Elem v = u; v < L.size(); ++v)
      if (!xs.contains(v) && xs.contains(L.join(u, v))) return false;
  }
  return true;
}

inline bool is_prime_filter(const Lattice& L, const FilterSet& F) {
  detail::require_same(L, F);
  return is_prime_filter(L, F.members());
}

/// Proper, and the only strictly larger filter is the whole lattice.
inline bool is_maximal_filter(const Lattice& L, const FilterSet& F) {
  detail::require_same(L, F);
  if (!is_proper(L, F)) return false;
  for (const auto& H : all_filters(L))
    if (H.members() != F.members() && F.members().subset_of(H.members()) && H.members() != L.all()) return false;
  return true;
}

/// { a v b | a in F, b in G }, unvalidated.
inline ElemSet raw_filter_join(const Lattice& L, ElemSet F, ElemSet G) {
  ElemSet out;
  for (Elem a : F)
    for (Elem b : G) out.insert(L.join(a, b));
  return out;
}

/// Elementwise join of two filters. Always a filter on distributive lattices;
/// elsewhere a non-filter result is reported rather than repaired.
inline FilterSet filter_join(const Lattice& L, const FilterSet& F, const FilterSet& G) {
  detail::require_same(L, F);
  detail::require_same(L, G);
  const ElemSet raw = raw_filter_join(L, F.members(), G.members());
  if (!is_filter(L, raw)) throw Error(ErrorKind::NotAFilterResult, "join " + L.format(raw) + " is not a filter");
  return FilterSet::make(L, raw);
}

/// { x | x v w in q for every w in p }, unvalidated.
inline ElemSet raw_residual(const Lattice& L, ElemSet q, ElemSet p) {
  ElemSet out;
  for (Elem x = 0; x < L.size(); ++x) {
    bool ok = true;
    for (Elem w : p) {
      if (!q.contains(L.join(x, w))) {
        ok = false;
        break;
      }
    }
    if (ok) out.insert(x);
  }
  return out;
}

inline FilterSet residual_filter(const Lattice& L, const FilterSet& q, const FilterSet& p) {
  detail::require_same(L, q);
  detail::require_same(L, p);
  const ElemSet raw = raw_residual(L, q.members(), p.members());
  if (!is_filter(L, raw)) throw Error(ErrorKind::NotAFilterResult, "residual " + L.format(raw) + " is not a filter");
  return FilterSet::make(L, raw);
}

/// (q : p) for an arbitrary subset p, as the residual is used against sets
/// disjoint from q. An empty p gives the whole lattice.
inline FilterSet residual_filter(const Lattice& L, const FilterSet& q, ElemSet p) {
  detail::require_same(L, q);
  const ElemSet raw = raw_residual(L, q.members(), p);
  if (!is_filter(L, raw)) throw Error(ErrorKind::NotAFilterResult, "residual " + L.format(raw) + " is not a filter");
  return FilterSet::make(L, raw);
}

/// { x | x v t in q }, unvalidated.
inline ElemSet raw_residual_elem(const Lattice& L, ElemSet q, Elem t) {
  ElemSet out;
  for (Elem x = 0; x < L.size(); ++x)
    if (q.contains(L.join(x, t))) out.insert(x);
  return out;
}

inline FilterSet residual_elem(const Lattice& L, const FilterSet& q, Elem t) {
  detail::require_same(L, q);
  const ElemSet raw = raw_residual_elem(L, q.members(), t);
  if (!is_filter(L, raw)) throw Error(ErrorKind::NotAFilterResult, "residual " + L.format(raw) + " is not a filter");
  return FilterSet::make(L, raw);
}

inline std::vector<FilterSet> prime_filters(const Lattice& L) {
  std::vector<FilterSet> out;
  for (const auto& F : all_filters(L))
    if (is_prime_filter(L, F.members())) out.push_back(F);
  return out;
}

inline std::vector<FilterSet> maximal_filters(const Lattice& L) {
  std::vector<FilterSet> out;
  for (const auto& F : all_filters(L))
    if (is_maximal_filter(L, F)) out.push_back(F);
  return out;
}

/// Prime filters containing F that are inclusion-minimal among such primes.
inline std::vector<FilterSet> min_primes_over(const Lattice& L, const FilterSet& F) {
  detail::require_same(L, F);
  if (!is_proper(L, F)) throw Error(ErrorKind::ImproperFilter, L.format(F.members()) + " is improper");
  std::vector<FilterSet> above;
  for (const auto& P : prime_filters(L))
    if (F.members().subset_of(P.members())) above.push_back(P);
  std::vector<FilterSet> out;
  for (const auto& P : above) {
    bool minimal = true;
    for (const auto& R : above)
      if (R.members() != P.members() && R.members().subset_of(P.members())) minimal = false;
    if (minimal) out.push_back(P);
  }
  return out;
}

}  // namespace lattika
