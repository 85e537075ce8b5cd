#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lattika/elemset.hpp"
#include "lattika/error.hpp"

namespace lattika {

/// Input representation: labelled elements plus the cover pairs (lower, upper).
struct Poset {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
};

/// A finite bounded lattice with fully tabulated order, meet and join.
///
/// A Lattice that exists satisfies every lattice axiom: construction goes
/// through from_order(), which rejects anything else. Elements are identified
/// by position; iteration is always in ascending index order.
class Lattice {
 public:
  /// Builds a lattice from its order relation. `up[i]` is the set of all j
  /// with i <= j. Throws NotALattice, Unbounded or TooLarge.
  static Lattice from_order(std::vector<std::string> names, std::vector<ElemSet> up) {
    const std::size_t n = names.size();
    if (n == 0) throw Error(ErrorKind::Unbounded, "lattice has no elements");
    if (n > kMaxElements) throw Error(ErrorKind::TooLarge, std::to_string(n) + " elements (max 64)");
    if (up.size() != n) throw Error(ErrorKind::BadInput, "order relation size mismatch");

    Lattice L;
    L.names_ = std::move(names);
    L.up_ = std::move(up);
    L.down_.assign(n, ElemSet{});
    for (Elem i = 0; i < n; ++i) {
      if (!L.up_[i].contains(i)) throw Error(ErrorKind::NotALattice, "order is not reflexive at " + L.names_[i]);
      if (!L.up_[i].subset_of(ElemSet::full(n))) throw Error(ErrorKind::BadInput, "order relation out of range");
      for (Elem j : L.up_[i]) L.down_[j].insert(i);
    }
    for (Elem i = 0; i < n; ++i) {
      for (Elem j : L.up_[i]) {
        if (j != i && L.up_[j].contains(i))
          throw Error(ErrorKind::NotALattice, "order is not antisymmetric: " + L.names_[i] + ", " + L.names_[j]);
        if (!L.up_[j].subset_of(L.up_[i]))
          throw Error(ErrorKind::NotALattice, "order is not transitive through " + L.names_[j]);
      }
    }

    const ElemSet all = ElemSet::full(n);
    std::optional<Elem> bottom, top;
    for (Elem i = 0; i < n; ++i) {
      if (L.up_[i] == all) bottom = i;
      if (L.down_[i] == all) top = i;
    }
    if (!bottom || !top) throw Error(ErrorKind::Unbounded, "missing bottom or top");

    L.meet_.assign(n * n, 0);
    L.join_.assign(n * n, 0);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a; b < n; ++b) {
        const auto glb = greatest_in(L.down_[a] & L.down_[b], L.down_);
        if (!glb) throw Error(ErrorKind::NotALattice, "no greatest lower bound for (" + L.names_[a] + ", " + L.names_[b] + ")");
        const auto lub = greatest_in(L.up_[a] & L.up_[b], L.up_);
        if (!lub) throw Error(ErrorKind::NotALattice, "no least upper bound for (" + L.names_[a] + ", " + L.names_[b] + ")");
        L.meet_[a * n + b] = L.meet_[b * n + a] = static_cast<std::uint8_t>(*glb);
        L.join_[a * n + b] = L.join_[b * n + a] = static_cast<std::uint8_t>(*lub);
      }
    }

    L.bottom_ = *bottom;
    L.top_ = *top;

    L.reach_.assign(n * n, ElemSet{});
    for (Elem u = 0; u < n; ++u)
      for (Elem v = 0; v < n; ++v)
        for (Elem m : L.down_[L.join(u, v)]) L.reach_[u * n + m].insert(v);

    L.distributive_ = L.check_distributive();
    L.modular_ = L.check_modular();
    L.complemented_ = L.check_complemented();
    L.fingerprint_ = L.compute_fingerprint();
    return L;
  }

  std::size_t size() const { return names_.size(); }
  ElemSet all() const { return ElemSet::full(size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Elem e) const { return names_[e]; }

  std::optional<Elem> index_of(std::string_view label) const {
    for (Elem i = 0; i < size(); ++i)
      if (names_[i] == label) return i;
    return std::nullopt;
  }

  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }

  bool leq(Elem a, Elem b) const { return up_[a].contains(b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }

  /// Principal up-set and down-set of an element.
  ElemSet up(Elem a) const { return up_[a]; }
  ElemSet down(Elem a) const { return down_[a]; }

  /// { v | u v v >= m }. Precomputed; the S-filter and residual checks run on it.
  ElemSet join_reaches(Elem u, Elem m) const { return reach_[u * size() + m]; }

  /// Meet of a nonempty set; the top for the empty set.
  Elem meet_of(ElemSet xs) const {
    Elem acc = top_;
    for (Elem x : xs) acc = meet(acc, x);
    return acc;
  }
  Elem join_of(ElemSet xs) const {
    Elem acc = bottom_;
    for (Elem x : xs) acc = join(acc, x);
    return acc;
  }

  /// Hasse diagram edges (lower, upper), ascending.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem a = 0; a < size(); ++a) {
      ElemSet strictly_above = up_[a];
      strictly_above.erase(a);
      for (Elem b : strictly_above) {
        ElemSet between = strictly_above & down_[b];
        between.erase(b);
        if (between.empty()) out.emplace_back(a, b);
      }
    }
    return out;
  }

  bool is_distributive() const { return distributive_; }
  bool is_modular() const { return modular_; }
  bool is_complemented() const { return complemented_; }

  /// Structural fingerprint: equal for element-wise identical lattices.
  std::uint64_t id() const { return fingerprint_; }

  bool operator==(const Lattice& o) const {
    return names_ == o.names_ && up_ == o.up_;
  }

  /// Parses comma-separated labels, e.g. "w,1" or "{w,1}". Commas nested in
  /// brackets stay inside a label, so product labels like "(0,1)" work.
  /// Throws BadInput on unknown labels.
  ElemSet parse_labels(std::string_view text) const {
    text = trim(text);
    if (text.size() >= 2 && text.front() == '{' && text.back() == '}' && !index_of(text))
      text = text.substr(1, text.size() - 2);
    ElemSet out;
    auto take = [&](std::string_view tok) {
      tok = trim(tok);
      if (tok.empty()) return;
      auto idx = index_of(tok);
      if (!idx) throw Error(ErrorKind::BadInput, "unknown element label '" + std::string(tok) + "'");
      out.insert(*idx);
    };
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '(' || c == '{' || c == '[') ++depth;
      else if (c == ')' || c == '}' || c == ']') --depth;
      else if (c == ',' && depth == 0) {
        take(text.substr(start, i - start));
        start = i + 1;
      }
    }
    take(text.substr(start));
    return out;
  }

  /// Labels of a set, in ascending element order.
  std::vector<std::string> labels(ElemSet xs) const {
    std::vector<std::string> out;
    for (Elem x : xs) out.push_back(names_[x]);
    return out;
  }

  std::string format(ElemSet xs) const {
    std::string out = "{";
    bool first = true;
    for (Elem x : xs) {
      if (!first) out += ',';
      out += names_[x];
      first = false;
    }
    return out + "}";
  }

 private:
  Lattice() = default;

  static std::optional<Elem> greatest_in(ElemSet candidates, const std::vector<ElemSet>& below) {
    for (Elem g : candidates)
      if (candidates.subset_of(below[g])) return g;
    return std::nullopt;
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  }

  bool check_distributive() const {
    const std::size_t n = size();
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c))) return false;
    return true;
  }

  bool check_modular() const {
    const std::size_t n = size();
    for (Elem a = 0; a < n; ++a)
      for (Elem c : up_[a])
        for (Elem b = 0; b < n; ++b)
          if (join(a, meet(b, c)) != meet(join(a, b), c)) return false;
    return true;
  }

  bool check_complemented() const {
    for (Elem a = 0; a < size(); ++a) {
      bool found = false;
      for (Elem v = 0; v < size() && !found; ++v) found = join(a, v) == top_ && meet(a, v) == bottom_;
      if (!found) return false;
    }
    return true;
  }

  std::uint64_t compute_fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 1099511628211ull;
      }
    };
    mix(size());
    for (ElemSet s : up_) mix(s.bits());
    for (const auto& nm : names_)
      for (char c : nm) mix(static_cast<unsigned char>(c));
    return h;
  }

  std::vector<std::string> names_;
  std::vector<ElemSet> up_;
  std::vector<ElemSet> down_;
  std::vector<std::uint8_t> meet_;
  std::vector<std::uint8_t> join_;
  std::vector<ElemSet> reach_;
  Elem bottom_ = 0;
  Elem top_ = 0;
  bool distributive_ = false;
  bool modular_ = false;
  bool complemented_ = false;
  std::uint64_t fingerprint_ = 0;
};

/// Validates labels and covers, closes the cover relation reflexively and
/// transitively, and builds the lattice.
inline Lattice lattice_from_covers(const Poset& poset) {
  const std::size_t n = poset.names.size();
  if (n > kMaxElements) throw Error(ErrorKind::TooLarge, std::to_string(n) + " elements (max 64)");
  std::unordered_map<std::string, Elem> index;
  for (Elem i = 0; i < n; ++i)
    if (!index.emplace(poset.names[i], i).second)
      throw Error(ErrorKind::BadInput, "duplicate label '" + poset.names[i] + "'");

  std::vector<ElemSet> up(n);
  for (Elem i = 0; i < n; ++i) up[i].insert(i);
  for (const auto& [lo, hi] : poset.covers) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end() || b == index.end())
      throw Error(ErrorKind::BadInput, "cover (" + lo + ", " + hi + ") references an unknown label");
    if (a->second == b->second) throw Error(ErrorKind::CyclicCovers, "self cover on " + lo);
    up[a->second].insert(b->second);
  }
  // Warshall closure on bit rows.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i].contains(k)) up[i] |= up[k];
  for (Elem i = 0; i < n; ++i)
    for (Elem j : up[i])
      if (j != i && up[j].contains(i))
        throw Error(ErrorKind::CyclicCovers, "cycle through " + poset.names[i] + " and " + poset.names[j]);

  return Lattice::from_order(poset.names, std::move(up));
}

inline bool leq(const Lattice& L, Elem a, Elem b) { return L.leq(a, b); }
inline Elem meet(const Lattice& L, Elem a, Elem b) { return L.meet(a, b); }
inline Elem join(const Lattice& L, Elem a, Elem b) { return L.join(a, b); }
inline bool is_distributive(const Lattice& L) { return L.is_distributive(); }
inline bool is_modular(const Lattice& L) { return L.is_modular(); }

/// All v with a v v = 1 and a ^ v = 0.
inline ElemSet complements(const Lattice& L, Elem a) {
  ElemSet out;
  for (Elem v = 0; v < L.size(); ++v)
    if (L.join(a, v) == L.top() && L.meet(a, v) == L.bottom()) out.insert(v);
  return out;
}

inline bool is_complemented(const Lattice& L) { return L.is_complemented(); }

/// No two elements below the top join to the top.
inline bool is_l_domain(const Lattice& L) {
  for (Elem u = 0; u < L.size(); ++u)
    for (Elem v = u; v < L.size(); ++v)
      if (u != L.top() && v != L.top() && L.join(u, v) == L.top()) return false;
  return true;
}

}  // namespace lattika
