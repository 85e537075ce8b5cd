#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lattika/elemset.hpp"
#include "lattika/error.hpp"
#include "lattika/filters.hpp"
#include "lattika/lattice.hpp"

namespace lattika {

/// Contains the bottom and is closed under join.
inline bool is_vee_closed(const Lattice& L, ElemSet xs) {
  if (!xs.contains(L.bottom()) || !xs.subset_of(L.all())) return false;
  for (Elem s : xs)
    for (Elem t : xs)
      if (!xs.contains(L.join(s, t))) return false;
  return true;
}

/// The denominator set S of every S-notion.
class VeeClosedSet {
 public:
  static VeeClosedSet make(const Lattice& L, ElemSet xs) {
    if (!is_vee_closed(L, xs)) throw Error(ErrorKind::NotVeeClosed, L.format(xs) + " is not join-closed with bottom");
    return VeeClosedSet(L.id(), xs);
  }

  ElemSet members() const { return members_; }
  std::uint64_t lattice_id() const { return lattice_id_; }
  bool contains(Elem e) const { return members_.contains(e); }

  bool operator==(const VeeClosedSet&) const = default;

 private:
  VeeClosedSet(std::uint64_t id, ElemSet xs) : lattice_id_(id), members_(xs) {}
  template <class Fn>
  friend void for_each_vee_closed(const Lattice& L, Fn&& fn);

  std::uint64_t lattice_id_ = 0;
  ElemSet members_;
};

namespace detail {
inline void require_same(const Lattice& L, const VeeClosedSet& S) {
  if (S.lattice_id() != L.id()) throw Error(ErrorKind::MixedLattices, "set belongs to a different lattice");
}

template <class Fn>
void close_by_one(const Lattice& L, ElemSet closed, Elem from, Fn& fn) {
  fn(closed);
  for (Elem i = from; i < L.size(); ++i) {
    if (closed.contains(i)) continue;
    ElemSet next = closed;
    for (Elem x : closed) next.insert(L.join(i, x));
    const ElemSet below_i = ElemSet::full(i);
    if (!(next.minus(closed) & below_i).empty()) continue;
    close_by_one(L, next, i + 1, fn);
  }
}
}  // namespace detail

/// Visits every join-closed set containing the bottom exactly once
/// (close-by-one order, not canonical).
template <class Fn>
void for_each_vee_closed(const Lattice& L, Fn&& fn) {
  auto wrap = [&](ElemSet xs) { fn(VeeClosedSet(L.id(), xs)); };
  detail::close_by_one(L, ElemSet::singleton(L.bottom()), 0, wrap);
}

inline std::vector<VeeClosedSet> all_vee_closed_sets(const Lattice& L) {
  std::vector<VeeClosedSet> out;
  for_each_vee_closed(L, [&](const VeeClosedSet& S) { out.push_back(S); });
  std::sort(out.begin(), out.end(),
            [](const VeeClosedSet& a, const VeeClosedSet& b) { return canonical_less(a.members(), b.members()); });
  return out;
}

/// For all u in s and every v: u v v in q implies v in q. No filter check.
inline bool satisfies_s_condition(const Lattice& L, ElemSet s, ElemSet q) {
  for (Elem u : s)
    for (Elem v = 0; v < L.size(); ++v)
      if (!q.contains(v) && q.contains(L.join(u, v))) return false;
  return true;
}

/// S-filter test on raw sets: q a proper filter and the S-condition holds.
/// Used where S is an image set that may not be join-closed with bottom.
inline bool is_s_filter_raw(const Lattice& L, ElemSet s, ElemSet q) {
  return is_filter(L, q) && !q.contains(L.bottom()) && satisfies_s_condition(L, s, q);
}

inline bool is_s_filter(const Lattice& L, const VeeClosedSet& S, const FilterSet& q) {
  detail::require_same(L, S);
  detail::require_same(L, q);
  if (!is_proper(L, q)) return false;
  const Elem m = L.meet_of(q.members());
  for (Elem u : S.members())
    if (!L.join_reaches(u, m).subset_of(q.members())) return false;
  return true;
}

inline std::vector<FilterSet> all_s_filters(const Lattice& L, const VeeClosedSet& S) {
  std::vector<FilterSet> out;
  for (const auto& q : all_filters(L))
    if (is_s_filter(L, S, q)) out.push_back(q);
  return out;
}

/// { a | a v t in p for some t in s }, on raw sets.
inline ElemSet raw_saturate(const Lattice& L, ElemSet s, ElemSet p) {
  ElemSet out;
  for (Elem a = 0; a < L.size(); ++a)
    for (Elem t : s)
      if (p.contains(L.join(a, t))) {
        out.insert(a);
        break;
      }
  return out;
}

/// The saturation p_S as a raw subset. Not necessarily a filter off
/// distributive lattices; smallest_s_filter() is the checked form.
inline ElemSet saturate(const Lattice& L, const VeeClosedSet& S, const FilterSet& p) {
  detail::require_same(L, S);
  detail::require_same(L, p);
  const Elem m = L.meet_of(p.members());
  ElemSet out;
  for (Elem t : S.members()) out |= L.join_reaches(t, m);
  return out;
}

inline FilterSet smallest_s_filter(const Lattice& L, const VeeClosedSet& S, const FilterSet& p) {
  if (!is_proper(L, p)) throw Error(ErrorKind::ImproperFilter, L.format(p.members()) + " is improper");
  if (p.members().intersects(S.members()))
    throw Error(ErrorKind::DisjointnessViolated, L.format(p.members()) + " meets " + L.format(S.members()));
  if (!L.is_distributive()) throw Error(ErrorKind::NonDistributive, "saturation needs a distributive lattice");
  const ElemSet sat = saturate(L, S, p);
  if (!is_filter(L, sat)) throw Error(ErrorKind::SaturationNotFilter, L.format(sat));
  return FilterSet::make(L, sat);
}

struct PairWitness {
  FilterSet r;
  FilterSet p;
};

struct PairCharacterization {
  bool holds = true;
  std::optional<PairWitness> witness;
};

/// Quantifies over all filter pairs (r, p): r v p inside q and r meeting S
/// must force p inside q. The first failing pair in canonical order is the
/// witness.
///
/// Filters are principal, and the elementwise join of up(a) and up(b) is
/// up(a v b); so for r = up(a) the offending p = up(b) are exactly the b
/// outside q with a v b in q.
inline PairCharacterization check_pair_characterization(const Lattice& L, const VeeClosedSet& S, const FilterSet& q) {
  detail::require_same(L, S);
  detail::require_same(L, q);
  const Elem m = L.meet_of(q.members());
  PairCharacterization out;
  for (const auto& r : all_filters(L)) {
    if (!r.members().intersects(S.members())) continue;
    const Elem a = L.meet_of(r.members());
    const ElemSet bad = L.join_reaches(a, m).minus(q.members());
    if (bad.empty()) continue;
    std::optional<FilterSet> best;
    for (Elem b : bad) {
      FilterSet p = principal_filter(L, b);
      if (!best || filter_less(p, *best)) best = p;
    }
    out.holds = false;
    out.witness = PairWitness{r, *best};
    return out;
  }
  return out;
}

struct GhasemTriple {
  bool s_filter = false;
  bool residuals_fixed = false;
  bool saturation_fixed = false;

  bool agree() const { return s_filter == residuals_fixed && residuals_fixed == saturation_fixed; }
};

inline GhasemTriple check_ghasem_equivalences(const Lattice& L, const VeeClosedSet& S, const FilterSet& q) {
  GhasemTriple out;
  out.s_filter = is_s_filter(L, S, q);
  const Elem m = L.meet_of(q.members());
  out.residuals_fixed = true;
  for (Elem t : S.members())
    if (L.join_reaches(t, m) != q.members()) {
      out.residuals_fixed = false;
      break;
    }
  out.saturation_fixed = saturate(L, S, q) == q.members();
  return out;
}

struct AvoidanceVerdict {
  bool covered = false;            // p inside the union of the family
  bool irredundant = false;        // no member can be dropped from the cover
  bool first_is_s_filter = false;
  bool others_meet_s = false;
  bool conclusion = false;         // p inside the first member

  bool hypotheses_hold() const { return covered && irredundant && first_is_s_filter && others_meet_s; }
  bool violated() const { return hypotheses_hold() && !conclusion; }
};

/// The family is ordered; qs[0] plays the distinguished role.
inline AvoidanceVerdict prime_avoidance_check(const Lattice& L, const VeeClosedSet& S, const FilterSet& p,
                                              std::span<const FilterSet> qs) {
  if (qs.empty()) throw Error(ErrorKind::EmptyFamily, "avoidance check needs at least one filter");
  AvoidanceVerdict v;
  ElemSet cover;
  for (const auto& q : qs) cover |= q.members();
  v.covered = p.members().subset_of(cover);
  v.irredundant = true;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    ElemSet rest;
    for (std::size_t j = 0; j < qs.size(); ++j)
      if (j != i) rest |= qs[j].members();
    if (p.members().subset_of(rest)) v.irredundant = false;
  }
  v.first_is_s_filter = is_s_filter(L, S, qs[0]);
  v.others_meet_s = true;
  for (std::size_t i = 1; i < qs.size(); ++i)
    if (!qs[i].members().intersects(S.members())) v.others_meet_s = false;
  v.conclusion = p.members().subset_of(qs[0].members());
  return v;
}

inline FilterSet intersect_s_filters(const Lattice& L, const VeeClosedSet& S, std::span<const FilterSet> qs) {
  if (qs.empty()) throw Error(ErrorKind::EmptyFamily, "intersection of an empty family");
  ElemSet acc = L.all();
  for (const auto& q : qs) {
    if (!is_s_filter(L, S, q)) throw Error(ErrorKind::NotAllSFilters, L.format(q.members()) + " is not an S-filter");
    acc &= q.members();
  }
  return FilterSet::make(L, acc);
}

/// A filter above F, disjoint from S, maximal among such, and prime. Among
/// the maxima the first prime one in canonical order is returned.
inline FilterSet find_prime_s_filter_containing(const Lattice& L, const VeeClosedSet& S, const FilterSet& F) {
  detail::require_same(L, S);
  detail::require_same(L, F);
  if (F.members().intersects(S.members()))
    throw Error(ErrorKind::DisjointnessViolated, L.format(F.members()) + " meets " + L.format(S.members()));
  std::vector<FilterSet> candidates;
  for (const auto& G : all_filters(L))
    if (F.members().subset_of(G.members()) && !G.members().intersects(S.members())) candidates.push_back(G);
  for (const auto& G : candidates) {
    bool maximal = true;
    for (const auto& H : candidates)
      if (H.members() != G.members() && G.members().subset_of(H.members())) maximal = false;
    if (maximal && is_prime_filter(L, G.members())) return G;
  }
  throw Error(ErrorKind::NoPrimeMaximum,
              "no maximal S-disjoint filter above " + L.format(F.members()) + " is prime");
}

inline std::vector<FilterSet> maximal_s_filters(const Lattice& L, const VeeClosedSet& S) {
  const auto sf = all_s_filters(L, S);
  std::vector<FilterSet> out;
  for (const auto& q : sf) {
    bool maximal = true;
    for (const auto& r : sf)
      if (r.members() != q.members() && q.members().subset_of(r.members())) maximal = false;
    if (maximal) out.push_back(q);
  }
  return out;
}

inline bool check_min_primes_s(const Lattice& L, const VeeClosedSet& S, const FilterSet& q) {
  if (!is_s_filter(L, S, q)) throw Error(ErrorKind::NotAnSFilter, L.format(q.members()) + " is not an S-filter");
  for (const auto& p : min_primes_over(L, q))
    if (!is_s_filter(L, S, p)) return false;
  return true;
}

/// Contains a nonzero element of S, and t v t' stays inside for t in S and
/// Sp, t' in Sp. With S = {0} no set qualifies.
inline bool is_s_vee_closed(const Lattice& L, const VeeClosedSet& S, ElemSet sp) {
  ElemSet nonzero = S.members() & sp;
  nonzero.erase(L.bottom());
  if (nonzero.empty()) return false;
  for (Elem t : S.members() & sp)
    for (Elem t2 : sp)
      if (!sp.contains(L.join(t, t2))) return false;
  return true;
}

inline bool is_s_complete(const Lattice& L, const VeeClosedSet& S, ElemSet sp) {
  if (!is_s_vee_closed(L, S, sp)) return false;
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = x; y < L.size(); ++y)
      if (sp.contains(L.join(x, y)) && !(sp.contains(x) && sp.contains(y))) return false;
  return true;
}

struct SCompleteDecomposition {
  std::vector<FilterSet> family;  // every S-filter disjoint from Sp
  ElemSet complement;             // L minus the union of the family
};

/// When Sp is S-complete, the S-filters avoiding it and the complement of
/// their union (which should be Sp itself). nullopt when Sp is not S-complete.
inline std::optional<SCompleteDecomposition> s_complete_decomposition(const Lattice& L, const VeeClosedSet& S,
                                                                      ElemSet sp) {
  if (!S.members().subset_of(sp))
    throw Error(ErrorKind::SNotContained, L.format(S.members()) + " not inside " + L.format(sp));
  if (!is_s_complete(L, S, sp)) return std::nullopt;
  SCompleteDecomposition out;
  ElemSet covered;
  for (const auto& q : all_s_filters(L, S)) {
    if (q.members().intersects(sp)) continue;
    out.family.push_back(q);
    covered |= q.members();
  }
  out.complement = L.all().minus(covered);
  return out;
}

}  // namespace lattika
