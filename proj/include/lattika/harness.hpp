#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lattika/constructions.hpp"
#include "lattika/error.hpp"
#include "lattika/filters.hpp"
#include "lattika/generators.hpp"
#include "lattika/io.hpp"
#include "lattika/lattice.hpp"
#include "lattika/s_filters.hpp"

namespace lattika::harness {

/// A replayable failing instance: the lattice inline plus the named sets.
struct Witness {
  std::string lattice_id;
  nlohmann::json lattice;
  std::vector<std::pair<std::string, std::vector<std::string>>> sets;
  std::string note;

  nlohmann::json to_json() const {
    nlohmann::json js = nlohmann::json::object();
    for (const auto& [role, labels] : sets) js[role] = labels;
    return {{"lattice_id", lattice_id}, {"lattice", lattice}, {"sets", js}, {"note", note}};
  }

  std::string describe() const {
    std::string out = lattice_id;
    for (const auto& [role, labels] : sets) {
      out += " " + role + "={";
      for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
      out += "}";
    }
    return note.empty() ? out : out + " : " + note;
  }
};

/// Accumulates one theorem's instances. Single writer.
class Sink {
 public:
  explicit Sink(bool stop_at_first = false) : stop_at_first_(stop_at_first) {}

  void examine() { ++examined_; }
  void instance() { ++instances_; }
  void violation(Witness w) { witnesses_.push_back(std::move(w)); }
  void note(const std::string& key, std::size_t by = 1) { extras_[key] += by; }

  bool done() const { return stop_at_first_ && !witnesses_.empty(); }

  std::size_t examined() const { return examined_; }
  std::size_t instances() const { return instances_; }
  std::size_t violations() const { return witnesses_.size(); }
  const std::vector<Witness>& witnesses() const { return witnesses_; }
  const std::map<std::string, std::size_t>& extras() const { return extras_; }

 private:
  bool stop_at_first_;
  std::size_t examined_ = 0;
  std::size_t instances_ = 0;
  std::vector<Witness> witnesses_;
  std::map<std::string, std::size_t> extras_;
};

/// Which registered hypothesis (if any) is left unenforced.
struct Relaxation {
  std::string dropped;
  bool enforce(std::string_view hypothesis) const { return dropped != hypothesis; }
};

using Catalog = std::span<const CatalogEntry>;
using Checker = std::function<void(Catalog, const Relaxation&, Sink&)>;

struct TheoremSpec {
  std::string id;
  std::vector<std::string> hypotheses;  // droppable by the hunter
  bool distributive_only = false;       // default scope is the distributive sub-catalog
  Checker check;
};

namespace detail {

inline std::vector<VeeClosedSet> vee_sets_by_bits(const Lattice& L) {
  std::vector<VeeClosedSet> out;
  for_each_vee_closed(L, [&](const VeeClosedSet& S) { out.push_back(S); });
  std::sort(out.begin(), out.end(),
            [](const VeeClosedSet& a, const VeeClosedSet& b) { return a.members().bits() < b.members().bits(); });
  return out;
}

inline std::vector<FilterSet> filters_by_bits(const Lattice& L) {
  auto out = all_filters(L);
  std::sort(out.begin(), out.end(),
            [](const FilterSet& a, const FilterSet& b) { return a.members().bits() < b.members().bits(); });
  return out;
}

inline Witness witness(const std::string& id, const Lattice& L,
                       std::initializer_list<std::pair<std::string, ElemSet>> sets, std::string note = {}) {
  Witness w{id, to_json(L, id), {}, std::move(note)};
  for (const auto& [role, xs] : sets) w.sets.emplace_back(role, L.labels(xs));
  return w;
}

/// Proper filter satisfying the S-condition, decided from raw definitions.
inline bool s_filter_by_definition(const Lattice& L, ElemSet s, ElemSet q) { return is_s_filter_raw(L, s, q); }

// ---- per-theorem checkers -------------------------------------------------

inline void prop1_disjoint(Catalog cat, const Relaxation&, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters_by_bits(L)) {
        if (sink.done()) return;
        sink.examine();
        if (!s_filter_by_definition(L, S.members(), q.members())) continue;
        sink.instance();
        if (q.members().intersects(S.members()))
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}}, "S-filter meets S"));
      }
  }
}

/// Residual subsets p are enumerated in full when the candidate pool has at
/// most this many elements, otherwise only singletons and pairs.
inline constexpr std::size_t kResidualFullSubsetPool = 10;

inline void prop1_residual(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    const auto filters = filters_by_bits(L);
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters) {
        if (!is_proper(L, q)) continue;
        if (rx.enforce("s-filter") && !s_filter_by_definition(L, S.members(), q.members())) continue;
        const ElemSet pool = rx.enforce("disjoint") ? L.all().minus(q.members()) : L.all();
        const auto pv = pool.to_vector();
        std::vector<ElemSet> by_elem(L.size());
        for (Elem w : pv) by_elem[w] = raw_residual_elem(L, q.members(), w);
        std::map<std::uint64_t, bool> verdicts;
        auto visit = [&](ElemSet p) {
          sink.examine();
          sink.instance();
          ElemSet res = L.all();
          for (Elem w : p) res = res & by_elem[w];
          auto it = verdicts.find(res.bits());
          if (it == verdicts.end()) it = verdicts.emplace(res.bits(), s_filter_by_definition(L, S.members(), res)).first;
          if (!it->second)
            sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}, {"p", p}},
                                   "residual " + L.format(res) + " is not an S-filter"));
        };
        if (pv.size() <= kResidualFullSubsetPool) {
          for (std::uint64_t m = 1; m < (std::uint64_t{1} << pv.size()); ++m) {
            if (sink.done()) return;
            ElemSet p;
            for (std::size_t i = 0; i < pv.size(); ++i)
              if (m >> i & 1) p.insert(pv[i]);
            visit(p);
          }
        } else {
          for (std::size_t i = 0; i < pv.size(); ++i)
            for (std::size_t j = i; j < pv.size(); ++j) {
              if (sink.done()) return;
              ElemSet p = ElemSet::singleton(pv[i]);
              p.insert(pv[j]);
              visit(p);
            }
        }
      }
  }
}

inline void remark_prime(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters_by_bits(L)) {
        if (sink.done()) return;
        if (!is_proper(L, q)) continue;
        sink.examine();
        if (rx.enforce("prime") && !is_prime_filter(L, q.members())) continue;
        sink.instance();
        const bool s_filter = s_filter_by_definition(L, S.members(), q.members());
        const bool disjoint = !q.members().intersects(S.members());
        if (s_filter != disjoint)
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}},
                                 disjoint ? "disjoint from S but not an S-filter" : "S-filter meeting S"));
      }
  }
}

inline void thm2_pairs(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters_by_bits(L)) {
        if (sink.done()) return;
        sink.examine();
        if (rx.enforce("proper") && !is_proper(L, q)) continue;
        sink.instance();
        const auto pairs = check_pair_characterization(L, S, q);
        const bool s_filter = s_filter_by_definition(L, S.members(), q.members());
        if (pairs.holds != s_filter)
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}},
                                 s_filter ? "S-filter with a failing filter pair" : "pair condition holds, not an S-filter"));
      }
  }
}

inline void thm_small(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    const auto filters = filters_by_bits(L);
    for (const auto& S : vee_sets_by_bits(L)) {
      std::vector<ElemSet> s_filters;
      for (const auto& q : filters)
        if (s_filter_by_definition(L, S.members(), q.members())) s_filters.push_back(q.members());
      for (const auto& p : filters) {
        if (sink.done()) return;
        sink.examine();
        if (rx.enforce("disjoint") && p.members().intersects(S.members())) continue;
        sink.instance();
        const ElemSet sat = raw_saturate(L, S.members(), p.members());
        std::string why;
        if (!is_filter(L, sat))
          why = "saturation " + L.format(sat) + " is not a filter";
        else if (!s_filter_by_definition(L, S.members(), sat))
          why = "saturation " + L.format(sat) + " is not an S-filter";
        else if (!p.members().subset_of(sat))
          why = "saturation misses p";
        else
          for (ElemSet q : s_filters)
            if (p.members().subset_of(q) && !sat.subset_of(q)) {
              why = "saturation not below S-filter " + L.format(q);
              break;
            }
        if (!why.empty()) sink.violation(witness(e.id, L, {{"S", S.members()}, {"p", p.members()}}, why));
      }
    }
  }
}

inline void thm_ghasem(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    const auto filters = filters_by_bits(L);
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters) {
        if (sink.done()) return;
        sink.examine();
        if (rx.enforce("proper") && !is_proper(L, q)) continue;
        sink.instance();
        const auto t = check_ghasem_equivalences(L, S, q);
        if (!t.agree())
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}},
                                 std::string("s-filter=") + (t.s_filter ? "1" : "0") +
                                     " residuals=" + (t.residuals_fixed ? "1" : "0") +
                                     " saturation=" + (t.saturation_fixed ? "1" : "0")));
      }
  }
}

/// Families of one, two and (on lattices up to this size) three filters.
inline constexpr std::size_t kAvoidanceTripleMaxSize = 8;

inline void thm3_avoidance(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    std::vector<FilterSet> proper;
    for (const auto& f : filters_by_bits(L))
      if (is_proper(L, f)) proper.push_back(f);
    const std::size_t max_family = L.size() <= kAvoidanceTripleMaxSize ? 3 : 2;
    for (const auto& S : vee_sets_by_bits(L)) {
      std::vector<char> sf(proper.size()), meets(proper.size());
      for (std::size_t i = 0; i < proper.size(); ++i) {
        sf[i] = is_s_filter(L, S, proper[i]);
        meets[i] = proper[i].members().intersects(S.members());
      }
      std::vector<std::size_t> idx;
      // Screens a family on bit masks before handing it to the full check.
      auto visit = [&](auto& self, std::size_t depth) -> void {
        if (sink.done()) return;
        if (depth > 0) {
          for (const auto& p : proper) {
            sink.examine();
            ElemSet cover;
            for (auto i : idx) cover |= proper[i].members();
            if (rx.enforce("cover") && !p.members().subset_of(cover)) continue;
            if (rx.enforce("s-filter") && !sf[idx[0]]) continue;
            bool others = true;
            for (std::size_t k = 1; k < idx.size(); ++k) others = others && meets[idx[k]];
            if (rx.enforce("meets-s") && !others) continue;
            std::vector<FilterSet> family;
            for (auto i : idx) family.push_back(proper[i]);
            const auto v = prime_avoidance_check(L, S, p, family);
            if (rx.enforce("irredundant") && !v.irredundant) continue;
            sink.instance();
            sink.note("instances_family_" + std::to_string(idx.size()));
            if (!v.conclusion) {
              Witness w = witness(e.id, L, {{"S", S.members()}, {"p", p.members()}}, "p not inside q1");
              for (std::size_t k = 0; k < family.size(); ++k)
                w.sets.emplace_back("q" + std::to_string(k + 1), L.labels(family[k].members()));
              sink.violation(std::move(w));
            }
            if (sink.done()) return;
          }
        }
        if (depth == max_family) return;
        for (std::size_t i = 0; i < proper.size(); ++i) {
          idx.push_back(i);
          self(self, depth + 1);
          idx.pop_back();
        }
      };
      visit(visit, 0);
      if (sink.done()) return;
    }
  }
}

inline void prop_intersection(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L)) {
      std::vector<FilterSet> members;
      for (const auto& q : filters_by_bits(L)) {
        if (!is_proper(L, q)) continue;
        if (rx.enforce("s-filters") && !is_s_filter(L, S, q)) continue;
        members.push_back(q);
      }
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i; j < members.size(); ++j) {
          if (sink.done()) return;
          sink.examine();
          sink.instance();
          const ElemSet meet = members[i].members() & members[j].members();
          if (!s_filter_by_definition(L, S.members(), meet))
            sink.violation(witness(e.id, L, {{"S", S.members()}, {"q1", members[i].members()}, {"q2", members[j].members()}},
                                   "intersection is not an S-filter"));
          else if (rx.enforce("s-filters")) {
            const FilterSet pair[] = {members[i], members[j]};
            if (intersect_s_filters(L, S, pair).members() != meet)
              sink.violation(witness(e.id, L, {{"S", S.members()}}, "intersect_s_filters disagrees with set intersection"));
          }
        }
    }
  }
}

inline void thm_khamen(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& F : filters_by_bits(L)) {
        if (sink.done()) return;
        if (!is_proper(L, F)) continue;
        sink.examine();
        if (rx.enforce("disjoint") && F.members().intersects(S.members())) continue;
        sink.instance();
        std::string why;
        try {
          const FilterSet q = find_prime_s_filter_containing(L, S, F);
          if (!F.members().subset_of(q.members()))
            why = "result misses F";
          else if (!is_prime_filter(L, q.members()))
            why = "result not prime";
          else if (q.members().intersects(S.members()))
            why = "result meets S";
          else if (!s_filter_by_definition(L, S.members(), q.members()))
            why = "result not an S-filter";
        } catch (const Error& err) {
          why = err.what();
        }
        if (!why.empty()) sink.violation(witness(e.id, L, {{"S", S.members()}, {"F", F.members()}}, why));
      }
  }
}

inline void thm_minprime(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L))
      for (const auto& q : filters_by_bits(L)) {
        if (sink.done()) return;
        if (!is_proper(L, q)) continue;
        if (rx.enforce("s-filter") && !is_s_filter(L, S, q)) continue;
        for (const auto& p : min_primes_over(L, q)) {
          sink.examine();
          sink.instance();
          if (!s_filter_by_definition(L, S.members(), p.members()))
            sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}, {"p", p.members()}},
                                   "minimal prime is not an S-filter"));
        }
      }
  }
}

inline void thm_maximal_prime(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L)) {
      if (sink.done()) return;
      auto candidates = rx.enforce("maximal") ? maximal_s_filters(L, S) : all_s_filters(L, S);
      for (const auto& q : candidates) {
        sink.examine();
        sink.instance();
        if (!is_prime_filter(L, q.members()))
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"q", q.members()}}, "maximal S-filter is not prime"));
      }
    }
  }
}

inline constexpr std::size_t kCompleteMaxSize = 10;

inline bool has_nonzero(const Lattice& L, ElemSet s) { return !s.minus(ElemSet::singleton(L.bottom())).empty(); }

inline void prop_complete(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    for (const auto& S : vee_sets_by_bits(L)) {
      if (rx.enforce("nonzero-s") && !has_nonzero(L, S.members())) continue;
      // Distinct unions of subfamilies, the empty family included.
      std::set<std::uint64_t> unions{0};
      for (const auto& q : all_s_filters(L, S)) {
        std::vector<std::uint64_t> grown;
        for (auto u : unions) grown.push_back(u | q.members().bits());
        unions.insert(grown.begin(), grown.end());
      }
      for (auto u : unions) {
        if (sink.done()) return;
        sink.examine();
        sink.instance();
        const ElemSet sp = L.all().minus(ElemSet(u));
        if (!is_s_complete(L, S, sp))
          sink.violation(witness(e.id, L, {{"S", S.members()}, {"S'", sp}}, "complement of a union of S-filters is not S-complete"));
      }
    }
  }
}

inline void thm_complete_decomp(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    if (L.size() > kCompleteMaxSize) continue;
    for (const auto& S : vee_sets_by_bits(L)) {
      if (rx.enforce("nonzero-s") && !has_nonzero(L, S.members())) continue;
      const auto s_filters = all_s_filters(L, S);
      const ElemSet base = rx.enforce("contains-s") ? S.members() : ElemSet{};
      const ElemSet free = L.all().minus(base);
      // Every Sp = base + a subset of the free elements.
      std::uint64_t sub = 0;
      do {
        if (sink.done()) return;
        sink.examine();
        sink.instance();
        const ElemSet sp = base | ElemSet(sub);
        ElemSet covered;
        for (const auto& q : s_filters)
          if (!q.members().intersects(sp)) covered |= q.members();
        const bool representable = L.all().minus(covered) == sp;
        const bool complete = is_s_complete(L, S, sp);
        std::string why;
        if (complete != representable)
          why = complete ? "S-complete but not a complement of S-filters" : "complement of S-filters but not S-complete";
        if (why.empty() && S.members().subset_of(sp)) {
          const auto dec = s_complete_decomposition(L, S, sp);
          if (dec.has_value() != complete)
            why = "decomposition disagrees with is_s_complete";
          else if (dec && dec->complement != sp)
            why = "decomposition complement differs from S'";
        }
        if (!why.empty()) sink.violation(witness(e.id, L, {{"S", S.members()}, {"S'", sp}}, why));
        sub = (sub - free.bits()) & free.bits();
      } while (sub != 0);
    }
  }
}

// ---- homomorphism sweeps ----------------------------------------------------

struct GeneratedHom {
  std::string label;  // e.g. "quotient:ex5/{w,1}" or "map:chain-2->boolean-2#3"
  LatticeHom hom;
};

inline constexpr std::size_t kBruteForceHomMaxSize = 4;
inline constexpr std::size_t kQuotientHomMaxSize = 16;

/// Catalog entries with pairwise distinct lattices, first occurrence kept.
inline std::vector<const CatalogEntry*> distinct_entries(Catalog cat, std::size_t max_size) {
  std::vector<const CatalogEntry*> out;
  std::set<std::uint64_t> seen;
  for (const auto& e : cat)
    if (e.lattice.size() <= max_size && seen.insert(e.lattice.id()).second) out.push_back(&e);
  return out;
}

/// Quotient projections, product coordinate projections, and every hom
/// between small catalog lattices.
inline std::vector<GeneratedHom> generated_homs(Catalog cat, Sink* sink = nullptr) {
  std::vector<GeneratedHom> out;
  for (const auto* e : distinct_entries(cat, kQuotientHomMaxSize)) {
    auto L = std::make_shared<const Lattice>(e->lattice);
    for (const auto& p : filters_by_bits(*L)) {
      try {
        auto Q = quotient(L, p);
        out.push_back({"quotient:" + e->id + "/" + L->format(p.members()), Q.projection});
      } catch (const Error&) {
        if (sink) sink->note("quotients_ill_defined");
      }
    }
  }
  const auto small = distinct_entries(cat, kBruteForceHomMaxSize);
  for (const auto* a : small)
    for (const auto* b : small) {
      auto P = product({std::make_shared<const Lattice>(a->lattice), std::make_shared<const Lattice>(b->lattice)});
      for (std::size_t i = 0; i < 2; ++i)
        out.push_back({"projection" + std::to_string(i) + ":" + a->id + "x" + b->id, P.projections[i]});
    }
  for (const auto* a : small)
    for (const auto* b : small) {
      auto L1 = std::make_shared<const Lattice>(a->lattice);
      auto L2 = std::make_shared<const Lattice>(b->lattice);
      const std::size_t n1 = L1->size(), n2 = L2->size();
      std::vector<Elem> map(n1, 0);
      std::size_t counter = 0;
      while (true) {
        if (preserves_operations(*L1, *L2, map))
          out.push_back({"map:" + a->id + "->" + b->id + "#" + std::to_string(counter), make_hom(L1, L2, map)});
        ++counter;
        std::size_t k = 0;
        while (k < n1 && ++map[k] == n2) map[k++] = 0;
        if (k == n1) break;
      }
    }
  return out;
}

inline Witness hom_witness(const GeneratedHom& g, std::initializer_list<std::pair<std::string, ElemSet>> dom_sets,
                           std::initializer_list<std::pair<std::string, ElemSet>> cod_sets, std::string note) {
  const Lattice& L1 = g.hom.domain();
  const Lattice& L2 = g.hom.codomain();
  Witness w{g.label, {{"domain", to_json(L1)}, {"codomain", to_json(L2)}, {"map", g.hom.mapping()}}, {}, std::move(note)};
  for (const auto& [role, xs] : dom_sets) w.sets.emplace_back(role, L1.labels(xs));
  for (const auto& [role, xs] : cod_sets) w.sets.emplace_back(role, L2.labels(xs));
  return w;
}

inline void thm_homo_1(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& g : generated_homs(cat, &sink)) {
    const LatticeHom& psi = g.hom;
    if (rx.enforce("top-preserving") && !psi.top_preserving()) continue;
    const Lattice& L1 = psi.domain();
    const Lattice& L2 = psi.codomain();
    sink.note("homs");
    for (const auto& S : vee_sets_by_bits(L1)) {
      const ElemSet image_s = psi.image(S.members());
      for (const auto& q2 : filters_by_bits(L2)) {
        if (sink.done()) return;
        sink.examine();
        if (rx.enforce("psi-s-filter") && !is_s_filter_raw(L2, image_s, q2.members())) continue;
        sink.instance();
        if (!is_vee_closed(L2, image_s)) sink.note("image_of_s_not_vee_closed");
        const ElemSet pre = psi.preimage(q2.members());
        if (!s_filter_by_definition(L1, S.members(), pre))
          sink.violation(hom_witness(g, {{"S", S.members()}, {"preimage", pre}}, {{"q2", q2.members()}},
                                     "preimage is not an S-filter"));
        else if (psi.top_preserving() && transport_preimage(psi, S, q2).result != pre)
          sink.violation(hom_witness(g, {{"S", S.members()}}, {{"q2", q2.members()}}, "transport_preimage disagrees"));
      }
    }
  }
}

inline void thm_homo_2(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& g : generated_homs(cat, &sink)) {
    const LatticeHom& psi = g.hom;
    const Lattice& L1 = psi.domain();
    const Lattice& L2 = psi.codomain();
    if (rx.enforce("top-preserving") && !psi.top_preserving()) continue;
    if (rx.enforce("complemented") && !L1.is_complemented()) continue;
    if (rx.enforce("onto") && !psi.onto()) continue;
    sink.note("homs");
    const ElemSet ker = psi.preimage(ElemSet::singleton(L2.top()));
    for (const auto& S : vee_sets_by_bits(L1))
      for (const auto& q1 : filters_by_bits(L1)) {
        if (sink.done()) return;
        sink.examine();
        if (rx.enforce("kernel") && !ker.subset_of(q1.members())) continue;
        if (rx.enforce("s-filter") && !s_filter_by_definition(L1, S.members(), q1.members())) continue;
        sink.instance();
        const ElemSet image = psi.image(q1.members());
        const ElemSet image_s = psi.image(S.members());
        if (!is_s_filter_raw(L2, image_s, image)) {
          sink.violation(hom_witness(g, {{"S", S.members()}, {"q1", q1.members()}}, {{"image", image}},
                                     "image is not a psi(S)-filter"));
        } else if (rx.dropped.empty() && image_filter(psi, S, q1).result != image) {
          sink.violation(hom_witness(g, {{"S", S.members()}}, {}, "image_filter disagrees"));
        }
      }
  }
}

inline void cor_quotient(Catalog cat, const Relaxation& rx, Sink& sink) {
  for (const auto& e : cat) {
    const Lattice& L = e.lattice;
    if (rx.enforce("complemented") && !L.is_complemented()) continue;
    auto Lp = std::make_shared<const Lattice>(L);
    const auto filters = filters_by_bits(L);
    const auto vees = vee_sets_by_bits(L);
    for (const auto& p : filters) {
      std::optional<QuotientLattice> Q;
      try {
        Q = quotient(Lp, p);
      } catch (const Error& err) {
        sink.examine();
        sink.instance();
        sink.violation(witness(e.id, L, {{"p", p.members()}}, err.what()));
        if (sink.done()) return;
        continue;
      }
      for (const auto& S : vees) {
        const ElemSet s_bar = Q->projection.image(S.members());
        for (const auto& q : filters) {
          if (sink.done()) return;
          sink.examine();
          if (rx.enforce("contains") && !p.members().subset_of(q.members())) continue;
          if (rx.enforce("s-filter") && !s_filter_by_definition(L, S.members(), q.members())) continue;
          sink.instance();
          const ElemSet image = Q->projection.image(q.members());
          std::string why;
          if (!is_vee_closed(*Q->quotient, s_bar))
            why = "S-bar is not join-closed";
          else if (!is_s_filter_raw(*Q->quotient, s_bar, image))
            why = "q/p " + Q->quotient->format(image) + " is not an S-bar-filter";
          else if (kernel(Q->projection).members() != p.members())
            why = "projection kernel differs from p";
          else if (rx.dropped.empty() && quotient_s_filter(*Q, S, q).filter.members() != image)
            why = "quotient_s_filter disagrees";
          if (!why.empty()) sink.violation(witness(e.id, L, {{"p", p.members()}, {"S", S.members()}, {"q", q.members()}}, why));
        }
      }
    }
  }
}

inline constexpr std::size_t kProductFactorMaxSize = 4;

inline void thm_car(Catalog cat, const Relaxation& rx, Sink& sink) {
  const auto small = distinct_entries(cat, kProductFactorMaxSize);
  for (const auto* a : small)
    for (const auto* b : small) {
      const auto P = product({std::make_shared<const Lattice>(a->lattice), std::make_shared<const Lattice>(b->lattice)});
      const Lattice& L1 = *P.factors[0];
      const Lattice& L2 = *P.factors[1];
      auto usable = [&](const Lattice& L) {
        std::vector<FilterSet> out;
        for (const auto& f : filters_by_bits(L))
          if (!rx.enforce("proper") || is_proper(L, f)) out.push_back(f);
        return out;
      };
      const auto f1 = usable(L1), f2 = usable(L2);
      for (const auto& S1 : vee_sets_by_bits(L1))
        for (const auto& S2 : vee_sets_by_bits(L2))
          for (const auto& q1 : f1)
            for (const auto& q2 : f2) {
              if (sink.done()) return;
              sink.examine();
              sink.instance();
              const VeeClosedSet S[] = {S1, S2};
              const FilterSet q[] = {q1, q2};
              const auto r = product_s_filter_check(P, S, q);
              if (!r.agree()) {
                Witness w{a->id + "x" + b->id, to_json(*P.lattice), {},
                          r.product_side ? "product is an S-filter, a factor is not" : "factors are S-filters, product is not"};
                w.sets.emplace_back("S1", L1.labels(S1.members()));
                w.sets.emplace_back("S2", L2.labels(S2.members()));
                w.sets.emplace_back("q1", L1.labels(q1.members()));
                w.sets.emplace_back("q2", L2.labels(q2.members()));
                sink.violation(std::move(w));
              }
            }
    }
}

}  // namespace detail

/// The registry, in report order.
inline const std::vector<TheoremSpec>& registry() {
  static const std::vector<TheoremSpec> specs = {
      {"prop1-disjoint", {}, false, detail::prop1_disjoint},
      {"prop1-residual", {"distributive", "disjoint", "s-filter"}, true, detail::prop1_residual},
      {"remark-prime", {"prime"}, false, detail::remark_prime},
      {"thm2-pairs", {"distributive", "proper"}, true, detail::thm2_pairs},
      {"thm-small", {"distributive", "disjoint"}, true, detail::thm_small},
      {"thm-ghasem", {"proper"}, false, detail::thm_ghasem},
      {"thm3-avoidance", {"cover", "irredundant", "s-filter", "meets-s"}, false, detail::thm3_avoidance},
      {"prop-intersection", {"s-filters"}, false, detail::prop_intersection},
      {"thm-khamen", {"distributive", "disjoint"}, true, detail::thm_khamen},
      {"thm-minprime", {"s-filter"}, false, detail::thm_minprime},
      {"thm-maximal-prime", {"distributive", "maximal"}, true, detail::thm_maximal_prime},
      {"prop-complete", {"nonzero-s"}, false, detail::prop_complete},
      {"thm-complete-decomp", {"distributive", "nonzero-s", "contains-s"}, true, detail::thm_complete_decomp},
      {"thm-homo-1", {"top-preserving", "psi-s-filter"}, false, detail::thm_homo_1},
      {"thm-homo-2", {"top-preserving", "complemented", "onto", "kernel", "s-filter"}, false,
       detail::thm_homo_2},
      {"cor-quotient", {"distributive", "complemented", "contains", "s-filter"}, true, detail::cor_quotient},
      {"thm-car", {"proper"}, false, detail::thm_car},
  };
  return specs;
}

inline const TheoremSpec& find_theorem(std::string_view id) {
  for (const auto& t : registry())
    if (t.id == id) return t;
  throw Error(ErrorKind::UnknownTheorem, "no theorem '" + std::string(id) + "'");
}

struct VerificationReport {
  std::string theorem;
  std::size_t examined = 0;
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<Witness> witnesses;
  bool distributive_only = false;
  // Behaviour on the non-distributive remainder of the catalog; informative only.
  std::size_t nondistributive_instances = 0;
  std::size_t nondistributive_violations = 0;
  std::optional<Witness> nondistributive_witness;
  std::map<std::string, std::size_t> extras;
  double wall_seconds = 0;

  bool passed() const { return violations == 0; }
  std::string status() const { return violations ? "violated" : instances ? "held" : "vacuous"; }

  /// Deterministic: no timing information.
  nlohmann::json to_json() const {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& w : witnesses) ws.push_back(w.to_json());
    nlohmann::json j = {{"theorem", theorem},
                        {"status", status()},
                        {"examined", examined},
                        {"instances", instances},
                        {"violations", violations},
                        {"witnesses", ws},
                        {"distributive_only", distributive_only},
                        {"extras", extras}};
    if (distributive_only) {
      j["nondistributive"] = {{"instances", nondistributive_instances},
                              {"violations", nondistributive_violations},
                              {"first_witness", nondistributive_witness ? nondistributive_witness->to_json() : nullptr}};
    }
    return j;
  }
};

inline std::vector<CatalogEntry> limit_size(Catalog cat, std::size_t max_size) {
  std::vector<CatalogEntry> out;
  for (const auto& e : cat)
    if (e.lattice.size() <= max_size) out.push_back(e);
  return out;
}

inline void split_by_distributivity(Catalog cat, std::vector<CatalogEntry>& dist, std::vector<CatalogEntry>& rest) {
  for (const auto& e : cat) (e.lattice.is_distributive() ? dist : rest).push_back(e);
}

inline VerificationReport run_theorem(const TheoremSpec& spec, Catalog cat) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.theorem = spec.id;
  r.distributive_only = spec.distributive_only;
  Sink main_sink;
  if (spec.distributive_only) {
    std::vector<CatalogEntry> dist, rest;
    split_by_distributivity(cat, dist, rest);
    spec.check(dist, Relaxation{}, main_sink);
    Sink side;
    spec.check(rest, Relaxation{}, side);
    r.nondistributive_instances = side.instances();
    r.nondistributive_violations = side.violations();
    if (!side.witnesses().empty()) r.nondistributive_witness = side.witnesses().front();
  } else {
    spec.check(cat, Relaxation{}, main_sink);
  }
  r.examined = main_sink.examined();
  r.instances = main_sink.instances();
  r.violations = main_sink.violations();
  r.witnesses = main_sink.witnesses();
  r.extras = main_sink.extras();
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs the selected theorems (all when `only` is empty) over catalog
/// entries of at most `size_limit` elements.
inline std::vector<VerificationReport> run_theorem_suite(Catalog cat, std::string_view only = {},
                                                         std::size_t size_limit = kMaxElements) {
  if (cat.empty()) throw Error(ErrorKind::EmptyCatalog, "nothing to verify");
  const auto limited = limit_size(cat, size_limit);
  std::vector<VerificationReport> out;
  if (!only.empty()) {
    out.push_back(run_theorem(find_theorem(only), limited));
    return out;
  }
  for (const auto& spec : registry()) out.push_back(run_theorem(spec, limited));
  return out;
}

/// Re-runs one theorem with a hypothesis unenforced and returns the first
/// witness in canonical order. An empty `dropped` is the plain check.
inline std::optional<Witness> hunt_counterexample(std::string_view theorem, std::string_view dropped, Catalog cat) {
  const auto& spec = find_theorem(theorem);
  if (!dropped.empty() && std::find(spec.hypotheses.begin(), spec.hypotheses.end(), dropped) == spec.hypotheses.end())
    throw Error(ErrorKind::UnknownHypothesis, "'" + std::string(dropped) + "' is not a hypothesis of " + spec.id);
  Sink sink(true);
  const Relaxation rx{std::string(dropped)};
  if (spec.distributive_only && rx.enforce("distributive")) {
    std::vector<CatalogEntry> dist, rest;
    split_by_distributivity(cat, dist, rest);
    spec.check(dist, rx, sink);
  } else {
    spec.check(cat, rx, sink);
  }
  if (sink.witnesses().empty()) return std::nullopt;
  return sink.witnesses().front();
}

/// Independent distributivity test: no M3 or N5 sublattice.
inline bool has_forbidden_sublattice(const Lattice& L) {
  const std::size_t n = L.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        const bool ab = L.leq(a, b) || L.leq(b, a);
        const bool ac = L.leq(a, c) || L.leq(c, a);
        const bool bc = L.leq(b, c) || L.leq(c, b);
        // M3: three pairwise incomparable elements with common meet and join.
        if (!ab && !ac && !bc && L.meet(a, b) == L.meet(a, c) && L.meet(a, b) == L.meet(b, c) &&
            L.join(a, b) == L.join(a, c) && L.join(a, b) == L.join(b, c))
          return true;
        // N5: a < c, b incomparable to both, same meet and join with b.
        if (L.leq(a, c) && !ab && !bc && L.join(a, b) == L.join(c, b) && L.meet(a, b) == L.meet(c, b)) return true;
      }
  return false;
}

inline nlohmann::json summary_json(const std::vector<VerificationReport>& reports, Catalog cat, std::uint64_t seed) {
  std::size_t violations = 0;
  for (const auto& r : reports) violations += r.violations;
  std::size_t mismatches = 0;
  for (const auto& e : cat)
    if (e.lattice.is_distributive() == has_forbidden_sublattice(e.lattice)) ++mismatches;
  return {{"summary", true},
          {"theorems", reports.size()},
          {"violations", violations},
          {"passed", violations == 0},
          {"catalog_entries", cat.size()},
          {"catalog_seed", seed},
          {"distributivity_crosscheck_mismatches", mismatches}};
}

}  // namespace lattika::harness
