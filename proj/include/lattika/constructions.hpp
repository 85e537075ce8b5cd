#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lattika/elemset.hpp"
#include "lattika/error.hpp"
#include "lattika/filters.hpp"
#include "lattika/lattice.hpp"
#include "lattika/s_filters.hpp"

namespace lattika {

/// A total map between two lattices preserving meet and join.
class LatticeHom {
 public:
  const Lattice& domain() const { return *domain_; }
  const Lattice& codomain() const { return *codomain_; }
  Elem operator()(Elem x) const { return map_[x]; }
  const std::vector<Elem>& mapping() const { return map_; }

  bool top_preserving() const { return map_[domain_->top()] == codomain_->top(); }

  bool onto() const { return image(domain_->all()) == codomain_->all(); }

  ElemSet image(ElemSet xs) const {
    ElemSet out;
    for (Elem x : xs) out.insert(map_[x]);
    return out;
  }

  ElemSet preimage(ElemSet ys) const {
    ElemSet out;
    for (Elem x = 0; x < map_.size(); ++x)
      if (ys.contains(map_[x])) out.insert(x);
    return out;
  }

 private:
  LatticeHom(std::shared_ptr<const Lattice> d, std::shared_ptr<const Lattice> c, std::vector<Elem> m)
      : domain_(std::move(d)), codomain_(std::move(c)), map_(std::move(m)) {}
  friend LatticeHom make_hom(std::shared_ptr<const Lattice>, std::shared_ptr<const Lattice>, std::vector<Elem>);

  std::shared_ptr<const Lattice> domain_;
  std::shared_ptr<const Lattice> codomain_;
  std::vector<Elem> map_;
};

/// True when the map preserves both operations on every pair.
inline bool preserves_operations(const Lattice& L1, const Lattice& L2, std::span<const Elem> map) {
  for (Elem u = 0; u < L1.size(); ++u)
    for (Elem v = u; v < L1.size(); ++v)
      if (map[L1.join(u, v)] != L2.join(map[u], map[v]) || map[L1.meet(u, v)] != L2.meet(map[u], map[v]))
        return false;
  return true;
}

/// Validates the map. Throws NotAHom naming the first pair and broken law.
inline LatticeHom make_hom(std::shared_ptr<const Lattice> L1, std::shared_ptr<const Lattice> L2,
                           std::vector<Elem> mapping) {
  if (mapping.size() != L1->size()) throw Error(ErrorKind::BadInput, "mapping is not total on the domain");
  for (Elem y : mapping)
    if (y >= L2->size()) throw Error(ErrorKind::BadInput, "mapping leaves the codomain");
  for (Elem u = 0; u < L1->size(); ++u) {
    for (Elem v = u; v < L1->size(); ++v) {
      const std::string pair = "(" + L1->name(u) + ", " + L1->name(v) + ")";
      if (mapping[L1->join(u, v)] != L2->join(mapping[u], mapping[v]))
        throw Error(ErrorKind::NotAHom, pair + " breaks join preservation");
      if (mapping[L1->meet(u, v)] != L2->meet(mapping[u], mapping[v]))
        throw Error(ErrorKind::NotAHom, pair + " breaks meet preservation");
    }
  }
  return LatticeHom(std::move(L1), std::move(L2), std::move(mapping));
}

inline LatticeHom make_hom(const Lattice& L1, const Lattice& L2, std::vector<Elem> mapping) {
  return make_hom(std::make_shared<const Lattice>(L1), std::make_shared<const Lattice>(L2), std::move(mapping));
}

inline FilterSet kernel(const LatticeHom& psi) {
  if (!psi.top_preserving()) throw Error(ErrorKind::NotTopPreserving, "kernel needs psi(1) = 1");
  return FilterSet::make(psi.domain(), psi.preimage(ElemSet::singleton(psi.codomain().top())));
}

inline FilterSet preimage_filter(const LatticeHom& psi, const FilterSet& q2) {
  if (!psi.top_preserving()) throw Error(ErrorKind::NotTopPreserving, "preimage needs psi(1) = 1");
  detail::require_same(psi.codomain(), q2);
  return FilterSet::make(psi.domain(), psi.preimage(q2.members()));
}

/// Outcome of pushing an S-filter statement across a hom.
struct Transport {
  ElemSet result;            // the transported set
  ElemSet image_of_s;        // psi(S) in the codomain
  bool hypothesis = false;   // the S-filter premise held
  bool conclusion = false;   // the transported set is an S-filter on its side
  bool image_of_s_vee_closed = false;  // psi(S) is join-closed and holds the codomain bottom
};

/// Preimage of q2 together with the S-transport check: whenever q2 is a
/// psi(S)-filter the preimage is expected to be an S-filter.
inline Transport transport_preimage(const LatticeHom& psi, const VeeClosedSet& S, const FilterSet& q2) {
  detail::require_same(psi.domain(), S);
  const FilterSet pre = preimage_filter(psi, q2);
  Transport t;
  t.result = pre.members();
  t.image_of_s = psi.image(S.members());
  t.image_of_s_vee_closed = is_vee_closed(psi.codomain(), t.image_of_s);
  t.hypothesis = is_s_filter_raw(psi.codomain(), t.image_of_s, q2.members());
  t.conclusion = is_s_filter(psi.domain(), S, pre);
  return t;
}

/// psi(q1) for a complemented domain, an onto top-preserving psi, and an
/// S-filter q1 containing the kernel. The preconditions are enforced.
inline Transport image_filter(const LatticeHom& psi, const VeeClosedSet& S, const FilterSet& q1) {
  const Lattice& L1 = psi.domain();
  detail::require_same(L1, S);
  detail::require_same(L1, q1);
  if (!L1.is_complemented()) throw Error(ErrorKind::NotComplemented, "domain is not complemented");
  if (!psi.onto()) throw Error(ErrorKind::NotOnto, "hom is not onto");
  const FilterSet ker = kernel(psi);
  if (!ker.members().subset_of(q1.members()))
    throw Error(ErrorKind::KernelNotContained, L1.format(ker.members()) + " not inside " + L1.format(q1.members()));
  if (!is_s_filter(L1, S, q1)) throw Error(ErrorKind::NotAnSFilter, L1.format(q1.members()));
  Transport t;
  t.result = psi.image(q1.members());
  t.image_of_s = psi.image(S.members());
  t.image_of_s_vee_closed = is_vee_closed(psi.codomain(), t.image_of_s);
  t.hypothesis = true;
  t.conclusion = is_s_filter_raw(psi.codomain(), t.image_of_s, t.result);
  return t;
}

/// L / p: classes of u ~ v iff u ^ x = v ^ y for some x, y in p.
struct QuotientLattice {
  std::shared_ptr<const Lattice> base;
  FilterSet modulus;
  std::vector<ElemSet> classes;   // ordered by least member
  std::vector<Elem> class_of;     // base element -> class index
  std::shared_ptr<const Lattice> quotient;
  LatticeHom projection;

  /// The class of the modulus (top of the quotient).
  Elem top_class() const { return class_of[base->top()]; }
};

inline bool congruent_mod(const Lattice& L, ElemSet p, Elem u, Elem v) {
  for (Elem x : p)
    for (Elem y : p)
      if (L.meet(u, x) == L.meet(v, y)) return true;
  return false;
}

/// Builds L / p. The quotient order is [u] <= [v] iff u ^ x <= v for some x
/// in p; the result is validated as a lattice and against the class formulas
/// [u] v [v] = [u v v], [u] ^ [v] = [u ^ v].
inline QuotientLattice quotient(std::shared_ptr<const Lattice> Lp, const FilterSet& p) {
  const Lattice& L = *Lp;
  detail::require_same(L, p);
  const std::size_t n = L.size();

  std::vector<Elem> class_of(n, n);
  std::vector<ElemSet> classes;
  for (Elem u = 0; u < n; ++u) {
    if (class_of[u] != n) continue;
    ElemSet cls;
    for (Elem v = u; v < n; ++v)
      if (class_of[v] == n && congruent_mod(L, p.members(), u, v)) cls.insert(v);
    for (Elem v : cls) class_of[v] = classes.size();
    classes.push_back(cls);
  }
  // ~ must be an equivalence; check transitivity across every class pair.
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v)
      if ((class_of[u] == class_of[v]) != congruent_mod(L, p.members(), u, v))
        throw Error(ErrorKind::QuotientOrderIllDefined,
                    "relation is not an equivalence at (" + L.name(u) + ", " + L.name(v) + ")");

  const std::size_t k = classes.size();
  std::vector<ElemSet> up(k);
  for (Elem c = 0; c < k; ++c) {
    for (Elem d = 0; d < k; ++d) {
      bool below = false;
      for (Elem u : classes[c])
        for (Elem v : classes[d])
          for (Elem x : p.members())
            if (L.leq(L.meet(u, x), v)) below = true;
      if (below) up[c].insert(d);
    }
  }
  std::vector<std::string> names;
  for (const auto& cls : classes) names.push_back(L.format(cls));

  std::shared_ptr<const Lattice> Q;
  try {
    Q = std::make_shared<const Lattice>(Lattice::from_order(std::move(names), std::move(up)));
  } catch (const Error& e) {
    throw Error(ErrorKind::QuotientOrderIllDefined, e.what());
  }
  for (Elem u = 0; u < n; ++u) {
    for (Elem v = 0; v < n; ++v) {
      const Elem cu = class_of[u], cv = class_of[v];
      if (Q->join(cu, cv) != class_of[L.join(u, v)] || Q->meet(cu, cv) != class_of[L.meet(u, v)])
        throw Error(ErrorKind::QuotientOrderIllDefined,
                    "class formulas fail for " + Q->name(cu) + ", " + Q->name(cv));
    }
  }
  LatticeHom proj = make_hom(Lp, Q, class_of);
  return QuotientLattice{std::move(Lp), p, std::move(classes), std::move(class_of), std::move(Q), std::move(proj)};
}

inline QuotientLattice quotient(const Lattice& L, const FilterSet& p) {
  return quotient(std::make_shared<const Lattice>(L), p);
}

struct QuotientTransport {
  FilterSet filter;     // q / p inside the quotient
  ElemSet s_bar;        // image of S under the projection
  bool s_bar_vee_closed = false;
  bool is_s_bar_filter = false;
};

inline QuotientTransport quotient_s_filter(const QuotientLattice& Q, const VeeClosedSet& S, const FilterSet& q) {
  const Lattice& L = *Q.base;
  detail::require_same(L, q);
  if (!Q.modulus.members().subset_of(q.members()))
    throw Error(ErrorKind::ModulusNotContained, L.format(Q.modulus.members()) + " not inside " + L.format(q.members()));
  if (!is_s_filter(L, S, q)) throw Error(ErrorKind::NotAnSFilter, L.format(q.members()));
  if (!L.is_complemented()) throw Error(ErrorKind::NotComplemented, "base lattice is not complemented");
  const ElemSet image = Q.projection.image(q.members());
  const ElemSet s_bar = Q.projection.image(S.members());
  return QuotientTransport{FilterSet::make(*Q.quotient, image), s_bar, is_vee_closed(*Q.quotient, s_bar),
                           is_s_filter_raw(*Q.quotient, s_bar, image)};
}

/// Componentwise product; element index is mixed-radix with the first
/// factor most significant.
struct ProductLattice {
  std::vector<std::shared_ptr<const Lattice>> factors;
  std::shared_ptr<const Lattice> lattice;
  std::vector<LatticeHom> projections;

  std::vector<Elem> coordinates(Elem x) const {
    std::vector<Elem> out(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      out[i] = x % factors[i]->size();
      x /= factors[i]->size();
    }
    return out;
  }

  Elem tuple_index(std::span<const Elem> coords) const {
    Elem x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i]->size() + coords[i];
    return x;
  }

  /// The set of tuples whose i-th coordinate lies in parts[i].
  ElemSet box(std::span<const ElemSet> parts) const {
    ElemSet out;
    for (Elem x = 0; x < lattice->size(); ++x) {
      const auto c = coordinates(x);
      bool inside = true;
      for (std::size_t i = 0; i < c.size() && inside; ++i) inside = parts[i].contains(c[i]);
      if (inside) out.insert(x);
    }
    return out;
  }
};

inline ProductLattice product(std::vector<std::shared_ptr<const Lattice>> factors) {
  if (factors.size() < 2) throw Error(ErrorKind::BadParams, "a product needs at least two factors");
  std::size_t total = 1;
  for (const auto& f : factors) {
    total *= f->size();
    if (total > kMaxElements) throw Error(ErrorKind::TooLarge, "product exceeds 64 elements");
  }
  ProductLattice P;
  P.factors = std::move(factors);
  std::vector<std::string> names(total);
  std::vector<ElemSet> up(total);
  for (Elem x = 0; x < total; ++x) {
    const auto cx = P.coordinates(x);
    std::string label = "(";
    for (std::size_t i = 0; i < cx.size(); ++i) label += (i ? "," : "") + P.factors[i]->name(cx[i]);
    names[x] = label + ")";
    for (Elem y = 0; y < total; ++y) {
      const auto cy = P.coordinates(y);
      bool le = true;
      for (std::size_t i = 0; i < cx.size() && le; ++i) le = P.factors[i]->leq(cx[i], cy[i]);
      if (le) up[x].insert(y);
    }
  }
  P.lattice = std::make_shared<const Lattice>(Lattice::from_order(std::move(names), std::move(up)));
  for (std::size_t i = 0; i < P.factors.size(); ++i) {
    std::vector<Elem> map(total);
    for (Elem x = 0; x < total; ++x) map[x] = P.coordinates(x)[i];
    P.projections.push_back(make_hom(P.lattice, P.factors[i], std::move(map)));
  }
  return P;
}

inline ProductLattice product(const std::vector<Lattice>& factors) {
  std::vector<std::shared_ptr<const Lattice>> ptrs;
  for (const auto& f : factors) ptrs.push_back(std::make_shared<const Lattice>(f));
  return product(std::move(ptrs));
}

struct ProductCheck {
  bool product_side = false;  // q1 x ... x qt is an S1 x ... x St-filter
  bool factor_side = false;   // every qi is an Si-filter
  bool agree() const { return product_side == factor_side; }
};

inline ProductCheck product_s_filter_check(const ProductLattice& P, std::span<const VeeClosedSet> S,
                                           std::span<const FilterSet> q) {
  if (S.size() != P.factors.size() || q.size() != P.factors.size())
    throw Error(ErrorKind::ArityMismatch, "expected one S and one filter per factor");
  std::vector<ElemSet> s_parts, q_parts;
  ProductCheck out;
  out.factor_side = true;
  for (std::size_t i = 0; i < P.factors.size(); ++i) {
    out.factor_side = out.factor_side && is_s_filter(*P.factors[i], S[i], q[i]);
    s_parts.push_back(S[i].members());
    q_parts.push_back(q[i].members());
  }
  const Lattice& L = *P.lattice;
  const FilterSet prod_q = FilterSet::make(L, P.box(q_parts));
  const VeeClosedSet prod_s = VeeClosedSet::make(L, P.box(s_parts));
  out.product_side = is_s_filter(L, prod_s, prod_q);
  return out;
}

}  // namespace lattika
