#include <gtest/gtest.h>

#include <memory>

#include "lattika/constructions.hpp"
#include "lattika/generators.hpp"
#include "oracles.hpp"

using namespace lattika;

namespace {

ElemSet set(const Lattice& L, std::string_view labels) { return L.parse_labels(labels); }
FilterSet filt(const Lattice& L, std::string_view labels) { return FilterSet::make(L, set(L, labels)); }
VeeClosedSet vee(const Lattice& L, std::string_view labels) { return VeeClosedSet::make(L, set(L, labels)); }
Elem at(const Lattice& L, std::string_view label) { return *L.index_of(label); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::BadInput;
}

std::vector<Elem> identity(std::size_t n) {
  std::vector<Elem> m(n);
  for (Elem i = 0; i < n; ++i) m[i] = i;
  return m;
}

// B2 -> 2-chain: x |-> 1 iff x >= a.
LatticeHom b2_to_chain() {
  const Lattice B = boolean(2);
  const Lattice C = chain(2);
  std::vector<Elem> m(B.size());
  for (Elem x = 0; x < B.size(); ++x) m[x] = B.leq(at(B, "a"), x) ? C.top() : C.bottom();
  return make_hom(B, C, m);
}

}  // namespace

TEST(Hom, Examples) {
  const Lattice E = named("ex5");
  const auto id = make_hom(E, E, identity(E.size()));
  EXPECT_TRUE(id.top_preserving());
  EXPECT_TRUE(id.onto());

  const auto psi = b2_to_chain();
  EXPECT_TRUE(psi.onto());
  EXPECT_TRUE(psi.top_preserving());

  auto swap = identity(E.size());
  std::swap(swap[at(E, "u")], swap[at(E, "v")]);
  EXPECT_NO_THROW(make_hom(E, E, swap));
}

TEST(Hom, RejectsNonHomsAndBadMaps) {
  const Lattice E = named("ex5");
  auto collapse = identity(E.size());
  collapse[at(E, "u")] = at(E, "0");  // u v v = w but 0 v v = v
  EXPECT_EQ(kind_of([&] { make_hom(E, E, collapse); }), ErrorKind::NotAHom);
  EXPECT_EQ(kind_of([&] { make_hom(E, E, std::vector<Elem>{0, 1}); }), ErrorKind::BadInput);
  EXPECT_EQ(kind_of([&] { make_hom(E, E, std::vector<Elem>(E.size(), 9)); }), ErrorKind::BadInput);
}

TEST(Hom, PreservesOperationsMatchesOracle) {
  const std::vector<Lattice> ls = {chain(2), chain(3), boolean(2), named("ex5"), named("m3")};
  for (const auto& A : ls)
    for (const auto& B : ls) {
      std::size_t count = 0;
      std::vector<Elem> m(A.size(), 0);
      while (true) {
        count += preserves_operations(A, B, m);
        std::size_t k = 0;
        while (k < A.size() && ++m[k] == B.size()) m[k++] = 0;
        if (k == A.size()) break;
      }
      EXPECT_EQ(count, oracle::homs(A, B).size());
    }
}

TEST(Kernel, Examples) {
  const Lattice E = named("ex5");
  EXPECT_EQ(kernel(make_hom(E, E, identity(E.size()))).members(), ElemSet::singleton(E.top()));
  const auto psi = b2_to_chain();
  EXPECT_EQ(kernel(psi).members(), set(psi.domain(), "a,1"));
  const auto top_map = make_hom(E, E, std::vector<Elem>(E.size(), E.top()));
  EXPECT_EQ(kernel(top_map).members(), E.all());
  const Lattice C = chain(2);
  const auto bottom_map = make_hom(C, C, std::vector<Elem>(2, C.bottom()));
  EXPECT_EQ(kind_of([&] { kernel(bottom_map); }), ErrorKind::NotTopPreserving);
}

TEST(Transport, PreimageExamples) {
  const Lattice E = named("ex5");
  const auto id = make_hom(E, E, identity(E.size()));
  for (const auto& q : all_filters(E)) EXPECT_EQ(preimage_filter(id, q), q);

  const auto psi = b2_to_chain();
  const Lattice& B = psi.domain();
  const Lattice& C = psi.codomain();
  const auto t = transport_preimage(psi, vee(B, "0,b"), filt(C, "1"));
  EXPECT_EQ(t.result, set(B, "a,1"));
  EXPECT_EQ(t.image_of_s, ElemSet::singleton(C.bottom()));
  EXPECT_TRUE(t.hypothesis);
  EXPECT_TRUE(t.conclusion);
}

TEST(Transport, ImageExamples) {
  const auto psi = b2_to_chain();
  const Lattice& B = psi.domain();
  const Lattice& C = psi.codomain();
  const auto t = image_filter(psi, vee(B, "0,b"), filt(B, "a,1"));
  EXPECT_EQ(t.result, ElemSet::singleton(C.top()));
  EXPECT_TRUE(t.conclusion);

  const Lattice B3 = boolean(3);
  const auto id = make_hom(B3, B3, identity(B3.size()));
  for (const auto& S : all_vee_closed_sets(B3))
    for (const auto& q : all_s_filters(B3, S)) EXPECT_EQ(image_filter(id, S, q).result, q.members());

  const Lattice E = named("ex5");
  const auto eid = make_hom(E, E, identity(E.size()));
  EXPECT_EQ(kind_of([&] { image_filter(eid, vee(E, "0,u"), filt(E, "v,w,1")); }), ErrorKind::NotComplemented);
  EXPECT_EQ(kind_of([&] { image_filter(psi, vee(B, "0,b"), filt(B, "1")); }), ErrorKind::KernelNotContained);
  EXPECT_EQ(kind_of([&] { image_filter(psi, vee(B, "0,a"), filt(B, "a,1")); }), ErrorKind::NotAnSFilter);
  const Lattice C3 = chain(3);
  const auto into = make_hom(C, C3, std::vector<Elem>{C3.bottom(), C3.top()});
  const Lattice& C2 = into.domain();
  EXPECT_EQ(kind_of([&] { image_filter(into, vee(C2, "0"), filt(C2, "1")); }), ErrorKind::NotOnto);
}

TEST(Quotient, Examples) {
  const Lattice E = named("ex5");
  const auto same = quotient(E, filt(E, "1"));
  EXPECT_EQ(same.classes.size(), E.size());
  EXPECT_TRUE(oracle::isomorphic(*same.quotient, E));

  const auto Q = quotient(E, filt(E, "w,1"));
  ASSERT_EQ(Q.classes.size(), 4u);
  EXPECT_TRUE(oracle::isomorphic(*Q.quotient, boolean(2)));
  EXPECT_EQ(Q.classes[Q.top_class()], set(E, "w,1"));
  EXPECT_TRUE(Q.quotient->index_of("{w,1}").has_value());

  const auto one = quotient(E, FilterSet::make(E, E.all()));
  EXPECT_EQ(one.quotient->size(), 1u);
}

TEST(Quotient, StructuralInvariantsOnDistributiveCatalog) {
  for (const auto& e : default_catalog()) {
    const Lattice& L = e.lattice;
    if (!L.is_distributive() || L.size() > 12) continue;
    for (const auto& p : all_filters(L)) {
      const auto Q = quotient(L, p);
      const Lattice& QL = *Q.quotient;
      EXPECT_EQ(kernel(Q.projection).members(), p.members()) << e.id;
      for (Elem u = 0; u < L.size(); ++u) {
        EXPECT_EQ(Q.class_of[u] == Q.top_class(), p.contains(u));
        for (Elem v = 0; v < L.size(); ++v) {
          EXPECT_EQ(QL.join(Q.class_of[u], Q.class_of[v]), Q.class_of[L.join(u, v)]);
          EXPECT_EQ(QL.meet(Q.class_of[u], Q.class_of[v]), Q.class_of[L.meet(u, v)]);
        }
      }
      for (const auto& S : all_vee_closed_sets(L)) EXPECT_TRUE(is_vee_closed(QL, Q.projection.image(S.members())));
    }
  }
}

TEST(Quotient, M3IsReportedNotRepaired) {
  const Lattice M = named("m3");
  EXPECT_EQ(kind_of([&] { quotient(M, filt(M, "a,1")); }), ErrorKind::QuotientOrderIllDefined);
}

TEST(QuotientSFilter, Examples) {
  const Lattice B = boolean(2);
  const auto Q = quotient(B, filt(B, "1"));
  const auto r = quotient_s_filter(Q, vee(B, "0,b"), filt(B, "a,1"));
  EXPECT_TRUE(r.is_s_bar_filter);
  EXPECT_TRUE(r.s_bar_vee_closed);
  EXPECT_EQ(r.filter.size(), 2u);

  const auto Q2 = quotient(B, filt(B, "a,1"));
  EXPECT_EQ(kind_of([&] { quotient_s_filter(Q2, vee(B, "0"), filt(B, "b,1")); }), ErrorKind::ModulusNotContained);
  EXPECT_EQ(kind_of([&] { quotient_s_filter(Q, vee(B, "0,a"), filt(B, "a,1")); }), ErrorKind::NotAnSFilter);
  const Lattice E = named("ex5");
  const auto QE = quotient(E, filt(E, "1"));
  EXPECT_EQ(kind_of([&] { quotient_s_filter(QE, vee(E, "0,u"), filt(E, "v,w,1")); }), ErrorKind::NotComplemented);
}

TEST(Product, Examples) {
  const auto P = product(std::vector<Lattice>{chain(2), chain(2)});
  EXPECT_TRUE(oracle::isomorphic(*P.lattice, boolean(2)));
  EXPECT_TRUE(P.lattice->index_of("(0,1)").has_value());
  EXPECT_EQ(P.lattice->parse_labels("(0,1),(1,1)").size(), 2u);

  const auto G = product(std::vector<Lattice>{chain(2), chain(3)});
  EXPECT_EQ(G.lattice->size(), 6u);
  EXPECT_TRUE(G.lattice->is_distributive());

  const Lattice E = named("ex5");
  const auto P1 = product(std::vector<Lattice>{E, chain(1)});
  EXPECT_TRUE(oracle::isomorphic(*P1.lattice, E));

  EXPECT_EQ(kind_of([] { product(std::vector<Lattice>{chain(2)}); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { product(std::vector<Lattice>{boolean(4), boolean(2), chain(2)}); }), ErrorKind::TooLarge);
}

TEST(Product, ComponentwiseOperations) {
  const auto P = product(std::vector<Lattice>{named("ex5"), named("n5")});
  const Lattice& L = *P.lattice;
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y) {
      const auto cx = P.coordinates(x), cy = P.coordinates(y);
      const auto cj = P.coordinates(L.join(x, y)), cm = P.coordinates(L.meet(x, y));
      for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(cj[i], P.factors[i]->join(cx[i], cy[i]));
        EXPECT_EQ(cm[i], P.factors[i]->meet(cx[i], cy[i]));
      }
      EXPECT_EQ(P.tuple_index(cx), x);
    }
}

TEST(ProductCheck, Examples) {
  const auto P = product(std::vector<Lattice>{chain(2), chain(2)});
  const Lattice& C = *P.factors[0];
  const VeeClosedSet s0[] = {vee(C, "0"), vee(C, "0")};
  const FilterSet q11[] = {filt(C, "1"), filt(C, "1")};
  const auto a = product_s_filter_check(P, s0, q11);
  EXPECT_TRUE(a.product_side && a.factor_side);

  const VeeClosedSet s01[] = {vee(C, "0"), vee(C, "0,1")};
  const auto b = product_s_filter_check(P, s01, q11);
  EXPECT_FALSE(b.product_side);
  EXPECT_FALSE(b.factor_side);

  const VeeClosedSet one[] = {vee(C, "0")};
  EXPECT_EQ(kind_of([&] { product_s_filter_check(P, one, q11); }), ErrorKind::ArityMismatch);
}
