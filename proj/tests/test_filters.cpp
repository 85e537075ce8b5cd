#include <gtest/gtest.h>

#include "lattika/filters.hpp"
#include "lattika/generators.hpp"
#include "oracles.hpp"

using namespace lattika;

namespace {

const Lattice& ex5() {
  static const Lattice L = named("ex5");
  return L;
}

ElemSet set(const Lattice& L, std::string_view labels) { return L.parse_labels(labels); }
FilterSet filt(const Lattice& L, std::string_view labels) { return FilterSet::make(L, set(L, labels)); }
Elem at(const Lattice& L, std::string_view label) { return *L.index_of(label); }

}  // namespace

TEST(IsFilter, Examples) {
  const Lattice& L = ex5();
  EXPECT_TRUE(is_filter(L, set(L, "v,w,1")));
  EXPECT_TRUE(is_filter(L, set(L, "1")));
  EXPECT_FALSE(is_filter(L, ElemSet{}));
  EXPECT_FALSE(is_filter(L, set(L, "u,v,w,1")));
  EXPECT_THROW(FilterSet::make(L, set(L, "u,v,w,1")), Error);
}

TEST(IsFilter, MatchesOracleOnEverySubset) {
  for (const char* id : {"ex5", "m3", "n5"}) {
    const Lattice L = named(id);
    for (ElemSet X : oracle::all_subsets(L)) EXPECT_EQ(is_filter(L, X), oracle::is_filter(L, X)) << id << L.format(X);
  }
  const Lattice B3 = boolean(3);
  for (ElemSet X : oracle::all_subsets(B3)) EXPECT_EQ(is_filter(B3, X), oracle::is_filter(B3, X));
}

TEST(GenerateFilter, Examples) {
  const Lattice& L = ex5();
  EXPECT_EQ(generate_filter(L, set(L, "u")).members(), set(L, "u,w,1"));
  EXPECT_EQ(generate_filter(L, set(L, "1")).members(), set(L, "1"));
  EXPECT_EQ(generate_filter(L, set(L, "u,v")).members(), L.all());
  EXPECT_THROW(generate_filter(L, ElemSet{}), Error);
}

TEST(GenerateFilter, IsIntersectionOfFiltersAbove) {
  for (const char* id : {"ex5", "m3", "n5"}) {
    const Lattice L = named(id);
    const auto fs = oracle::filters(L);
    for (ElemSet X : oracle::all_subsets(L)) {
      if (X.empty()) continue;
      ElemSet meet_all = L.all();
      for (ElemSet F : fs)
        if (X.subset_of(F)) meet_all = meet_all & F;
      EXPECT_EQ(generate_filter(L, X).members(), meet_all);
    }
  }
}

TEST(AllFilters, Ex5) {
  const Lattice& L = ex5();
  const auto fs = all_filters(L);
  ASSERT_EQ(fs.size(), 5u);
  // Canonical order: by size, then numeric value.
  EXPECT_EQ(fs[0].members(), set(L, "1"));
  EXPECT_EQ(fs[1].members(), set(L, "w,1"));
  EXPECT_EQ(fs.back().members(), L.all());
}

TEST(AllFilters, ChainsAndOnePoint) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(all_filters(chain(n)).size(), n);
}

TEST(AllFilters, EqualsSubsetEnumerationCatalogWide) {
  for (const auto& e : default_catalog()) {
    const Lattice& L = e.lattice;
    const auto fs = all_filters(L);
    EXPECT_EQ(fs.size(), L.size()) << e.id;
    if (L.size() > 16) continue;
    auto expected = oracle::filters(L);
    std::vector<ElemSet> got;
    for (const auto& f : fs) got.push_back(f.members());
    std::sort(expected.begin(), expected.end(), canonical_less);
    EXPECT_EQ(got, expected) << e.id;
  }
}

TEST(PrimeMaximal, Ex5) {
  const Lattice& L = ex5();
  EXPECT_TRUE(is_prime_filter(L, filt(L, "u,w,1")));
  EXPECT_TRUE(is_maximal_filter(L, filt(L, "u,w,1")));
  EXPECT_FALSE(is_prime_filter(L, filt(L, "w,1")));
  EXPECT_TRUE(is_prime_filter(L, filt(L, "1")));
  EXPECT_FALSE(is_maximal_filter(L, filt(L, "1")));
  EXPECT_FALSE(is_prime_filter(L, FilterSet::make(L, L.all())));
}

TEST(PrimeMaximal, MatchOracles) {
  for (const auto& e : default_catalog()) {
    const Lattice& L = e.lattice;
    if (L.size() > 12) continue;
    for (const auto& F : all_filters(L)) {
      EXPECT_EQ(is_prime_filter(L, F), oracle::is_prime(L, F.members())) << e.id;
      EXPECT_EQ(is_maximal_filter(L, F), oracle::is_maximal(L, F.members())) << e.id;
    }
  }
}

TEST(PrimeMaximal, PrimeComplementIsVeeClosed) {
  for (const auto& e : default_catalog())
    for (const auto& F : prime_filters(e.lattice))
      EXPECT_TRUE(oracle::is_vee_closed(e.lattice, e.lattice.all().minus(F.members()))) << e.id;
}

TEST(FilterJoin, Examples) {
  const Lattice& L = ex5();
  const auto Tu = principal_filter(L, at(L, "u"));
  const auto Tv = principal_filter(L, at(L, "v"));
  EXPECT_EQ(filter_join(L, Tu, Tv).members(), set(L, "w,1"));
  for (const auto& F : all_filters(L)) {
    EXPECT_EQ(filter_join(L, F, F), F);
    EXPECT_EQ(filter_join(L, F, filt(L, "1")).members(), set(L, "1"));
  }
}

TEST(FilterJoin, InsideIntersectionAndFilterOnDistributive) {
  for (const auto& e : default_catalog()) {
    const Lattice& L = e.lattice;
    for (const auto& F : all_filters(L))
      for (const auto& G : all_filters(L)) {
        const ElemSet raw = raw_filter_join(L, F.members(), G.members());
        EXPECT_EQ(raw, oracle::elementwise_join(L, F.members(), G.members()));
        EXPECT_TRUE(raw.subset_of(F.members() & G.members()));
        if (L.is_distributive()) {
          EXPECT_TRUE(is_filter(L, raw)) << e.id;
        }
      }
  }
}

TEST(FilterJoin, MixedLatticesRejected) {
  const Lattice& L = ex5();
  const Lattice C = chain(5);
  try {
    filter_join(L, all_filters(L)[0], all_filters(C)[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedLattices);
  }
}

TEST(Residual, Examples) {
  const Lattice& L = ex5();
  const auto Tv = principal_filter(L, at(L, "v"));
  EXPECT_EQ(residual_filter(L, filt(L, "w,1"), Tv).members(), set(L, "u,w,1"));
  EXPECT_EQ(residual_filter(L, filt(L, "1"), Tv).members(), set(L, "1"));
  EXPECT_EQ(residual_filter(L, filt(L, "w,1"), filt(L, "v,w,1")).members(), set(L, "u,w,1"));
  // p inside q gives the whole lattice.
  EXPECT_EQ(residual_filter(L, filt(L, "v,w,1"), filt(L, "w,1")).members(), L.all());
}

TEST(Residual, ElementForm) {
  const Lattice& L = ex5();
  EXPECT_EQ(residual_elem(L, filt(L, "v,w,1"), at(L, "u")).members(), set(L, "v,w,1"));
  EXPECT_EQ(residual_elem(L, filt(L, "w,1"), at(L, "u")).members(), set(L, "v,w,1"));
  for (const auto& q : all_filters(L)) {
    EXPECT_EQ(residual_elem(L, q, L.bottom()), q);
    for (Elem t = 0; t < L.size(); ++t)
      EXPECT_EQ(residual_elem(L, q, t), residual_filter(L, q, principal_filter(L, t)));
  }
}

TEST(Residual, ContainsQAndMatchesOracle) {
  for (const auto& e : default_catalog()) {
    const Lattice& L = e.lattice;
    for (const auto& q : all_filters(L))
      for (const auto& p : all_filters(L)) {
        const ElemSet r = raw_residual(L, q.members(), p.members());
        EXPECT_EQ(r, oracle::residual(L, q.members(), p.members()));
        EXPECT_TRUE(q.members().subset_of(r));
        if (L.is_distributive()) {
          EXPECT_TRUE(is_filter(L, r)) << e.id;
        }
      }
  }
}

TEST(Residual, SubsetOverloadAndNonDistributiveReport) {
  const Lattice& L = ex5();
  EXPECT_EQ(residual_filter(L, filt(L, "w,1"), set(L, "u,v")).members(), set(L, "w,1"));
  EXPECT_EQ(residual_filter(L, filt(L, "w,1"), ElemSet{}).members(), L.all());
  // M3: ({1} : a) = {b,c,1} is not a filter.
  const Lattice M = named("m3");
  try {
    residual_elem(M, FilterSet::make(M, M.parse_labels("1")), *M.index_of("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAFilterResult);
  }
}

TEST(MinPrimes, Examples) {
  const Lattice& L = ex5();
  const auto mp = min_primes_over(L, filt(L, "w,1"));
  ASSERT_EQ(mp.size(), 2u);
  EXPECT_EQ(mp[0].members(), set(L, "u,w,1"));
  EXPECT_EQ(mp[1].members(), set(L, "v,w,1"));
  const auto top = min_primes_over(L, filt(L, "1"));
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].members(), set(L, "1"));

  const Lattice C = chain(5);
  for (const auto& F : all_filters(C)) {
    if (!is_proper(C, F)) continue;
    const auto got = min_primes_over(C, F);
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0], F);
  }
  EXPECT_THROW(min_primes_over(L, FilterSet::make(L, L.all())), Error);
}
