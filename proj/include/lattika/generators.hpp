#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lattika/constructions.hpp"
#include "lattika/elemset.hpp"
#include "lattika/error.hpp"
#include "lattika/lattice.hpp"

namespace lattika {

/// 64-bit linear congruential generator (Knuth's MMIX constants). Outputs
/// the high 32 bits of the state after each step.
class Lcg {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ull;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ull;

  explicit Lcg(std::uint64_t seed) : state_(seed) {}

  std::uint32_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return static_cast<std::uint32_t>(state_ >> 32);
  }

  std::uint32_t below(std::uint32_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

/// 0 < c1 < ... < 1. chain(1) is the one-point lattice.
inline Lattice chain(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "chain length must be at least 1");
  if (n > kMaxElements) throw Error(ErrorKind::TooLarge, "chain of " + std::to_string(n));
  std::vector<std::string> names(n);
  std::vector<ElemSet> up(n);
  for (Elem i = 0; i < n; ++i) {
    names[i] = i == 0 ? "0" : i + 1 == n ? "1" : "c" + std::to_string(i);
    for (Elem j = i; j < n; ++j) up[i].insert(j);
  }
  return Lattice::from_order(std::move(names), std::move(up));
}

/// Subsets of the first k letters ordered by inclusion; "0" and "1" name the
/// empty and the full set.
inline Lattice boolean(std::size_t k) {
  if (k > 6) throw Error(ErrorKind::TooLarge, "boolean(" + std::to_string(k) + ") exceeds 64 elements");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> names(n);
  std::vector<ElemSet> up(n);
  for (Elem x = 0; x < n; ++x) {
    if (x == 0) {
      names[x] = "0";
    } else if (x + 1 == n) {
      names[x] = "1";
    } else {
      for (std::size_t b = 0; b < k; ++b)
        if ((x >> b) & 1u) names[x] += static_cast<char>('a' + b);
    }
    for (Elem y = 0; y < n; ++y)
      if ((x & ~y) == 0) up[x].insert(y);
  }
  return Lattice::from_order(std::move(names), std::move(up));
}

/// ex5 (0 < u, v < w < 1), m3 (diamond with three atoms), n5 (pentagon).
inline Lattice named(std::string_view id) {
  if (id == "ex5")
    return lattice_from_covers({{"0", "u", "v", "w", "1"}, {{"0", "u"}, {"0", "v"}, {"u", "w"}, {"v", "w"}, {"w", "1"}}});
  if (id == "m3")
    return lattice_from_covers(
        {{"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}});
  if (id == "n5")
    return lattice_from_covers({{"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "c"}, {"c", "1"}, {"0", "b"}, {"b", "1"}}});
  throw Error(ErrorKind::UnknownName, "no named lattice '" + std::string(id) + "'");
}

/// Divisors of n under divisibility: meet = gcd, join = lcm.
inline Lattice divisor_lattice(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::BadParams, "divisor lattice needs n >= 1");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    divs.push_back(d);
    if (d != n / d) divs.push_back(n / d);
  }
  if (divs.size() > kMaxElements) throw Error(ErrorKind::TooLarge, std::to_string(n) + " has too many divisors");
  std::sort(divs.begin(), divs.end());
  std::vector<std::string> names;
  std::vector<ElemSet> up(divs.size());
  for (Elem i = 0; i < divs.size(); ++i) {
    names.push_back(std::to_string(divs[i]));
    for (Elem j = 0; j < divs.size(); ++j)
      if (divs[j] % divs[i] == 0) up[i].insert(j);
  }
  return Lattice::from_order(std::move(names), std::move(up));
}

namespace detail {
/// Reflexive-transitive closure of a poset's covers, one up-set per element.
inline std::vector<ElemSet> poset_order(const Poset& p) {
  const std::size_t n = p.names.size();
  if (n > 63) throw Error(ErrorKind::TooLarge, "poset too large");
  std::vector<ElemSet> up(n);
  for (Elem i = 0; i < n; ++i) up[i].insert(i);
  auto find = [&](const std::string& s) -> Elem {
    for (Elem i = 0; i < n; ++i)
      if (p.names[i] == s) return i;
    throw Error(ErrorKind::BadInput, "cover references unknown label '" + s + "'");
  };
  for (const auto& [lo, hi] : p.covers) up[find(lo)].insert(find(hi));
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i].contains(k)) up[i] |= up[k];
  for (Elem i = 0; i < n; ++i)
    for (Elem j : up[i])
      if (j != i && up[j].contains(i)) throw Error(ErrorKind::CyclicCovers, "cycle through " + p.names[i]);
  return up;
}
}  // namespace detail

/// Down-sets of a poset ordered by inclusion. Always distributive.
inline Lattice downset_lattice(const Poset& p) {
  const auto up = detail::poset_order(p);
  const std::size_t n = up.size();
  std::vector<ElemSet> down(n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j : up[i]) down[j].insert(i);

  std::set<std::uint64_t> seen{0};
  std::vector<ElemSet> frontier{ElemSet{}};
  while (!frontier.empty()) {
    std::vector<ElemSet> next;
    for (ElemSet d : frontier) {
      for (Elem x = 0; x < n; ++x) {
        if (d.contains(x)) continue;
        ElemSet strictly_below = down[x];
        strictly_below.erase(x);
        if (!strictly_below.subset_of(d)) continue;
        ElemSet e = d;
        e.insert(x);
        if (seen.insert(e.bits()).second) {
          if (seen.size() > kMaxElements) throw Error(ErrorKind::TooLarge, "more than 64 down-sets");
          next.push_back(e);
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<ElemSet> sets;
  for (auto b : seen) sets.emplace_back(b);
  std::sort(sets.begin(), sets.end(), canonical_less);

  std::vector<std::string> names;
  std::vector<ElemSet> order(sets.size());
  for (Elem i = 0; i < sets.size(); ++i) {
    std::string label = "{";
    bool first = true;
    for (Elem x : sets[i]) {
      label += (first ? "" : ",") + p.names[x];
      first = false;
    }
    names.push_back(label + "}");
    for (Elem j = 0; j < sets.size(); ++j)
      if (sets[i].subset_of(sets[j])) order[i].insert(j);
  }
  return Lattice::from_order(std::move(names), std::move(order));
}

/// Deterministic pseudo-random poset on p0..p{n-1}: each pair i < j of the
/// identity linear extension gets a relation from the top bit of one LCG
/// draw, then the relation is transitively closed. Covers are the reduction.
inline Poset random_poset(std::size_t n, std::uint64_t seed) {
  if (n < 1 || n > 6) throw Error(ErrorKind::BadParams, "random_poset needs 1 <= n <= 6");
  Lcg rng(seed);
  std::vector<ElemSet> up(n);
  for (Elem i = 0; i < n; ++i) up[i].insert(i);
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (rng.next() >> 31) up[i].insert(j);
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i].contains(k)) up[i] |= up[k];

  Poset p;
  for (Elem i = 0; i < n; ++i) p.names.push_back("p" + std::to_string(i));
  for (Elem i = 0; i < n; ++i) {
    ElemSet above = up[i];
    above.erase(i);
    for (Elem j : above) {
      bool cover = true;
      for (Elem k : above)
        if (k != j && up[k].contains(j)) cover = false;
      if (cover) p.covers.emplace_back(p.names[i], p.names[j]);
    }
  }
  return p;
}

struct CatalogEntry {
  std::string id;
  Lattice lattice;
  std::string provenance;  // a generator spec, e.g. "divisors:60" or "random:5,42"
};

namespace detail {
inline std::uint64_t parse_uint(std::string_view s, std::string_view spec) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorKind::BadParams, "bad number in generator spec '" + std::string(spec) + "'");
  return v;
}
}  // namespace detail

/// Builds a lattice from a generator spec: chain:N, boolean:K, divisors:N,
/// random:N,SEED (down-set lattice of a random poset), or a named lattice.
/// Poset files (downsets:FILE) are handled by the I/O layer.
inline Lattice from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) return named(spec);
  const auto family = spec.substr(0, colon);
  const auto args = spec.substr(colon + 1);
  if (family == "chain") return chain(detail::parse_uint(args, spec));
  if (family == "boolean") return boolean(detail::parse_uint(args, spec));
  if (family == "divisors") return divisor_lattice(detail::parse_uint(args, spec));
  if (family == "random") {
    const auto comma = args.find(',');
    if (comma == std::string_view::npos) throw Error(ErrorKind::BadParams, "random spec needs N,SEED");
    return downset_lattice(random_poset(detail::parse_uint(args.substr(0, comma), spec),
                                        detail::parse_uint(args.substr(comma + 1), spec)));
  }
  throw Error(ErrorKind::UnknownName, "unknown generator family '" + std::string(family) + "'");
}

inline constexpr std::uint64_t kDefaultCatalogSeed = 20240917;
inline constexpr std::size_t kRandomCatalogEntries = 100;

/// chain(2..6), boolean(1..3), ex5, m3, n5, divisors of 12/30/36/60, and 100
/// down-set lattices of random posets with 1..5 points. Sorted by id.
inline std::vector<CatalogEntry> default_catalog(std::uint64_t seed = kDefaultCatalogSeed) {
  std::vector<std::string> specs;
  for (int n = 2; n <= 6; ++n) specs.push_back("chain:" + std::to_string(n));
  for (int k = 1; k <= 3; ++k) specs.push_back("boolean:" + std::to_string(k));
  for (const char* nm : {"ex5", "m3", "n5"}) specs.emplace_back(nm);
  for (int d : {12, 30, 36, 60}) specs.push_back("divisors:" + std::to_string(d));

  std::vector<CatalogEntry> out;
  auto id_for = [](const std::string& spec) {
    std::string id = spec;
    std::replace(id.begin(), id.end(), ':', '-');
    return id;
  };
  for (const auto& s : specs) out.push_back({id_for(s), from_spec(s), s});

  Lcg rng(seed);
  for (std::size_t i = 0; i < kRandomCatalogEntries; ++i) {
    const std::size_t n = 1 + rng.below(5);
    const std::uint64_t sample_seed = (static_cast<std::uint64_t>(rng.next()) << 32) | rng.next();
    const std::string spec = "random:" + std::to_string(n) + "," + std::to_string(sample_seed);
    char id[32];
    std::snprintf(id, sizeof id, "downset-%03zu", i);
    out.push_back({id, from_spec(spec), spec});
  }
  std::sort(out.begin(), out.end(), [](const CatalogEntry& a, const CatalogEntry& b) { return a.id < b.id; });
  return out;
}

}  // namespace lattika
