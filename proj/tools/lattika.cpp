#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lattika/lattika.hpp"

namespace {

using namespace lattika;
using nlohmann::json;

std::uint64_t catalog_seed() {
  const char* env = std::getenv("LATTIKA_SEED");
  if (!env || !*env) return kDefaultCatalogSeed;
  try {
    std::size_t used = 0;
    const auto seed = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw Error(ErrorKind::BadParams, std::string("LATTIKA_SEED is not an integer: ") + env);
  }
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text(path, text);
}

json labels_json(const Lattice& L, ElemSet xs) { return L.labels(xs); }

void print_sets(const Lattice& L, const std::vector<FilterSet>& fs, bool as_json) {
  if (as_json) {
    json arr = json::array();
    for (const auto& f : fs) arr.push_back(labels_json(L, f.members()));
    std::cout << arr.dump() << "\n";
    return;
  }
  for (const auto& f : fs) std::cout << L.format(f.members()) << "\n";
}

int cmd_check(const std::string& file, bool as_json) {
  const Lattice L = load_lattice(file);
  json j = {{"elements", L.size()},
            {"bottom", L.name(L.bottom())},
            {"top", L.name(L.top())},
            {"covers", L.covers().size()},
            {"distributive", L.is_distributive()},
            {"modular", L.is_modular()},
            {"complemented", L.is_complemented()},
            {"filters", all_filters(L).size()},
            {"vee_closed_sets", all_vee_closed_sets(L).size()}};
  if (as_json) {
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << file << ": bounded lattice\n";
  for (const auto& [k, v] : j.items()) std::cout << "  " << std::left << std::setw(16) << k << v.dump() << "\n";
  return 0;
}

int cmd_filters(const std::string& file, bool prime, bool maximal, bool as_json) {
  const Lattice L = load_lattice(file);
  print_sets(L, prime ? prime_filters(L) : maximal ? maximal_filters(L) : all_filters(L), as_json);
  return 0;
}

int cmd_sfilters(const std::string& file, const std::string& s, bool as_json) {
  const Lattice L = load_lattice(file);
  const auto S = VeeClosedSet::make(L, L.parse_labels(s));
  print_sets(L, all_s_filters(L, S), as_json);
  return 0;
}

int cmd_saturate(const std::string& file, const std::string& s, const std::string& filter, bool as_json) {
  const Lattice L = load_lattice(file);
  const auto S = VeeClosedSet::make(L, L.parse_labels(s));
  const auto p = FilterSet::make(L, L.parse_labels(filter));
  const ElemSet sat = saturate(L, S, p);
  std::optional<FilterSet> smallest;
  std::string why;
  try {
    smallest = smallest_s_filter(L, S, p);
  } catch (const Error& e) {
    why = e.what();
  }
  if (as_json) {
    json j = {{"saturation", labels_json(L, sat)},
              {"is_filter", is_filter(L, sat)},
              {"is_s_filter", is_s_filter_raw(L, S.members(), sat)},
              {"smallest_s_filter", smallest ? labels_json(L, smallest->members()) : json(nullptr)}};
    if (!smallest) j["error"] = why;
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::cout << "saturation " << L.format(sat) << (is_filter(L, sat) ? "" : " (not a filter)") << "\n";
  if (smallest)
    std::cout << "smallest S-filter " << L.format(smallest->members()) << "\n";
  else
    std::cout << "no smallest S-filter: " << why << "\n";
  return 0;
}

int cmd_quotient(const std::string& file, const std::string& filter, const std::string& out) {
  const Lattice L = load_lattice(file);
  const auto Q = quotient(L, FilterSet::make(L, L.parse_labels(filter)));
  emit(out, to_json(*Q.quotient, "quotient").dump(2) + "\n");
  return 0;
}

int cmd_product(const std::string& a, const std::string& b, const std::string& out) {
  const auto P = product(std::vector<Lattice>{load_lattice(a), load_lattice(b)});
  emit(out, to_json(*P.lattice, "product").dump(2) + "\n");
  return 0;
}

int cmd_gen(const std::string& spec, const std::string& out) {
  emit(out, to_json(generate(spec), spec).dump(2) + "\n");
  return 0;
}

int cmd_dot(const std::string& file, const std::string& out) {
  emit(out, to_dot(load_lattice(file), file));
  return 0;
}

int cmd_verify(const std::string& theorem, std::size_t max_size, const std::string& json_out, bool want_json) {
  const std::uint64_t seed = catalog_seed();
  const auto catalog = default_catalog(seed);
  const auto reports = harness::run_theorem_suite(catalog, theorem, max_size);
  const auto limited = harness::limit_size(catalog, max_size);

  std::size_t violations = 0;
  std::string lines;
  for (const auto& r : reports) {
    violations += r.violations;
    lines += r.to_json().dump() + "\n";
  }
  lines += harness::summary_json(reports, limited, seed).dump() + "\n";

  // Timing goes to the human-readable stream only, so JSON output is reproducible.
  std::ostream& human = want_json && (json_out.empty() || json_out == "-") ? std::cerr : std::cout;
  double total = 0;
  for (const auto& r : reports) {
    total += r.wall_seconds;
    human << std::left << std::setw(22) << r.theorem << std::setw(10) << r.status() << "instances " << std::setw(10)
          << r.instances << "violations " << std::setw(4) << r.violations << std::fixed << std::setprecision(3)
          << r.wall_seconds << "s";
    if (r.distributive_only)
      human << "  [distributive sub-catalog; elsewhere " << r.nondistributive_violations << "/"
            << r.nondistributive_instances << " fail]";
    human << "\n";
    if (!r.witnesses.empty()) human << "    first witness: " << r.witnesses.front().describe() << "\n";
  }
  human << reports.size() << " theorems, " << violations << " violations, " << std::fixed << std::setprecision(2)
        << total << "s\n";
  if (want_json) emit(json_out, lines);
  return violations == 0 ? 0 : 1;
}

int cmd_hunt(const std::string& theorem, const std::string& drop, bool as_json) {
  const auto catalog = default_catalog(catalog_seed());
  const auto w = harness::hunt_counterexample(theorem, drop, catalog);
  if (as_json) {
    std::cout << (w ? w->to_json() : json(nullptr)).dump() << "\n";
  } else if (w) {
    std::cout << "counterexample: " << w->describe() << "\n";
  } else {
    std::cout << "no counterexample in the catalog\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattika: filters and S-filters of finite bounded lattices"};
  app.require_subcommand(1);

  std::string file, file2, s, filter, out, theorem, drop, spec;
  bool as_json = false, prime = false, maximal = false;
  std::size_t max_size = kMaxElements;

  auto* check = app.add_subcommand("check", "validate a lattice file and print its properties");
  check->add_option("file", file)->required();
  check->add_flag("--json", as_json);

  auto* filters = app.add_subcommand("filters", "list filters");
  filters->add_option("file", file)->required();
  auto* prime_flag = filters->add_flag("--prime", prime);
  filters->add_flag("--maximal", maximal)->excludes(prime_flag);
  filters->add_flag("--json", as_json);

  auto* sfilters = app.add_subcommand("sfilters", "list S-filters for a join-closed S");
  sfilters->add_option("file", file)->required();
  sfilters->add_option("--s", s, "comma-separated labels")->required();
  sfilters->add_flag("--json", as_json);

  auto* sat = app.add_subcommand("saturate", "saturate a filter by S");
  sat->add_option("file", file)->required();
  sat->add_option("--s", s, "comma-separated labels")->required();
  sat->add_option("--filter", filter, "comma-separated labels")->required();
  sat->add_flag("--json", as_json);

  auto* quot = app.add_subcommand("quotient", "quotient lattice modulo a filter");
  quot->add_option("file", file)->required();
  quot->add_option("--filter", filter, "comma-separated labels")->required();
  quot->add_option("-o,--output", out, "output file, stdout by default");

  auto* prod = app.add_subcommand("product", "cartesian product of two lattices");
  prod->add_option("a", file)->required();
  prod->add_option("b", file2)->required();
  prod->add_option("-o,--output", out, "output file, stdout by default");

  auto* gen = app.add_subcommand("gen", "generate a lattice (chain:N, boolean:K, divisors:N, random:N,SEED, "
                                        "downsets:FILE, ex5, m3, n5)");
  gen->add_option("spec", spec)->required();
  gen->add_option("-o,--output", out, "output file, stdout by default");

  auto* verify = app.add_subcommand("verify", "run the theorem suite over the default catalog");
  verify->add_option("--theorem", theorem, "run a single theorem by id");
  verify->add_option("--max-size", max_size, "skip catalog lattices larger than this");
  auto* json_opt = verify->add_option("--json", out, "write JSON lines to a file, or stdout when omitted")
                       ->expected(0, 1)
                       ->default_str("-");

  auto* hunt = app.add_subcommand("hunt", "search for a counterexample with one hypothesis dropped");
  hunt->add_option("--theorem", theorem, "theorem id")->required();
  hunt->add_option("--drop", drop, "hypothesis to drop; empty runs the plain check")->required();
  hunt->add_flag("--json", as_json);

  auto* dot = app.add_subcommand("dot", "Hasse diagram in DOT");
  dot->add_option("file", file)->required();
  dot->add_option("-o,--output", out, "output file, stdout by default");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(file, as_json);
    if (*filters) return cmd_filters(file, prime, maximal, as_json);
    if (*sfilters) return cmd_sfilters(file, s, as_json);
    if (*sat) return cmd_saturate(file, s, filter, as_json);
    if (*quot) return cmd_quotient(file, filter, out);
    if (*prod) return cmd_product(file, file2, out);
    if (*gen) return cmd_gen(spec, out);
    if (*verify) return cmd_verify(theorem, max_size, out, json_opt->count() > 0);
    if (*hunt) return cmd_hunt(theorem, drop, as_json);
    if (*dot) return cmd_dot(file, out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
