#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "lattika/error.hpp"
#include "lattika/generators.hpp"
#include "lattika/lattice.hpp"

namespace lattika {

/// {"name": ..., "elements": [...], "covers": [[lower, upper], ...]}
inline nlohmann::json to_json(const Lattice& L, const std::string& name = "lattice") {
  nlohmann::json covers = nlohmann::json::array();
  for (auto [a, b] : L.covers()) covers.push_back({L.name(a), L.name(b)});
  return {{"name", name}, {"elements", L.names()}, {"covers", covers}};
}

/// Reads the document shape shared by lattices and posets.
inline Poset poset_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "document must be an object");
  for (const char* key : {"elements", "covers"})
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing \"") + key + "\"");
  Poset p;
  try {
    p.names = j.at("elements").get<std::vector<std::string>>();
    for (const auto& c : j.at("covers")) {
      if (!c.is_array() || c.size() != 2) throw Error(ErrorKind::ParseError, "cover must be a [lower, upper] pair");
      p.covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return p;
}

inline Lattice lattice_from_json(const nlohmann::json& j) { return lattice_from_covers(poset_from_json(j)); }

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorKind::ParseError, path + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline Lattice load_lattice(const std::string& path) { return lattice_from_json(read_json_file(path)); }

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::BadInput, "cannot write " + path);
  out << text;
}

inline void save_lattice(const Lattice& L, const std::string& path, const std::string& name = "lattice") {
  write_text(path, to_json(L, name).dump(2) + "\n");
}

/// One node per element, one edge per cover, bottom at the bottom.
inline std::string to_dot(const Lattice& L, const std::string& name = "lattice") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n";
  for (Elem i = 0; i < L.size(); ++i) os << "  n" << i << " [label=\"" << L.name(i) << "\"];\n";
  for (auto [a, b] : L.covers()) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

inline void emit_dot(const Lattice& L, const std::string& path, const std::string& name = "lattice") {
  write_text(path, to_dot(L, name));
}

/// Generator specs plus downsets:FILE (poset document on disk).
inline Lattice generate(const std::string& spec) {
  const std::string prefix = "downsets:";
  if (spec.rfind(prefix, 0) == 0) return downset_lattice(poset_from_json(read_json_file(spec.substr(prefix.size()))));
  return from_spec(spec);
}

}  // namespace lattika
