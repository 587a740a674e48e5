#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "fingen/action.hpp"
#include "fingen/fixtures.hpp"
#include "fingen/partition.hpp"
#include "fingen/types.hpp"

namespace fingen {

// "p" or "p/q" with a positive denominator.
inline Rational parse_rational(const std::string& text) {
  const auto parse_int = [&](const std::string& part) {
    std::int64_t value = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
      throw ParseError("not an integer: '" + part + "'");
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw ParseError("denominator must be positive in '" + text + "'");
  return Rational(num, den);
}

struct SystemFile {
  FiniteAction action;
  std::optional<Partition> partition;
  std::optional<InducedActionSpec> induced;
};

namespace detail {

inline InducedActionSpec parse_induced(const nlohmann::json& j) {
  InducedActionSpec spec;
  spec.coset_count = j.at("coset_count").get<std::uint32_t>();
  spec.fiber_size = j.at("fiber_size").get<std::uint32_t>();
  spec.coset_action = j.at("coset_action").get<std::vector<Perm>>();
  spec.schreier = j.at("schreier").get<std::vector<std::vector<Perm>>>();
  if (j.contains("generator_names"))
    spec.generator_names = j.at("generator_names").get<std::vector<std::string>>();
  return spec;
}

}  // namespace detail

// A system is either given directly (points + generators) or as an induced
// block expanded into its product action. A partition lists one class id per
// point; ids are renumbered by first appearance.
inline SystemFile parse_system(const nlohmann::json& j) {
  try {
    SystemFile sf;
    if (j.contains("induced")) {
      if (j.contains("points") || j.contains("generators"))
        throw ParseError("give either points/generators or an induced block, not both");
      sf.induced = detail::parse_induced(j.at("induced"));
      sf.action = induced_action(*sf.induced);
    } else {
      const auto points = j.at("points").get<std::uint32_t>();
      auto gens = j.at("generators").get<std::vector<Perm>>();
      std::vector<std::string> names;
      if (j.contains("generator_names"))
        names = j.at("generator_names").get<std::vector<std::string>>();
      sf.action = make_action(points, std::move(gens), names);
    }
    if (j.contains("partition")) {
      const auto labels = j.at("partition").get<std::vector<std::uint32_t>>();
      sf.partition = partition_from_labels(sf.action.points, labels);
    }
    return sf;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << content;
  if (!out) throw DomainError("write to '" + path + "' failed");
}

inline SystemFile load_system(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("'") + path + "': " + e.what());
  }
  return parse_system(j);
}

inline nlohmann::json serialize_system(const SystemFile& sf) {
  nlohmann::json j;
  if (sf.induced) {
    nlohmann::json ind;
    ind["coset_count"] = sf.induced->coset_count;
    ind["fiber_size"] = sf.induced->fiber_size;
    ind["coset_action"] = sf.induced->coset_action;
    ind["schreier"] = sf.induced->schreier;
    if (!sf.induced->generator_names.empty())
      ind["generator_names"] = sf.induced->generator_names;
    j["induced"] = ind;
  } else {
    j["points"] = sf.action.points;
    j["generators"] = sf.action.generators;
    j["generator_names"] = sf.action.generator_names;
  }
  if (sf.partition) j["partition"] = sf.partition->class_of;
  return j;
}

// Plain-text report: [section] headers and fixed-format key = value lines.
// Floating point always prints with six decimals so equal runs produce equal
// bytes.
class Report {
 public:
  void section(const std::string& name) {
    if (!buf_.empty()) buf_ += '\n';
    buf_ += '[';
    buf_ += name;
    buf_ += "]\n";
  }
  void kv(const std::string& key, const std::string& value) {
    buf_ += key;
    buf_ += " = ";
    buf_ += value;
    buf_ += '\n';
  }
  void kv(const std::string& key, const char* value) { kv(key, std::string(value)); }
  void kv(const std::string& key, bool value) { kv(key, value ? "true" : "false"); }
  void kv(const std::string& key, double value) {
    char tmp[64];
    std::snprintf(tmp, sizeof(tmp), "%.6f", value);
    kv(key, std::string(tmp));
  }
  void kv(const std::string& key, const Rational& value) { kv(key, format_rational(value)); }
  template <typename T,
            typename = std::enable_if_t<std::is_integral_v<T> && !std::is_same_v<T, bool>>>
  void kv(const std::string& key, T value) {
    kv(key, std::to_string(value));
  }
  void kv_word(const std::string& key, const SymbolWord& word) {
    kv(key, "\"" + word + "\"");
  }
  template <typename T>
  void kv_list(const std::string& key, const std::vector<T>& values) {
    std::string joined;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) joined += ',';
      joined += std::to_string(values[i]);
    }
    kv(key, joined);
  }
  const std::string& str() const { return buf_; }

 private:
  std::string buf_;
};

}  // namespace fingen
