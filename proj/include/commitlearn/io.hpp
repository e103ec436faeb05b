#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "commitlearn/errors.hpp"
#include "commitlearn/game.hpp"
#include "commitlearn/oracle.hpp"

namespace commitlearn::io {

using json = nlohmann::json;

/// Wraps integer literals too long for a 64-bit integer in quotes so the
/// JSON parser keeps their digits instead of rounding them to doubles.
inline std::string quote_big_integers(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_string = false;
  for (std::size_t i = 0; i < text.size();) {
    const char ch = text[i];
    if (in_string) {
      out += ch;
      if (ch == '\\' && i + 1 < text.size()) out += text[++i];
      else if (ch == '"') in_string = false;
      ++i;
      continue;
    }
    if (ch == '"') {
      in_string = true;
      out += ch;
      ++i;
      continue;
    }
    if (ch == '-' || (ch >= '0' && ch <= '9')) {
      std::size_t j = i + 1;
      while (j < text.size() && std::string_view("0123456789.eE+-").find(text[j]) != std::string_view::npos) ++j;
      const std::string_view tok = text.substr(i, j - i);
      const bool integral = tok.find_first_of(".eE") == std::string_view::npos;
      const std::size_t digits = tok.size() - (tok.front() == '-' ? 1 : 0);
      if (integral && digits > 18) {
        out += '"';
        out += tok;
        out += '"';
      } else {
        out += tok;
      }
      i = j;
      continue;
    }
    out += ch;
    ++i;
  }
  return out;
}

inline std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json(std::string_view text) {
  try {
    [[maybe_unused]] const json probe = json::parse(text);  // positions refer to the original text
  } catch (const json::parse_error& e) {
    throw parse_error("malformed JSON at " + line_col(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  return json::parse(quote_big_integers(text));
}

inline BigInt parse_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
  if (j.is_string()) {
    try {
      return Rational::parse_integer(j.get<std::string>());
    } catch (const parse_error&) {
    }
  }
  throw parse_error(where + ": expected an integer");
}

/// [num, den] with a positive denominator.
inline Rational parse_rational(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw parse_error(where + ": expected [numerator, denominator]");
  BigInt num = parse_integer(j[0], where + "[0]");
  BigInt den = parse_integer(j[1], where + "[1]");
  if (den <= 0) throw parse_error(where + ": denominator must be positive");
  return Rational(num, den);
}

inline Point parse_point(const json& j, const std::string& where) {
  if (!j.is_array()) throw parse_error(where + ": expected an array");
  Point p;
  for (std::size_t i = 0; i < j.size(); ++i) p.push_back(parse_rational(j[i], where + "[" + std::to_string(i) + "]"));
  return p;
}

inline Matrix parse_matrix(const json& j, std::size_t m, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != m) throw parse_error(where + ": expected " + std::to_string(m) + " rows");
  Matrix a;
  for (std::size_t i = 0; i < m; ++i) {
    const std::string row = where + "[" + std::to_string(i) + "]";
    a.push_back(parse_point(j[i], row));
    if (a.back().size() != n) throw parse_error(row + ": expected " + std::to_string(n) + " entries");
  }
  return a;
}

inline std::size_t parse_count(const json& obj, const char* key) {
  if (!obj.contains(key)) throw parse_error(std::string("missing field '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw parse_error(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

struct InstanceMeta {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> bits;
};

inline GameInstance parse_instance_text(std::string_view text, InstanceMeta* meta = nullptr) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw parse_error("instance must be a JSON object");
  const std::size_t m = parse_count(doc, "m");
  const std::size_t n = parse_count(doc, "n");
  if (!doc.contains("leader")) throw parse_error("missing field 'leader'");
  if (!doc.contains("follower")) throw parse_error("missing field 'follower'");
  Matrix leader = parse_matrix(doc.at("leader"), m, n, "leader");
  Matrix follower = parse_matrix(doc.at("follower"), m, n, "follower");
  if (meta) {
    if (doc.contains("name") && doc["name"].is_string()) meta->name = doc["name"].get<std::string>();
    if (doc.contains("seed") && doc["seed"].is_number_unsigned()) meta->seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("bits") && doc["bits"].is_number_unsigned()) meta->bits = doc["bits"].get<std::size_t>();
  }
  return GameInstance(std::move(leader), std::move(follower));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

inline GameInstance parse_instance(const std::string& path, InstanceMeta* meta = nullptr) {
  const std::string text = read_file(path);
  try {
    return parse_instance_text(text, meta);
  } catch (const parse_error& e) {
    throw parse_error(path + ": " + e.what());
  }
}

// Writers emit integers as bare JSON numbers of any length.

inline std::string rational_json(const Rational& q) {
  return "[" + q.numerator().get_str() + "," + q.denominator().get_str() + "]";
}

inline std::string point_json(std::span<const Rational> p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += rational_json(p[i]);
  }
  return s + "]";
}

inline std::string matrix_json(const Matrix& a, const std::string& indent) {
  std::string s = "[\n";
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += indent + "  " + point_json(a[i]) + (i + 1 < a.size() ? ",\n" : "\n");
  }
  return s + indent + "]";
}

inline std::string serialize_instance(const GameInstance& g, const InstanceMeta& meta = {}) {
  std::string s = "{\n";
  if (!meta.name.empty()) s += "  \"name\": " + json(meta.name).dump() + ",\n";
  if (meta.seed) s += "  \"seed\": " + std::to_string(*meta.seed) + ",\n";
  if (meta.bits) s += "  \"bits\": " + std::to_string(*meta.bits) + ",\n";
  s += "  \"m\": " + std::to_string(g.leader_actions()) + ",\n";
  s += "  \"n\": " + std::to_string(g.follower_actions()) + ",\n";
  s += "  \"leader\": " + matrix_json(g.leader(), "  ") + ",\n";
  s += "  \"follower\": " + matrix_json(g.follower(), "  ") + "\n";
  return s + "}\n";
}

/// One line per query: {"k": index, "p": [[num,den],...], "a": response}.
inline std::string transcript_jsonl(const std::vector<TranscriptEntry>& entries) {
  std::string s;
  for (const auto& e : entries) {
    s += "{\"k\":" + std::to_string(e.index) + ",\"p\":" + point_json(e.strategy.span()) +
         ",\"a\":" + std::to_string(e.response) + "}\n";
  }
  return s;
}

struct RunReport {
  std::uint64_t seed = 0;
  Rational zeta;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t payoff_bits = 0;
  std::size_t queries = 0;
  Rational value;
  Point p_star;
  bool success = false;
  Mode mode = Mode::standard;
  std::string precision = "certified";
  std::optional<Rational> baseline_value;
  std::optional<bool> match;
};

inline std::string serialize_report(const RunReport& r) {
  std::string s = "{\n";
  s += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  s += "  \"zeta\": " + rational_json(r.zeta) + ",\n";
  s += "  \"m\": " + std::to_string(r.m) + ",\n";
  s += "  \"n\": " + std::to_string(r.n) + ",\n";
  s += "  \"L\": " + std::to_string(r.payoff_bits) + ",\n";
  s += "  \"mode\": \"" + std::string(r.mode == Mode::standard ? "standard" : "equivalent-actions") + "\",\n";
  s += "  \"precision\": \"" + r.precision + "\",\n";
  s += "  \"queries\": " + std::to_string(r.queries) + ",\n";
  s += "  \"value\": " + rational_json(r.value) + ",\n";
  s += "  \"p_star\": " + point_json(r.p_star) + ",\n";
  s += std::string("  \"success\": ") + (r.success ? "true" : "false");
  if (r.baseline_value) s += ",\n  \"baseline_value\": " + rational_json(*r.baseline_value);
  if (r.match) s += std::string(",\n  \"match\": ") + (*r.match ? "true" : "false");
  return s + "\n}\n";
}

inline RunReport parse_report_text(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw parse_error("report must be a JSON object");
  RunReport r;
  auto need = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw parse_error(std::string("report is missing '") + key + "'");
    return doc.at(key);
  };
  r.seed = need("seed").get<std::uint64_t>();
  r.zeta = parse_rational(need("zeta"), "zeta");
  r.m = parse_count(doc, "m");
  r.n = parse_count(doc, "n");
  r.payoff_bits = parse_count(doc, "L");
  r.queries = parse_count(doc, "queries");
  r.value = parse_rational(need("value"), "value");
  r.p_star = parse_point(need("p_star"), "p_star");
  if (!need("success").is_boolean()) throw parse_error("'success' must be a boolean");
  r.success = doc.at("success").get<bool>();
  if (doc.contains("mode")) {
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "standard") r.mode = Mode::standard;
    else if (mode == "equivalent-actions") r.mode = Mode::equivalent_actions;
    else throw parse_error("unknown mode '" + mode + "'");
  }
  if (doc.contains("precision")) r.precision = doc.at("precision").get<std::string>();
  if (doc.contains("baseline_value")) r.baseline_value = parse_rational(doc.at("baseline_value"), "baseline_value");
  if (doc.contains("match")) r.match = doc.at("match").get<bool>();
  return r;
}

}  // namespace commitlearn::io
