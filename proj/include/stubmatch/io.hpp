// File formats: point configurations as a JSON header line plus CSV rows
// (id,color,x1,...,xd,stubs), matchings as red_id,blue_id,length CSV, mark
// laws and simulation parameters as JSON. Doubles are written with 17
// significant digits so round-trips are bit-exact. Writes go through a
// temp-file-plus-rename so readers never observe partial files.
#pragma once

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stubmatch/core.hpp"
#include "stubmatch/marklaw.hpp"
#include "stubmatch/matching.hpp"
#include "stubmatch/sampler.hpp"

namespace stubmatch {

using nlohmann::json;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return ss.str();
}

inline void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                        ec.message());
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || (end && *end != '\0') || errno == ERANGE)
    throw ValidationError("malformed number: '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || (end && *end != '\0') || errno == ERANGE)
    throw ValidationError("malformed integer: '" + s + "'");
  return v;
}

}  // namespace detail

inline json window_to_json(const Window& w) {
  return json{{"dim", w.dim}, {"side", w.side}, {"boundary", to_string(w.boundary)}};
}

inline Window window_from_json(const json& j) {
  Window w;
  w.dim = j.at("dim").get<int>();
  w.side = j.at("side").get<double>();
  w.boundary = boundary_from_string(j.at("boundary").get<std::string>());
  validate(w);
  return w;
}

inline std::string point_config_to_string(const PointConfig& cfg) {
  validate(cfg);
  std::ostringstream out;
  out << window_to_json(cfg.window).dump() << '\n';
  out << "id,color";
  for (int a = 1; a <= cfg.window.dim; ++a) out << ",x" << a;
  out << ",stubs\n";
  for (const Point& p : cfg.points) {
    out << p.id << ',' << (p.color == Color::Red ? "red" : "blue");
    for (int a = 0; a < cfg.window.dim; ++a) out << ',' << format_double(p.pos[a]);
    out << ',' << p.stubs << '\n';
  }
  return out.str();
}

inline PointConfig point_config_from_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("point config: empty file");
  PointConfig cfg;
  try {
    cfg.window = window_from_json(json::parse(line));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("point config: bad header: ") + e.what());
  }
  if (!std::getline(in, line)) throw ValidationError("point config: missing column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != static_cast<std::size_t>(cfg.window.dim) + 3)
      throw ValidationError("point config: wrong field count in row: " + line);
    Point p;
    p.id = static_cast<std::int32_t>(detail::parse_int(fields[0]));
    if (fields[1] == "red")
      p.color = Color::Red;
    else if (fields[1] == "blue")
      p.color = Color::Blue;
    else
      throw ValidationError("point config: unknown color '" + fields[1] + "'");
    p.pos.resize(cfg.window.dim);
    for (int a = 0; a < cfg.window.dim; ++a) p.pos[a] = detail::parse_double(fields[2 + a]);
    p.stubs = static_cast<std::int32_t>(detail::parse_int(fields[2 + cfg.window.dim]));
    cfg.points.push_back(std::move(p));
  }
  validate(cfg);
  return cfg;
}

inline void write_point_config(const std::filesystem::path& path, const PointConfig& cfg) {
  write_text_atomic(path, point_config_to_string(cfg));
}

inline PointConfig read_point_config(const std::filesystem::path& path) {
  return point_config_from_string(read_text(path));
}

inline std::string matching_to_csv(const Matching& m) {
  std::ostringstream out;
  out << "red_id,blue_id,length\n";
  for (const Edge& e : m.sorted_edges())
    out << e.red << ',' << e.blue << ',' << format_double(m.edge_length(e)) << '\n';
  return out.str();
}

inline void write_matching_csv(const std::filesystem::path& path, const Matching& m) {
  write_text_atomic(path, matching_to_csv(m));
}

/// Reads back edges (ids only; lengths are derived data).
inline std::vector<Edge> read_matching_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line) || line != "red_id,blue_id,length")
    throw ValidationError("matching csv: bad header in " + path.string());
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3) throw ValidationError("matching csv: bad row: " + line);
    edges.push_back({static_cast<std::int32_t>(detail::parse_int(fields[0])),
                     static_cast<std::int32_t>(detail::parse_int(fields[1]))});
  }
  return edges;
}

inline json marklaw_to_json(const MarkLaw& law) {
  return std::visit(
      [](const auto& l) -> json {
        using T = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<T, MarkLaw::Deterministic>) {
          return json{{"type", "deterministic"}, {"k", l.k}};
        } else if constexpr (std::is_same_v<T, MarkLaw::Geometric>) {
          return json{{"type", "geometric"}, {"p", l.p}};
        } else if constexpr (std::is_same_v<T, MarkLaw::Zipf>) {
          return json{{"type", "zipf"}, {"s", l.s}};
        } else if constexpr (std::is_same_v<T, MarkLaw::Explicit>) {
          return json{{"type", "explicit"}, {"pmf", l.pmf}};
        } else {
          return json{{"type", "truncated"}, {"base", marklaw_to_json(*l.base)}, {"cap", l.cap}};
        }
      },
      law.variant());
}

inline MarkLaw marklaw_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "deterministic") return MarkLaw::deterministic(j.at("k").get<std::int64_t>());
  if (type == "geometric") return MarkLaw::geometric(j.at("p").get<double>());
  if (type == "zipf") return MarkLaw::zipf(j.at("s").get<double>());
  if (type == "explicit") return MarkLaw::explicit_pmf(j.at("pmf").get<std::vector<double>>());
  if (type == "truncated")
    return MarkLaw::truncated(marklaw_from_json(j.at("base")), j.at("cap").get<std::int64_t>());
  throw ValidationError("mark law: unknown type '" + type + "'");
}

inline json simparams_to_json(const SimParams& p) {
  return json{{"window", window_to_json(p.window)}, {"lambda_red", p.lambda_red},
              {"lambda_blue", p.lambda_blue},       {"red_law", marklaw_to_json(p.red_law)},
              {"blue_law", marklaw_to_json(p.blue_law)}, {"seed", p.seed}};
}

inline SimParams simparams_from_json(const json& j) {
  SimParams p{window_from_json(j.at("window")),
              j.at("lambda_red").get<double>(),
              j.at("lambda_blue").get<double>(),
              marklaw_from_json(j.at("red_law")),
              marklaw_from_json(j.at("blue_law")),
              j.value("seed", std::uint64_t{0})};
  validate(p);
  return p;
}

}  // namespace stubmatch
