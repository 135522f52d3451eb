// Core domain types: simulation window, colored marked points, metric
// queries and configuration validity checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stubmatch {

// Error taxonomy; the CLI maps these onto process exit codes.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedCaseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Color : std::uint8_t { Red = 0, Blue = 1 };
enum class Boundary : std::uint8_t { Torus = 0, Box = 1 };

inline Color opposite(Color c) { return c == Color::Red ? Color::Blue : Color::Red; }

inline const char* to_string(Color c) { return c == Color::Red ? "red" : "blue"; }
inline const char* to_string(Boundary b) { return b == Boundary::Torus ? "torus" : "box"; }

inline Color color_from_string(const std::string& s) {
  if (s == "red") return Color::Red;
  if (s == "blue") return Color::Blue;
  throw ValidationError("unknown color: " + s);
}

inline Boundary boundary_from_string(const std::string& s) {
  if (s == "torus") return Boundary::Torus;
  if (s == "box") return Boundary::Box;
  throw ValidationError("unknown boundary: " + s);
}

/// Simulation window [0,L)^d with either periodic (torus) or hard (box)
/// boundary. The torus is the default: translation invariance is exact and
/// there are no edge effects.
struct Window {
  int dim = 1;
  double side = 1.0;
  Boundary boundary = Boundary::Torus;

  double volume() const { return std::pow(side, dim); }

  friend bool operator==(const Window&, const Window&) = default;
};

inline void validate(const Window& w) {
  if (w.dim < 1) throw ValidationError("window: dimension must be >= 1");
  if (!(w.side > 0.0) || !std::isfinite(w.side))
    throw ValidationError("window: side must be positive and finite");
}

/// One marked point: position in [0,L)^d, a color, and a stub count
/// (the target degree of this point in the matched graph).
struct Point {
  std::int32_t id = 0;
  Color color = Color::Red;
  std::int32_t stubs = 1;
  std::vector<double> pos;

  friend bool operator==(const Point&, const Point&) = default;
};

/// A finite two-color marked point configuration. Ids are contiguous from 0
/// and index directly into `points`. Immutable by convention once built;
/// all queries in this library are read-only.
struct PointConfig {
  Window window;
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }

  std::int64_t count(Color c) const {
    std::int64_t n = 0;
    for (const auto& p : points) n += (p.color == c);
    return n;
  }

  std::int64_t total_stubs(Color c) const {
    std::int64_t n = 0;
    for (const auto& p : points) n += (p.color == c) ? p.stubs : 0;
    return n;
  }

  std::vector<std::int32_t> ids_of(Color c) const {
    std::vector<std::int32_t> out;
    for (const auto& p : points)
      if (p.color == c) out.push_back(p.id);
    return out;
  }

  friend bool operator==(const PointConfig&, const PointConfig&) = default;
};

inline void validate(const PointConfig& cfg) {
  validate(cfg.window);
  const double L = cfg.window.side;
  for (std::size_t i = 0; i < cfg.points.size(); ++i) {
    const Point& p = cfg.points[i];
    if (p.id != static_cast<std::int32_t>(i))
      throw ValidationError("config: ids must be contiguous from 0 (point " +
                            std::to_string(i) + " has id " + std::to_string(p.id) + ")");
    if (p.stubs < 1)
      throw ValidationError("config: point " + std::to_string(i) + " has stubs < 1");
    if (static_cast<int>(p.pos.size()) != cfg.window.dim)
      throw ValidationError("config: point " + std::to_string(i) + " has wrong dimension");
    for (double x : p.pos)
      if (!(x >= 0.0 && x < L))
        throw ValidationError("config: point " + std::to_string(i) +
                              " has coordinate outside [0,L)");
  }
}

namespace detail {

// Squared distance, no domain checks. Hot path for neighbor queries; the
// matching engines compare squared distances throughout.
inline double dist2(const Window& w, const double* a, const double* b) {
  double s = 0.0;
  if (w.boundary == Boundary::Torus) {
    const double L = w.side;
    for (int i = 0; i < w.dim; ++i) {
      double d = std::fabs(a[i] - b[i]);
      d = std::min(d, L - d);
      s += d * d;
    }
  } else {
    for (int i = 0; i < w.dim; ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
  }
  return s;
}

inline double dist2(const Window& w, const std::vector<double>& a, const std::vector<double>& b) {
  return dist2(w, a.data(), b.data());
}

}  // namespace detail

/// Distance between two positions inside the window. Box mode is plain
/// Euclidean; torus mode wraps each coordinate (min-image convention).
inline double distance(const Window& w, std::span<const double> x, std::span<const double> y) {
  if (static_cast<int>(x.size()) != w.dim || static_cast<int>(y.size()) != w.dim)
    throw ValidationError("distance: vector dimension does not match window");
  for (int i = 0; i < w.dim; ++i)
    if (!(x[i] >= 0.0 && x[i] < w.side) || !(y[i] >= 0.0 && y[i] < w.side))
      throw ValidationError("distance: coordinate outside [0,L)");
  return std::sqrt(detail::dist2(w, x.data(), y.data()));
}

inline double distance(const PointConfig& cfg, std::int32_t a, std::int32_t b) {
  return std::sqrt(detail::dist2(cfg.window, cfg.points[a].pos, cfg.points[b].pos));
}

/// Witness of a distance collision: |x-y| == |u-w| as represented doubles.
/// Degenerate triples (x=u) are included.
struct EquidistantWitness {
  std::int32_t x, y, u, w;
};

struct NonEquidistantReport {
  bool ok = true;
  std::vector<EquidistantWitness> witnesses;
};

/// Checks that all pairwise distances are pairwise distinct, by exact
/// equality of the represented (double) distances. Sampled continuum
/// configurations satisfy this with probability one; hand-built lattice
/// configs generally do not, and the matcher then falls back to id-order
/// tie-breaking.
inline NonEquidistantReport check_non_equidistant(const PointConfig& cfg) {
  struct Entry {
    double dist;
    std::int32_t a, b;
  };
  const std::size_t n = cfg.points.size();
  std::vector<Entry> entries;
  entries.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      entries.push_back({distance(cfg, static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)),
                         static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& l, const Entry& r) { return l.dist < r.dist; });
  NonEquidistantReport rep;
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].dist == entries[k - 1].dist) {
      rep.ok = false;
      rep.witnesses.push_back(
          {entries[k - 1].a, entries[k - 1].b, entries[k].a, entries[k].b});
    }
  }
  return rep;
}

}  // namespace stubmatch
