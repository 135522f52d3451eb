// Component analytics over a matching, per-volume stub intensity rates,
// per-point total edge length with a Hill tail estimate, and the coarse
// renormalization lattice (acceptable/good cubes, site percolation verdict).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "stubmatch/core.hpp"
#include "stubmatch/matching.hpp"

namespace stubmatch {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  std::int64_t size_of(std::int32_t x) { return size_[find(x)]; }

 private:
  std::vector<std::int32_t> parent_;
  std::vector<std::int64_t> size_;
};

struct ComponentReport {
  std::map<std::int64_t, std::int64_t> size_histogram;  // components with >= 1 edge
  double largest_fraction = 0.0;                        // largest size / total points
  std::int64_t component_count = 0;                     // components with >= 1 edge
  std::int64_t isolated_points = 0;
  std::int64_t paths = 0;
  std::int64_t cycles = 0;
  std::int64_t other = 0;
  std::vector<std::int32_t> component_id;  // -1 for isolated points
};

inline ComponentReport components(const PointConfig& cfg, const Matching& m) {
  if (!(m.config() == cfg))
    throw ValidationError("components: matching was built over a different configuration");
  const auto n = static_cast<std::int32_t>(cfg.points.size());
  DisjointSets dsu(n);
  for (const Edge& e : m.edges()) dsu.unite(e.red, e.blue);

  ComponentReport rep;
  rep.component_id.assign(n, -1);
  std::vector<std::int32_t> comp_of_root(n, -1);
  std::vector<std::int64_t> comp_size, comp_edges2, comp_deg1, comp_deg_over2;
  for (std::int32_t id = 0; id < n; ++id) {
    if (m.degree(id) == 0) {
      ++rep.isolated_points;
      continue;
    }
    const std::int32_t root = dsu.find(id);
    std::int32_t c = comp_of_root[root];
    if (c < 0) {
      c = static_cast<std::int32_t>(comp_size.size());
      comp_of_root[root] = c;
      comp_size.push_back(0);
      comp_edges2.push_back(0);
      comp_deg1.push_back(0);
      comp_deg_over2.push_back(0);
    }
    rep.component_id[id] = c;
    ++comp_size[c];
    comp_edges2[c] += m.degree(id);
    if (m.degree(id) == 1) ++comp_deg1[c];
    if (m.degree(id) > 2) ++comp_deg_over2[c];
  }

  std::int64_t largest = 0;
  for (std::size_t c = 0; c < comp_size.size(); ++c) {
    ++rep.size_histogram[comp_size[c]];
    largest = std::max(largest, comp_size[c]);
    const std::int64_t edges = comp_edges2[c] / 2;
    if (comp_deg_over2[c] == 0 && comp_deg1[c] == 0 && edges == comp_size[c])
      ++rep.cycles;
    else if (comp_deg_over2[c] == 0 && comp_deg1[c] == 2 && edges == comp_size[c] - 1)
      ++rep.paths;
    else
      ++rep.other;
  }
  rep.component_count = static_cast<std::int64_t>(comp_size.size());
  rep.largest_fraction = n > 0 ? static_cast<double>(largest) / n : 0.0;
  return rep;
}

struct StubIntensities {
  double matched_red_rate = 0.0;
  double matched_blue_rate = 0.0;
  double unmatched_red_rate = 0.0;
  double unmatched_blue_rate = 0.0;
};

inline StubIntensities stub_intensities(const PointConfig& cfg, const Matching& m) {
  const double vol = cfg.window.volume();
  const MatchReport rep = match_report(m);
  return {static_cast<double>(rep.matched_red_stubs) / vol,
          static_cast<double>(rep.matched_blue_stubs) / vol,
          static_cast<double>(rep.unmatched_red_stubs) / vol,
          static_cast<double>(rep.unmatched_blue_stubs) / vol};
}

struct EdgeLengthStats {
  std::vector<double> per_point;  // T: sum of incident edge lengths
  double mean = 0.0;              // over all points
  double hill_tail_index = std::numeric_limits<double>::quiet_NaN();
  std::int64_t hill_k = 0;  // top order statistics used (5%)
};

inline EdgeLengthStats total_edge_length(const PointConfig& cfg, const Matching& m) {
  const auto n = cfg.points.size();
  EdgeLengthStats stats;
  stats.per_point.assign(n, 0.0);
  for (const Edge& e : m.edges()) {
    const double len = m.edge_length(e);
    stats.per_point[e.red] += len;
    stats.per_point[e.blue] += len;
  }
  if (n == 0) return stats;
  stats.mean = std::accumulate(stats.per_point.begin(), stats.per_point.end(), 0.0) /
               static_cast<double>(n);

  const auto k = static_cast<std::int64_t>(0.05 * static_cast<double>(n));
  if (k >= 2 && static_cast<std::size_t>(k) < n) {
    std::vector<double> sorted = stats.per_point;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double threshold = sorted[k];  // (k+1)-th largest
    if (threshold > 0.0) {
      double acc = 0.0;
      for (std::int64_t i = 0; i < k; ++i) acc += std::log(sorted[i]) - std::log(threshold);
      if (acc > 0.0) {
        stats.hill_tail_index = static_cast<double>(k) / acc;
        stats.hill_k = k;
      }
    }
  }
  return stats;
}

struct CubeLattice {
  double requested_side = 0.0;
  double side = 0.0;  // effective side after rounding extent = round(L/a)
  bool side_adjusted = false;
  int extent = 0;
  int n = 0;
  int m = 0;
  std::int64_t k = 0;
  std::vector<std::int32_t> red_count, blue_count;  // per flat cube
  std::vector<char> acceptable, good;
  std::int64_t acceptable_count = 0;
  std::int64_t good_count = 0;
  std::string adjacency = "face_neighbors";  // reading of lattice adjacency
  bool percolates = false;
};

namespace detail {

/// Union-find tracking relative lattice displacement to the root; a union of
/// two already-connected cubes with inconsistent displacement means the
/// cluster wraps around the torus.
class WindingDsu {
 public:
  WindingDsu(std::size_t count, int dim)
      : dim_(dim), parent_(count), off_(count * dim, 0), wrapped_(count, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::int32_t find(std::int32_t x) {
    chain_.clear();
    while (parent_[x] != x) {
      chain_.push_back(x);
      x = parent_[x];
    }
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
      const std::int32_t node = *it;
      const std::int32_t par = parent_[node];
      if (par != x)
        for (int t = 0; t < dim_; ++t) off_[node * dim_ + t] += off_[par * dim_ + t];
      parent_[node] = x;
    }
    return x;
  }

  // pos(v) = pos(u) + delta, delta a unit lattice step
  void unite(std::int32_t u, std::int32_t v, int axis, int delta) {
    const std::int32_t ru = find(u);
    const std::int32_t rv = find(v);
    if (ru == rv) {
      for (int t = 0; t < dim_; ++t) {
        const int expect = off_[u * dim_ + t] + (t == axis ? delta : 0);
        if (off_[v * dim_ + t] != expect) {
          wrapped_[ru] = 1;
          break;
        }
      }
      return;
    }
    parent_[rv] = ru;
    for (int t = 0; t < dim_; ++t)
      off_[rv * dim_ + t] = off_[u * dim_ + t] + (t == axis ? delta : 0) - off_[v * dim_ + t];
    wrapped_[ru] |= wrapped_[rv];
  }

  bool wrapped(std::int32_t x) { return wrapped_[find(x)] != 0; }

 private:
  int dim_;
  std::vector<std::int32_t> parent_;
  std::vector<int> off_;
  std::vector<char> wrapped_;
  std::vector<std::int32_t> chain_;
};

}  // namespace detail

/// Coarse-grains the window into cubes of side ~a. A cube is acceptable when
/// it holds between 1 and n points of each color, good when every cube of its
/// super-cube (l-inf radius 2m) is acceptable. The verdict reports a good-cube
/// cluster wrapping the torus (or touching opposite faces in box mode).
inline CubeLattice renormalize(const PointConfig& cfg, double a, int n) {
  const double L = cfg.window.side;
  const int d = cfg.window.dim;
  if (!(a > 0.0)) throw ValidationError("renormalize: cube side must be positive");
  if (a >= L) throw ValidationError("renormalize: cube side must be smaller than the window side");
  if (n < 1) throw ValidationError("renormalize: n must be >= 1");

  CubeLattice lat;
  lat.requested_side = a;
  lat.n = n;
  lat.extent = std::max<int>(1, static_cast<int>(std::llround(L / a)));
  lat.side = L / lat.extent;
  lat.side_adjusted = std::fabs(lat.extent * a - L) > 1e-9 * L;
  lat.m = 1;
  while (lat.m * lat.m < d + 3) ++lat.m;
  lat.k = n;
  for (int t = 0; t < d; ++t) lat.k *= 4 * lat.m + 1;

  std::int64_t total = 1;
  for (int t = 0; t < d; ++t) total *= lat.extent;
  lat.red_count.assign(total, 0);
  lat.blue_count.assign(total, 0);

  auto flat_of = [&](const double* pos) {
    std::int64_t f = 0;
    for (int t = 0; t < d; ++t) {
      int c = static_cast<int>(pos[t] / lat.side);
      f = f * lat.extent + std::clamp(c, 0, lat.extent - 1);
    }
    return f;
  };
  for (const Point& p : cfg.points)
    ++(p.color == Color::Red ? lat.red_count : lat.blue_count)[flat_of(p.pos.data())];

  lat.acceptable.assign(total, 0);
  for (std::int64_t c = 0; c < total; ++c) {
    lat.acceptable[c] = lat.red_count[c] >= 1 && lat.red_count[c] <= n && lat.blue_count[c] >= 1 &&
                        lat.blue_count[c] <= n;
    lat.acceptable_count += lat.acceptable[c];
  }

  const bool wrap = cfg.window.boundary == Boundary::Torus;
  std::vector<int> cell(d, 0), probe(d, 0), off(d, -2 * lat.m);
  auto flat_cell = [&](const std::vector<int>& mc) {
    std::int64_t f = 0;
    for (int t = 0; t < d; ++t) f = f * lat.extent + mc[t];
    return f;
  };

  lat.good.assign(total, 0);
  for (std::int64_t c = 0; c < total; ++c) {
    {
      std::int64_t rest = c;
      for (int t = d - 1; t >= 0; --t) {
        cell[t] = static_cast<int>(rest % lat.extent);
        rest /= lat.extent;
      }
    }
    bool good = true;
    std::fill(off.begin(), off.end(), -2 * lat.m);
    while (good) {
      bool in_range = true;
      for (int t = 0; t < d; ++t) {
        int v = cell[t] + off[t];
        if (wrap) {
          v %= lat.extent;
          if (v < 0) v += lat.extent;
        } else if (v < 0 || v >= lat.extent) {
          in_range = false;  // box mode: clipped super-cube
          break;
        }
        probe[t] = v;
      }
      if (in_range && !lat.acceptable[flat_cell(probe)]) good = false;
      int t = d - 1;
      while (t >= 0 && off[t] == 2 * lat.m) {
        off[t] = -2 * lat.m;
        --t;
      }
      if (t < 0) break;
      ++off[t];
    }
    lat.good[c] = good;
    lat.good_count += good;
  }

  // Site percolation on good cubes, face adjacency.
  if (wrap) {
    detail::WindingDsu dsu(total, d);
    for (std::int64_t c = 0; c < total; ++c) {
      if (!lat.good[c]) continue;
      std::int64_t rest = c;
      for (int t = d - 1; t >= 0; --t) {
        cell[t] = static_cast<int>(rest % lat.extent);
        rest /= lat.extent;
      }
      for (int axis = 0; axis < d; ++axis) {
        if (lat.extent == 1) {
          dsu.unite(static_cast<std::int32_t>(c), static_cast<std::int32_t>(c), axis, 1);
          continue;
        }
        probe = cell;
        probe[axis] = (cell[axis] + 1) % lat.extent;
        const std::int64_t nb = flat_cell(probe);
        if (lat.good[nb]) dsu.unite(static_cast<std::int32_t>(c), static_cast<std::int32_t>(nb), axis, 1);
      }
    }
    for (std::int64_t c = 0; c < total && !lat.percolates; ++c)
      if (lat.good[c] && dsu.wrapped(static_cast<std::int32_t>(c))) lat.percolates = true;
  } else {
    DisjointSets dsu(total);
    std::vector<int> lo(total * d), hi(total * d);
    for (std::int64_t c = 0; c < total; ++c) {
      if (!lat.good[c]) continue;
      std::int64_t rest = c;
      for (int t = d - 1; t >= 0; --t) {
        cell[t] = static_cast<int>(rest % lat.extent);
        rest /= lat.extent;
      }
      for (int axis = 0; axis < d; ++axis) {
        if (cell[axis] + 1 >= lat.extent) continue;
        probe = cell;
        ++probe[axis];
        const std::int64_t nb = flat_cell(probe);
        if (lat.good[nb]) dsu.unite(static_cast<std::int32_t>(c), static_cast<std::int32_t>(nb));
      }
    }
    std::fill(lo.begin(), lo.end(), std::numeric_limits<int>::max());
    std::fill(hi.begin(), hi.end(), -1);
    for (std::int64_t c = 0; c < total; ++c) {
      if (!lat.good[c]) continue;
      const std::int32_t root = dsu.find(static_cast<std::int32_t>(c));
      std::int64_t rest = c;
      for (int t = d - 1; t >= 0; --t) {
        const int v = static_cast<int>(rest % lat.extent);
        rest /= lat.extent;
        lo[root * d + t] = std::min(lo[root * d + t], v);
        hi[root * d + t] = std::max(hi[root * d + t], v);
      }
    }
    for (std::int64_t c = 0; c < total && !lat.percolates; ++c) {
      if (!lat.good[c] || dsu.find(static_cast<std::int32_t>(c)) != c) continue;
      for (int t = 0; t < d; ++t)
        if (hi[c * d + t] - lo[c * d + t] == lat.extent - 1) {
          lat.percolates = true;
          break;
        }
    }
  }
  return lat;
}

}  // namespace stubmatch
