// Shared fixtures for the test suite.
#pragma once

#include <cstdint>
#include <vector>

#include "stubmatch/stubmatch.hpp"

namespace testutil {

using namespace stubmatch;

struct P {
  Color color;
  std::vector<double> pos;
  std::int32_t stubs = 1;
};

inline PointConfig make_config(int dim, double side, Boundary b, const std::vector<P>& pts) {
  PointConfig cfg;
  cfg.window = Window{dim, side, b};
  std::int32_t id = 0;
  for (const auto& p : pts) cfg.points.push_back(Point{id++, p.color, p.stubs, p.pos});
  validate(cfg);
  return cfg;
}

inline SimParams det_params(int dim, double side, Boundary b, double lambda, std::int64_t k,
                            std::uint64_t seed) {
  return SimParams{Window{dim, side, b}, lambda, lambda, MarkLaw::deterministic(k),
                   MarkLaw::deterministic(k), seed};
}

/// Uniform random config with fixed per-color counts and uniform stub counts
/// in [1, max_stubs]. Deterministic in `seed`; independent of the library's
/// sampling pipeline so it can serve as a neutral instance generator.
inline PointConfig random_config(std::uint64_t seed, int dim, double side, Boundary b, int n_red,
                                 int n_blue, std::int32_t max_stubs) {
  RngStream pos_stream(seed, 1001);
  RngStream mark_stream(seed, 1002);
  PointConfig cfg;
  cfg.window = Window{dim, side, b};
  for (int i = 0; i < n_red + n_blue; ++i) {
    Point p;
    p.id = i;
    p.color = i < n_red ? Color::Red : Color::Blue;
    p.stubs = 1 + static_cast<std::int32_t>(mark_stream.next_u64() %
                                            static_cast<std::uint64_t>(max_stubs));
    p.pos.resize(dim);
    for (int a = 0; a < dim; ++a) p.pos[a] = sample_coordinate(pos_stream, side);
    cfg.points.push_back(std::move(p));
  }
  validate(cfg);
  return cfg;
}

inline std::vector<Edge> sorted_edge_set(const Matching& m) { return m.sorted_edges(); }

}  // namespace testutil
