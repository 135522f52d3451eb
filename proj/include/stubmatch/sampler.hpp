// Marked Poisson configuration sampler: point count ~ Poisson(lambda * L^d),
// positions i.i.d. uniform, stubs i.i.d. from the mark law. Each component
// (counts, positions, marks, per color) draws from its own counter-based
// stream so any one of them can be regenerated independently.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "stubmatch/core.hpp"
#include "stubmatch/marklaw.hpp"
#include "stubmatch/rng.hpp"

namespace stubmatch {

struct SimParams {
  Window window;
  double lambda_red = 1.0;
  double lambda_blue = 1.0;
  MarkLaw red_law;
  MarkLaw blue_law;
  std::uint64_t seed = 0;
};

inline void validate(const SimParams& p) {
  validate(p.window);
  if (!(p.lambda_red > 0.0) || !std::isfinite(p.lambda_red) || !(p.lambda_blue > 0.0) ||
      !std::isfinite(p.lambda_blue))
    throw ValidationError("SimParams: intensities must be positive and finite");
}

inline PointConfig sample_config(const SimParams& params) {
  validate(params);
  const Window& w = params.window;
  const double vol = w.volume();

  auto sample_color = [&](Color color, double lambda, const MarkLaw& law, StreamId count_sid,
                          StreamId pos_sid, StreamId mark_sid, std::vector<Point>& out,
                          std::int32_t first_id) {
    auto count_stream = make_stream(params.seed, count_sid);
    const std::int64_t count = sample_poisson(count_stream, lambda * vol);
    auto pos_stream = make_stream(params.seed, pos_sid);
    auto mark_stream = make_stream(params.seed, mark_sid);
    const MarkSampler marks(law);
    out.reserve(out.size() + static_cast<std::size_t>(count));
    // Marks clamp at int32 max; for the built-in laws this is reachable with
    // probability < 1e-9 per point.
    constexpr std::int64_t kMaxStubs = std::numeric_limits<std::int32_t>::max();
    for (std::int64_t i = 0; i < count; ++i) {
      Point pt;
      pt.id = first_id + static_cast<std::int32_t>(i);
      pt.color = color;
      pt.pos.resize(w.dim);
      for (int a = 0; a < w.dim; ++a) pt.pos[a] = sample_coordinate(pos_stream, w.side);
      pt.stubs = static_cast<std::int32_t>(std::min(marks(mark_stream), kMaxStubs));
      out.push_back(std::move(pt));
    }
  };

  PointConfig cfg;
  cfg.window = w;
  sample_color(Color::Red, params.lambda_red, params.red_law, StreamId::RedCount,
               StreamId::RedPositions, StreamId::RedMarks, cfg.points, 0);
  sample_color(Color::Blue, params.lambda_blue, params.blue_law, StreamId::BlueCount,
               StreamId::BluePositions, StreamId::BlueMarks, cfg.points,
               static_cast<std::int32_t>(cfg.points.size()));
  return cfg;
}

}  // namespace stubmatch
