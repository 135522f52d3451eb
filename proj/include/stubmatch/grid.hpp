// Grid-bucketed nearest-neighbor index. Queries expand over Chebyshev cell
// shells and stop once the best hit is strictly closer than any unscanned
// cell can be, so results are exact and ties are counted faithfully.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "stubmatch/core.hpp"

namespace stubmatch {

/// Calls fn(cell_multi_index) for every in-range cell at Chebyshev offset
/// exactly r from base. With wrap=true offsets are taken mod n (the same cell
/// may be visited more than once; callers dedup with stamps).
template <typename Fn>
void for_each_shell_cell(int dim, int r, const std::vector<int>& base, int n, bool wrap,
                         Fn&& fn) {
  std::vector<int> cell(dim);
  auto resolve = [&](const std::vector<int>& off) {
    for (int b = 0; b < dim; ++b) {
      int c = base[b] + off[b];
      if (wrap) {
        c %= n;
        if (c < 0) c += n;
      } else if (c < 0 || c >= n) {
        return;
      }
      cell[b] = c;
    }
    fn(cell);
  };

  std::vector<int> off(dim, 0);
  if (r == 0) {
    resolve(off);
    return;
  }
  // Enumerate each face once: axis a pinned at +-r, earlier axes strictly
  // inside, later axes anywhere in [-r, r].
  for (int a = 0; a < dim; ++a) {
    for (int sign = -1; sign <= 1; sign += 2) {
      off.assign(dim, 0);
      off[a] = sign * r;
      auto rec = [&](auto&& self, int axis) -> void {
        if (axis == dim) {
          resolve(off);
          return;
        }
        if (axis == a) {
          self(self, axis + 1);
          return;
        }
        const int lo = axis < a ? -(r - 1) : -r;
        const int hi = axis < a ? r - 1 : r;
        for (int v = lo; v <= hi; ++v) {
          off[axis] = v;
          self(self, axis + 1);
        }
      };
      rec(rec, 0);
    }
  }
}

struct NearestHit {
  std::int32_t id = -1;
  double dist2 = std::numeric_limits<double>::infinity();
  std::int32_t ties = 0;  // candidates at exactly the winning distance
};

/// Immutable grid index over a point configuration (optionally a subset).
/// Not safe for concurrent queries on the same instance: shell dedup uses
/// internal epoch stamps.
class SpatialGrid {
 public:
  explicit SpatialGrid(const PointConfig& cfg, double cell_hint = 0.0)
      : SpatialGrid(cfg, all_ids(cfg), cell_hint) {}

  SpatialGrid(const PointConfig& cfg, const std::vector<std::int32_t>& ids,
              double cell_hint = 0.0)
      : cfg_(&cfg), dim_(cfg.window.dim) {
    const double side = cfg.window.side;
    if (cell_hint > 0.0) {
      cells_ = std::max(1, static_cast<int>(side / cell_hint));
    } else {
      // ~1 indexed point per cell
      const double per_axis = std::pow(static_cast<double>(std::max<std::size_t>(ids.size(), 1)),
                                       1.0 / dim_);
      cells_ = std::max(1, static_cast<int>(per_axis));
    }
    cell_len_ = side / cells_;
    std::int64_t total = 1;
    for (int a = 0; a < dim_; ++a) total *= cells_;
    start_.assign(total + 1, 0);
    for (std::int32_t id : ids) ++start_[flat_cell(cfg.points[id].pos.data()) + 1];
    for (std::int64_t c = 0; c < total; ++c) start_[c + 1] += start_[c];
    bucket_.resize(ids.size());
    std::vector<std::int64_t> cursor(start_.begin(), start_.end() - 1);
    for (std::int32_t id : ids) bucket_[cursor[flat_cell(cfg.points[id].pos.data())]++] = id;
    stamp_.assign(total, 0);
  }

  double cell_len() const { return cell_len_; }
  int cells_per_side() const { return cells_; }

  /// Nearest indexed point satisfying eligible(id), with exact tie count.
  /// Smallest id wins among ties.
  template <typename Pred>
  std::optional<NearestHit> nearest(std::span<const double> q, Pred&& eligible) const {
    const bool wrap = cfg_->window.boundary == Boundary::Torus;
    ++epoch_;
    std::vector<int> base(dim_);
    cell_multi(q.data(), base);
    NearestHit best;
    for (int r = 0; r <= cells_; ++r) {
      if (best.id >= 0) {
        const double reach = static_cast<double>(r - 1) * cell_len_;
        if (reach > 0.0 && best.dist2 < reach * reach) break;
      }
      for_each_shell_cell(dim_, r, base, cells_, wrap, [&](const std::vector<int>& cell) {
        const std::int64_t f = flat(cell);
        if (stamp_[f] == epoch_) return;
        stamp_[f] = epoch_;
        for (std::int64_t i = start_[f]; i < start_[f + 1]; ++i) {
          const std::int32_t id = bucket_[i];
          if (!eligible(id)) continue;
          const double d2 = detail::dist2(cfg_->window, q.data(), cfg_->points[id].pos.data());
          if (d2 < best.dist2) {
            best = {id, d2, 1};
          } else if (d2 == best.dist2) {
            ++best.ties;
            if (id < best.id) best.id = id;
          }
        }
      });
    }
    if (best.id < 0) return std::nullopt;
    return best;
  }

 private:
  static std::vector<std::int32_t> all_ids(const PointConfig& cfg) {
    std::vector<std::int32_t> ids(cfg.points.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<std::int32_t>(i);
    return ids;
  }

  void cell_multi(const double* p, std::vector<int>& out) const {
    for (int a = 0; a < dim_; ++a) {
      int c = static_cast<int>(p[a] / cell_len_);
      if (c >= cells_) c = cells_ - 1;
      if (c < 0) c = 0;
      out[a] = c;
    }
  }

  std::int64_t flat(const std::vector<int>& cell) const {
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * cells_ + cell[a];
    return f;
  }

  std::int64_t flat_cell(const double* p) const {
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) {
      int c = static_cast<int>(p[a] / cell_len_);
      if (c >= cells_) c = cells_ - 1;
      if (c < 0) c = 0;
      f = f * cells_ + c;
    }
    return f;
  }

  const PointConfig* cfg_;
  int dim_;
  int cells_;
  double cell_len_;
  std::vector<std::int64_t> start_;
  std::vector<std::int32_t> bucket_;
  mutable std::vector<std::uint64_t> stamp_;
  mutable std::uint64_t epoch_ = 0;
};

/// Nearest point of the opposite color passing the caller's eligibility
/// filter; ties go to the smaller id.
template <typename Pred>
std::optional<std::int32_t> nearest_compatible(const PointConfig& cfg, const SpatialGrid& idx,
                                               std::int32_t p, Pred&& eligible) {
  if (p < 0 || p >= static_cast<std::int32_t>(cfg.points.size()))
    throw ValidationError("nearest_compatible: no such point");
  const Color mine = cfg.points[p].color;
  const auto hit =
      idx.nearest(std::span<const double>(cfg.points[p].pos), [&](std::int32_t id) {
        return id != p && cfg.points[id].color != mine && eligible(id);
      });
  if (!hit) return std::nullopt;
  return hit->id;
}

}  // namespace stubmatch
