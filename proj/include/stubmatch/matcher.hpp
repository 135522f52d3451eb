// Two-color stable multi-matching engines. run_2cimc iterates rounds that
// link every mutually closest compatible red-blue pair and decrement one stub
// per endpoint; run_greedy links the globally shortest eligible pair until
// none remains. Both support forbidden pairs and per-point allowances (the
// restricted variant). verify_stable is the definition-level checker and
// brute_force_stable the enumeration oracle for small instances.
//
// Caching rationale: pair eligibility only shrinks during a run (degrees
// grow, adjacency grows, forbidden pairs are static), so a cached nearest
// partner that is still eligible is still the true nearest. The same argument
// makes the greedy engine's lazy priority-queue entries sound.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <tuple>
#include <vector>

#include "stubmatch/core.hpp"
#include "stubmatch/grid.hpp"
#include "stubmatch/matching.hpp"

namespace stubmatch {

struct RunStats {
  int rounds = 0;
  std::int64_t tie_breaks = 0;  // queries resolved by the smaller-id rule
  std::vector<std::int64_t> edges_per_round;
};

namespace detail {

/// Bucket grid holding only points that can still accept an edge; points are
/// swap-removed as they exhaust. Falls back to a linear scan over survivors
/// once few remain (expanding shells are wasteful on a depleted grid).
class ActiveGrid {
 public:
  static constexpr std::size_t kLinearCutoff = 64;

  ActiveGrid(const PointConfig& cfg, const std::vector<std::int32_t>& ids)
      : cfg_(&cfg), dim_(cfg.window.dim) {
    const double per_axis =
        std::pow(static_cast<double>(std::max<std::size_t>(ids.size(), 1)), 1.0 / dim_);
    cells_ = std::max(1, static_cast<int>(per_axis));
    cell_len_ = cfg.window.side / cells_;
    std::int64_t total = 1;
    for (int a = 0; a < dim_; ++a) total *= cells_;
    buckets_.assign(total, {});
    stamp_.assign(total, 0);
    cell_of_.assign(cfg.points.size(), -1);
    pos_in_cell_.assign(cfg.points.size(), -1);
    pos_in_active_.assign(cfg.points.size(), -1);
    for (std::int32_t id : ids) {
      const std::int64_t f = flat_of(cfg.points[id].pos.data());
      cell_of_[id] = f;
      pos_in_cell_[id] = static_cast<std::int32_t>(buckets_[f].size());
      buckets_[f].push_back(id);
      pos_in_active_[id] = static_cast<std::int32_t>(active_.size());
      active_.push_back(id);
    }
  }

  std::size_t count() const { return active_.size(); }
  const std::vector<std::int32_t>& active() const { return active_; }
  bool contains(std::int32_t id) const { return pos_in_active_[id] >= 0; }

  void remove(std::int32_t id) {
    if (pos_in_active_[id] < 0) return;
    auto& bucket = buckets_[cell_of_[id]];
    const std::int32_t bp = pos_in_cell_[id];
    bucket[bp] = bucket.back();
    pos_in_cell_[bucket[bp]] = bp;
    bucket.pop_back();
    const std::int32_t ap = pos_in_active_[id];
    active_[ap] = active_.back();
    pos_in_active_[active_[ap]] = ap;
    active_.pop_back();
    pos_in_cell_[id] = -1;
    pos_in_active_[id] = -1;
  }

  template <typename Pred>
  std::optional<NearestHit> nearest(const double* q, Pred&& eligible) const {
    NearestHit best;
    auto consider = [&](std::int32_t id) {
      const double d2 = detail::dist2(cfg_->window, q, cfg_->points[id].pos.data());
      if (d2 > best.dist2) return;
      if (!eligible(id)) return;
      if (d2 < best.dist2) {
        best = {id, d2, 1};
      } else {
        ++best.ties;
        if (id < best.id) best.id = id;
      }
    };

    if (active_.size() <= kLinearCutoff) {
      for (std::int32_t id : active_) consider(id);
      if (best.id < 0) return std::nullopt;
      return best;
    }

    const bool wrap = cfg_->window.boundary == Boundary::Torus;
    ++epoch_;
    std::vector<int> base(dim_);
    for (int a = 0; a < dim_; ++a) {
      int c = static_cast<int>(q[a] / cell_len_);
      base[a] = std::clamp(c, 0, cells_ - 1);
    }
    for (int r = 0; r <= cells_; ++r) {
      if (best.id >= 0) {
        const double reach = static_cast<double>(r - 1) * cell_len_;
        if (reach > 0.0 && best.dist2 < reach * reach) break;
      }
      for_each_shell_cell(dim_, r, base, cells_, wrap, [&](const std::vector<int>& cell) {
        std::int64_t f = 0;
        for (int a = 0; a < dim_; ++a) f = f * cells_ + cell[a];
        if (stamp_[f] == epoch_) return;
        stamp_[f] = epoch_;
        for (std::int32_t id : buckets_[f]) consider(id);
      });
    }
    if (best.id < 0) return std::nullopt;
    return best;
  }

 private:
  std::int64_t flat_of(const double* p) const {
    std::int64_t f = 0;
    for (int a = 0; a < dim_; ++a) {
      int c = static_cast<int>(p[a] / cell_len_);
      f = f * cells_ + std::clamp(c, 0, cells_ - 1);
    }
    return f;
  }

  const PointConfig* cfg_;
  int dim_;
  int cells_;
  double cell_len_;
  std::vector<std::vector<std::int32_t>> buckets_;
  std::vector<std::int64_t> cell_of_;
  std::vector<std::int32_t> pos_in_cell_;
  std::vector<std::int32_t> pos_in_active_;
  std::vector<std::int32_t> active_;
  mutable std::vector<std::uint64_t> stamp_;
  mutable std::uint64_t epoch_ = 0;
};

/// Shared state of the round-based and greedy drivers over one Matching.
class PairEngine {
 public:
  PairEngine(Matching& m, const Restriction& restriction, std::span<const std::int32_t> allowance)
      : m_(m), cfg_(m.config()), restriction_(restriction) {
    const std::size_t n = cfg_.points.size();
    if (allowance.size() != n) throw ValidationError("allowance size mismatch");
    allowance_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      allowance_[i] = std::min(allowance[i], cfg_.points[i].stubs);
    cand_.assign(n, -1);
    cand_d2_.assign(n, 0.0);
    std::vector<std::int32_t> red_ids, blue_ids;
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = static_cast<std::int32_t>(i);
      if (remaining(id) <= 0) continue;
      (cfg_.points[i].color == Color::Red ? red_ids : blue_ids).push_back(id);
    }
    red_grid_.emplace(cfg_, red_ids);
    blue_grid_.emplace(cfg_, blue_ids);
  }

  RunStats run_rounds() {
    RunStats stats;
    std::vector<Edge> links;
    while (true) {
      for (std::int32_t x : red_grid_->active()) refresh(x);
      for (std::int32_t x : blue_grid_->active()) refresh(x);
      links.clear();
      for (std::int32_t r : red_grid_->active()) {
        const std::int32_t b = cand_[r];
        if (b >= 0 && cand_[b] == r) links.push_back({r, b});
      }
      if (links.empty()) break;
      std::sort(links.begin(), links.end());
      for (const Edge& e : links) link(e.red, e.blue);
      ++stats.rounds;
      stats.edges_per_round.push_back(static_cast<std::int64_t>(links.size()));
    }
    stats.tie_breaks = tie_breaks_;
    return stats;
  }

  RunStats run_greedy() {
    RunStats stats;
    using Entry = std::tuple<double, std::int32_t, std::int32_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> pq;
    auto push_for = [&](std::int32_t r) {
      refresh(r);
      if (cand_[r] >= 0) pq.emplace(cand_d2_[r], r, cand_[r]);
    };
    for (std::int32_t r : red_grid_->active()) push_for(r);
    while (!pq.empty()) {
      const auto [d2, r, b] = pq.top();
      pq.pop();
      if (remaining(r) <= 0) continue;
      if (!partner_ok(r, b)) {
        push_for(r);
        continue;
      }
      link(r, b);
      if (remaining(r) > 0) push_for(r);
    }
    stats.tie_breaks = tie_breaks_;
    return stats;
  }

 private:
  std::int32_t remaining(std::int32_t id) const { return allowance_[id] - m_.degree(id); }

  bool partner_ok(std::int32_t x, std::int32_t cand) const {
    if (remaining(cand) <= 0) return false;
    if (m_.adjacent(x, cand)) return false;
    if (restriction_.empty()) return true;
    return cfg_.points[x].color == Color::Red ? !restriction_.forbids(x, cand)
                                              : !restriction_.forbids(cand, x);
  }

  void refresh(std::int32_t x) {
    if (cand_[x] >= 0 && partner_ok(x, cand_[x])) return;
    auto& grid = cfg_.points[x].color == Color::Red ? *blue_grid_ : *red_grid_;
    const auto hit =
        grid.nearest(cfg_.points[x].pos.data(), [&](std::int32_t c) { return partner_ok(x, c); });
    if (hit) {
      cand_[x] = hit->id;
      cand_d2_[x] = hit->dist2;
      if (hit->ties > 1) ++tie_breaks_;
    } else {
      cand_[x] = -1;
    }
  }

  void link(std::int32_t red, std::int32_t blue) {
    m_.add_edge(red, blue);
    if (remaining(red) <= 0) red_grid_->remove(red);
    if (remaining(blue) <= 0) blue_grid_->remove(blue);
  }

  Matching& m_;
  const PointConfig& cfg_;
  const Restriction& restriction_;
  std::vector<std::int32_t> allowance_;
  std::vector<std::int32_t> cand_;
  std::vector<double> cand_d2_;
  std::optional<ActiveGrid> red_grid_;
  std::optional<ActiveGrid> blue_grid_;
  std::int64_t tie_breaks_ = 0;
};

}  // namespace detail

inline std::vector<std::int32_t> full_allowance(const PointConfig& cfg) {
  std::vector<std::int32_t> a(cfg.points.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = cfg.points[i].stubs;
  return a;
}

/// Runs rounds on an existing matching under forbidden pairs and per-point
/// allowances; the building block for the restricted and staged variants.
inline RunStats extend_2cimc(Matching& m, const Restriction& restriction,
                             std::span<const std::int32_t> allowance) {
  detail::PairEngine engine(m, restriction, allowance);
  return engine.run_rounds();
}

struct Run2cimcResult {
  Matching matching;
  int rounds = 0;
  std::int64_t tie_breaks = 0;
  std::vector<std::int64_t> edges_per_round;
};

inline Run2cimcResult run_2cimc(const PointConfig& cfg, const Restriction& restriction = {}) {
  Run2cimcResult out{Matching(cfg)};
  const auto allowance = full_allowance(cfg);
  detail::PairEngine engine(out.matching, restriction, allowance);
  RunStats stats = engine.run_rounds();
  out.rounds = stats.rounds;
  out.tie_breaks = stats.tie_breaks;
  out.edges_per_round = std::move(stats.edges_per_round);
  return out;
}

inline Matching run_greedy(const PointConfig& cfg, const Restriction& restriction = {}) {
  Matching m(cfg);
  const auto allowance = full_allowance(cfg);
  detail::PairEngine engine(m, restriction, allowance);
  engine.run_greedy();
  return m;
}

/// Cache-free, grid-free re-implementation of the round semantics; shadow
/// oracle for the optimized engine.
inline Run2cimcResult run_2cimc_reference(const PointConfig& cfg,
                                          const Restriction& restriction = {}) {
  Run2cimcResult out{Matching(cfg)};
  Matching& m = out.matching;
  const auto n = static_cast<std::int32_t>(cfg.points.size());
  auto remaining = [&](std::int32_t id) { return m.remaining(id); };
  auto partner_ok = [&](std::int32_t x, std::int32_t c) {
    if (remaining(c) <= 0 || m.adjacent(x, c)) return false;
    return cfg.points[x].color == Color::Red ? !restriction.forbids(x, c)
                                             : !restriction.forbids(c, x);
  };
  std::vector<std::int32_t> best(n);
  std::vector<Edge> links;
  while (true) {
    for (std::int32_t x = 0; x < n; ++x) {
      best[x] = -1;
      if (remaining(x) <= 0) continue;
      double bd2 = std::numeric_limits<double>::infinity();
      for (std::int32_t y = 0; y < n; ++y) {
        if (cfg.points[y].color == cfg.points[x].color) continue;
        if (!partner_ok(x, y)) continue;
        const double d2 =
            detail::dist2(cfg.window, cfg.points[x].pos.data(), cfg.points[y].pos.data());
        if (d2 < bd2 || (d2 == bd2 && y < best[x])) {
          bd2 = d2;
          best[x] = y;
        }
      }
    }
    links.clear();
    for (std::int32_t x = 0; x < n; ++x) {
      if (cfg.points[x].color != Color::Red) continue;
      const std::int32_t b = best[x];
      if (b >= 0 && best[b] == x) links.push_back({x, b});
    }
    if (links.empty()) break;
    std::sort(links.begin(), links.end());
    for (const Edge& e : links) m.add_edge(e.red, e.blue);
    ++out.rounds;
    out.edges_per_round.push_back(static_cast<std::int64_t>(links.size()));
  }
  return out;
}

struct StabilityReport {
  bool stable = true;
  std::vector<Edge> unstable_pairs;
};

/// Definition-level stability check: a pair is unstable when not linked, not
/// forbidden, and each endpoint has a remaining stub or an incident edge
/// strictly longer than their distance. Exhaustive over all red-blue pairs.
inline StabilityReport verify_stable(const PointConfig& cfg, const Matching& m,
                                     const Restriction& restriction = {}) {
  if (!(m.config() == cfg))
    throw ValidationError("verify_stable: matching was built over a different configuration");
  const auto n = cfg.points.size();
  std::vector<double> maxd2(n, 0.0);
  for (const Edge& e : m.edges()) {
    const double d2 = m.edge_length2(e);
    maxd2[e.red] = std::max(maxd2[e.red], d2);
    maxd2[e.blue] = std::max(maxd2[e.blue], d2);
  }
  StabilityReport report;
  const auto reds = cfg.ids_of(Color::Red);
  const auto blues = cfg.ids_of(Color::Blue);
  for (std::int32_t r : reds) {
    for (std::int32_t b : blues) {
      if (m.adjacent(r, b) || restriction.forbids(r, b)) continue;
      const double d2 = detail::dist2(cfg.window, cfg.points[r].pos.data(), cfg.points[b].pos.data());
      const bool red_side = m.remaining(r) > 0 || maxd2[r] > d2;
      const bool blue_side = m.remaining(b) > 0 || maxd2[b] > d2;
      if (red_side && blue_side) {
        report.stable = false;
        report.unstable_pairs.push_back({r, b});
      }
    }
  }
  return report;
}

/// Enumerates every simple bipartite edge set respecting stub caps and the
/// restriction, keeping the stable ones. Exponential; guarded by size.
inline std::vector<Matching> brute_force_stable(const PointConfig& cfg,
                                                const Restriction& restriction = {}) {
  const auto reds = cfg.ids_of(Color::Red);
  const auto blues = cfg.ids_of(Color::Blue);
  if (reds.size() * blues.size() > 30)
    throw ValidationError("brute_force_stable: instance too large (n_red * n_blue > 30)");

  struct Cand {
    std::int32_t red, blue;
    double d2;
  };
  std::vector<Cand> cands;
  for (std::int32_t r : reds)
    for (std::int32_t b : blues) {
      if (restriction.forbids(r, b)) continue;
      cands.push_back(
          {r, b, detail::dist2(cfg.window, cfg.points[r].pos.data(), cfg.points[b].pos.data())});
    }

  const auto n = cfg.points.size();
  std::vector<char> take(cands.size(), 0);
  std::vector<std::int32_t> deg(n, 0);
  std::vector<double> maxd2(n, 0.0);
  std::vector<Matching> found;

  auto stable_leaf = [&]() {
    for (std::size_t j = 0; j < cands.size(); ++j) {
      if (take[j]) continue;
      const Cand& c = cands[j];
      const bool red_side = deg[c.red] < cfg.points[c.red].stubs || maxd2[c.red] > c.d2;
      const bool blue_side = deg[c.blue] < cfg.points[c.blue].stubs || maxd2[c.blue] > c.d2;
      if (red_side && blue_side) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cands.size()) {
      if (stable_leaf()) {
        Matching m(cfg);
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (take[j]) m.add_edge(cands[j].red, cands[j].blue);
        found.push_back(std::move(m));
      }
      return;
    }
    self(self, i + 1);
    const Cand& c = cands[i];
    if (deg[c.red] < cfg.points[c.red].stubs && deg[c.blue] < cfg.points[c.blue].stubs) {
      take[i] = 1;
      ++deg[c.red];
      ++deg[c.blue];
      const double old_r = maxd2[c.red], old_b = maxd2[c.blue];
      maxd2[c.red] = std::max(old_r, c.d2);
      maxd2[c.blue] = std::max(old_b, c.d2);
      self(self, i + 1);
      maxd2[c.red] = old_r;
      maxd2[c.blue] = old_b;
      --deg[c.red];
      --deg[c.blue];
      take[i] = 0;
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace stubmatch
