// Explicit matching schemes beyond the plain stable multi-matching:
//  - finite_component_scheme: quantile-typed chains joined into groups of
//    size 2n, each completed group wired as K_{n,n} (all components finite);
//  - percolating_scheme: a stable pairing of the >=2-stub points threaded
//    into one long alternating path via an MST + DFS order, then a restricted
//    run for the remaining stubs (one giant component);
//  - alternating_truncation: staged restricted runs with growing per-color
//    caps for infinite-mean marks.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stubmatch/core.hpp"
#include "stubmatch/grid.hpp"
#include "stubmatch/matcher.hpp"
#include "stubmatch/matching.hpp"

namespace stubmatch {

namespace detail {

/// One-stub-each stable pairing between two disjoint point sets, computed by
/// the round engine on a synthetic two-color configuration. Returns pairs of
/// original ids (side_a id, side_b id).
inline std::vector<std::pair<std::int32_t, std::int32_t>> pair_sets(
    const PointConfig& cfg, const std::vector<std::int32_t>& side_a,
    const std::vector<std::int32_t>& side_b) {
  PointConfig sub;
  sub.window = cfg.window;
  sub.points.reserve(side_a.size() + side_b.size());
  std::int32_t id = 0;
  for (std::int32_t orig : side_a)
    sub.points.push_back({id++, Color::Red, 1, cfg.points[orig].pos});
  for (std::int32_t orig : side_b)
    sub.points.push_back({id++, Color::Blue, 1, cfg.points[orig].pos});
  const auto res = run_2cimc(sub);
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(res.matching.size());
  const auto a_count = static_cast<std::int32_t>(side_a.size());
  for (const Edge& e : res.matching.edges())
    pairs.emplace_back(side_a[e.red], side_b[e.blue - a_count]);
  return pairs;
}

/// Nearest-neighbor distance within a point set (same config metric);
/// +infinity for a singleton.
inline std::vector<double> nn_distances(const PointConfig& cfg,
                                        const std::vector<std::int32_t>& ids) {
  std::vector<double> out(ids.size(), std::numeric_limits<double>::infinity());
  if (ids.size() < 2) return out;
  SpatialGrid grid(cfg, ids);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::int32_t self = ids[i];
    const auto hit = grid.nearest(std::span<const double>(cfg.points[self].pos),
                                  [self](std::int32_t c) { return c != self; });
    if (hit) out[i] = std::sqrt(hit->dist2);
  }
  return out;
}

}  // namespace detail

struct SchemeGroup {
  std::int32_t degree_class = 0;
  std::vector<std::int32_t> red_chain;   // type 1..n order
  std::vector<std::int32_t> blue_chain;  // type 1..n order
};

struct FiniteComponentResult {
  Matching matching;
  std::vector<SchemeGroup> groups;
  std::vector<std::int32_t> leftover_ids;  // points of no completed group
  // degree class -> interior quantile thresholds d_1..d_{n-1}
  std::map<std::int32_t, std::vector<double>> thresholds;
};

/// Symmetric finite-component construction. Per degree class n: split each
/// color into n types by empirical quantiles of the nearest-same-class
/// neighbor distance (pooled over both colors), chain types i <-> i+1 within
/// each color by stable pairings, join chains across colors at type 1, and
/// wire every completed group of 2n points as K_{n,n}.
inline FiniteComponentResult finite_component_scheme(const PointConfig& cfg) {
  std::map<std::int32_t, std::pair<std::vector<std::int32_t>, std::vector<std::int32_t>>> classes;
  for (const Point& p : cfg.points)
    (p.color == Color::Red ? classes[p.stubs].first : classes[p.stubs].second).push_back(p.id);
  for (const auto& [n, members] : classes)
    if (members.first.empty() || members.second.empty())
      throw UnsupportedCaseError("finite_component_scheme: degree class " + std::to_string(n) +
                                 " present in only one color (asymmetric laws)");

  FiniteComponentResult result{Matching(cfg)};
  std::vector<char> grouped(cfg.points.size(), 0);

  for (const auto& [n, members] : classes) {
    const auto& reds = members.first;
    const auto& blues = members.second;

    // Type assignment by pooled empirical quantiles.
    std::vector<std::int32_t> type(cfg.points.size(), 0);
    std::vector<double> thresholds;
    if (n > 1) {
      const auto red_d = detail::nn_distances(cfg, reds);
      const auto blue_d = detail::nn_distances(cfg, blues);
      std::vector<double> pooled;
      pooled.reserve(red_d.size() + blue_d.size());
      pooled.insert(pooled.end(), red_d.begin(), red_d.end());
      pooled.insert(pooled.end(), blue_d.begin(), blue_d.end());
      std::sort(pooled.begin(), pooled.end());
      const auto msz = static_cast<std::int64_t>(pooled.size());
      for (std::int32_t i = 1; i < n; ++i) {
        std::int64_t k = (static_cast<std::int64_t>(i) * msz) / n;
        thresholds.push_back(pooled[std::min(std::max<std::int64_t>(k - 1, 0), msz - 1)]);
      }
      auto assign = [&](const std::vector<std::int32_t>& ids, const std::vector<double>& dist) {
        for (std::size_t j = 0; j < ids.size(); ++j) {
          std::int32_t t = 1;
          while (t <= static_cast<std::int32_t>(thresholds.size()) && dist[j] > thresholds[t - 1])
            ++t;
          type[ids[j]] = t;
        }
      };
      assign(reds, red_d);
      assign(blues, blue_d);
      result.thresholds[n] = thresholds;
    } else {
      for (std::int32_t id : reds) type[id] = 1;
      for (std::int32_t id : blues) type[id] = 1;
    }

    auto of_type = [&](const std::vector<std::int32_t>& ids, std::int32_t t) {
      std::vector<std::int32_t> out;
      for (std::int32_t id : ids)
        if (type[id] == t) out.push_back(id);
      return out;
    };

    // Chain links type i -> i+1 within each color.
    std::vector<std::int32_t> next(cfg.points.size(), -1);
    for (const auto* side : {&reds, &blues}) {
      for (std::int32_t t = 1; t < n; ++t) {
        const auto lower = of_type(*side, t);
        const auto upper = of_type(*side, t + 1);
        for (const auto& [a, b] : detail::pair_sets(cfg, lower, upper)) next[a] = b;
      }
    }

    // Cross-color join at type 1, then group assembly.
    const auto red1 = of_type(reds, 1);
    const auto blue1 = of_type(blues, 1);
    for (const auto& [r1, b1] : detail::pair_sets(cfg, red1, blue1)) {
      SchemeGroup g{n};
      for (std::int32_t x = r1; x >= 0 && static_cast<std::int32_t>(g.red_chain.size()) < n;
           x = next[x])
        g.red_chain.push_back(x);
      for (std::int32_t y = b1; y >= 0 && static_cast<std::int32_t>(g.blue_chain.size()) < n;
           y = next[y])
        g.blue_chain.push_back(y);
      if (static_cast<std::int32_t>(g.red_chain.size()) != n ||
          static_cast<std::int32_t>(g.blue_chain.size()) != n)
        continue;
      for (std::int32_t r : g.red_chain)
        for (std::int32_t b : g.blue_chain) result.matching.add_edge(r, b);
      for (std::int32_t r : g.red_chain) grouped[r] = 1;
      for (std::int32_t b : g.blue_chain) grouped[b] = 1;
      result.groups.push_back(std::move(g));
    }
  }

  for (const Point& p : cfg.points)
    if (!grouped[p.id]) result.leftover_ids.push_back(p.id);
  return result;
}

struct PercolatingResult {
  Matching matching;
  std::vector<std::int32_t> path;   // alternating colors along the path
  std::size_t path_edge_count = 0;  // path edges = this prefix of edges()
  Color skeleton_color = Color::Blue;
  bool counts_close = false;  // >=2-stub counts within 2*sqrt(mean count)
  std::vector<std::int32_t> skeleton_leftovers;
  Restriction path_restriction;  // forbids the path edges (used by the post run)
  std::string tree_method = "euclidean_mst_dfs";
};

/// Percolating construction: stable pairing of the >=2-stub points, skeleton
/// color ordered by DFS over its Euclidean MST (children by distance from
/// parent), consecutive skeleton points linked through partners, remaining
/// stubs matched by a restricted run.
inline PercolatingResult percolating_scheme(const PointConfig& cfg) {
  std::vector<std::int32_t> red2, blue2;
  for (const Point& p : cfg.points)
    if (p.stubs >= 2) (p.color == Color::Red ? red2 : blue2).push_back(p.id);
  if (red2.size() < 2 || blue2.size() < 2)
    throw UnsupportedCaseError(
        "percolating_scheme: need at least two points of each color with stubs >= 2");

  PercolatingResult result{Matching(cfg)};
  const double mean_count = 0.5 * (static_cast<double>(red2.size()) + static_cast<double>(blue2.size()));
  result.counts_close =
      std::fabs(static_cast<double>(red2.size()) - static_cast<double>(blue2.size())) <=
      2.0 * std::sqrt(mean_count);
  result.skeleton_color = red2.size() < blue2.size() ? Color::Red : Color::Blue;

  const bool blue_skeleton = result.skeleton_color == Color::Blue;
  const auto pairs = detail::pair_sets(cfg, red2, blue2);
  std::vector<std::int32_t> partner(cfg.points.size(), -1);
  for (const auto& [r, b] : pairs) {
    partner[r] = b;
    partner[b] = r;
  }

  const auto& skeleton_all = blue_skeleton ? blue2 : red2;
  std::vector<std::int32_t> skel;
  for (std::int32_t id : skeleton_all)
    (partner[id] >= 0 ? skel : result.skeleton_leftovers).push_back(id);
  if (skel.size() > 50000)
    throw ValidationError("percolating_scheme: skeleton too large for the O(m^2) spanning tree");

  // Euclidean MST over the matched skeleton points (Prim), then DFS from the
  // smallest id with children sorted by distance from their parent.
  const auto m_sz = skel.size();
  std::vector<std::int32_t> order;
  if (m_sz == 1) {
    order = skel;
  } else {
    std::sort(skel.begin(), skel.end());
    auto d2 = [&](std::size_t i, std::size_t j) {
      return detail::dist2(cfg.window, cfg.points[skel[i]].pos.data(),
                           cfg.points[skel[j]].pos.data());
    };
    std::vector<char> in_tree(m_sz, 0);
    std::vector<double> best(m_sz, std::numeric_limits<double>::infinity());
    std::vector<std::int32_t> tree_parent(m_sz, -1);
    std::vector<std::vector<std::int32_t>> children(m_sz);
    in_tree[0] = 1;
    for (std::size_t j = 1; j < m_sz; ++j) {
      best[j] = d2(0, j);
      tree_parent[j] = 0;
    }
    for (std::size_t added = 1; added < m_sz; ++added) {
      std::size_t pick = m_sz;
      double pd = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m_sz; ++j)
        if (!in_tree[j] && best[j] < pd) {
          pd = best[j];
          pick = j;
        }
      in_tree[pick] = 1;
      children[tree_parent[pick]].push_back(static_cast<std::int32_t>(pick));
      for (std::size_t j = 0; j < m_sz; ++j) {
        if (in_tree[j]) continue;
        const double nd = d2(pick, j);
        if (nd < best[j]) {
          best[j] = nd;
          tree_parent[j] = static_cast<std::int32_t>(pick);
        }
      }
    }
    for (std::size_t v = 0; v < m_sz; ++v)
      std::sort(children[v].begin(), children[v].end(),
                [&](std::int32_t a, std::int32_t b) { return d2(v, a) < d2(v, b); });
    order.reserve(m_sz);
    std::vector<std::int32_t> stack{0};
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      order.push_back(skel[v]);
      for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
    }
  }

  // Path: partner(s_1), s_1, partner(s_2), s_2, ...; edges are the pairing
  // edges plus links from s_i to partner(s_{i+1}).
  auto add_colored = [&](std::int32_t a, std::int32_t b) {
    if (cfg.points[a].color == Color::Red)
      result.matching.add_edge(a, b);
    else
      result.matching.add_edge(b, a);
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::int32_t s = order[i];
    if (i > 0) add_colored(order[i - 1], partner[s]);
    add_colored(s, partner[s]);
    result.path.push_back(partner[s]);
    result.path.push_back(s);
  }
  result.path_edge_count = result.matching.size();
  for (const Edge& e : result.matching.edges()) result.path_restriction.forbid(e.red, e.blue);

  extend_2cimc(result.matching, result.path_restriction, full_allowance(cfg));
  return result;
}

struct StageReport {
  int stage = 0;  // 1-based
  std::int64_t cap_red = 0;
  std::int64_t cap_blue = 0;
  std::string saturated_color;  // "red" | "blue" | "both" | "none"
  std::int64_t edges_added = 0;
  // audit extras (not part of the serialized record)
  std::int64_t edges_total_after = 0;
  std::int64_t red_allowed_unmatched = 0;
  std::int64_t blue_allowed_unmatched = 0;
};

struct TruncationResult {
  Matching matching;
  std::vector<StageReport> stages;
};

/// Staged restricted runs: stage i allows min(stubs, cap_i) stubs per point
/// (per-color caps), forbids previously created pairs, and accumulates into
/// one matching.
inline TruncationResult alternating_truncation(
    const PointConfig& cfg, const std::vector<std::pair<std::int64_t, std::int64_t>>& caps) {
  if (caps.empty()) throw ValidationError("alternating_truncation: no stages");
  for (std::size_t i = 0; i < caps.size(); ++i) {
    if (caps[i].first < 1 || caps[i].second < 1)
      throw ValidationError("alternating_truncation: caps must be >= 1");
    if (i > 0 && (caps[i].first <= caps[i - 1].first || caps[i].second <= caps[i - 1].second))
      throw ValidationError("alternating_truncation: caps must be strictly increasing");
  }

  TruncationResult result{Matching(cfg)};
  Restriction forbidden;
  std::vector<std::int32_t> allowance(cfg.points.size());
  std::size_t prior_edges = 0;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const auto [cap_red, cap_blue] = caps[i];
    for (const Point& p : cfg.points) {
      const std::int64_t cap = p.color == Color::Red ? cap_red : cap_blue;
      allowance[p.id] = static_cast<std::int32_t>(
          std::min<std::int64_t>(p.stubs, cap));
    }
    extend_2cimc(result.matching, forbidden, allowance);

    StageReport rep;
    rep.stage = static_cast<int>(i) + 1;
    rep.cap_red = cap_red;
    rep.cap_blue = cap_blue;
    rep.edges_added = static_cast<std::int64_t>(result.matching.size() - prior_edges);
    rep.edges_total_after = static_cast<std::int64_t>(result.matching.size());
    for (const Point& p : cfg.points) {
      const std::int64_t slack = allowance[p.id] - result.matching.degree(p.id);
      (p.color == Color::Red ? rep.red_allowed_unmatched : rep.blue_allowed_unmatched) +=
          std::max<std::int64_t>(slack, 0);
    }
    const bool red_sat = rep.red_allowed_unmatched == 0;
    const bool blue_sat = rep.blue_allowed_unmatched == 0;
    rep.saturated_color = red_sat && blue_sat ? "both" : red_sat ? "red" : blue_sat ? "blue" : "none";
    for (std::size_t e = prior_edges; e < result.matching.size(); ++e)
      forbidden.forbid(result.matching.edges()[e].red, result.matching.edges()[e].blue);
    prior_edges = result.matching.size();
    result.stages.push_back(std::move(rep));
  }
  return result;
}

}  // namespace stubmatch
