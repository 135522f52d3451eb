// Bipartite multi-matching bookkeeping: edge list with per-point degree and
// remaining-stub tracking, plus the forbidden-pair restriction used by the
// restricted matching variants.
#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "stubmatch/core.hpp"

namespace stubmatch {

struct Edge {
  std::int32_t red = -1;
  std::int32_t blue = -1;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.red == b.red && a.blue == b.blue;
  }
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.red != b.red ? a.red < b.red : a.blue < b.blue;
  }
};

/// Pairs that may not receive an edge.
class Restriction {
 public:
  static std::uint64_t key(std::int32_t red, std::int32_t blue) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(red)) << 32) |
           static_cast<std::uint32_t>(blue);
  }

  void forbid(std::int32_t red, std::int32_t blue) { forbidden_.insert(key(red, blue)); }

  bool forbids(std::int32_t red, std::int32_t blue) const {
    return !forbidden_.empty() && forbidden_.count(key(red, blue)) > 0;
  }

  bool empty() const { return forbidden_.empty(); }
  std::size_t size() const { return forbidden_.size(); }

 private:
  std::unordered_set<std::uint64_t> forbidden_;
};

/// Simple bipartite edge set over a PointConfig. Edges keep insertion order;
/// degree(p) + remaining(p) = stubs(p) at all times. The config must outlive
/// the matching.
class Matching {
 public:
  explicit Matching(const PointConfig& cfg)
      : cfg_(&cfg), partners_(cfg.points.size()), degree_(cfg.points.size(), 0) {}

  const PointConfig& config() const { return *cfg_; }

  void add_edge(std::int32_t red, std::int32_t blue) {
    const auto n = static_cast<std::int32_t>(cfg_->points.size());
    if (red < 0 || red >= n || blue < 0 || blue >= n)
      throw ValidationError("add_edge: id out of range");
    if (cfg_->points[red].color != Color::Red || cfg_->points[blue].color != Color::Blue)
      throw ValidationError("add_edge: edge must join a red and a blue point");
    if (remaining(red) <= 0 || remaining(blue) <= 0)
      throw ValidationError("add_edge: no remaining stubs");
    if (adjacent(red, blue)) throw ValidationError("add_edge: duplicate edge");
    edges_.push_back({red, blue});
    partners_[red].push_back(blue);
    partners_[blue].push_back(red);
    ++degree_[red];
    ++degree_[blue];
  }

  bool adjacent(std::int32_t a, std::int32_t b) const {
    const auto& pa = partners_[a];
    const auto& pb = partners_[b];
    const auto& shorter = pa.size() <= pb.size() ? pa : pb;
    const std::int32_t target = pa.size() <= pb.size() ? b : a;
    return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
  }

  std::int32_t degree(std::int32_t id) const { return degree_[id]; }
  std::int32_t stubs(std::int32_t id) const { return cfg_->points[id].stubs; }
  std::int32_t remaining(std::int32_t id) const { return stubs(id) - degree_[id]; }

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<std::int32_t>& partners(std::int32_t id) const { return partners_[id]; }

  std::vector<Edge> sorted_edges() const {
    std::vector<Edge> out = edges_;
    std::sort(out.begin(), out.end());
    return out;
  }

  double edge_length2(const Edge& e) const {
    return detail::dist2(cfg_->window, cfg_->points[e.red].pos.data(),
                         cfg_->points[e.blue].pos.data());
  }

  double edge_length(const Edge& e) const { return std::sqrt(edge_length2(e)); }

  friend bool operator==(const Matching& a, const Matching& b) {
    return a.cfg_ == b.cfg_ && a.sorted_edges() == b.sorted_edges();
  }

 private:
  const PointConfig* cfg_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::int32_t>> partners_;
  std::vector<std::int32_t> degree_;
};

struct MatchReport {
  std::int64_t matched_red_stubs = 0;
  std::int64_t matched_blue_stubs = 0;
  std::int64_t unmatched_red_stubs = 0;
  std::int64_t unmatched_blue_stubs = 0;
  std::int64_t edge_count = 0;
};

inline MatchReport match_report(const Matching& m) {
  const PointConfig& cfg = m.config();
  MatchReport r;
  r.edge_count = static_cast<std::int64_t>(m.size());
  r.matched_red_stubs = r.edge_count;
  r.matched_blue_stubs = r.edge_count;
  r.unmatched_red_stubs = cfg.total_stubs(Color::Red) - r.matched_red_stubs;
  r.unmatched_blue_stubs = cfg.total_stubs(Color::Blue) - r.matched_blue_stubs;
  return r;
}

/// Copy of cfg with stubs replaced by the per-point allowance; used to phrase
/// stability of restricted runs on their reduced instance.
inline PointConfig reduced_config(const PointConfig& cfg, std::span<const std::int32_t> allowance) {
  if (allowance.size() != cfg.points.size())
    throw ValidationError("reduced_config: allowance size mismatch");
  PointConfig out = cfg;
  for (std::size_t i = 0; i < out.points.size(); ++i)
    out.points[i].stubs = std::max<std::int32_t>(allowance[i], 0);
  return out;
}

}  // namespace stubmatch
