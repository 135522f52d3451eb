#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <set>

#include "helpers.hpp"

using namespace stubmatch;
using testutil::det_params;
using testutil::make_config;
using testutil::P;
using testutil::random_config;

namespace {

// Independent BFS labelling used to cross-check the union-find components.
std::vector<int> bfs_components(const PointConfig& cfg, const Matching& m) {
  std::vector<std::vector<std::int32_t>> adj(cfg.size());
  for (const Edge& e : m.edges()) {
    adj[e.red].push_back(e.blue);
    adj[e.blue].push_back(e.red);
  }
  std::vector<int> label(cfg.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < cfg.size(); ++s) {
    if (label[s] != -1 || adj[s].empty()) continue;
    std::queue<std::int32_t> q;
    q.push(static_cast<std::int32_t>(s));
    label[s] = next;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (const auto v : adj[u])
        if (label[v] == -1) {
          label[v] = next;
          q.push(v);
        }
    }
    next++;
  }
  return label;
}

}  // namespace

TEST_CASE("components of a K_22 fixture") {
  const auto cfg = make_config(2, 10.0, Boundary::Box,
                               {{Color::Red, {1.0, 1.0}, 2},
                                {Color::Red, {2.0, 1.1}, 2},
                                {Color::Blue, {1.1, 2.0}, 2},
                                {Color::Blue, {2.1, 2.1}, 2}});
  Matching m(cfg);
  for (std::int32_t r : {0, 1})
    for (std::int32_t b : {2, 3}) m.add_edge(r, b);
  const auto rep = components(cfg, m);
  CHECK(rep.size_histogram == std::map<std::int64_t, std::int64_t>{{4, 1}});
  CHECK(rep.largest_fraction == 1.0);
  CHECK(rep.component_count == 1);
  CHECK(rep.isolated_points == 0);
  CHECK(rep.cycles == 1);  // 4-cycle
  CHECK(rep.paths == 0);
  CHECK(rep.other == 0);
}

TEST_CASE("components of the three point fixture") {
  const auto cfg = make_config(1, 10.0, Boundary::Box,
                               {{Color::Red, {0.0}, 2},
                                {Color::Blue, {1.0}, 1},
                                {Color::Blue, {3.0}, 1}});
  const auto m = run_2cimc(cfg).matching;
  const auto rep = components(cfg, m);
  CHECK(rep.size_histogram == std::map<std::int64_t, std::int64_t>{{3, 1}});
  CHECK(rep.component_count == 1);
  CHECK(rep.paths == 1);  // blue-red-blue
  CHECK(rep.cycles == 0);
}

TEST_CASE("isolated points are counted apart from the histogram") {
  const auto cfg = make_config(1, 20.0, Boundary::Box,
                               {{Color::Red, {0.0}, 1},
                                {Color::Blue, {1.0}, 1},
                                {Color::Red, {10.0}, 1},
                                {Color::Blue, {15.0}, 2}});
  Matching m(cfg);
  m.add_edge(0, 1);
  const auto rep = components(cfg, m);
  CHECK(rep.size_histogram == std::map<std::int64_t, std::int64_t>{{2, 1}});
  CHECK(rep.isolated_points == 2);
  CHECK(rep.component_id[0] == rep.component_id[1]);
  CHECK(rep.component_id[2] == -1);
  CHECK(rep.component_id[3] == -1);
  CHECK(rep.largest_fraction == 0.5);  // 2 of 4 points
  std::int64_t hist_total = 0;
  for (const auto& [size, count] : rep.size_histogram) hist_total += size * count;
  CHECK(hist_total == 2);  // sums to matched-vertex count
}

TEST_CASE("union-find agrees with BFS on sampled matchings") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto cfg = sample_config(det_params(2, 35.0, Boundary::Torus, 1.0, 3, seed));
    REQUIRE(cfg.size() <= 10000);
    const auto m = run_2cimc(cfg).matching;
    const auto rep = components(cfg, m);
    const auto oracle = bfs_components(cfg, m);

    // same partition: component ids agree up to relabelling
    std::map<int, int> fwd, rev;
    std::int64_t matched_vertices = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
      if (oracle[i] == -1) {
        CHECK(rep.component_id[i] == -1);
        continue;
      }
      matched_vertices++;
      REQUIRE(rep.component_id[i] >= 0);
      if (fwd.count(oracle[i]) == 0) fwd[oracle[i]] = rep.component_id[i];
      if (rev.count(rep.component_id[i]) == 0) rev[rep.component_id[i]] = oracle[i];
      CHECK(fwd[oracle[i]] == rep.component_id[i]);
      CHECK(rev[rep.component_id[i]] == oracle[i]);
    }
    std::int64_t hist_total = 0;
    for (const auto& [size, count] : rep.size_histogram) hist_total += size * count;
    CHECK(hist_total == matched_vertices);
    CHECK(rep.paths + rep.cycles + rep.other == rep.component_count);
  }
}

TEST_CASE("degree-capped graphs are all paths and cycles") {
  // marks in {1,2} force maximum degree 2
  SimParams params{Window{2, 25.0, Boundary::Torus}, 1.0, 1.0,
                   MarkLaw::explicit_pmf({0.5, 0.5}), MarkLaw::explicit_pmf({0.5, 0.5}), 5};
  const auto cfg = sample_config(params);
  const auto m = run_2cimc(cfg).matching;
  const auto rep = components(cfg, m);
  CHECK(rep.other == 0);
  CHECK(rep.paths + rep.cycles == rep.component_count);
}

TEST_CASE("stub intensities are counts per volume with exact fairness") {
  const auto cfg = make_config(1, 10.0, Boundary::Box,
                               {{Color::Red, {0.0}, 2},
                                {Color::Blue, {1.0}, 1},
                                {Color::Blue, {3.0}, 1}});
  Matching m(cfg);
  m.add_edge(0, 1);
  const auto rates = stub_intensities(cfg, m);
  CHECK(rates.matched_red_rate == 0.1);
  CHECK(rates.matched_blue_rate == 0.1);
  CHECK(rates.unmatched_red_rate == 0.1);
  CHECK(rates.unmatched_blue_rate == 0.1);
}

TEST_CASE("edge length totals and the Hill estimator") {
  // isolated matched pairs with Pareto(alpha=2) lengths; Hill on the top 5%
  // of per-point totals should recover alpha ~ 2
  const int pairs = 2000;
  const double alpha = 2.0;
  std::vector<P> pts;
  RngStream rng(17, 4);
  std::vector<double> lengths(pairs);
  for (int i = 0; i < pairs; ++i)
    lengths[i] = 0.01 * std::pow(1.0 - rng.next_double(), -1.0 / alpha);
  const double spacing = 50.0;
  const double L = pairs * spacing;
  for (int i = 0; i < pairs; ++i) pts.push_back({Color::Red, {i * spacing + 1.0}, 1});
  for (int i = 0; i < pairs; ++i)
    pts.push_back({Color::Blue, {i * spacing + 1.0 + lengths[i]}, 1});
  const auto cfg = make_config(1, L, Boundary::Box, pts);
  Matching m(cfg);
  for (int i = 0; i < pairs; ++i) m.add_edge(i, pairs + i);

  const auto stats = total_edge_length(cfg, m);
  REQUIRE(stats.per_point.size() == cfg.size());
  for (int i = 0; i < pairs; ++i) {
    CHECK_THAT(stats.per_point[i], Catch::Matchers::WithinRel(lengths[i], 1e-9));
    CHECK_THAT(stats.per_point[pairs + i], Catch::Matchers::WithinRel(lengths[i], 1e-9));
  }
  double expect_mean = 0.0;
  for (double d : lengths) expect_mean += 2.0 * d;
  expect_mean /= static_cast<double>(cfg.size());
  CHECK_THAT(stats.mean, Catch::Matchers::WithinRel(expect_mean, 1e-9));
  REQUIRE(stats.hill_k >= 2);
  CHECK_THAT(stats.hill_tail_index, Catch::Matchers::WithinAbs(alpha, 0.5));
}

TEST_CASE("edge length stats on an empty matching") {
  const auto cfg = random_config(3, 2, 10.0, Boundary::Torus, 5, 5, 2);
  const Matching m(cfg);
  const auto stats = total_edge_length(cfg, m);
  CHECK(stats.mean == 0.0);
  CHECK(stats.hill_k == 0);
  CHECK(std::isnan(stats.hill_tail_index));
}

TEST_CASE("renormalization arithmetic") {
  const auto cfg = sample_config(det_params(2, 20.0, Boundary::Torus, 1.0, 2, 9));
  const auto lat = renormalize(cfg, 2.0, 2);
  CHECK(lat.m == 3);  // adjacent cubes are at most a*sqrt(5) apart in d=2
  CHECK(lat.k == 338);
  CHECK(lat.n == 2);
  CHECK(lat.extent == 10);
  CHECK_FALSE(lat.side_adjusted);
  CHECK(lat.side == 2.0);
  CHECK(lat.adjacency == "face_neighbors");
  CHECK(lat.red_count.size() == 100);

  const auto lat1 = renormalize(cfg, 2.0, 1);
  CHECK(lat1.k == 169);  // 1 * (4*3+1)^2

  SECTION("non-divisible side is rounded and flagged") {
    const auto odd = renormalize(cfg, 3.0, 2);
    CHECK(odd.extent == 7);
    CHECK(odd.side_adjusted);
    CHECK_THAT(odd.side * odd.extent, Catch::Matchers::WithinRel(20.0, 1e-12));
  }
  SECTION("input domain errors") {
    CHECK_THROWS_AS(renormalize(cfg, 20.0, 2), ValidationError);
    CHECK_THROWS_AS(renormalize(cfg, 25.0, 2), ValidationError);
    CHECK_THROWS_AS(renormalize(cfg, 0.0, 2), ValidationError);
    CHECK_THROWS_AS(renormalize(cfg, 2.0, 0), ValidationError);
  }
}

TEST_CASE("renormalization of an empty config") {
  const PointConfig cfg{Window{2, 10.0, Boundary::Torus}, {}};
  const auto lat = renormalize(cfg, 1.0, 2);
  CHECK(lat.acceptable_count == 0);
  CHECK(lat.good_count == 0);
  CHECK_FALSE(lat.percolates);
}

TEST_CASE("a saturated ring percolates on the torus") {
  // one red and one blue in every cube of a d=1 ring
  std::vector<P> pts;
  for (int i = 0; i < 8; ++i) {
    pts.push_back({Color::Red, {i + 0.3}, 1});
    pts.push_back({Color::Blue, {i + 0.6}, 1});
  }
  const auto cfg = make_config(1, 8.0, Boundary::Torus, pts);
  const auto lat = renormalize(cfg, 1.0, 1);
  CHECK(lat.m == 2);  // d=1: smallest m with m^2 >= 4
  CHECK(lat.k == 9);  // 1 * (4*2+1)^1
  CHECK(lat.acceptable_count == 8);
  CHECK(lat.good_count == 8);
  CHECK(lat.percolates);

  SECTION("removing one cube's points breaks the winding") {
    std::vector<P> gap(pts.begin() + 2, pts.end());
    const auto cfg2 = make_config(1, 8.0, Boundary::Torus, gap);
    const auto lat2 = renormalize(cfg2, 1.0, 1);
    CHECK(lat2.acceptable_count == 7);
    CHECK(lat2.good_count < 7);
    CHECK_FALSE(lat2.percolates);
  }
}

TEST_CASE("a full box spans face to face") {
  std::vector<P> pts;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      pts.push_back({Color::Red, {i + 0.4, j + 0.4}, 1});
      pts.push_back({Color::Blue, {i + 0.7, j + 0.7}, 1});
    }
  const auto cfg = make_config(2, 6.0, Boundary::Box, pts);
  const auto lat = renormalize(cfg, 1.0, 2);
  CHECK(lat.acceptable_count == 36);
  CHECK(lat.good_count == 36);  // box super-cubes clip at the boundary
  CHECK(lat.percolates);
}

TEST_CASE("components validates the config pairing") {
  const auto a = random_config(1, 2, 10.0, Boundary::Torus, 10, 10, 2);
  const auto b = random_config(2, 2, 10.0, Boundary::Torus, 10, 10, 2);
  const auto m = run_2cimc(a).matching;
  CHECK_THROWS_AS(components(b, m), ValidationError);
}
