#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace stubmatch;
using testutil::make_config;
using testutil::P;

namespace {

PointConfig two_blue_fixture() {
  return make_config(1, 10.0, Boundary::Box,
                     {{Color::Red, {0.0}, 2},
                      {Color::Blue, {1.0}, 1},
                      {Color::Blue, {3.0}, 1}});
}

}  // namespace

TEST_CASE("add_edge enforces the multi-matching constraints") {
  const auto cfg = two_blue_fixture();
  Matching m(cfg);
  m.add_edge(0, 1);
  CHECK(m.size() == 1);
  CHECK(m.degree(0) == 1);
  CHECK(m.remaining(0) == 1);

  SECTION("same pair twice") { CHECK_THROWS_AS(m.add_edge(0, 1), ValidationError); }
  SECTION("colors must differ in the red,blue order") {
    CHECK_THROWS_AS(m.add_edge(1, 2), ValidationError);
  }
  SECTION("stub exhaustion") {
    CHECK_THROWS_AS(m.add_edge(0, 1), ValidationError);
    m.add_edge(0, 2);
    CHECK(m.remaining(0) == 0);
    const auto big = make_config(1, 10.0, Boundary::Box,
                                 {{Color::Red, {0.0}, 2},
                                  {Color::Blue, {1.0}, 1},
                                  {Color::Blue, {3.0}, 1},
                                  {Color::Blue, {5.0}, 1}});
    Matching full(big);
    full.add_edge(0, 1);
    full.add_edge(0, 2);
    CHECK_THROWS_AS(full.add_edge(0, 3), ValidationError);
  }
  SECTION("ids out of range") { CHECK_THROWS_AS(m.add_edge(0, 9), ValidationError); }
}

TEST_CASE("edge lengths respect the boundary") {
  const auto cfg = make_config(1, 10.0, Boundary::Torus,
                               {{Color::Red, {1.0}, 1}, {Color::Blue, {9.0}, 1}});
  Matching m(cfg);
  m.add_edge(0, 1);
  CHECK(m.edge_length(m.edges()[0]) == 2.0);
}

TEST_CASE("sorted_edges orders by red then blue id") {
  const auto cfg = make_config(1, 20.0, Boundary::Box,
                               {{Color::Red, {0.0}, 2},
                                {Color::Red, {10.0}, 1},
                                {Color::Blue, {1.0}, 1},
                                {Color::Blue, {3.0}, 1},
                                {Color::Blue, {11.0}, 1}});
  Matching m(cfg);
  m.add_edge(1, 4);
  m.add_edge(0, 3);
  m.add_edge(0, 2);
  const auto sorted = m.sorted_edges();
  REQUIRE(sorted.size() == 3);
  CHECK(sorted[0] == Edge{0, 2});
  CHECK(sorted[1] == Edge{0, 3});
  CHECK(sorted[2] == Edge{1, 4});
}

TEST_CASE("match_report accounts for every stub") {
  const auto cfg = two_blue_fixture();

  SECTION("full matching") {
    Matching m(cfg);
    m.add_edge(0, 1);
    m.add_edge(0, 2);
    const MatchReport r = match_report(m);
    CHECK(r.matched_red_stubs == 2);
    CHECK(r.matched_blue_stubs == 2);
    CHECK(r.unmatched_red_stubs == 0);
    CHECK(r.unmatched_blue_stubs == 0);
    CHECK(r.edge_count == 2);
  }
  SECTION("empty matching") {
    const Matching m(cfg);
    const MatchReport r = match_report(m);
    CHECK(r.matched_red_stubs == 0);
    CHECK(r.matched_blue_stubs == 0);
    CHECK(r.unmatched_red_stubs == 2);
    CHECK(r.unmatched_blue_stubs == 2);
    CHECK(r.edge_count == 0);
  }
  SECTION("partial matching with a leftover red") {
    const auto partial = make_config(1, 20.0, Boundary::Box,
                                     {{Color::Red, {0.0}, 1},
                                      {Color::Red, {10.0}, 1},
                                      {Color::Blue, {4.0}, 1}});
    Matching m(partial);
    m.add_edge(0, 2);
    const MatchReport r = match_report(m);
    CHECK(r.matched_red_stubs == 1);
    CHECK(r.matched_blue_stubs == 1);
    CHECK(r.unmatched_red_stubs == 1);
    CHECK(r.unmatched_blue_stubs == 0);
    CHECK(r.edge_count == 1);
  }
}

TEST_CASE("restrictions forbid unordered pairs") {
  Restriction r;
  CHECK(r.empty());
  r.forbid(3, 7);
  CHECK(r.forbids(3, 7));
  CHECK_FALSE(r.forbids(3, 8));
  CHECK_FALSE(r.forbids(7, 3));  // arguments are (red, blue), not symmetric ids
  r.forbid(3, 7);
  CHECK(r.size() == 1);
}

TEST_CASE("matching equality is config identity plus edge set") {
  const auto cfg = two_blue_fixture();
  Matching a(cfg), b(cfg);
  a.add_edge(0, 1);
  a.add_edge(0, 2);
  b.add_edge(0, 2);
  CHECK_FALSE(a == b);
  b.add_edge(0, 1);
  CHECK(a == b);  // insertion order differs, edge sets match
}
