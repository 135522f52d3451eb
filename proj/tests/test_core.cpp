#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"

using namespace stubmatch;
using testutil::make_config;
using testutil::P;

TEST_CASE("window validation") {
  CHECK_NOTHROW(validate(Window{2, 10.0, Boundary::Torus}));
  CHECK_THROWS_AS(validate(Window{0, 10.0, Boundary::Torus}), ValidationError);
  CHECK_THROWS_AS(validate(Window{2, 0.0, Boundary::Torus}), ValidationError);
  CHECK_THROWS_AS(validate(Window{2, -1.0, Boundary::Box}), ValidationError);
  CHECK_THROWS_AS(validate(Window{2, std::numeric_limits<double>::infinity(), Boundary::Box}),
                  ValidationError);
}

TEST_CASE("config validation") {
  auto cfg = make_config(1, 10.0, Boundary::Torus,
                         {{Color::Red, {1.0}, 2}, {Color::Blue, {9.0}, 1}});
  CHECK_NOTHROW(validate(cfg));

  SECTION("non-contiguous ids") {
    cfg.points[1].id = 5;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
  }
  SECTION("zero stubs") {
    cfg.points[0].stubs = 0;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
  }
  SECTION("coordinate out of window") {
    cfg.points[0].pos[0] = 10.0;
    CHECK_THROWS_AS(validate(cfg), ValidationError);
  }
  SECTION("wrong dimension") {
    cfg.points[0].pos = {1.0, 2.0};
    CHECK_THROWS_AS(validate(cfg), ValidationError);
  }
}

TEST_CASE("distance on the torus wraps around") {
  const Window w{1, 10.0, Boundary::Torus};
  const std::vector<double> a{1.0}, b{9.0};
  CHECK(distance(w, a, b) == 2.0);
  const Window box{1, 10.0, Boundary::Box};
  CHECK(distance(box, a, b) == 8.0);
}

TEST_CASE("distance in a box is plain Euclidean") {
  const Window w{2, 20.0, Boundary::Box};
  const std::vector<double> a{0.0, 0.0}, b{3.0, 4.0};
  CHECK(distance(w, a, b) == 5.0);
}

TEST_CASE("torus wrap in two dimensions") {
  const Window w{2, 10.0, Boundary::Torus};
  const std::vector<double> a{0.0, 0.0}, b{9.0, 0.0};
  CHECK(distance(w, a, b) == 1.0);
}

TEST_CASE("torus metric properties") {
  const double L = 7.0;
  const Window torus{3, L, Boundary::Torus};
  const Window box{3, L, Boundary::Box};
  RngStream rng(99, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(3), b(3), c(3);
    for (int i = 0; i < 3; ++i) {
      a[i] = sample_coordinate(rng, L);
      b[i] = sample_coordinate(rng, L);
      c[i] = sample_coordinate(rng, L);
    }
    const double dab = distance(torus, a, b);
    CHECK(dab == distance(torus, b, a));
    CHECK(dab <= distance(box, a, b));
    CHECK(dab <= std::sqrt(3.0) * L / 2.0 + 1e-12);
    CHECK(distance(torus, a, c) <= dab + distance(torus, b, c) + 1e-12);
    CHECK(distance(torus, a, a) == 0.0);
  }
}

TEST_CASE("box and torus agree on a central sub-window") {
  const double L = 10.0;
  const Window torus{2, L, Boundary::Torus};
  const Window box{2, L, Boundary::Box};
  RngStream rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(2), b(2);
    for (int i = 0; i < 2; ++i) {
      a[i] = L / 4.0 + sample_coordinate(rng, L / 2.0);
      b[i] = L / 4.0 + sample_coordinate(rng, L / 2.0);
    }
    CHECK(distance(torus, a, b) == distance(box, a, b));
  }
}

TEST_CASE("distance validates dimensions") {
  const Window w{2, 10.0, Boundary::Box};
  const std::vector<double> a{1.0}, b{2.0, 3.0};
  CHECK_THROWS_AS(distance(w, a, b), ValidationError);
}

TEST_CASE("check_non_equidistant finds exact duplicates") {
  SECTION("equally spaced points on a line") {
    const auto cfg = make_config(
        1, 10.0, Boundary::Box,
        {{Color::Red, {0.0}, 1}, {Color::Blue, {2.0}, 1}, {Color::Red, {4.0}, 1}});
    const auto report = check_non_equidistant(cfg);
    REQUIRE_FALSE(report.ok);
    REQUIRE_FALSE(report.witnesses.empty());
    const auto& w = report.witnesses.front();
    CHECK(distance(cfg, w.x, w.y) == distance(cfg, w.u, w.w));
  }
  SECTION("generic positions pass") {
    const auto cfg = make_config(
        1, 10.0, Boundary::Box,
        {{Color::Red, {0.0}, 1}, {Color::Blue, {1.1}, 1}, {Color::Red, {3.4}, 1}});
    CHECK(check_non_equidistant(cfg).ok);
  }
  SECTION("torus wrap can create equal distances") {
    const auto cfg = make_config(1, 10.0, Boundary::Torus,
                                 {{Color::Red, {1.0}, 1}, {Color::Blue, {9.0}, 1},
                                  {Color::Blue, {3.0}, 1}});
    CHECK_FALSE(check_non_equidistant(cfg).ok);
  }
}

TEST_CASE("config accessors") {
  const auto cfg = make_config(2, 10.0, Boundary::Torus,
                               {{Color::Red, {1.0, 1.0}, 2},
                                {Color::Blue, {2.0, 2.0}, 3},
                                {Color::Red, {3.0, 3.0}, 1}});
  CHECK(cfg.size() == 3);
  CHECK(cfg.count(Color::Red) == 2);
  CHECK(cfg.count(Color::Blue) == 1);
  CHECK(cfg.total_stubs(Color::Red) == 3);
  CHECK(cfg.total_stubs(Color::Blue) == 3);
  CHECK(cfg.ids_of(Color::Red) == std::vector<std::int32_t>{0, 2});
  CHECK(cfg.window.volume() == 100.0);
}
