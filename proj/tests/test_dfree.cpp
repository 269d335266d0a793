#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gwqed/dfree.hpp"
#include "gwqed/errors.hpp"
#include "oracles.hpp"

using namespace gwqed;
constexpr double pi = std::numbers::pi;

TEST_CASE("three-point profile ratios") {
  const auto p0 = df_ratios_m3(0.0);
  CHECK(p0.ratios == std::vector<double>{1.0, 4.0, 1.0});
  const auto p = df_ratios_m3(0.8);
  CHECK(p.ratios[1] == doctest::Approx(14.43).epsilon(1e-3));
  CHECK(p.ratios[1] == doctest::Approx(4.0 * std::pow(std::cosh(0.4 * pi), 2)));
  CHECK(std::abs(p.residual_cosh) < 1e-12);
  CHECK(std::abs(p.residual_sinh) < 1e-12);
  CHECK_THROWS_AS(df_ratios_m3(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(df_ratios_m3(-0.1), DomainError);
}

TEST_CASE("residuals vanish for the profile at any base position") {
  for (double g : {0.0, 0.3, 0.8, 1.5}) {
    for (double base : {0.0, 0.7, 2.0, -1.3}) {
      const auto atom = make_df_atom(base, g);
      CHECK(residual_check(atom, g).max_abs() < 1e-10 * (1.0 + std::cosh(g * (base + 2 * pi))));
    }
  }
}

TEST_CASE("perturbed profile residual grows linearly") {
  const double g = 0.8;
  auto atom = make_df_atom(0.0, g);
  auto perturbed = [&](double eps) {
    auto a = atom;
    a.points[1].g *= 1.0 + eps;
    return residual_check(a, g).max_abs();
  };
  const double r1 = perturbed(0.01), r2 = perturbed(0.02);
  CHECK(r1 > 1e-4);
  CHECK(r2 / r1 == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("single-point atom is never decoherence free") {
  GiantAtom a;
  a.points = {{0.4, 1.0}};
  CHECK(residual_check(a, 0.8).max_abs() > 0.5);
  CHECK(residual_check(a, 0.0).max_abs() == doctest::Approx(1.0));
}

TEST_CASE("two-point atoms cannot meet both conditions") {
  CHECK(m2_ratio_gap(0.0, pi, 0.8) == std::numeric_limits<double>::infinity());
  for (double g : {0.2, 0.8, 1.4}) {
    for (double z1 : {0.3, 1.0, 2.0}) {
      CHECK(m2_ratio_gap(z1, z1 + pi, g) > 0.0);
      CHECK(m2_ratio_gap(z1, z1 + 0.5, g) > 0.0);
    }
  }
  CHECK_THROWS_AS(m2_ratio_gap(1.0, 1.0, 0.8), DomainError);
  CHECK_THROWS_AS(m2_ratio_gap(1.0, 2.0, 0.0), DomainError);
}

TEST_CASE("two-point minimax residual against a brute-force ratio grid") {
  double floor = 1e300;
  for (double g : {0.2, 0.8, 1.4}) {
    for (double z1 : {0.0, 0.5, 1.5}) {
      for (double sep : {0.5, pi, 2.5}) {
        const double exact = m2_min_residual(z1, z1 + sep, g);
        const double grid = oracle::m2_grid_min_residual(z1, z1 + sep, g);
        CHECK(exact <= grid + 1e-12);
        CHECK(grid - exact < 1e-3 * (1.0 + exact));
        floor = std::min(floor, exact);
      }
    }
  }
  CHECK(floor > 1e-3);
}

TEST_CASE("braided pair layout") {
  const double ds = 0.2 * pi;
  const auto [a, b] = build_braided_pair(ds, 0.8);
  REQUIRE(a.points.size() == 3);
  REQUIRE(b.points.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(a.points[i].z == doctest::Approx(i * pi));
    CHECK(b.points[i].z == doctest::Approx(i * pi + ds));
    CHECK(b.points[i].g == doctest::Approx(a.points[i].g));
  }
  CHECK(a.points[2].g == doctest::Approx(kReferenceCoupling));
  CHECK(a.points[1].g / a.points[0].g == doctest::Approx(df_ratios_m3(0.8).ratios[1]));
  CHECK(geometry_extent({a, b}) == doctest::Approx(2 * pi + ds));
  CHECK_THROWS_AS(build_braided_pair(pi, 0.8), DomainError);
  CHECK_THROWS_AS(build_braided_pair(0.0, 0.8), DomainError);
  CHECK_NOTHROW(build_df_pair(3 * pi, 0.8));
}

TEST_CASE("braided chain layout") {
  const double ds = 0.3 * pi;
  const auto chain = build_braided_chain(4, ds, 0.5);
  REQUIRE(chain.size() == 4);
  const auto [a, b] = build_braided_pair(ds, 0.5);
  for (int i = 0; i < 3; ++i) {
    CHECK(chain[0].points[i].z == doctest::Approx(a.points[i].z));
    CHECK(chain[1].points[i].z == doctest::Approx(b.points[i].z));
  }
  const double step = 2 * pi + ds / 2;
  CHECK(chain[2].points[0].z == doctest::Approx(step));
  CHECK(chain[3].points[0].z == doctest::Approx(step + ds));
  for (const auto& atom : chain) CHECK(residual_check(atom, 0.5).max_abs() < 1e-10 * std::cosh(0.5 * 12));
  CHECK_THROWS_AS(build_braided_chain(1, ds, 0.5), DomainError);
}
