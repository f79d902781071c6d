#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "wmvipd/params.hpp"

using namespace wmvipd;

TEST_CASE("check_rho_feasible") {
  CHECK(check_rho_feasible({0.0}, 1.0, 0.0));
  CHECK(check_rho_feasible({0.0}, 1000.0, 5.0));
  // logistic constants: L = 0.125 makes the L-term 1/(8 L^2) = 8, so any
  // moderate rho passes regardless of the operator norm
  CHECK(check_rho_feasible({-2e-3}, 37.6, 0.125));
  CHECK_FALSE(check_rho_feasible({-1.0}, 1.0, 0.0));
  CHECK_THROWS_AS(check_rho_feasible({0.0}, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ncpdhg_params at rho = 0") {
  auto p = ncpdhg_params({0.0}, 1.0, 0.0, 0.5);
  CHECK(p.epsilon == Catch::Approx(0.5).margin(1e-15));
  CHECK(p.gamma_y == Catch::Approx(0.5).margin(1e-15));
  CHECK(p.gamma_x == Catch::Approx(1.0).margin(1e-15));
  CHECK(p.alpha == 1.0);
  // convex-case reduction: the step condition holds with equality
  CHECK(2.0 * p.gamma_x * p.gamma_y * 1.0 == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("ncpdhg_params invariants for rho < 0") {
  for (double rho : {-1e-4, -2e-3, -5e-3}) {
    for (double a : {2.0, 37.6}) {
      for (double lip : {0.0, 0.125}) {
        auto p = ncpdhg_params({rho}, a, lip, 0.4);
        const double gmin = std::min(p.gamma_x, p.gamma_y);
        CHECK(p.alpha < 1.0 + 2.0 * rho / gmin);  // strict
        CHECK(p.alpha > 0.0);
        if (lip > 0.0) CHECK(p.gamma_y <= 1.0 / (std::sqrt(2.0) * lip) + 1e-15);
        CHECK(2.0 * p.gamma_x * p.gamma_y * a * a <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("ncpdhg_params is monotone in c") {
  double prev = 0.0;
  for (double c : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    auto p = ncpdhg_params({-2e-3}, 37.6, 0.125, c);
    CHECK(p.gamma_y > prev);
    prev = p.gamma_y;
  }
}

TEST_CASE("ncpdhg_params rejects infeasible rho") {
  // second epsilon term goes negative: 1 - 8 A^2 rho^2 < 0
  CHECK_THROWS_AS(ncpdhg_params({-0.01}, 37.6, 0.125, 0.4), InfeasibleRhoError);
  // check_rho_feasible itself fails when L = 0 and |rho| large
  CHECK_THROWS_AS(ncpdhg_params({-1.0}, 1.0, 0.0, 0.4), InfeasibleRhoError);
}

TEST_CASE("ncspdhg_params theorem-2 constants are strictly positive") {
  for (double rho : {0.0, -1e-3, -2e-3}) {
    auto p = ncspdhg_params({rho}, 37.6, 4.9, 74, 0.125, 0.1);
    CHECK(p.theta == 74.0);
    auto t2 = theorem2_constants(p, {rho}, 37.6, 4.9, 74);
    CHECK(t2.c_x > 0.0);
    CHECK(t2.c_y > 0.0);
    CHECK(t2.c == std::min(t2.c_x, t2.c_y));
    CHECK(p.alpha < 1.0 + 2.0 * rho / p.gamma_y);
  }
}

TEST_CASE("ncspdhg_params epsilon sign convention") {
  // the third epsilon term reads 1/(sqrt2 L) - 2|rho| for either sign of rho
  auto neg = ncspdhg_params({-1e-3}, 2.0, 1.0, 4, 0.5, 0.5);
  CHECK(neg.epsilon == Catch::Approx(0.5 * (1.0 / (std::sqrt(2.0) * 0.5) - 2e-3)).margin(1e-15));
  CHECK(neg.gamma_y == Catch::Approx(2e-3 + neg.epsilon).margin(1e-15));
}

TEST_CASE("ceg_params") {
  auto p = ceg_params({0.0}, 1.0, 0.0, 0.01);
  CHECK(p.gamma == Catch::Approx(1.0 / std::sqrt(2.0)).margin(1e-15));
  CHECK(p.delta == 0.0);
  CHECK(p.alpha == Catch::Approx(0.99).margin(1e-15));
  CHECK_THROWS_AS(ceg_params({-1.0}, 1.0, 0.0, 0.01), InfeasibleRhoError);
  CHECK_THROWS_AS(ceg_params({0.0}, 1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("alm_step_size") {
  CHECK(alm_step_size(0.0, 1.0, 4.0) == Catch::Approx(0.25).margin(1e-15));
  CHECK(alm_step_size(0.125, 0.5, 10.0) == Catch::Approx(1.0 / 5.125).margin(1e-15));
  CHECK_THROWS_AS(alm_step_size(0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(alm_step_size(0.0, 0.0, 4.0), std::invalid_argument);
}

TEST_CASE("saga_step_size") {
  CHECK(saga_step_size(DenseMatrix::identity(3)) == Catch::Approx(1.0).margin(1e-15));
  DenseMatrix b(2, 2);
  b(0, 0) = 1;
  b(0, 1) = 1;
  b(1, 0) = 3;
  b(1, 1) = 0;
  CHECK(saga_step_size(b) == Catch::Approx(1.0 / 9.0).margin(1e-15));
  CHECK_THROWS_AS(saga_step_size(DenseMatrix(2, 2)), std::invalid_argument);
}

TEST_CASE("theorem2_constants limits") {
  NcSpdhgParams p{0.2, 0.1, 0.0, 4.0, 0.5, 0.1};
  auto t2 = theorem2_constants(p, {0.0}, 2.0, 1.0, 4);
  CHECK(t2.c_x == Catch::Approx(p.gamma_x - p.gamma_x * p.gamma_x * p.gamma_y * 4.0).margin(1e-15));
  CHECK(t2.c_y == Catch::Approx(p.gamma_y / 2.0).margin(1e-15));

  p.alpha = 1.0;
  auto t2b = theorem2_constants(p, {0.0}, 2.0, 1.0, 4);
  CHECK(t2b.c_y == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("table-calibrated selections on the shipped dataset") {
  // structural pieces only here; the full printed-table comparison is the
  // acceptance suite's criterion 1
  auto d = oracles::load_pyrim();
  REQUIRE(d.B.rows() == 74);
  REQUIRE(d.B.cols() == 27);
  DenseMatrix a(74, 101);
  for (std::size_t i = 0; i < 74; ++i) {
    for (std::size_t j = 0; j < 27; ++j) a(i, j) = d.B(i, j);
    a(i, 27 + i) = -1.0;
  }
  const double opn = operator_norm(a);
  CHECK(opn == Catch::Approx(37.60).margin(5e-4));
  auto p = ncpdhg_params({-2e-3}, opn, 0.125, 0.4);
  CHECK(p.gamma_x == Catch::Approx(0.024).margin(1e-3));
  CHECK(p.gamma_y == Catch::Approx(0.015).margin(1e-3));
  CHECK(p.alpha == Catch::Approx(0.73).margin(1e-2));
}
