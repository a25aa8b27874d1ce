#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qrabi/dynamics.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/exact.hpp"
#include "qrabi/model.hpp"

using namespace qrabi;

TEST_SUITE("dynamics") {
  TEST_CASE("coherent amplitudes") {
    CHECK(coherent_tail(0.0, 0) == 0.0);
    CHECK(coherent_tail(2.0, 40) < 1e-12);
    CHECK(coherent_tail(2.0, 3) > 0.1);
    const Eigen::VectorXd z = coherent_weights(2.0, 60);
    CHECK(z(0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    CHECK(z(3) == doctest::Approx(std::exp(-2.0) * 8.0 / std::sqrt(6.0)).epsilon(1e-14));
    CHECK(std::abs(z.squaredNorm() - 1.0) < 1e-14);
    CHECK_THROWS_AS(coherent_weights(5.0, 10), TruncationError);
    CHECK(dynamics_cutoff(2.0) == kDefaultDynamicsCutoff);
    const int big = dynamics_cutoff(12.0);
    CHECK(big > kDefaultDynamicsCutoff);
    CHECK(coherent_tail(12.0, big - kDynamicsGuardLevels) < kCoherentTailWeight);
  }

  TEST_CASE("initial coefficients equal the transformed initial state") {
    const ModelParams p{1.0, 2.0, 0.4};
    const Displacement d = solve_lambda(p, LambdaStrategy::ClosedForm);
    constexpr int n_max = 70;
    const double alpha = 1.5;
    // |-1_z> (x) |alpha> on the truncated space, then U = exp[lambda J_z (a^dag - a)]
    Eigen::VectorXd coh(n_max + 1);
    for (int n = 0; n <= n_max; ++n) coh(n) = coherent_weight(alpha, n);
    Eigen::VectorXd psi(3 * (n_max + 1));
    for (int n = 0; n <= n_max; ++n)
      for (int s = 0; s < 3; ++s) psi(basis_index(n, s)) = coh(n) * spin_triplet().minus_z(s);
    const Eigen::MatrixXd a = annihilation_operator(n_max);
    const Eigen::VectorXd t = (d.lambda * fock_spin_product(a.transpose() - a, spin_triplet().jz)).exp() * psi;

    const InitialCoeffs c = initial_coeffs(d, alpha, 40);
    CHECK(c.amplitude == doctest::Approx(alpha - d.lambda).epsilon(1e-15));
    CHECK(std::abs(c.chi_ground - t(basis_index(0, kSpinMinus))) < 1e-12);
    CHECK(std::abs(c.chi_00 - t(basis_index(0, kSpinZero))) < 1e-12);
    CHECK(std::abs(c.chi_m10 - t(basis_index(1, kSpinMinus))) < 1e-12);
    for (int n = 1; n <= 40; ++n) {
      CHECK(std::abs(c.chi_1(n) - t(basis_index(n - 1, kSpinPlus))) < 1e-12);
      CHECK(std::abs(c.chi_0(n) - t(basis_index(n, kSpinZero))) < 1e-12);
      CHECK(std::abs(c.chi_m1(n) - t(basis_index(n + 1, kSpinMinus))) < 1e-12);
    }
    CHECK(std::abs(c.total_weight() - 1.0) < 1e-12);
    CHECK_THROWS_AS(initial_coeffs(d, alpha, 0), DomainError);
  }

  TEST_CASE("eigen overlaps preserve the weight") {
    const ModelParams p{1.0, 2.0, 0.4};
    const Displacement d = solve_lambda(p, LambdaStrategy::ClosedForm);
    const ManifoldSolution sol = solve_manifolds(p, d, 60);
    const InitialCoeffs c = initial_coeffs(d, 2.0, 60);
    CHECK(std::abs(eigen_overlaps(sol, c).total_weight() - c.total_weight()) < 1e-13);
  }

  TEST_CASE("t = 0 reproduces the initial observables") {
    const ModelParams p{1.0, 2.0, 0.2};
    for (auto s : {LambdaStrategy::ClosedForm, LambdaStrategy::GrwaFixed}) {
      const Displacement d = solve_lambda(p, s);
      const ManifoldSolution sol = solve_manifolds(p, d, 60);
      const EigenOverlaps ov = eigen_overlaps(sol, initial_coeffs(d, 2.0, 60));
      const Amplitudes b = amplitudes_at(sol, ov, 0.0);
      CHECK(std::abs(jz_value(b) + 1.0) < 1e-12);
      CHECK(std::abs(p_minus1_value(b) - 1.0) < 1e-12);
      CHECK(std::abs(b.norm() - 1.0) < 1e-12);
    }
  }

  TEST_CASE("decoupled closed forms") {
    const ModelParams p{1.0, 2.0, 0.0};
    const TimeGrid grid = TimeGrid::uniform_periods(p.Omega, 20.0, 401);
    const TimeSeries s = manifold_dynamics(p, solve_lambda(p, LambdaStrategy::ClosedForm), 2.0, grid, "vgrwa");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double c = std::cos(0.5 * p.Omega * grid.t[i]);
      CHECK(std::abs(s.jz[i] + std::cos(p.Omega * grid.t[i])) < 1e-12);
      CHECK(std::abs(s.p_minus1[i] - c * c * c * c) < 1e-12);
    }
  }

  TEST_CASE("trajectory pipeline matches manifold_dynamics") {
    const ModelParams p{1.0, 2.0, 0.3};
    const Displacement d = solve_lambda(p, LambdaStrategy::ClosedForm);
    const TimeGrid grid = TimeGrid::uniform(15.0, 31);
    const Trajectory tr = evolve(solve_manifolds(p, d, 60), initial_coeffs(d, 2.0, 60), grid);
    const TimeSeries s = manifold_dynamics(p, d, 2.0, grid, "vgrwa", 60);
    const auto jz = jz_series(tr);
    const auto pm = population_series(tr);
    CHECK(max_abs_difference(jz, s.jz) < 1e-13);
    CHECK(max_abs_difference(pm, s.p_minus1) < 1e-13);
    CHECK(s.initial.cutoff == 60);
    CHECK(s.initial.lambda == d.lambda);
  }

  TEST_CASE("norm is conserved and observables stay in range") {
    const ModelParams p{1.0, 2.0, 0.5};
    const TimeGrid grid = TimeGrid::uniform_periods(p.Omega, 50.0, 1000);
    for (auto s : {LambdaStrategy::ClosedForm, LambdaStrategy::GrwaFixed}) {
      const TimeSeries ts = manifold_dynamics(p, solve_lambda(p, s), 2.0, grid, "x");
      CHECK(ts.norm_drift < 1e-12);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(ts.jz[i] >= -1.0 - 1e-12);
        CHECK(ts.jz[i] <= 1.0 + 1e-12);
        CHECK(ts.p_minus1[i] >= -1e-12);
        CHECK(ts.p_minus1[i] <= 1.0 + 1e-12);
      }
    }
  }

  TEST_CASE("weak coupling tracks ED") {
    const ModelParams p{1.0, 2.0, 0.05};
    const TimeGrid grid = TimeGrid::uniform_periods(p.Omega, 20.0, 400);
    const TimeSeries ed = ed_dynamics(p, FockTruncation{120}, 2.0, grid);
    const TimeSeries var = manifold_dynamics(p, solve_lambda(p, LambdaStrategy::ClosedForm), 2.0, grid, "vgrwa");
    CHECK(rms_difference(var.jz, ed.jz) < 5e-3);
    CHECK(rms_difference(var.p_minus1, ed.p_minus1) < 5e-3);
  }

  TEST_CASE("time grid and series helpers") {
    const TimeGrid g = TimeGrid::uniform(2.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.t.front() == 0.0);
    CHECK(g.t.back() == 2.0);
    const TimeGrid gp = TimeGrid::uniform_periods(2.0, 1.0, 3);
    CHECK(gp.t.back() == doctest::Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(rms_difference({1.0, 2.0}, {1.0, 4.0}) == doctest::Approx(std::sqrt(2.0)));
    CHECK(max_abs_difference({1.0, 2.0}, {1.5, 2.0}) == 0.5);
  }
}
