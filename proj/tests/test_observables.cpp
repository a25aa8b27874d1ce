#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qrabi/errors.hpp"
#include "qrabi/exact.hpp"
#include "qrabi/model.hpp"
#include "qrabi/observables.hpp"

using namespace qrabi;

namespace {

// Lab-frame <a^dag a> of a transformed-frame state: <psi| U n U^dag |psi>.
struct FrameOracle {
  Eigen::MatrixXd n_lab;
  int n_max;

  FrameOracle(double lambda, int n_max) : n_max(n_max) {
    const Eigen::MatrixXd a = annihilation_operator(n_max);
    const Eigen::MatrixXd u = (lambda * fock_spin_product(a.transpose() - a, spin_triplet().jz)).exp();
    n_lab = u * number_operator(FockTruncation{n_max}) * u.transpose();
  }

  double photon(const Eigen::VectorXd& psi) const { return psi.dot(n_lab * psi); }
  Eigen::VectorXd zero() const { return Eigen::VectorXd::Zero(3 * (n_max + 1)); }
};

}  // namespace

TEST_SUITE("observables") {
  TEST_CASE("ground-state photon numbers") {
    const ModelParams p{1.0, 2.0, 0.2};
    CHECK(photon_ground_variational(solve_lambda(p, LambdaStrategy::ClosedForm)) ==
          doctest::Approx(0.5 * (0.2 / 3.0) * (0.2 / 3.0)).epsilon(1e-15));
    const double chi0 = std::sqrt(2.0) * 0.04 / 2.0 * std::exp(0.02);
    CHECK(grwa_chi0(p) == doctest::Approx(chi0).epsilon(1e-15));
    CHECK(photon_ground_grwa(p) == doctest::Approx(0.5 * (1.0 + chi0 / std::sqrt(chi0 * chi0 + 8.0)) * 0.04).epsilon(1e-15));
    CHECK(photon_ground_grwa({1.0, 2.0, 0.0}) == 0.0);
    CHECK_THROWS_AS(photon_ground_grwa({1.0, 0.0, 0.3}), DomainError);
  }

  TEST_CASE("small-coupling photon numbers bracket g^2/2 and track ED") {
    struct Ref {
      double Omega, ed, var, grwa;
    };
    for (const Ref& r : {Ref{0.5, 0.002263, 0.002222, 0.005050}, Ref{100.0, 4.926e-7, 4.901e-7, 0.0050003}}) {
      const ModelParams p{1.0, r.Omega, 0.1};
      const double var = photon_ground_variational(solve_lambda(p, LambdaStrategy::ClosedForm));
      const double grwa = photon_ground_grwa(p);
      const double ed = ed_solve(p, FockTruncation{100}).photon(0);
      CHECK(var == doctest::Approx(r.var).epsilon(1e-3));
      CHECK(grwa == doctest::Approx(r.grwa).epsilon(1e-3));
      CHECK(ed == doctest::Approx(r.ed).epsilon(1e-3));
      CHECK(grwa > 0.005);
      CHECK(var < 0.005);
    }
  }

  TEST_CASE("manifold photon formulas agree with the explicit frame transformation") {
    for (double g : {0.3, 0.8}) {
      const ModelParams p{1.0, 2.0, g};
      for (auto s : {LambdaStrategy::ClosedForm, LambdaStrategy::GrwaFixed}) {
        const Displacement d = solve_lambda(p, s);
        const FrameOracle oracle(d.lambda, 60);
        const ManifoldSolution sol = solve_manifolds(p, d, 8);

        Eigen::VectorXd psi = oracle.zero();
        psi(basis_index(0, kSpinMinus)) = 1.0;
        CHECK(std::abs(photon_for_level(sol, {LevelTag::Kind::Ground, 0, 0}) - oracle.photon(psi)) < 1e-10);

        for (int j = 0; j < 2; ++j) {
          psi = oracle.zero();
          psi(basis_index(0, kSpinZero)) = sol.block0.vectors(0, j);
          psi(basis_index(1, kSpinMinus)) = sol.block0.vectors(1, j);
          CHECK(std::abs(photon_manifold0(sol.block0, j, d) - oracle.photon(psi)) < 1e-10);
        }
        for (int n = 1; n <= 8; ++n) {
          const GrwaBlock& blk = sol.block(n);
          for (int j = 0; j < 3; ++j) {
            psi = oracle.zero();
            psi(basis_index(n - 1, kSpinPlus)) = blk.vectors(0, j);
            psi(basis_index(n, kSpinZero)) = blk.vectors(1, j);
            psi(basis_index(n + 1, kSpinMinus)) = blk.vectors(2, j);
            CHECK(std::abs(photon_manifold_n(blk, j, d) - oracle.photon(psi)) < 1e-10);
            CHECK(photon_for_level(sol, {LevelTag::Kind::Block, n, j}) == photon_manifold_n(blk, j, d));
          }
        }
      }
    }
  }

  TEST_CASE("photon formulas reject bad indices") {
    const ModelParams p{1.0, 2.0, 0.3};
    const ManifoldSolution sol = solve_manifolds(p, solve_lambda(p, LambdaStrategy::ClosedForm), 2);
    CHECK_THROWS_AS(photon_manifold0(sol.block0, 2, sol.disp), DomainError);
    CHECK_THROWS_AS(photon_manifold_n(sol.block(1), 3, sol.disp), DomainError);
    CHECK_THROWS_AS(photon_for_level(sol, {LevelTag::Kind::Adiabatic, 0, 0}), DomainError);
  }

  TEST_CASE("level matching by energy") {
    const auto idx = match_levels_by_energy({0.1, 1.9, 1.1}, {0.0, 1.0, 2.0});
    CHECK(idx == std::vector<int>{0, 2, 1});
    CHECK_THROWS_AS(match_levels_by_energy({1.0}, {}), DomainError);
  }
}
