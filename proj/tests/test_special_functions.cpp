#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qrabi/errors.hpp"
#include "qrabi/model.hpp"
#include "qrabi/special_functions.hpp"

using namespace qrabi;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// <n+m| exp(lambda (a^dag - a)) |n> from a truncated-Fock matrix exponential.
Eigen::MatrixXd displacement_matrix(double lambda, int fock) {
  const Eigen::MatrixXd a = annihilation_operator(fock - 1);
  const Eigen::MatrixXd gen = lambda * (a.transpose() - a);
  return gen.exp();
}

}  // namespace

TEST_SUITE("special_functions") {
  TEST_CASE("laguerre matches std::assoc_laguerre") {
    for (int m = 0; m <= 5; ++m)
      for (int n = 0; n <= 30; ++n)
        for (double x : {0.01, 0.5, 1.0, 4.0, 10.0})
          CHECK(rel_err(laguerre_assoc(n, m, x), std::assoc_laguerre(n, m, x)) < 1e-10);
  }

  TEST_CASE("laguerre frozen high-precision values") {
    CHECK(rel_err(laguerre_assoc(10, 0, 4.0), 1.3792592592592592593) < 1e-12);
    CHECK(rel_err(laguerre_assoc(25, 1, 4.0), 2.0299316109168170575) < 1e-12);
    CHECK(rel_err(laguerre_assoc(50, 0, 4.0), -0.82610380210624986761) < 1e-12);
    CHECK(rel_err(laguerre_assoc(50, 3, 2.89), 50.328809368179611862) < 1e-12);
    CHECK(rel_err(laguerre_assoc(40, 2, 4.0), -11.940140183935996478) < 1e-12);
    CHECK(rel_err(laguerre_assoc(33, 4, 1.69), -183.6035532606517465) < 1e-12);
  }

  TEST_CASE("laguerre at zero is a binomial coefficient") {
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 20; ++n) {
        const double binom = std::exp(std::lgamma(n + m + 1.0) - std::lgamma(n + 1.0) - std::lgamma(m + 1.0));
        CHECK(rel_err(laguerre_assoc(n, m, 0.0), binom) < 1e-12);
      }
  }

  TEST_CASE("laguerre order-raising identity L_n^m = L_n^{m+1} - L_{n-1}^{m+1}") {
    for (int m = 0; m <= 4; ++m)
      for (int n = 1; n <= 40; ++n)
        for (double x : {0.3, 2.0, 7.5}) {
          const double lhs = laguerre_assoc(n, m, x);
          const double rhs = laguerre_assoc(n, m + 1, x) - laguerre_assoc(n - 1, m + 1, x);
          CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(1.0, std::abs(laguerre_assoc(n, m + 1, x))));
        }
  }

  TEST_CASE("laguerre sequence agrees with single evaluations") {
    const auto seq = laguerre_assoc_sequence(25, 2, 3.3);
    REQUIRE(seq.size() == 26);
    for (int n = 0; n <= 25; ++n) CHECK(seq(n) == doctest::Approx(laguerre_assoc(n, 2, 3.3)).epsilon(1e-14));
  }

  TEST_CASE("laguerre domain errors") {
    CHECK_THROWS_AS(laguerre_assoc(-1, 0, 1.0), DomainError);
    CHECK_THROWS_AS(laguerre_assoc(2, -1, 1.0), DomainError);
  }

  TEST_CASE("laguerre is templated on the scalar") {
    const long double v = laguerre_assoc<long double>(10, 0, 4.0L);
    CHECK(std::abs(static_cast<double>(v) - 1.3792592592592592593) < 1e-14);
  }

  TEST_CASE("displacement prefactor") {
    CHECK(displacement_prefactor(0, 7, 0.3) == 1.0);
    CHECK(displacement_prefactor(2, 3, 0.8) == doctest::Approx(0.64 / 20.0).epsilon(1e-15));
    // log-space branch against lgamma
    const double direct = std::exp(3 * std::log(0.9) + std::lgamma(201.0) - std::lgamma(204.0));
    CHECK(rel_err(displacement_prefactor(3, 200, 0.9), direct) < 1e-12);
  }

  TEST_CASE("F coefficient frozen value") {
    CHECK(std::abs(f_coeff(2, 3, 0.8) - 0.10643159078078845) < 1e-15);
  }

  TEST_CASE("F coefficient at lambda = 0") {
    CHECK(f_coeff(0, 5, 0.0) == 1.0);
    CHECK(f_coeff(1, 5, 0.0) == 0.0);
    CHECK(f_coeff(3, 0, 0.0) == 0.0);
  }

  TEST_CASE("F coefficients reproduce displacement matrix elements") {
    constexpr int fock = 120;
    for (double l : {0.1, 0.5, 1.0}) {
      const Eigen::MatrixXd d = displacement_matrix(l, fock);
      for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 20; ++n) {
          double ratio = 1.0;
          for (int i = 1; i <= m; ++i) ratio *= std::sqrt(static_cast<double>(n + i));
          CHECK(std::abs(d(n + m, n) - ratio * f_coeff(m, n, l)) < 1e-12);
        }
    }
  }

  TEST_CASE("F coefficient cap") {
    CHECK_THROWS_AS(f_coeff(1, 100, 0.5, 50), OverflowError);
    CHECK_NOTHROW(f_coeff(1, 40, 0.5, 50));
    CHECK_THROWS_AS(f_coeff(-1, 3, 0.5), DomainError);
  }

  TEST_CASE("F table matches pointwise evaluation") {
    const FTable t(0.37, 30, 2);
    CHECK(t.lambda() == 0.37);
    CHECK(t.n_max() == 30);
    CHECK(t.m_max() == 2);
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 30; ++n) CHECK(std::abs(t(m, n) - f_coeff(m, n, 0.37)) < 1e-15);
    CHECK(t.column(1).size() == 31);
  }
}
