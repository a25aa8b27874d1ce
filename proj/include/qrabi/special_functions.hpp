#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "qrabi/errors.hpp"

namespace qrabi {

/// Largest n + m accepted by f_coeff unless the caller overrides it.
inline constexpr int kDefaultFockCap = 4096;

/// Above this n + m the factorial ratio n!/(n+m)! is accumulated in log space.
inline constexpr int kLogRatioThreshold = 170;

namespace detail {

template <typename Scalar>
void check_laguerre_domain(int n, int m, Scalar x) {
  if (n < 0 || m < 0 || !(x >= Scalar(0)))
    throw DomainError("laguerre_assoc: requires n >= 0, m >= 0, x >= 0 (got n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
}

}  // namespace detail

/// Associated Laguerre polynomial L_n^m(x).
///
/// Evaluated with the ascending recurrence
///   (k+1) L_{k+1} = (2k+m+1-x) L_k - (k+m) L_{k-1}.
template <typename Scalar>
Scalar laguerre_assoc(int n, int m, Scalar x) {
  detail::check_laguerre_domain(n, m, x);
  Scalar prev(1);
  if (n == 0) return prev;
  Scalar curr = Scalar(1 + m) - x;
  for (int k = 1; k < n; ++k) {
    const Scalar next = ((Scalar(2 * k + m + 1) - x) * curr - Scalar(k + m) * prev) / Scalar(k + 1);
    prev = curr;
    curr = next;
  }
  return curr;
}

/// L_k^m(x) for k = 0..n_max from one pass of the recurrence.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> laguerre_assoc_sequence(int n_max, int m, Scalar x) {
  detail::check_laguerre_domain(n_max, m, x);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(n_max + 1);
  out(0) = Scalar(1);
  if (n_max >= 1) out(1) = Scalar(1 + m) - x;
  for (int k = 1; k < n_max; ++k)
    out(k + 1) = ((Scalar(2 * k + m + 1) - x) * out(k) - Scalar(k + m) * out(k - 1)) / Scalar(k + 1);
  return out;
}

/// lambda^m n!/(n+m)!, as a running product (log space past kLogRatioThreshold).
template <typename Scalar>
Scalar displacement_prefactor(int m, int n, Scalar lambda) {
  if (m == 0) return Scalar(1);
  if (lambda == Scalar(0)) return Scalar(0);
  if (n + m <= kLogRatioThreshold) {
    Scalar p(1);
    for (int i = 1; i <= m; ++i) p *= lambda / Scalar(n + i);
    return p;
  }
  using std::exp;
  using std::log;
  Scalar log_p = Scalar(m) * log(lambda);
  for (int i = 1; i <= m; ++i) log_p -= log(Scalar(n + i));
  return exp(log_p);
}

/// Matrix element function F_m(n) = e^{-lambda^2/2} lambda^m n!/(n+m)! L_n^m(lambda^2).
///
/// (a^dag)^m F_m(a^dag a) carries the <n+m| D(lambda) |n> elements of the
/// displacement D(lambda) = exp[lambda (a^dag - a)].
template <typename Scalar>
Scalar f_coeff(int m, int n, Scalar lambda, int cap = kDefaultFockCap) {
  if (m < 0 || n < 0 || !(lambda >= Scalar(0)))
    throw DomainError("f_coeff: requires m >= 0, n >= 0, lambda >= 0");
  if (n + m > cap)
    throw OverflowError("f_coeff: n + m = " + std::to_string(n + m) + " exceeds cap " + std::to_string(cap));
  if (lambda == Scalar(0)) return m == 0 ? Scalar(1) : Scalar(0);
  using std::exp;
  const Scalar x = lambda * lambda;
  return exp(-x / Scalar(2)) * displacement_prefactor(m, n, lambda) * laguerre_assoc(n, m, x);
}

/// Dense table of F_m(n) for m = 0..m_max, n = 0..n_max at a fixed lambda.
///
/// Immutable; a different lambda needs a new table.
class FTable {
 public:
  FTable(double lambda, int n_max, int m_max = 1, int cap = kDefaultFockCap);

  double operator()(int m, int n) const { return values_(n, m); }

  double lambda() const { return lambda_; }
  int n_max() const { return static_cast<int>(values_.rows()) - 1; }
  int m_max() const { return static_cast<int>(values_.cols()) - 1; }

  /// Column F_m(0..n_max).
  Eigen::VectorXd column(int m) const { return values_.col(m); }

 private:
  double lambda_;
  Eigen::MatrixXd values_;
};

}  // namespace qrabi
