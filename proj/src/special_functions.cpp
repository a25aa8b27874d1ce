#include "qrabi/special_functions.hpp"

namespace qrabi {

FTable::FTable(double lambda, int n_max, int m_max, int cap) : lambda_(lambda) {
  if (n_max < 0 || m_max < 0 || !(lambda >= 0.0))
    throw DomainError("FTable: requires n_max >= 0, m_max >= 0, lambda >= 0");
  if (n_max + m_max > cap)
    throw OverflowError("FTable: n_max + m_max = " + std::to_string(n_max + m_max) + " exceeds cap " +
                        std::to_string(cap));
  values_.resize(n_max + 1, m_max + 1);
  const double x = lambda * lambda;
  const double gauss = std::exp(-x / 2.0);
  for (int m = 0; m <= m_max; ++m) {
    if (lambda == 0.0) {
      values_.col(m).setConstant(m == 0 ? 1.0 : 0.0);
      continue;
    }
    const Eigen::VectorXd lag = laguerre_assoc_sequence(n_max, m, x);
    for (int n = 0; n <= n_max; ++n) values_(n, m) = gauss * displacement_prefactor(m, n, lambda) * lag(n);
  }
}

}  // namespace qrabi
