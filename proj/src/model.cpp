#include "qrabi/model.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrabi/errors.hpp"
#include "qrabi/special_functions.hpp"

namespace qrabi {

void ModelParams::validate() const {
  if (!(omega > 0.0)) throw DomainError("ModelParams: omega must be > 0");
  if (!(Omega >= 0.0)) throw DomainError("ModelParams: Omega must be >= 0");
  if (!(g >= 0.0)) throw DomainError("ModelParams: g must be >= 0");
}

void FockTruncation::validate() const {
  if (n_max < 1) throw DomainError("FockTruncation: n_max must be >= 1, got " + std::to_string(n_max));
}

namespace {

SpinTriplet make_triplet() {
  const double r = 1.0 / std::sqrt(2.0);
  SpinTriplet s;
  s.jx = Eigen::Vector3d(1.0, 0.0, -1.0).asDiagonal();
  s.jz << 0, r, 0,
          r, 0, r,
          0, r, 0;
  // [J_z, J_x] = i J_y fixes i J_y once J_z is chosen.
  s.i_jy << 0, -r, 0,
            r, 0, -r,
            0, r, 0;
  s.jy = -std::complex<double>(0.0, 1.0) * s.i_jy.cast<std::complex<double>>();
  s.jplus = s.jz - s.i_jy;
  s.jminus = s.jz + s.i_jy;
  s.minus_z << 0.5, -r, 0.5;
  return s;
}

}  // namespace

const SpinTriplet& spin_triplet() {
  static const SpinTriplet triplet = make_triplet();
  return triplet;
}

Eigen::MatrixXd annihilation_operator(int n_max) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXd fock_spin_product(const Eigen::MatrixXd& fock, const Eigen::Matrix3d& spin) {
  const Eigen::Index nf = fock.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(3 * nf, 3 * fock.cols());
  for (Eigen::Index i = 0; i < nf; ++i)
    for (Eigen::Index j = 0; j < fock.cols(); ++j)
      if (fock(i, j) != 0.0) out.block<3, 3>(3 * i, 3 * j) = fock(i, j) * spin;
  return out;
}

Eigen::MatrixXd number_operator(const FockTruncation& trunc) {
  const Eigen::VectorXd n = Eigen::VectorXd::LinSpaced(trunc.fock_size(), 0.0, trunc.n_max);
  return fock_spin_product(n.asDiagonal().toDenseMatrix(), Eigen::Matrix3d::Identity());
}

Eigen::MatrixXd build_hamiltonian(const ModelParams& params, const FockTruncation& trunc) {
  params.validate();
  trunc.validate();
  const auto& spin = spin_triplet();
  const int dim = trunc.dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= trunc.n_max; ++n) {
    h.block<3, 3>(3 * n, 3 * n) = params.omega * n * Eigen::Matrix3d::Identity() + params.Omega * spin.jx;
    if (n < trunc.n_max) {
      const Eigen::Matrix3d hop = params.g * std::sqrt(static_cast<double>(n + 1)) * spin.jz;
      h.block<3, 3>(3 * n, 3 * (n + 1)) = hop;
      h.block<3, 3>(3 * (n + 1), 3 * n) = hop;
    }
  }
  return h;
}

HyperbolicDisplacement hyperbolic_displacement(double lambda, int n_max) {
  const Eigen::MatrixXd a = annihilation_operator(n_max);
  const Eigen::MatrixXd t = a + a.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  if (es.info() != Eigen::Success) throw ConvergenceError("hyperbolic_displacement: eigensolver failed");
  const Eigen::MatrixXd& v = es.eigenvectors();
  const Eigen::ArrayXd phase = lambda * es.eigenvalues().array();
  const Eigen::MatrixXd cos_t = v * phase.cos().matrix().asDiagonal() * v.transpose();
  const Eigen::MatrixXd sin_t = v * phase.sin().matrix().asDiagonal() * v.transpose();

  // cosh(lambda X)_{mn} = i^{m-n} cos(lambda T)_{mn},  sinh(lambda X)_{mn} = i^{m-n-1} sin(lambda T)_{mn}.
  HyperbolicDisplacement out{Eigen::MatrixXd::Zero(n_max + 1, n_max + 1), Eigen::MatrixXd::Zero(n_max + 1, n_max + 1)};
  for (int m = 0; m <= n_max; ++m) {
    for (int n = 0; n <= n_max; ++n) {
      const int d = m - n;
      if (d % 2 == 0) {
        const int q = d / 2;
        out.cosh(m, n) = (q % 2 == 0 ? 1.0 : -1.0) * cos_t(m, n);
      } else {
        const int q = (d - 1) / 2;  // exact for negative odd d as well
        out.sinh(m, n) = ((q % 2 + 2) % 2 == 0 ? 1.0 : -1.0) * sin_t(m, n);
      }
    }
  }
  return out;
}

Eigen::MatrixXd build_transformed_hamiltonian(const ModelParams& params, double lambda,
                                              const FockTruncation& trunc) {
  params.validate();
  trunc.validate();
  if (!(lambda >= 0.0)) throw DomainError("build_transformed_hamiltonian: lambda must be >= 0");
  const auto& spin = spin_triplet();
  const int nf = trunc.fock_size();
  const Eigen::MatrixXd a = annihilation_operator(trunc.n_max);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(nf, nf);
  const HyperbolicDisplacement hyp = hyperbolic_displacement(lambda, trunc.n_max);

  const double w = params.omega;
  Eigen::MatrixXd h = fock_spin_product(w * a.transpose() * a, Eigen::Matrix3d::Identity());
  h += fock_spin_product(id, (lambda * lambda * w - 2.0 * params.g * lambda) * spin.jz * spin.jz);
  h += fock_spin_product((params.g - lambda * w) * (a + a.transpose()), spin.jz);
  h += fock_spin_product(params.Omega * hyp.cosh, spin.jx);
  h += fock_spin_product(params.Omega * hyp.sinh, spin.i_jy);
  return h;
}

Eigen::MatrixXd build_grwa_hamiltonian(const ModelParams& params, double lambda, const FockTruncation& trunc) {
  params.validate();
  trunc.validate();
  if (!(lambda >= 0.0)) throw DomainError("build_grwa_hamiltonian: lambda must be >= 0");
  const auto& spin = spin_triplet();
  const int nf = trunc.fock_size();
  const FTable f(lambda, trunc.n_max, 1);
  const Eigen::MatrixXd a = annihilation_operator(trunc.n_max);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(nf, nf);
  const Eigen::MatrixXd f0 = f.column(0).asDiagonal();
  const Eigen::MatrixXd f1 = f.column(1).asDiagonal();

  const double w = params.omega;
  const double eps_lambda = 0.5 * (lambda * lambda * w - 2.0 * params.g * lambda);
  const double lambda_prime = params.g - lambda * w;

  Eigen::MatrixXd h = fock_spin_product(w * a.transpose() * a, Eigen::Matrix3d::Identity());
  h += fock_spin_product(params.Omega * f0, spin.jx);
  h += fock_spin_product(id, 0.5 * eps_lambda * (spin.jplus * spin.jminus + spin.jminus * spin.jplus));
  const Eigen::MatrixXd rotating = fock_spin_product(0.5 * (lambda_prime * id + params.Omega * f1) * a, spin.jplus);
  h += rotating + rotating.transpose();
  return h;
}

}  // namespace qrabi
