#include "qrabi/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrabi/errors.hpp"

namespace qrabi {

namespace {

void check_symmetric(const Eigen::MatrixXd& m, const char* who) {
  if (m.rows() != m.cols()) throw DomainError(std::string(who) + ": matrix is not square");
  if (m.size() == 0) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale)
    throw DomainError(std::string(who) + ": matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
}

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
    Eigen::Index arg = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, k) < 0.0) vectors.col(k) *= -1.0;
  }
}

Eigen::VectorXd fock_numbers(const FockTruncation& trunc) {
  Eigen::VectorXd n(trunc.dimension());
  for (int i = 0; i < trunc.dimension(); ++i) n(i) = i / 3;
  return n;
}

}  // namespace

EigenSystem eig_sym(const Eigen::MatrixXd& matrix) {
  check_symmetric(matrix, "eig_sym");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
  if (es.info() != Eigen::Success) throw ConvergenceError("eig_sym: eigensolver did not converge");
  EigenSystem out{es.eigenvalues(), es.eigenvectors()};
  fix_signs(out.vectors);
  return out;
}

Eigen::VectorXd eigvals_sym(const Eigen::MatrixXd& matrix) {
  check_symmetric(matrix, "eigvals_sym");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceError("eigvals_sym: eigensolver did not converge");
  return es.eigenvalues();
}

ExactSpectrum ed_solve(const ModelParams& params, const FockTruncation& trunc) {
  const Eigen::MatrixXd h = build_hamiltonian(params, trunc);
  ExactSpectrum out{eig_sym(h), Eigen::VectorXd()};
  Eigen::VectorXd& values = out.system.values;
  Eigen::MatrixXd& vectors = out.system.vectors;
  const Eigen::VectorXd n = fock_numbers(trunc);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());

  // Degenerate clusters: rotate so a^dag a is diagonal inside, ascending.
  const Eigen::Index dim = values.size();
  for (Eigen::Index lo = 0; lo < dim;) {
    Eigen::Index hi = lo + 1;
    while (hi < dim && values(hi) - values(hi - 1) < 1e-9 * scale) ++hi;
    if (hi - lo > 1) {
      const Eigen::Index w = hi - lo;
      const Eigen::MatrixXd block = vectors.middleCols(lo, w);
      const Eigen::MatrixXd projected = block.transpose() * n.asDiagonal() * block;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (projected + projected.transpose()));
      vectors.middleCols(lo, w) = block * es.eigenvectors();
      const double mean = values.segment(lo, w).mean();
      values.segment(lo, w).setConstant(mean);
    }
    lo = hi;
  }
  fix_signs(vectors);
  out.photon = (vectors.array().square().colwise() * n.array()).colwise().sum().transpose();
  return out;
}

std::vector<double> ed_spectrum(const ModelParams& params, const FockTruncation& trunc, int k) {
  trunc.validate();
  if (k < 1 || k > trunc.dimension())
    throw DomainError("ed_spectrum: k must lie in [1, " + std::to_string(trunc.dimension()) + "]");
  const Eigen::VectorXd values = eigvals_sym(build_hamiltonian(params, trunc));
  return {values.data(), values.data() + k};
}

bool ed_converged(const ModelParams& params, const FockTruncation& trunc, int k, double tol) {
  if (k < 1 || k > trunc.dimension()) return false;
  const auto coarse = ed_spectrum(params, trunc, k);
  const auto fine = ed_spectrum(params, FockTruncation{2 * trunc.n_max}, k);
  for (int i = 0; i < k; ++i)
    if (!(std::abs(coarse[i] - fine[i]) < tol)) return false;
  return true;
}

double ed_mean_photon(const ModelParams& params, const FockTruncation& trunc, int level) {
  trunc.validate();
  if (level < 0 || level >= trunc.dimension())
    throw DomainError("ed_mean_photon: level " + std::to_string(level) + " out of range");
  return ed_solve(params, trunc).photon(level);
}

double coherent_weight(double alpha, int n) {
  if (n < 0) throw DomainError("coherent_weight: n must be >= 0");
  if (alpha == 0.0) return n == 0 ? 1.0 : 0.0;
  const double a = std::abs(alpha);
  const double log_w = -0.5 * a * a + n * std::log(a) - 0.5 * std::lgamma(n + 1.0);
  const double w = std::exp(log_w);
  return (alpha < 0.0 && n % 2 == 1) ? -w : w;
}

namespace {

bool coherent_cutoff_ok(double alpha, int n_max) {
  return n_max >= alpha * alpha && std::abs(coherent_weight(alpha, n_max)) < kCoherentTailTolerance;
}

}  // namespace

int default_dynamics_truncation(double alpha) {
  int n = static_cast<int>(std::ceil(alpha * alpha));
  while (!coherent_cutoff_ok(alpha, n)) ++n;
  return std::max(kDefaultStaticNmax, n);
}

TimeSeries ed_dynamics(const ModelParams& params, const FockTruncation& trunc, double alpha, const TimeGrid& grid) {
  trunc.validate();
  if (!(alpha >= 0.0)) throw DomainError("ed_dynamics: alpha must be >= 0");
  if (!coherent_cutoff_ok(alpha, trunc.n_max))
    throw TruncationError("ed_dynamics: n_max = " + std::to_string(trunc.n_max) +
                          " too small for coherent amplitude " + std::to_string(alpha));

  const auto& spin = spin_triplet();
  const ExactSpectrum ed = ed_solve(params, trunc);
  const int nf = trunc.fock_size();
  const int dim = trunc.dimension();

  Eigen::VectorXd psi0(dim);
  for (int n = 0; n < nf; ++n) psi0.segment<3>(3 * n) = coherent_weight(alpha, n) * spin.minus_z;
  const Eigen::VectorXd overlap = ed.system.vectors.transpose() * psi0;

  // Eigenstates with negligible overlap never contribute above round-off.
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < overlap.size(); ++k)
    if (std::abs(overlap(k)) > 1e-17) active.push_back(k);
  const Eigen::Index r = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd basis(dim, r);
  Eigen::VectorXd energy(r), weight(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    basis.col(i) = ed.system.vectors.col(active[i]);
    energy(i) = ed.system.values(active[i]);
    weight(i) = overlap(active[i]);
  }
  const double norm0 = weight.squaredNorm();

  TimeSeries out;
  out.method = "ed";
  out.t = grid.t;
  out.jz.resize(grid.size());
  out.p_minus1.resize(grid.size());
  out.initial = InitialStateRecord{alpha, 0.0, trunc.n_max};

  constexpr Eigen::Index chunk = 256;
  const Eigen::Index samples = static_cast<Eigen::Index>(grid.size());
  for (Eigen::Index start = 0; start < samples; start += chunk) {
    const Eigen::Index cols = std::min(chunk, samples - start);
    Eigen::MatrixXd re(r, cols), im(r, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double t = grid.t[start + c];
      for (Eigen::Index i = 0; i < r; ++i) {
        re(i, c) = std::cos(energy(i) * t) * weight(i);
        im(i, c) = -std::sin(energy(i) * t) * weight(i);
      }
    }
    const Eigen::MatrixXd psi_re = basis * re;
    const Eigen::MatrixXd psi_im = basis * im;
    for (Eigen::Index c = 0; c < cols; ++c) {
      double jz = 0.0, pop = 0.0, norm = 0.0;
      for (int n = 0; n < nf; ++n) {
        const Eigen::Vector3d ur = psi_re.col(c).segment<3>(3 * n);
        const Eigen::Vector3d ui = psi_im.col(c).segment<3>(3 * n);
        jz += ur.dot(spin.jz * ur) + ui.dot(spin.jz * ui);
        const double ar = spin.minus_z.dot(ur), ai = spin.minus_z.dot(ui);
        pop += ar * ar + ai * ai;
        norm += ur.squaredNorm() + ui.squaredNorm();
      }
      out.jz[start + c] = jz;
      out.p_minus1[start + c] = pop;
      out.norm_drift = std::max(out.norm_drift, std::abs(norm - norm0));
    }
  }
  return out;
}

}  // namespace qrabi
