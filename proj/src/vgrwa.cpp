#include "qrabi/vgrwa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "qrabi/errors.hpp"
#include "qrabi/special_functions.hpp"

namespace qrabi {

std::string_view to_string(LambdaStrategy s) {
  switch (s) {
    case LambdaStrategy::GrwaFixed: return "grwa";
    case LambdaStrategy::ClosedForm: return "closed-form";
    case LambdaStrategy::SelfConsistent: return "self-consistent";
    case LambdaStrategy::ExactRoot: return "exact-root";
    case LambdaStrategy::AdiabaticOptimized: return "adiabatic-optimized";
  }
  return "unknown";
}

std::optional<LambdaStrategy> parse_lambda_strategy(std::string_view name) {
  for (auto s : {LambdaStrategy::GrwaFixed, LambdaStrategy::ClosedForm, LambdaStrategy::SelfConsistent,
                 LambdaStrategy::ExactRoot, LambdaStrategy::AdiabaticOptimized})
    if (to_string(s) == name) return s;
  return std::nullopt;
}

Displacement make_displacement(const ModelParams& params, double lambda, LambdaStrategy strategy) {
  if (!(lambda >= 0.0)) throw DomainError("make_displacement: lambda must be >= 0");
  return Displacement{lambda, params.g - lambda * params.omega,
                      0.5 * (lambda * lambda * params.omega - 2.0 * params.g * lambda), strategy};
}

double lambda_residual(const ModelParams& params, double lambda) {
  return params.g - lambda * params.omega - lambda * params.Omega * std::exp(-0.5 * lambda * lambda);
}

double ground_energy(const ModelParams& params, double lambda) {
  return 0.5 * (lambda * lambda * params.omega - 2.0 * params.g * lambda) -
         params.Omega * std::exp(-0.5 * lambda * lambda);
}

double ground_energy(const ModelParams& params, const Displacement& disp) {
  return ground_energy(params, disp.lambda);
}

namespace {

// Bisection on a bracket with residual(lo) > 0 >= residual(hi), run to adjacent doubles.
double bisect_root(const ModelParams& params, double lo, double hi) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (lambda_residual(params, mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(lambda_residual(params, lo)) <= std::abs(lambda_residual(params, hi)) ? lo : hi;
}

double exact_root_lambda(const ModelParams& params) {
  const double upper = params.g / params.omega;
  if (params.Omega == 0.0) return upper;
  // d(residual)/d(lambda) = -omega - Omega e^{-l^2/2} (1 - l^2); the bracket term is smallest at min(upper, sqrt3).
  const double l = std::min(upper, std::sqrt(3.0));
  if (params.omega + params.Omega * std::exp(-0.5 * l * l) * (1.0 - l * l) > 0.0)
    return bisect_root(params, 0.0, upper);

  constexpr int cells = 512;
  double best = upper;
  double best_energy = std::numeric_limits<double>::infinity();
  double prev_x = 0.0;
  double prev_r = lambda_residual(params, 0.0);
  for (int i = 1; i <= cells; ++i) {
    const double x = upper * i / cells;
    const double r = lambda_residual(params, x);
    if (prev_r > 0.0 && r <= 0.0) {
      const double root = bisect_root(params, prev_x, x);
      const double e = ground_energy(params, root);
      if (e < best_energy) {
        best_energy = e;
        best = root;
      }
    }
    prev_x = x;
    prev_r = r;
  }
  return best;
}

double adiabatic_ground(const ModelParams& params, double lambda) {
  return adiabatic_block(params, make_displacement(params, lambda, LambdaStrategy::AdiabaticOptimized), 0)
      .energy_minus;
}

double adiabatic_optimized_lambda(const ModelParams& params) {
  const double upper = params.g / params.omega;
  constexpr int cells = 256;
  int best = 0;
  double best_e = adiabatic_ground(params, 0.0);
  for (int i = 1; i <= cells; ++i) {
    const double e = adiabatic_ground(params, upper * i / cells);
    if (e < best_e) {
      best_e = e;
      best = i;
    }
  }
  // Golden-section refinement inside the neighbouring cells.
  double lo = upper * std::max(0, best - 1) / cells;
  double hi = upper * std::min(cells, best + 1) / cells;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = adiabatic_ground(params, x1), f2 = adiabatic_ground(params, x2);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = adiabatic_ground(params, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = adiabatic_ground(params, x2);
    }
  }
  return std::clamp(0.5 * (lo + hi), 0.0, upper);
}

}  // namespace

Displacement solve_lambda(const ModelParams& params, LambdaStrategy strategy) {
  params.validate();
  if (params.g == 0.0) return make_displacement(params, 0.0, strategy);
  const double w = params.omega, W = params.Omega, g = params.g;
  double lambda = 0.0;
  switch (strategy) {
    case LambdaStrategy::GrwaFixed:
      lambda = g / w;
      break;
    case LambdaStrategy::ClosedForm:
      lambda = g / (w + W);
      break;
    case LambdaStrategy::SelfConsistent: {
      const double lambda0 = g / (w + W);
      lambda = g / (w + W * std::exp(-0.5 * lambda0 * lambda0));
      break;
    }
    case LambdaStrategy::ExactRoot:
      lambda = exact_root_lambda(params);
      break;
    case LambdaStrategy::AdiabaticOptimized:
      lambda = adiabatic_optimized_lambda(params);
      break;
  }
  return make_displacement(params, lambda, strategy);
}

double counter_rotating_coeff(const ModelParams& params, const Displacement& disp, int n) {
  if (n < 0) throw DomainError("counter_rotating_coeff: n must be >= 0");
  const double l = disp.lambda;
  return params.g - l * params.omega -
         params.Omega * std::exp(-0.5 * l * l) * l * laguerre_assoc(n, 1, l * l) / (n + 1);
}

namespace {

struct Sym2Solution {
  std::array<double, 2> energies;  // ascending
  Eigen::Matrix2d vectors;         // columns
};

// [[a, r], [r, b]] with eigenvectors in the form
//   E+: ( sgn(r) sqrt((1 + delta/s)/2), sqrt((1 - delta/s)/2) )
//   E-: (-sgn(r) sqrt((1 - delta/s)/2), sqrt((1 + delta/s)/2) ),  delta = a - b, s = sqrt(delta^2 + 4 r^2).
// The smaller of the two half-sums is formed as 2 r^2 / (s (s + |delta|)).
Sym2Solution solve_sym2(double a, double b, double r) {
  Sym2Solution out;
  if (r == 0.0) {
    if (a <= b) {
      out.energies = {a, b};
      out.vectors = Eigen::Matrix2d::Identity();
    } else {
      out.energies = {b, a};
      out.vectors << 0.0, 1.0, 1.0, 0.0;
    }
    return out;
  }
  const double delta = a - b;
  const double s = std::hypot(delta, 2.0 * r);
  out.energies = {0.5 * (a + b - s), 0.5 * (a + b + s)};
  const double big = 0.5 * (1.0 + std::abs(delta) / s);
  const double small = 2.0 * r * r / (s * (s + std::abs(delta)));
  const double plus_half = delta >= 0.0 ? big : small;    // (1 + delta/s)/2
  const double minus_half = delta >= 0.0 ? small : big;   // (1 - delta/s)/2
  const double sgn = r > 0.0 ? 1.0 : -1.0;
  out.vectors(0, 1) = sgn * std::sqrt(plus_half);
  out.vectors(1, 1) = std::sqrt(minus_half);
  out.vectors(0, 0) = -sgn * std::sqrt(minus_half);
  out.vectors(1, 0) = std::sqrt(plus_half);
  return out;
}

}  // namespace

Eigen::Matrix3d AdiabaticBlock::matrix() const {
  Eigen::Matrix3d m;
  m << xi_minus, 0.0, eps_lambda,
       0.0, xi_zero, 0.0,
       eps_lambda, 0.0, xi_plus;
  return m;
}

std::array<double, 3> AdiabaticBlock::sorted_energies() const {
  std::array<double, 3> e{energy_minus, energy_zero, energy_plus};
  std::sort(e.begin(), e.end());
  return e;
}

AdiabaticBlock adiabatic_block(const ModelParams& params, const Displacement& disp, int n) {
  if (n < 0) throw DomainError("adiabatic_block: n must be >= 0");
  const double f0 = params.Omega * f_coeff(0, n, disp.lambda);
  AdiabaticBlock blk;
  blk.n = n;
  blk.eps_lambda = disp.eps_lambda;
  const double eps_n = params.omega * n;
  blk.xi_minus = eps_n + disp.eps_lambda - f0;
  blk.xi_plus = eps_n + disp.eps_lambda + f0;
  blk.xi_zero = eps_n + 2.0 * disp.eps_lambda;

  const Sym2Solution s = solve_sym2(blk.xi_minus, blk.xi_plus, disp.eps_lambda);
  blk.energy_minus = s.energies[0];
  blk.energy_plus = s.energies[1];
  blk.energy_zero = blk.xi_zero;
  blk.vec_minus = Eigen::Vector3d(s.vectors(0, 0), 0.0, s.vectors(1, 0));
  blk.vec_plus = Eigen::Vector3d(s.vectors(0, 1), 0.0, s.vectors(1, 1));
  blk.vec_zero = Eigen::Vector3d(0.0, 1.0, 0.0);
  return blk;
}

Eigen::Matrix3d GrwaBlock::matrix() const {
  Eigen::Matrix3d m;
  m << nu_minus, z, 0.0,
       z, nu_zero, y,
       0.0, y, nu_plus;
  return m;
}

std::optional<CubicRoots<double>> grwa_block_roots(const GrwaBlock& blk) {
  // cubic of the block shifted by nu0
  const double sm = blk.nu_minus - blk.nu_zero, sp = blk.nu_plus - blk.nu_zero;
  const double z2 = blk.z * blk.z, y2 = blk.y * blk.y;
  auto roots = trig_cubic_roots(-(sm + sp), sm * sp - z2 - y2, z2 * sp + y2 * sm);
  if (roots)
    for (double& e : roots->roots) e += blk.nu_zero;
  return roots;
}

Eigen::Vector3d grwa_block_raw_vector(const GrwaBlock& blk, double energy) {
  const double dp = (energy - blk.nu_zero) - (blk.nu_plus - blk.nu_zero);
  const double dm = (energy - blk.nu_zero) - (blk.nu_minus - blk.nu_zero);
  return {blk.z * dp, dp * dm, blk.y * dm};
}

namespace {

void solve_block_numerically(GrwaBlock& blk) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(blk.matrix());
  if (es.info() != Eigen::Success) throw ConvergenceError("grwa_block: 3x3 eigensolver failed");
  for (int j = 0; j < 3; ++j) blk.energies[j] = es.eigenvalues()(j);
  blk.vectors = es.eigenvectors();
  blk.path = SolvePath::Numeric;
}

// Closed-form vectors; false if any is ill-conditioned or inaccurate.
bool closed_form_vectors(GrwaBlock& blk) {
  const Eigen::Matrix3d m = blk.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
  for (int j = 0; j < 3; ++j) {
    const double e = blk.energies[j];
    const Eigen::Vector3d raw = grwa_block_raw_vector(blk, e);
    const double eta = raw.norm();
    if (!(eta > 1e-6 * scale * scale)) return false;
    blk.vectors.col(j) = raw / eta;
    if ((m * blk.vectors.col(j) - e * blk.vectors.col(j)).cwiseAbs().maxCoeff() > 1e-12 * scale) return false;
  }
  const Eigen::Matrix3d gram = blk.vectors.transpose() * blk.vectors - Eigen::Matrix3d::Identity();
  return gram.cwiseAbs().maxCoeff() < 1e-12;
}

GrwaBlock make_grwa_block(const ModelParams& params, const Displacement& disp, int n, double f0_below,
                          double f0_above, double f1_below, double f1_at) {
  if (n < 1) throw DomainError("grwa_block: n must be >= 1");
  const double w = params.omega, W = params.Omega;
  GrwaBlock blk;
  blk.n = n;
  blk.nu_minus = w * (n - 1) + W * f0_below + disp.eps_lambda;
  blk.nu_zero = w * n + 2.0 * disp.eps_lambda;
  blk.nu_plus = w * (n + 1) - W * f0_above + disp.eps_lambda;
  blk.z = std::sqrt(0.5 * n) * (W * f1_below + disp.lambda_prime);
  blk.y = std::sqrt(0.5 * (n + 1)) * (W * f1_at + disp.lambda_prime);

  const double nm = blk.nu_minus, n0 = blk.nu_zero, np = blk.nu_plus;
  const double z2 = blk.z * blk.z, y2 = blk.y * blk.y;
  blk.b = -(nm + n0 + np);
  blk.c = nm * n0 + np * (nm + n0) - z2 - y2;
  blk.d = -nm * n0 * np + z2 * np + y2 * nm;

  const auto roots = grwa_block_roots(blk);
  if (!roots) {
    solve_block_numerically(blk);
    return blk;
  }
  blk.energies = roots->roots;
  blk.theta = roots->theta;
  blk.path = SolvePath::Analytic;
  if (!closed_form_vectors(blk)) solve_block_numerically(blk);
  return blk;
}

}  // namespace

GrwaBlock grwa_block(const ModelParams& params, const Displacement& disp, int n) {
  if (n < 1) throw DomainError("grwa_block: n must be >= 1");
  const double l = disp.lambda;
  return make_grwa_block(params, disp, n, f_coeff(0, n - 1, l), f_coeff(0, n + 1, l), f_coeff(1, n - 1, l),
                         f_coeff(1, n, l));
}

GrwaBlock grwa_block(const ModelParams& params, const Displacement& disp, int n, const FTable& f) {
  if (n < 1) throw DomainError("grwa_block: n must be >= 1");
  if (f.n_max() < n + 1 || f.m_max() < 1 || f.lambda() != disp.lambda)
    throw DomainError("grwa_block: F table does not cover block " + std::to_string(n));
  return make_grwa_block(params, disp, n, f(0, n - 1), f(0, n + 1), f(1, n - 1), f(1, n));
}

Eigen::Matrix2d Block0::matrix() const {
  Eigen::Matrix2d m;
  m << eps_00, coupling, coupling, eps_1m;
  return m;
}

Block0 grwa_block0(const ModelParams& params, const Displacement& disp) {
  const double l = disp.lambda;
  Block0 blk;
  blk.eps_00 = 2.0 * disp.eps_lambda;
  blk.eps_1m = params.omega - params.Omega * f_coeff(0, 1, l) + disp.eps_lambda;
  blk.coupling = std::sqrt(0.5) * (params.Omega * f_coeff(1, 0, l) + disp.lambda_prime);
  const Sym2Solution s = solve_sym2(blk.eps_00, blk.eps_1m, blk.coupling);
  blk.energies = s.energies;
  blk.vectors = s.vectors;
  return blk;
}

ManifoldSolution solve_manifolds(const ModelParams& params, const Displacement& disp, int n_blocks) {
  params.validate();
  if (n_blocks < 0) throw DomainError("solve_manifolds: n_blocks must be >= 0");
  ManifoldSolution sol;
  sol.params = params;
  sol.disp = disp;
  sol.ground_energy = ground_energy(params, disp);
  sol.block0 = grwa_block0(params, disp);
  const FTable f(disp.lambda, n_blocks + 1, 1);
  sol.blocks.reserve(static_cast<std::size_t>(n_blocks));
  for (int n = 1; n <= n_blocks; ++n) sol.blocks.push_back(grwa_block(params, disp, n, f));
  return sol;
}

std::vector<double> SpectrumTable::energies(std::size_t k) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < std::min(k, levels.size()); ++i) out.push_back(levels[i].energy);
  return out;
}

namespace {

void sort_levels(std::vector<Level>& levels) {
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
}

}  // namespace

SpectrumTable assemble_spectrum(const ManifoldSolution& sol) {
  SpectrumTable table;
  table.levels.reserve(3 + 3 * sol.blocks.size());
  table.levels.push_back({sol.ground_energy, {LevelTag::Kind::Ground, 0, 0}});
  for (int j = 0; j < 2; ++j) table.levels.push_back({sol.block0.energies[j], {LevelTag::Kind::Block0, 0, j}});
  for (const auto& blk : sol.blocks)
    for (int j = 0; j < 3; ++j) table.levels.push_back({blk.energies[j], {LevelTag::Kind::Block, blk.n, j}});
  sort_levels(table.levels);
  return table;
}

SpectrumTable assemble_spectrum(const ModelParams& params, const Displacement& disp, int n_blocks) {
  if (n_blocks < 1) throw DomainError("assemble_spectrum: n_blocks must be >= 1");
  return assemble_spectrum(solve_manifolds(params, disp, n_blocks));
}

SpectrumTable adiabatic_spectrum(const ModelParams& params, const Displacement& disp, int n_blocks) {
  params.validate();
  if (n_blocks < 0) throw DomainError("adiabatic_spectrum: n_blocks must be >= 0");
  SpectrumTable table;
  for (int n = 0; n <= n_blocks; ++n) {
    const AdiabaticBlock blk = adiabatic_block(params, disp, n);
    const auto e = blk.sorted_energies();
    for (int j = 0; j < 3; ++j) table.levels.push_back({e[j], {LevelTag::Kind::Adiabatic, n, j}});
  }
  sort_levels(table.levels);
  return table;
}

}  // namespace qrabi
