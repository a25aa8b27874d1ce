#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <thread>
#include <tuple>

#include "qrabi/cli.hpp"
#include "qrabi/dynamics.hpp"
#include "qrabi/exact.hpp"
#include "qrabi/observables.hpp"

namespace qrabi::cli {

namespace {

// Runs fn(i) for i in [0, count) on the worker pool; results land at their own index.
// The exception of the lowest failing index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), count);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool has(const std::vector<Method>& ms, Method m) { return std::find(ms.begin(), ms.end(), m) != ms.end(); }

void check_ed_convergence(const SweepConfig& cfg) {
  if (!has(cfg.methods, Method::Ed)) return;
  const FockTruncation trunc{cfg.resolved_static_n_max()};
  auto values = cfg.sweep_values();
  std::vector<double> ends{values.front()};
  if (values.back() != values.front()) ends.push_back(values.back());
  for (double v : ends) {
    if (cfg.levels > trunc.dimension()) throw CliError(kExitConfig, "--levels exceeds the ED dimension");
    if (!ed_converged(cfg.params_at(v), trunc, cfg.levels))
      throw CliError(kExitConvergence, "ED not converged at " + cfg.sweep_param() + " = " + format_number(v) +
                                           " with --n-max " + std::to_string(trunc.n_max));
  }
}

std::vector<double> take_levels(const SpectrumTable& table, int k) {
  if (static_cast<int>(table.levels.size()) < k)
    throw CliError(kExitConfig, "--n-blocks too small for --levels " + std::to_string(k));
  return table.energies(static_cast<std::size_t>(k));
}

void sort_rows(std::vector<StaticRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const StaticRow& a, const StaticRow& b) {
    return std::tie(a.sweep_value, a.method, a.level) < std::tie(b.sweep_value, b.method, b.level);
  });
}

std::vector<StaticRow> flatten(std::vector<std::vector<StaticRow>>&& per_point) {
  std::vector<StaticRow> rows;
  for (auto& chunk : per_point) rows.insert(rows.end(), chunk.begin(), chunk.end());
  sort_rows(rows);
  return rows;
}

Displacement adiabatic_displacement(const SweepConfig& cfg, const ModelParams& p) {
  return solve_lambda(p, cfg.adiabatic_optimized ? LambdaStrategy::AdiabaticOptimized : LambdaStrategy::GrwaFixed);
}

}  // namespace

std::vector<StaticRow> cmd_spectrum(const SweepConfig& cfg) {
  cfg.validate();
  check_ed_convergence(cfg);
  const auto values = cfg.sweep_values();
  const std::string param = cfg.sweep_param();
  const int k = cfg.levels;
  const int blocks = cfg.resolved_n_blocks();
  return flatten(parallel_map<std::vector<StaticRow>>(values.size(), [&](std::size_t i) {
    const ModelParams p = cfg.params_at(values[i]);
    std::vector<StaticRow> rows;
    auto emit = [&](Method m, const std::vector<double>& e) {
      for (int l = 0; l < k; ++l) rows.push_back({param, values[i], method_name(m), l, "energy", e[l]});
    };
    for (Method m : cfg.methods) {
      switch (m) {
        case Method::Ed:
          emit(m, ed_spectrum(p, FockTruncation{cfg.resolved_static_n_max()}, k));
          break;
        case Method::Vgrwa:
          emit(m, take_levels(assemble_spectrum(p, solve_lambda(p, cfg.lambda_strategy), blocks), k));
          break;
        case Method::Grwa:
          emit(m, take_levels(assemble_spectrum(p, solve_lambda(p, LambdaStrategy::GrwaFixed), blocks), k));
          break;
        case Method::Adiabatic:
          emit(m, take_levels(adiabatic_spectrum(p, adiabatic_displacement(cfg, p), blocks), k));
          break;
      }
    }
    return rows;
  }));
}

std::vector<StaticRow> cmd_photon(const SweepConfig& cfg) {
  cfg.validate();
  check_ed_convergence(cfg);
  const auto values = cfg.sweep_values();
  const std::string param = cfg.sweep_param();
  const int k = cfg.levels;
  const int blocks = cfg.resolved_n_blocks();
  return flatten(parallel_map<std::vector<StaticRow>>(values.size(), [&](std::size_t i) {
    const ModelParams p = cfg.params_at(values[i]);
    std::vector<StaticRow> rows;
    auto manifold = [&](Method m, LambdaStrategy s) {
      const ManifoldSolution sol = solve_manifolds(p, solve_lambda(p, s), blocks);
      const SpectrumTable table = assemble_spectrum(sol);
      take_levels(table, k);
      for (int l = 0; l < k; ++l) {
        const LevelTag& tag = table.levels[static_cast<std::size_t>(l)].tag;
        // the fixed-lambda ground state carries the chi_0 admixture
        const double n = (m == Method::Grwa && tag.kind == LevelTag::Kind::Ground) ? photon_ground_grwa(p)
                                                                                  : photon_for_level(sol, tag);
        rows.push_back({param, values[i], method_name(m), l, "mean_photon", n});
      }
    };
    for (Method m : cfg.methods) {
      switch (m) {
        case Method::Ed: {
          const ExactSpectrum ed = ed_solve(p, FockTruncation{cfg.resolved_static_n_max()});
          for (int l = 0; l < k; ++l) rows.push_back({param, values[i], "ed", l, "mean_photon", ed.photon(l)});
          break;
        }
        case Method::Vgrwa:
          manifold(m, cfg.lambda_strategy);
          break;
        case Method::Grwa:
          manifold(m, LambdaStrategy::GrwaFixed);
          break;
        case Method::Adiabatic:
          throw CliError(kExitConfig, "photon: the adiabatic method has no photon-number formula");
      }
    }
    const double ratio = p.g / p.omega;
    rows.push_back({param, values[i], "reference", 0, "g2_over_2omega2", 0.5 * ratio * ratio});
    return rows;
  }));
}

std::vector<DynamicsRow> cmd_dynamics(const SweepConfig& cfg) {
  cfg.validate();
  const ModelParams p = cfg.params_at(*cfg.g);
  const TimeGrid grid = TimeGrid::uniform_periods(p.Omega, cfg.t_periods, cfg.samples);
  const auto series = parallel_map<TimeSeries>(cfg.methods.size(), [&](std::size_t i) {
    switch (cfg.methods[i]) {
      case Method::Ed: {
        const int n_max = cfg.n_max.value_or(default_dynamics_truncation(cfg.alpha));
        return ed_dynamics(p, FockTruncation{n_max}, cfg.alpha, grid);
      }
      case Method::Vgrwa:
        return manifold_dynamics(p, solve_lambda(p, cfg.lambda_strategy), cfg.alpha, grid, "vgrwa");
      case Method::Grwa:
        return manifold_dynamics(p, solve_lambda(p, LambdaStrategy::GrwaFixed), cfg.alpha, grid, "grwa");
      case Method::Adiabatic:
        break;
    }
    throw CliError(kExitConfig, "dynamics: the adiabatic method has no dynamics");
  });

  std::vector<std::pair<std::string, const TimeSeries*>> traces;
  const TimeSeries* ed = nullptr;
  for (std::size_t i = 0; i < series.size(); ++i) {
    traces.emplace_back(method_name(cfg.methods[i]), &series[i]);
    if (cfg.methods[i] == Method::Ed) ed = &series[i];
  }
  std::sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::pair<std::string, std::function<DynamicsRow(std::size_t)>>> columns;
  for (const auto& [name, s] : traces) {
    columns.emplace_back(name, [&grid, p, name = name, s = s](std::size_t j) {
      return DynamicsRow{grid.t[j], p.Omega * grid.t[j] / (2.0 * std::numbers::pi), name, s->jz[j], s->p_minus1[j]};
    });
    if (ed && s != ed) {
      columns.emplace_back(name + "-ed", [&grid, p, name = name, s = s, ed](std::size_t j) {
        return DynamicsRow{grid.t[j], p.Omega * grid.t[j] / (2.0 * std::numbers::pi), name + "-ed",
                           s->jz[j] - ed->jz[j], s->p_minus1[j] - ed->p_minus1[j]};
      });
    }
  }
  std::sort(columns.begin(), columns.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<DynamicsRow> rows;
  rows.reserve(grid.size() * columns.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    for (const auto& col : columns) rows.push_back(col.second(j));
  return rows;
}

}  // namespace qrabi::cli
