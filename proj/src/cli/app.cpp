#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qrabi/cli.hpp"
#include "qrabi/errors.hpp"
#include "qrabi/validation.hpp"

namespace qrabi::cli {

namespace {

struct Bindings {
  double omega = 1.0, Omega = 0.0, g = 0.0;
  double Omega_min = 0.0, Omega_max = 0.0, g_min = 0.0, g_max = 0.0;
  int Omega_steps = 101, g_steps = 101;
  std::string methods = "ed,vgrwa,grwa";
  std::string lambda_strategy = "closed-form";
  std::string adiabatic_lambda = "grwa";
  int levels = 1, n_max = 200, n_blocks = 10;
  std::string format = "csv", output, config;
  double alpha = 2.0, t_periods = 500.0;
  int samples = 4096;

  std::string level = "fast", inject_fault;
  bool verbose = false;
};

struct Parser {
  CLI::App app{"Two-qubit quantum Rabi model: variational GRWA, GRWA, adiabatic and exact spectra, photon numbers "
               "and dynamics."};
  Bindings b;
  std::map<std::string, CLI::App*> subs;

  Parser() {
    app.require_subcommand(1);
    for (const char* name : {"spectrum", "photon", "dynamics"}) add_sweep(name);
    auto* v = app.add_subcommand("validate", "Run the acceptance criteria and report pass/fail per criterion");
    v->add_option("level", b.level, "fast skips the long dynamics comparison")->check(CLI::IsMember({"fast", "full"}));
    v->add_option("--inject-fault", b.inject_fault, "corrupt the quantity under test of one criterion (id or C<k>)");
    v->add_flag("--verbose", b.verbose, "print the measured numbers of each criterion");
    subs["validate"] = v;
  }

  void add_sweep(const std::string& name) {
    const char* help = name == "spectrum" ? "Energy levels over a g or Omega sweep"
                       : name == "photon" ? "Mean photon numbers over a g or Omega sweep"
                                          : "J_z and P_-1 traces from |-1_z> (x) |alpha>";
    auto* s = app.add_subcommand(name, help);
    s->add_option("--omega", b.omega, "oscillator frequency (energy unit)")->capture_default_str();
    s->add_option("--Omega", b.Omega, "qubit frequency");
    s->add_option("--g", b.g, "coupling");
    if (name != "dynamics") {
      s->add_option("--Omega-min", b.Omega_min);
      s->add_option("--Omega-max", b.Omega_max);
      s->add_option("--Omega-steps", b.Omega_steps)->capture_default_str();
      s->add_option("--g-min", b.g_min);
      s->add_option("--g-max", b.g_max);
      s->add_option("--g-steps", b.g_steps)->capture_default_str();
      s->add_option("--levels", b.levels, "number of lowest levels")->capture_default_str();
      s->add_option("--n-blocks", b.n_blocks, "excitation blocks per manifold solution (default max(10, levels + 2))");
      if (name == "spectrum")
        s->add_option("--adiabatic-lambda", b.adiabatic_lambda, "lambda for the adiabatic method")
            ->check(CLI::IsMember({"grwa", "optimized"}))
            ->capture_default_str();
    } else {
      s->add_option("--alpha", b.alpha, "coherent amplitude")->capture_default_str();
      s->add_option("--t-periods", b.t_periods, "final Omega t / 2pi")->capture_default_str();
      s->add_option("--samples", b.samples, "uniform time samples")->capture_default_str();
    }
    s->add_option("--methods", b.methods, "comma-separated subset of ed,vgrwa,grwa,adiabatic")->capture_default_str();
    s->add_option("--lambda-strategy", b.lambda_strategy, "lambda for vgrwa")
        ->check(CLI::IsMember({"closed-form", "exact-root", "self-consistent", "grwa"}))
        ->capture_default_str();
    s->add_option("--n-max", b.n_max, "ED Fock cutoff (dynamics default: from alpha)");
    s->add_option("--format", b.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    s->add_option("--output", b.output, "output file (default stdout)");
    s->add_option("--config", b.config, "flat key = value file; command-line flags take precedence");
    subs[name] = s;
  }

  CLI::App* chosen() const {
    for (const auto& [name, s] : subs)
      if (s->parsed()) return s;
    return nullptr;
  }
};

bool given(const CLI::App* s, const std::string& flag) {
  const CLI::Option* o = s->get_option_no_throw(flag);
  return o && o->count() > 0;
}

// Tokens for config entries whose flag is absent from the command line.
std::vector<std::string> config_tokens(const CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitConfig, "cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw CliError(kExitConfig, path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    const std::string flag = "--" + key;
    if (key == "config" || !sub->get_option_no_throw(flag))
      throw CliError(kExitConfig, path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!given(sub, flag)) {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

SweepConfig resolve(const std::string& command, const CLI::App* s, const Bindings& b) {
  SweepConfig c;
  c.command = command;
  c.omega = b.omega;
  if (given(s, "--Omega")) c.Omega = b.Omega;
  if (given(s, "--g")) c.g = b.g;
  auto range = [&](const std::string& p, double lo, double hi, int steps) -> std::optional<Range> {
    const bool any = given(s, "--" + p + "-min") || given(s, "--" + p + "-max") || given(s, "--" + p + "-steps");
    if (!any) return std::nullopt;
    if (!given(s, "--" + p + "-min") || !given(s, "--" + p + "-max"))
      throw CliError(kExitConfig, "a " + p + " range needs both --" + p + "-min and --" + p + "-max");
    return Range{lo, hi, steps};
  };
  if (command != "dynamics") {
    c.Omega_range = range("Omega", b.Omega_min, b.Omega_max, b.Omega_steps);
    c.g_range = range("g", b.g_min, b.g_max, b.g_steps);
    c.levels = b.levels;
    if (given(s, "--n-blocks")) c.n_blocks = b.n_blocks;
    c.adiabatic_optimized = b.adiabatic_lambda == "optimized";
  } else {
    c.alpha = b.alpha;
    c.t_periods = b.t_periods;
    c.samples = b.samples;
  }
  c.methods = parse_methods(b.methods);
  c.lambda_strategy = *parse_lambda_strategy(b.lambda_strategy);
  if (given(s, "--n-max")) c.n_max = b.n_max;
  c.format = b.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  c.output = b.output;
  return c;
}

int run_validate(const Bindings& b, std::ostream& out) {
  const ValidationLevel level = b.level == "full" ? ValidationLevel::Full : ValidationLevel::Fast;
  ValidationOptions opts;
  opts.inject_fault = b.inject_fault;
  if (!opts.inject_fault.empty()) {
    bool known = false;
    for (const auto& c : acceptance_criteria())
      known = known || c.id == opts.inject_fault || c.id.rfind(opts.inject_fault + "-", 0) == 0;
    if (!known) throw CliError(kExitConfig, "--inject-fault: unknown criterion '" + opts.inject_fault + "'");
  }
  print_report_header(out, level);
  if (!opts.inject_fault.empty()) out << "fault injected into " << opts.inject_fault << "\n";
  out << "\n";
  std::vector<std::string> failed;
  std::size_t total = 0;
  for (const auto& c : acceptance_criteria()) {
    if (c.full_only && level == ValidationLevel::Fast) {
      out << "SKIP " << c.id << "  (full level only)\n";
      continue;
    }
    const CriterionResult r = run_criterion(c, opts);
    print_result(out, r, b.verbose);
    out.flush();
    ++total;
    if (!r.passed) failed.push_back(r.id);
  }
  out << "\n" << (total - failed.size()) << "/" << total << " criteria passed";
  if (!failed.empty()) {
    out << "; failed:";
    for (const auto& id : failed) out << " " << id;
  }
  out << "\n";
  return failed.empty() ? kExitOk : kExitFailure;
}

template <class Rows>
void emit(const SweepConfig& c, const Rows& rows, std::ostream& out) {
  std::ostringstream buf;
  if (c.format == OutputFormat::Json)
    write_json(buf, c, rows);
  else
    write_csv(buf, rows);
  if (c.output.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw CliError(kExitConfig, "cannot write " + c.output);
  f << buf.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> tokens;
  for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);
  try {
    auto parse = [&](std::vector<std::string> args) {
      auto p = std::make_unique<Parser>();
      std::reverse(args.begin(), args.end());
      try {
        p->app.parse(args);
      } catch (const CLI::CallForHelp&) {
        const CLI::App* sub = p->chosen();
        out << (sub ? sub->help() : p->app.help());
        throw;
      } catch (const CLI::CallForAllHelp&) {
        out << p->app.help("", CLI::AppFormatMode::All);
        throw;
      } catch (const CLI::ParseError& e) {
        throw CliError(kExitConfig, e.what());
      }
      return p;
    };

    auto parser = parse(tokens);
    CLI::App* sub = parser->chosen();
    if (sub->get_name() == "validate") return run_validate(parser->b, out);

    if (!parser->b.config.empty()) {
      auto extra = config_tokens(sub, parser->b.config);
      tokens.insert(tokens.end(), extra.begin(), extra.end());
      parser = parse(tokens);
      sub = parser->chosen();
    }
    const SweepConfig cfg = resolve(sub->get_name(), sub, parser->b);
    if (cfg.command == "spectrum")
      emit(cfg, cmd_spectrum(cfg), out);
    else if (cfg.command == "photon")
      emit(cfg, cmd_photon(cfg), out);
    else
      emit(cfg, cmd_dynamics(cfg), out);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    return kExitOk;
  } catch (const CliError& e) {
    err << "qrabi: " << e.what() << "\n";
    return e.code();
  } catch (const DomainError& e) {
    err << "qrabi: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationError& e) {
    err << "qrabi: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ConvergenceError& e) {
    err << "qrabi: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const OverflowError& e) {
    err << "qrabi: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    err << "qrabi: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace qrabi::cli
