// qfdiv: command-line front end for the maximal f-divergence toolkit.
//
// Exit codes: 0 success, 1 assertion failure, 2 usage or parse error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qfdiv/experiments.hpp"
#include "qfdiv/state_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

std::string default_out_dir() {
  if (const char* env = std::getenv("QFDIV_OUT"); env != nullptr && *env != '\0') return env;
  return "out";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

void add_common(CLI::App* cmd, qfdiv::ExperimentConfig& cfg) {
  cmd->add_option("--dim", cfg.dim, "matrix dimension");
  cmd->add_option("--samples", cfg.samples, "Monte Carlo sample count");
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance");
  cmd->add_option("--out", cfg.out_dir, "output directory (default: $QFDIV_OUT or ./out)");
}

}  // namespace

int main(int argc, char** argv) {
  qfdiv::ExperimentConfig cfg;
  cfg.out_dir = default_out_dir();

  CLI::App app{"Maximal quantum f-divergence toolkit"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run every numerical verification suite");
  add_common(verify, cfg);

  auto* fig1 = app.add_subcommand("fig1", "decoherence bounds over time (CSV + SVG)");
  add_common(fig1, cfg);
  fig1->add_option("--lambda", cfg.lambda, "spectral gap");
  std::vector<double> chi0;
  fig1->add_option("--chi0", chi0, "initial chi-squared divergence (repeatable)");

  auto* fig2 = app.add_subcommand("fig2", "reverse Pinsker vs Audenaert-Eisert scatter (CSV + SVG)");
  add_common(fig2, cfg);

  auto* rate = app.add_subcommand("condition-rate", "fraction of random pairs with |rho - sigma| <= rho + sigma");
  add_common(rate, cfg);
  bool commuting = false;
  rate->add_flag("--commuting", commuting, "sample commuting (diagonal) pairs");

  std::string rho_path, sigma_path, f_name = "kl";
  auto* witness = app.add_subcommand("witness", "print the classical witness (r, s) for two state files");
  witness->add_option("rho", rho_path, "state file for rho")->required();
  witness->add_option("sigma", sigma_path, "state file for sigma")->required();
  witness->add_option("--f", f_name, "generator: kl, chi2 or tv");
  bool bits = false;
  witness->add_flag("--bits", bits, "print logarithmic quantities in bits instead of nats");

  auto* compare = app.add_subcommand("compare-bounds", "evaluate every divergence and bound for two state files");
  compare->add_option("rho", rho_path, "state file for rho")->required();
  compare->add_option("sigma", sigma_path, "state file for sigma")->required();
  compare->add_flag("--bits", bits, "print logarithmic quantities in bits instead of nats");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (!chi0.empty()) cfg.chi2_0_list = chi0;

  const std::filesystem::path out_dir = cfg.out_dir;
  try {
    if (*verify) {
      cfg.validate();
      const qfdiv::VerifyResult result = qfdiv::run_verify(cfg);
      std::cout << result.text();
      write_file(out_dir / "verify.csv", result.csv());
      return result.all_passed() ? kExitOk : kExitAssertion;
    }
    if (*fig1) {
      const auto rows = qfdiv::fig1_rows(cfg);
      write_file(out_dir / "fig1.csv", qfdiv::fig1_csv(rows));
      write_file(out_dir / "fig1.svg", qfdiv::fig1_svg(rows, cfg));
      long bad = 0;
      for (const auto& r : rows)
        if (r.improved > std::min(r.temme, 2.0)) ++bad;
      std::cout << "fig1: " << rows.size() << " rows written to " << (out_dir / "fig1.csv").string() << '\n';
      if (bad) std::cout << "fig1: " << bad << " rows where improved exceeds min(temme, 2)\n";
      return bad ? kExitAssertion : kExitOk;
    }
    if (*fig2) {
      const qfdiv::Fig2Result result = qfdiv::fig2_run(cfg);
      write_file(out_dir / "fig2.csv", qfdiv::fig2_csv(result));
      write_file(out_dir / "fig2.svg", qfdiv::fig2_svg(result));
      std::cout << "fig2: " << result.summary();
      return result.violations ? kExitAssertion : kExitOk;
    }
    if (*rate) {
      const qfdiv::ConditionRate r = qfdiv::condition_rate(cfg, commuting);
      write_file(out_dir / (commuting ? "condition_rate_commuting.csv" : "condition_rate.csv"), r.csv());
      std::cout << "condition rate: " << r.satisfied << '/' << r.samples << " = " << r.rate() << " (dim " << r.dim
                << (commuting ? ", commuting pairs" : ", Hilbert-Schmidt pairs") << ")\n";
      switch (qfdiv::judge_condition_rate(r)) {
        case qfdiv::RateVerdict::Pass: return kExitOk;
        case qfdiv::RateVerdict::NotAsserted: return kExitOk;
        case qfdiv::RateVerdict::Warn:
          std::cout << "warning: rate is below 0.80 but above 0.75\n";
          return kExitOk;
        case qfdiv::RateVerdict::Fail:
          std::cout << "FAIL: expected a rate above 0.80\n";
          return kExitAssertion;
      }
    }

    // witness / compare-bounds read state files; parse problems are usage errors.
    qfdiv::DensityMatrix rho = qfdiv::parse_state_file(rho_path);
    qfdiv::DensityMatrix sigma = qfdiv::parse_state_file(sigma_path);
    if (*witness) {
      const qfdiv::FGenerator f = qfdiv::builtin_generator(f_name);
      const qfdiv::WitnessReport report = qfdiv::verify_witness(rho, sigma, f);
      std::cout << qfdiv::witness_text(rho, sigma, f, report, bits);
      return report.ok(qfdiv::kWitnessTol) ? kExitOk : kExitAssertion;
    }
    std::cout << qfdiv::compare_bounds_text(rho, sigma, bits);
    return kExitOk;
  } catch (const qfdiv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case qfdiv::ErrorKind::ParseError:
      case qfdiv::ErrorKind::InvariantViolation:
      case qfdiv::ErrorKind::UnknownGenerator:
      case qfdiv::ErrorKind::OutOfRange:
      case qfdiv::ErrorKind::DimensionMismatch:
      case qfdiv::ErrorKind::SingularState:
        return kExitUsage;
      default:
        return kExitAssertion;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAssertion;
  }
}
