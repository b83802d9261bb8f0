// Acceptance checks 1-12. Prints one PASS/FAIL line per criterion and exits
// nonzero if any selected criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qfdiv/experiments.hpp"

using namespace qfdiv;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome from_suite(const SuiteResult& s) {
  std::string d = s.name + fmt(" max_residual=%.3e tol=%.1e", s.max_residual, s.tolerance);
  if (!s.note.empty()) d += " (" + s.note + ")";
  return {s.passed(), d};
}

Outcome both(const Outcome& a, const Outcome& b) { return {a.pass && b.pass, a.detail + "; " + b.detail}; }

const ExperimentConfig kConfig{};

Outcome witness_identity() {
  const auto start = std::chrono::steady_clock::now();
  const SuiteResult s = suites::witness(kConfig);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o = from_suite(s);
  o.pass = o.pass && s.trials == 4000 && secs < 30.0;
  o.detail += fmt(" trials=%.0f runtime=%.1fs", static_cast<double>(s.trials), secs);
  return o;
}

Outcome chi2_coincidence() { return from_suite(suites::chi2_coincidence(kConfig)); }

Outcome dpi() { return both(from_suite(suites::dpi(kConfig)), from_suite(suites::dpi_witness_equality(kConfig))); }

Outcome maximality() {
  const SuiteResult s = suites::maximality(kConfig);
  Outcome o = from_suite(s);
  o.pass = o.pass && s.trials == 10000;
  return o;
}

Outcome improved_pinsker() {
  Outcome o = from_suite(suites::pinsker_chi2(kConfig));
  const DensityMatrix rho = plus_state();
  const DensityMatrix sigma = maximally_mixed(2);
  const double chi2 = quantum_chi2(rho, sigma);
  const double t = trace_distance(rho, sigma);
  const bool hand = std::abs(chi2 - 1.0) <= 1e-10 && std::abs(t * t - 1.0) <= 1e-10;
  o.pass = o.pass && hand;
  o.detail += fmt("; hand chi2=%.15g T^2=%.15g", chi2, t * t);
  return o;
}

Outcome decoherence() {
  const auto rows = fig1_rows(kConfig);
  long worse = 0;
  double start_err = INFINITY;
  for (const auto& r : rows) {
    if (r.improved > r.temme) ++worse;
    if (r.chi2_0 == 4.0 && r.t == 0.0) start_err = std::max(std::abs(r.temme - 2.0), std::abs(r.improved - 1.6));
  }
  double jump = 0.0;
  for (double chi : kConfig.chi2_0_list) {
    if (chi <= 1.0) continue;
    const double t_star = std::log(chi) / kConfig.lambda;
    const double before = decoherence_bounds(chi, kConfig.lambda, t_star * (1.0 - 1e-12)).improved;
    const double after = decoherence_bounds(chi, kConfig.lambda, t_star * (1.0 + 1e-12)).improved;
    jump = std::max(jump, std::abs(after - before));
  }
  const Outcome o{worse == 0 && start_err <= 1e-12 && jump <= 1e-8,
                  fmt("rows_with_improved_above_temme=%.0f start_row_err=%.3e crossover_jump=%.3e",
                      static_cast<double>(worse), start_err, jump)};
  return both(o, from_suite(suites::decoherence(kConfig)));
}

Outcome reverse_pinsker() {
  Outcome o = from_suite(suites::reverse_pinsker(kConfig));
  const BoundReport kl = check_reverse_pinsker_quantum(plus_state(), maximally_mixed(2), builtin_generator("kl"));
  const BoundReport chi2 = check_reverse_pinsker_quantum(plus_state(), maximally_mixed(2), builtin_generator("chi2"));
  const double ln2 = std::numbers::ln2;
  const double hand = std::max({std::abs(kl.lhs - ln2), std::abs(kl.rhs - ln2), std::abs(chi2.lhs - 1.0),
                                std::abs(chi2.rhs - 1.0)});
  o.pass = o.pass && hand <= 1e-10;
  o.detail += fmt("; hand_case_err=%.3e", hand);
  return o;
}

Outcome zeta1() { return from_suite(suites::zeta1(kConfig)); }

Fig2Result fig2_once() { return fig2_run(kConfig); }

Outcome audenaert_eisert() {
  const Fig2Result r = fig2_once();
  long below = 0;
  for (const auto& row : r.rows)
    if (row.ae < row.relent - kBoundTol) ++below;
  const double hand = audenaert_eisert_bound(plus_state(), maximally_mixed(2));
  const bool hand_ok = std::abs(hand - std::numbers::ln2) <= 1e-10;
  const bool both_sides = r.binette_tighter > 0 && r.ae_tighter > 0;
  return {below == 0 && hand_ok && both_sides && r.rows.size() == 10000u,
          fmt("ae_below_relent=%.0f hand=%.15g", static_cast<double>(below), hand) +
              " binette_tighter=" + std::to_string(r.binette_tighter) +
              " ae_tighter=" + std::to_string(r.ae_tighter) + " ties=" + std::to_string(r.ties)};
}

Outcome condition_rate_check() {
  const ConditionRate r = condition_rate(kConfig);
  const RateVerdict v = judge_condition_rate(r);
  const char* names[] = {"pass", "warn", "fail", "not asserted"};
  return {v == RateVerdict::Pass || v == RateVerdict::Warn,
          fmt("rate=%.4f (%.0f/%.0f)", r.rate(), static_cast<double>(r.satisfied), static_cast<double>(r.samples)) +
              " verdict=" + names[static_cast<int>(v)]};
}

Outcome identities() {
  return both(from_suite(suites::trace_swap(kConfig)),
              both(from_suite(suites::trace_inverse(kConfig)), from_suite(suites::operator_jensen(kConfig))));
}

Outcome determinism() {
  const std::string verify_a = run_verify(kConfig).csv();
  const std::string verify_b = run_verify(kConfig).csv();
  const std::string fig2_a = fig2_csv(fig2_once());
  const std::string fig2_b = fig2_csv(fig2_once());
  return {verify_a == verify_b && fig2_a == fig2_b,
          std::string("verify_csv ") + (verify_a == verify_b ? "identical" : "DIFFERS") + ", fig2_csv " +
              (fig2_a == fig2_b ? "identical" : "DIFFERS") + " (" + std::to_string(fig2_a.size()) + " bytes)"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria (1-12)")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"witness identity", witness_identity},
      {"chi2 coincidence", chi2_coincidence},
      {"data processing", dpi},
      {"maximality", maximality},
      {"improved Pinsker", improved_pinsker},
      {"decoherence bounds", decoherence},
      {"reverse Pinsker", reverse_pinsker},
      {"zeta1 equivalence", zeta1},
      {"Audenaert-Eisert", audenaert_eisert},
      {"condition rate", condition_rate_check},
      {"trace identities and operator Jensen", identities},
      {"determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
