#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "qfdiv/experiments.hpp"
#include "qfdiv/identities.hpp"

using namespace qfdiv;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.samples = 50;
  return c;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Identities, TraceSwap) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(40, k);
    const std::size_t n = 2 + k % 5;
    const ComplexMatrix a = suites::scaled_random_psd(n, rng);
    const ComplexMatrix b = suites::scaled_random_psd(n, rng);
    const auto coeffs = suites::random_coefficients(rng, 5);
    EXPECT_LE(trace_swap_residual(a, b, coeffs), 1e-8);
  }
}

TEST(Identities, TraceInverse) {
  for (std::uint64_t k = 0; k < 200; ++k) {
    Rng rng(41, k);
    const std::size_t n = 2 + k % 5;
    const ComplexMatrix a = suites::scaled_random_psd(n, rng);
    const ComplexMatrix b = suites::scaled_random_psd(n, rng);
    const auto g = suites::random_coefficients(rng, 4);
    EXPECT_LE(trace_inverse_residual(a, b, g), 1e-8);
  }
}

TEST(Identities, ResolutionOfIdentitySums) {
  Rng rng(42);
  const auto parts = random_resolution_of_identity(3, 4, rng);
  ComplexMatrix total(3);
  for (const auto& p : parts) {
    EXPECT_GE(hermitian_eig(p).min(), -1e-12);
    total += p;
  }
  EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(3)), 1e-12);
}

TEST(Identities, OperatorJensenForFlaggedGenerators) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    Rng rng(43, k);
    const auto parts = random_resolution_of_identity(1 + k % 4, 1 + (k / 4) % 4, rng);
    std::vector<double> xs(parts.size());
    for (auto& x : xs) x = 5.0 * rng.uniform();
    for (const char* name : {"kl", "chi2"}) EXPECT_GE(operator_jensen_gap(builtin_generator(name), xs, parts), -1e-8);
  }
}

TEST(Identities, JensenGapNegativeForNonOperatorConvex) {
  // |x − 1| is convex but not operator convex; a seeded search must find a
  // violation, which shows the check can fail.
  const FGenerator tv = builtin_generator("tv");
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 2000; ++k) {
    Rng rng(44, k);
    const std::size_t terms = 2 + k % 3;
    const auto parts = random_resolution_of_identity(2, terms, rng);
    std::vector<double> xs(terms);
    for (auto& x : xs) x = 5.0 * rng.uniform();
    worst = std::min(worst, operator_jensen_gap(tv, xs, parts));
  }
  EXPECT_LT(worst, -1e-3);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.samples = 0;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.dim = 1;
  EXPECT_THROW(c.validate(), Error);
  c = ExperimentConfig{};
  c.quad_tol = 0.0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, Defaults) {
  const ExperimentConfig c;
  EXPECT_EQ(c.dim, 4);
  EXPECT_EQ(c.samples, 10000);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.lambda, 0.1);
  EXPECT_EQ(c.chi2_0_list, (std::vector<double>{1.0, 4.0, 16.0}));
}

TEST(Verify, SmallRunIsDeterministic) {
  const ExperimentConfig c = small_config();
  const VerifyResult a = run_verify(c);
  const VerifyResult b = run_verify(c);
  EXPECT_EQ(a.csv(), b.csv());
  EXPECT_EQ(first_line(a.csv()), "suite,trials,max_residual,tolerance,passed");
}

TEST(Fig1, RowsAndHeader) {
  const ExperimentConfig c;
  const auto rows = fig1_rows(c);
  ASSERT_EQ(rows.size(), 1500u);
  EXPECT_EQ(first_line(fig1_csv(rows)), "t,chi2_0,temme_bound,improved_bound");
  bool found = false;
  for (const auto& r : rows) {
    EXPECT_LE(r.improved, std::min(r.temme, 2.0));
    if (r.chi2_0 == 4.0 && r.t == 0.0) {
      found = true;
      EXPECT_NEAR(r.temme, 2.0, 1e-12);
      EXPECT_NEAR(r.improved, 1.6, 1e-12);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(rows.back().t, 100.0);
  EXPECT_NE(fig1_svg(rows, c).find("<svg"), std::string::npos);
}

TEST(Fig2, SmallRun) {
  const ExperimentConfig c = small_config();
  const Fig2Result a = fig2_run(c);
  ASSERT_EQ(a.rows.size(), 50u);
  EXPECT_EQ(a.violations, 0);
  EXPECT_EQ(a.attempts, a.rejections + 50);
  EXPECT_EQ(first_line(fig2_csv(a)), "trace_distance,m,M,binette_bound_kl,ae_bound,relent,max_relent_div");
  for (const auto& r : a.rows) {
    EXPECT_LE(r.relent, r.binette_kl + 1e-8);
    EXPECT_LE(r.relent, r.ae + 1e-8);
    EXPECT_LE(r.relent, r.max_relent_div + 1e-8);
  }
  EXPECT_EQ(fig2_csv(a), fig2_csv(fig2_run(c)));
  EXPECT_NE(fig2_svg(a).find("<svg"), std::string::npos);
}

TEST(ConditionRate, CommutingModeIsAlwaysSatisfied) {
  ExperimentConfig c;
  c.samples = 500;
  const ConditionRate r = condition_rate(c, true);
  EXPECT_EQ(r.satisfied, r.samples);
  EXPECT_EQ(judge_condition_rate(r), RateVerdict::Pass);
  EXPECT_EQ(first_line(r.csv()), "dim,samples,satisfied,rate,mode");
}

TEST(ConditionRate, Verdicts) {
  EXPECT_EQ(judge_condition_rate({4, 10000, 8100, false}), RateVerdict::Pass);
  EXPECT_EQ(judge_condition_rate({4, 10000, 7800, false}), RateVerdict::Warn);
  EXPECT_EQ(judge_condition_rate({4, 10000, 7500, false}), RateVerdict::Fail);
  EXPECT_EQ(judge_condition_rate({2, 10000, 100, false}), RateVerdict::NotAsserted);
  EXPECT_EQ(judge_condition_rate({4, 100, 1, false}), RateVerdict::NotAsserted);
}

TEST(Reports, WitnessAndCompareText) {
  const FGenerator kl = builtin_generator("kl");
  const WitnessReport rep = verify_witness(plus_state(), maximally_mixed(2), kl);
  const std::string nats = witness_text(plus_state(), maximally_mixed(2), kl, rep);
  EXPECT_NE(nats.find("lambda = "), std::string::npos);
  EXPECT_NE(nats.find("residual completeness"), std::string::npos);

  const std::string bits = compare_bounds_text(plus_state(), maximally_mixed(2), true);
  EXPECT_NE(bits.find("units = bits"), std::string::npos);
  EXPECT_NE(bits.find("relative_entropy = 1"), std::string::npos);
  EXPECT_NE(bits.find("abs_condition = true"), std::string::npos);
}
