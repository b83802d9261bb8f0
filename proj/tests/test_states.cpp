#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfdiv/divergence.hpp"
#include "qfdiv/experiments.hpp"
#include "qfdiv/state_io.hpp"
#include "qfdiv/states.hpp"

using namespace qfdiv;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no qfdiv::Error thrown";
  return ErrorKind::InvariantViolation;
}

std::string message_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_state(in);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(DensityMatrix, RejectsEachInvariant) {
  auto message = [](const ComplexMatrix& m) {
    try {
      DensityMatrix d(m);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvariantViolation);
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message(ComplexMatrix{{0.6, 0.1}, {0.3, 0.4}}).find("hermiticity"), std::string::npos);
  EXPECT_NE(message(ComplexMatrix{{0.5, 0.0}, {0.0, 0.4}}).find("trace"), std::string::npos);
  EXPECT_NE(message(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}).find("positivity"), std::string::npos);
  EXPECT_NE(message(ComplexMatrix(2, 3)).find("shape"), std::string::npos);
}

TEST(RandomDensity, ValidAndDeterministic) {
  const DensityMatrix a = random_density(2, 2, 17);
  const DensityMatrix b = random_density(2, 2, 17);
  EXPECT_TRUE(a.mat() == b.mat());
  EXPECT_GT(a.min_eigenvalue(), 0.0);
  EXPECT_FALSE(random_density(2, 2, 18).mat() == a.mat());
}

TEST(RandomDensity, RankOneIsPure) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = random_density(4, 1, seed);
    EXPECT_LE(max_abs_diff(rho.mat() * rho.mat(), rho.mat()), 1e-8);
  }
}

TEST(RandomDensity, BadRank) {
  EXPECT_EQ(kind_of([] { random_density(3, 0, 1); }), ErrorKind::BadRank);
  EXPECT_EQ(kind_of([] { random_density(3, 4, 1); }), ErrorKind::BadRank);
}

TEST(RandomDensity, InvariantsOverManySamples) {
  // Construction itself validates; this sweeps the sampler over its range.
  for (std::size_t n : {2u, 3u, 4u, 8u})
    for (std::uint64_t k = 0; k < 2500; ++k) {
      Rng rng(99, k);
      const DensityMatrix rho = random_density(n, 1 + k % n, rng);
      EXPECT_NEAR(rho.mat().trace().real(), 1.0, 1e-10);
    }
}

TEST(DiagonalState, Examples) {
  EXPECT_TRUE(diagonal_state(ClassicalDistribution({0.5, 0.5})).mat() == ComplexMatrix::identity(2) * Complex(0.5));
  const std::vector<double> d{0.75, 0.25};
  EXPECT_TRUE(diagonal_state(ClassicalDistribution(d)).mat() == ComplexMatrix::diagonal(d));
}

TEST(ClassicalDistribution, Invariants) {
  EXPECT_EQ(kind_of([] { ClassicalDistribution({0.5, 0.6}); }), ErrorKind::InvalidDistribution);
  EXPECT_EQ(kind_of([] { ClassicalDistribution({1.5, -0.5}); }), ErrorKind::InvalidDistribution);
  EXPECT_EQ(kind_of([] { ClassicalDistribution(std::vector<double>{}); }), ErrorKind::InvalidDistribution);
}

TEST(RandomChannel, UnitaryWhenSingleKraus) {
  const QuantumChannel w = random_channel(4, 1, 5);
  ASSERT_EQ(w.kraus().size(), 1u);
  const ComplexMatrix& u = w.kraus()[0];
  EXPECT_LE(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(4)), 1e-12);

  const DensityMatrix rho = random_density(4, 4, 6);
  const HermitianEigen before = rho.eig();
  const HermitianEigen after = apply_channel(w, rho).eig();
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(before.values[i], after.values[i], 1e-12);
}

TEST(RandomChannel, CompletenessAndTracePreservation) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const QuantumChannel w = random_channel(n, 1 + seed % 5, seed);
    ComplexMatrix total(n);
    for (const auto& a : w.kraus()) total += a.adjoint() * a;
    EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(n)), 1e-9);

    const DensityMatrix out = apply_channel(w, random_density(n, n, seed + 1000));
    EXPECT_NEAR(out.mat().trace().real(), 1.0, 1e-9);
    EXPECT_GE(out.min_eigenvalue(), -1e-9);
  }
}

TEST(ApplyChannel, IdentityLeavesStateUnchanged) {
  const DensityMatrix rho = random_density(3, 3, 8);
  EXPECT_LE(max_abs_diff(apply_channel(QuantumChannel::identity(3), rho).mat(), rho.mat()), 0.0);
}

TEST(ApplyChannel, DimensionMismatch) {
  const DensityMatrix rho = random_density(3, 3, 8);
  EXPECT_EQ(kind_of([&] { apply_channel(QuantumChannel::identity(2), rho); }), ErrorKind::DimensionMismatch);
}

TEST(QuantumChannel, RejectsIncompleteKraus) {
  EXPECT_EQ(kind_of([] { QuantumChannel({ComplexMatrix::identity(2) * Complex(0.9)}); }),
            ErrorKind::InvariantViolation);
}

TEST(AbsCondition, Examples) {
  EXPECT_TRUE(satisfies_abs_condition(plus_state(), maximally_mixed(2)));
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(3, k);
    EXPECT_TRUE(satisfies_abs_condition(diagonal_state(random_distribution(4, rng)),
                                        diagonal_state(random_distribution(4, rng))));
  }
}

TEST(AbsCondition, SomeRandomPairFails) {
  bool found = false;
  for (std::uint64_t k = 0; k < 100 && !found; ++k) {
    Rng rng(42, k);
    const auto [rho, sigma] = random_pair(4, rng);
    found = !satisfies_abs_condition(rho, sigma);
  }
  EXPECT_TRUE(found);
}

TEST(AbsCondition, SymmetricUnderSwap) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    Rng rng(12, k);
    const auto [rho, sigma] = random_pair(2 + k % 3, rng);
    EXPECT_EQ(satisfies_abs_condition(rho, sigma), satisfies_abs_condition(sigma, rho));
  }
}

TEST(AbsCondition, DimensionMismatch) {
  EXPECT_EQ(kind_of([] { satisfies_abs_condition(maximally_mixed(2), maximally_mixed(3)); }),
            ErrorKind::DimensionMismatch);
}

TEST(Regularize, MixesTowardIdentity) {
  const DensityMatrix pure = random_density(3, 1, 4);
  const DensityMatrix reg = regularize(pure, 0.3);
  EXPECT_GT(reg.min_eigenvalue(), 0.09);
  EXPECT_EQ(kind_of([&] { regularize(pure, 1.5); }), ErrorKind::OutOfRange);
}

TEST(StateFile, ParsesHalfIdentity) {
  std::istringstream in("2\n0.5,0 0,0\n0,0 0.5,0\n");
  EXPECT_TRUE(read_state(in).mat() == maximally_mixed(2).mat());
}

TEST(StateFile, TraceViolationNamesInvariant) {
  std::istringstream in("2\n0.45,0 0,0\n0,0 0.45,0\n");
  try {
    read_state(in);
    FAIL() << "expected InvariantViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvariantViolation);
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(StateFile, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix rho = random_density(2 + seed % 6, 1 + seed % 2, seed);
    std::stringstream buf;
    write_state(buf, rho);
    EXPECT_TRUE(read_state(buf).mat() == rho.mat());
  }
}

TEST(StateFile, ParseErrorsCarryLineNumbers) {
  EXPECT_NE(message_of("2\n0.5,0 0.5,0\n0.5,x 0.5,0\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("two\n").find("line 1"), std::string::npos);
  EXPECT_NE(message_of("2\n0.5,0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("2\n0.5,0 0,0\n").find("line 3"), std::string::npos);
  EXPECT_NE(message_of("2\n0.5 0,0\n0,0 0.5,0\n").find("line 2"), std::string::npos);
  EXPECT_NE(message_of("").find("ParseError"), std::string::npos);
}

TEST(StateFile, MissingFile) {
  EXPECT_EQ(kind_of([] { parse_state_file("/nonexistent/state.txt"); }), ErrorKind::ParseError);
}
