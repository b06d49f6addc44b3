#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "permorb/catalog.hpp"

using namespace permorb;

namespace {

// 1, eps, sigma
FusionRing ising_ring() { return builtin("Ising").ring(); }

std::vector<Multiplicity> tensor_with(const FusionRing& ring, Label a, Label b, Label c, Multiplicity v) {
  auto t = ring.tensor();
  t[(a * ring.rank() + b) * ring.rank() + c] = v;
  return t;
}

}  // namespace

TEST(FusionRing, StructuralErrorsAreDistinct) {
  try {
    FusionRing({"1", "x"}, {1, 0, 0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::structure);
  }
  try {
    FusionRing({"1", "1"}, std::vector<Multiplicity>(8, 0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::structure);
  }
  try {
    FusionRing({"1"}, {1}, std::vector<Label>{3});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::structure);
  }
}

TEST(Validate, CatalogRingsAreValid) {
  for (const auto& name : list_builtin()) {
    auto report = validate(builtin(name).ring());
    EXPECT_TRUE(report.ok()) << name;
    EXPECT_EQ(report.checks.size(), 6u);
  }
}

TEST(Validate, IsingAssociativityMatchesHandCount) {
  // All 27 triple products of Ising agree with the vector oracle.
  EXPECT_TRUE(oracle::associativity_failures(ising_ring()).empty());
  EXPECT_TRUE(validate(ising_ring()).ok());
}

TEST(Validate, TrivialRing) { EXPECT_TRUE(validate(FusionRing({"1"}, {1})).ok()); }

TEST(Validate, CorruptedSigmaSigmaEpsReportsAssociativityFailures) {
  FusionRing good = ising_ring();
  FusionRing bad(good.labels(), tensor_with(good, 2, 2, 1, 2), good.conjugates());
  auto report = validate(bad);
  EXPECT_FALSE(report.ok());
  const auto* assoc = report.find("associativity");
  ASSERT_NE(assoc, nullptr);
  auto expected = oracle::associativity_failures(bad);
  ASSERT_FALSE(expected.empty());
  EXPECT_EQ(assoc->failures, expected);
  // (sigma,sigma,eps,1): ((sigma sigma) eps) has 2 units, (sigma (sigma eps)) has 1.
  std::vector<Label> witness{2, 2, 1, 0};
  EXPECT_NE(std::find(assoc->failures.begin(), assoc->failures.end(), witness), assoc->failures.end());
  EXPECT_FALSE(report.find("frobenius_symmetry")->passed());
  EXPECT_TRUE(report.find("unit_law")->passed());
  EXPECT_TRUE(report.find("commutativity")->passed());
}

TEST(Validate, ReportsUnitAndPairingViolations) {
  FusionRing good = ising_ring();
  FusionRing bad(good.labels(), tensor_with(good, 0, 1, 2, 1), good.conjugates());
  auto report = validate(bad);
  const auto* unit = report.find("unit_law");
  ASSERT_FALSE(unit->passed());
  EXPECT_EQ(unit->failures.front(), (std::vector<Label>{0, 1, 2}));

  FusionRing no_pair(good.labels(), tensor_with(good, 1, 1, 0, 0), good.conjugates());
  EXPECT_FALSE(validate(no_pair).find("conjugate_pairing")->passed());
}

TEST(Validate, NonCommutativeRingIsFlagged) {
  FusionRing good = ising_ring();
  FusionRing bad(good.labels(), tensor_with(good, 1, 2, 2, 3));
  EXPECT_FALSE(validate(bad).find("commutativity")->passed());
}

TEST(Fuse, Examples) {
  auto ring = ising_ring();
  SectorSum expected;
  expected.add(0);
  expected.add(1);
  EXPECT_EQ(fuse(ring, 2, 2), expected);
  EXPECT_EQ(format_sum(ring, fuse(ring, 2, 2)), "1+eps");
  auto fib = builtin("Fibonacci").ring();
  EXPECT_EQ(format_sum(fib, fuse(fib, 1, 1)), "1+tau");
  for (Label x = 0; x < ring.rank(); ++x) EXPECT_EQ(fuse(ring, 0, x), SectorSum::of(x));
}

TEST(Fuse, OutOfRangeLabel) {
  try {
    fuse(ising_ring(), 0, 7);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(Fuse, CommutativeAndBilinearOnRandomSums) {
  std::mt19937 rng(11);
  for (const auto& name : list_builtin()) {
    auto ring = builtin(name).ring();
    std::uniform_int_distribution<Label> pick(0, ring.rank() - 1);
    std::uniform_int_distribution<Multiplicity> mult(1, 3);
    for (int trial = 0; trial < 30; ++trial) {
      SectorSum x, y, z;
      for (int k = 0; k < 3; ++k) {
        x.add(pick(rng), mult(rng));
        y.add(pick(rng), mult(rng));
        z.add(pick(rng), mult(rng));
      }
      EXPECT_EQ(fuse(ring, x, y), fuse(ring, y, x));
      SectorSum yz = y;
      yz += z;
      SectorSum lhs = fuse(ring, x, yz);
      SectorSum rhs = fuse(ring, x, y);
      rhs += fuse(ring, x, z);
      EXPECT_EQ(lhs, rhs);
      EXPECT_EQ(fuse(ring, fuse(ring, x, y), z), fuse(ring, x, fuse(ring, y, z)));
    }
  }
}

TEST(Fuse, MultiplicityOverflowIsHard) {
  FusionRing ring({"1"}, {1});
  SectorSum huge = SectorSum::of(0, std::numeric_limits<Multiplicity>::max() / 2 + 1);
  try {
    fuse(ring, huge, SectorSum::of(0, 2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::overflow);
  }
}

TEST(QuantumDims, ClosedForms) {
  auto ising = quantum_dims(ising_ring());
  EXPECT_NEAR(ising[0], 1.0, 1e-12);
  EXPECT_NEAR(ising[1], 1.0, 1e-12);
  EXPECT_NEAR(ising[2], std::sqrt(2.0), 1e-9);
  auto fib = quantum_dims(builtin("Fibonacci").ring());
  EXPECT_NEAR(fib[1], oracle::kGolden, 1e-9);
  EXPECT_EQ(quantum_dims(FusionRing({"1"}, {1})), std::vector<double>{1.0});
  for (int k = 1; k <= 4; ++k) {
    auto dims = quantum_dims(builtin("SU2:" + std::to_string(k)).ring());
    for (int j = 0; j <= k; ++j) EXPECT_NEAR(dims[static_cast<Label>(j)], oracle::su2_dim(k, j), 1e-9) << k << " " << j;
  }
}

TEST(QuantumDims, CharacterIdentityAndConjugation) {
  for (const auto& name : list_builtin()) {
    auto ring = builtin(name).ring();
    auto d = quantum_dims(ring);
    for (Label a = 0; a < ring.rank(); ++a) {
      EXPECT_NEAR(d[a], d[ring.conj(a)], 1e-12);
      for (Label b = 0; b < ring.rank(); ++b) {
        double sum = 0.0;
        for (Label c = 0; c < ring.rank(); ++c) sum += static_cast<double>(ring.N(a, b, c)) * d[c];
        EXPECT_LT(std::abs(d[a] * d[b] - sum), 1e-9 * d[a] * d[b]) << name;
      }
    }
  }
}

TEST(GlobalIndex, Values) {
  EXPECT_NEAR(global_index(ising_ring()), 4.0, 1e-9);
  EXPECT_DOUBLE_EQ(global_index(FusionRing({"1"}, {1})), 1.0);
  EXPECT_NEAR(global_index(builtin("Fibonacci").ring()), (5.0 + std::sqrt(5.0)) / 2.0, 1e-9);
}

TEST(GlobalIndex, AtLeastRankWithEqualityIffPointed) {
  for (const auto& name : list_builtin()) {
    auto ring = builtin(name).ring();
    auto d = quantum_dims(ring);
    double mu = global_index(d);
    bool pointed = std::all_of(d.begin(), d.end(), [](double x) { return std::abs(x - 1.0) < 1e-12; });
    EXPECT_GE(mu + 1e-9, static_cast<double>(ring.rank()));
    EXPECT_EQ(std::abs(mu - static_cast<double>(ring.rank())) < 1e-9, pointed) << name;
  }
}

TEST(HomDim, Examples) {
  auto ring = ising_ring();
  std::vector<Label> sss{2, 2, 2};
  EXPECT_EQ(hom_dim(ring, sss, 2), 2u);
  for (Label a = 0; a < ring.rank(); ++a) {
    std::vector<Label> single{a};
    EXPECT_EQ(hom_dim(ring, single, a), 1u);
  }
  auto fib = builtin("Fibonacci").ring();
  std::vector<Label> ttt{1, 1, 1};
  EXPECT_EQ(hom_dim(fib, ttt, 0), 1u);
  EXPECT_EQ(hom_dim(fib, ttt, 1), 2u);
}

TEST(HomDim, EmptyProductIsAnError) {
  try {
    hom_dim(ising_ring(), std::span<const Label>{}, 0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
}

TEST(HomDim, FrobeniusDuality) {
  // <nu lambda, mu> = <lambda, conj(nu) mu> over all triples.
  for (const auto& name : list_builtin()) {
    auto ring = builtin(name).ring();
    for (Label nu = 0; nu < ring.rank(); ++nu)
      for (Label lambda = 0; lambda < ring.rank(); ++lambda)
        for (Label mu = 0; mu < ring.rank(); ++mu) {
          std::vector<Label> lhs{nu, lambda};
          EXPECT_EQ(hom_dim(ring, lhs, mu), pairing(SectorSum::of(lambda), fuse(ring, ring.conj(nu), mu)));
          EXPECT_EQ(ring.N(nu, lambda, mu), ring.N(ring.conj(nu), mu, lambda));
          EXPECT_EQ(ring.N(nu, lambda, mu), ring.N(mu, ring.conj(lambda), nu));
        }
  }
}

TEST(VacuumMultiplicity, Examples) {
  auto ring = ising_ring();
  EXPECT_EQ(vacuum_multiplicity(ring, std::vector<Label>{2, 2}), 1u);
  EXPECT_EQ(vacuum_multiplicity(ring, std::vector<Label>{2, 1}), 0u);
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(vacuum_multiplicity(ring, std::vector<Label>(n, 0)), 1u);
}

TEST(VacuumMultiplicity, MatchesMatrixProductOracle) {
  for (const auto& name : list_builtin()) {
    auto ring = builtin(name).ring();
    for (int n = 1; n <= 4; ++n)
      for (const auto& t : oracle::all_tuples(ring.rank(), n))
        EXPECT_EQ(vacuum_multiplicity(ring, t), oracle::unit_multiplicity(ring, t));
  }
}
