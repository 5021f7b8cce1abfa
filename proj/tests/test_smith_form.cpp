#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "torsion_tower/residue_arith.hpp"
#include "torsion_tower/smith_form.hpp"

using namespace torsion_tower;

namespace {

std::vector<mpz_class> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

std::vector<mpz_class> snf(const std::vector<std::vector<long>>& m) { return smith_normal_form(RelationMatrix::from_dense(m)).divisors; }

std::vector<std::vector<long>> random_dense(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<long> entry(-10, 10);
  std::vector<std::vector<long>> m(r, std::vector<long>(c));
  for (auto& row : m)
    for (auto& v : row) v = entry(rng);
  return m;
}

}  // namespace

TEST(Smith, Examples) {
  EXPECT_EQ(snf({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), ints({1, 1, 1}));
  EXPECT_EQ(snf({{2, 4}, {6, 8}}), ints({2, 4}));
  EXPECT_EQ(snf({{6, 0}, {0, 4}}), ints({2, 12}));
  EXPECT_EQ(smith_normal_form(RelationMatrix(3, 4)).divisors, ints({}));
  EXPECT_EQ(smith_normal_form(RelationMatrix(0, 0)).divisors, ints({}));
}

TEST(Smith, ExamplesAgreeWithMinorsOracle) {
  for (const auto& m : std::vector<std::vector<std::vector<long>>>{{{2, 4}, {6, 8}}, {{6, 0}, {0, 4}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}})
    EXPECT_EQ(snf(m), oracle::gcd_of_minors_divisors(oracle::to_dense(m)));
}

TEST(Smith, RandomMatricesMatchMinorsOracle) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_dense(rng, dim(rng), dim(rng));
    const auto got = snf(m);
    EXPECT_EQ(got, oracle::gcd_of_minors_divisors(oracle::to_dense(m))) << "trial " << trial;
    for (std::size_t i = 1; i < got.size(); ++i) EXPECT_EQ(got[i] % got[i - 1], 0);
    for (const auto& d : got) EXPECT_GT(d, 0);
  }
}

TEST(Smith, SparseRandomMatricesMatchNaiveSnf) {
  // mostly +-1 and zero entries, like relation matrices, large enough to exercise both phases
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> coin(0, 99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 20 + trial, c = 15 + trial / 2;
    std::vector<std::vector<long>> m(r, std::vector<long>(c, 0));
    for (auto& row : m)
      for (auto& v : row) {
        const int x = coin(rng);
        v = x < 8 ? 1 : x < 14 ? -1 : x < 16 ? 2 + x % 3 : 0;
      }
    EXPECT_EQ(snf(m), oracle::naive_snf(oracle::to_dense(m))) << "trial " << trial;
  }
}

TEST(Smith, DensityThresholdDoesNotChangeTheAnswer) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RelationMatrix m = RelationMatrix::from_dense(random_dense(rng, 7, 6));
    const auto base = smith_normal_form(m).divisors;
    for (double threshold : {0.0, 0.05, 1.0}) {
      SnfOptions o;
      o.density_threshold = threshold;
      EXPECT_EQ(smith_normal_form(m, o).divisors, base);
    }
  }
}

TEST(Smith, UnimodularInvariance) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> mult(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_dense(rng, 5, 6);
    const auto before = snf(m);
    std::uniform_int_distribution<std::size_t> ri(0, 4), ci(0, 5);
    for (int op = 0; op < 25; ++op) {
      const long k = mult(rng);
      if (op % 2 == 0) {
        const std::size_t a = ri(rng), b = ri(rng);
        if (a == b) continue;
        for (std::size_t j = 0; j < 6; ++j) m[a][j] += k * m[b][j];
      } else {
        const std::size_t a = ci(rng), b = ci(rng);
        if (a == b) continue;
        for (std::size_t i = 0; i < 5; ++i) m[i][a] += k * m[i][b];
      }
    }
    EXPECT_EQ(snf(m), before) << "trial " << trial;
  }
}

TEST(Smith, ResourceLimitAbortsCleanly) {
  std::mt19937_64 rng(4);
  const RelationMatrix m = RelationMatrix::from_dense(random_dense(rng, 12, 12));
  SnfOptions o;
  o.nonzero_limit = 10;
  try {
    smith_normal_form(m, o);
    FAIL() << "expected an abort";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimitExceeded);
  }
}

TEST(RankModPrime, Examples) {
  EXPECT_EQ(rank_mod_prime(RelationMatrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 7), 3u);
  EXPECT_EQ(rank_mod_prime(RelationMatrix::from_dense({{2, 4}, {6, 8}}), 5), 2u);
  EXPECT_EQ(rank_mod_prime(RelationMatrix::from_dense({{2, 4}, {6, 8}}), 2), 0u);
}

TEST(RankModPrime, EqualsDivisorCountAtLargePrimes) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    auto m = random_dense(rng, 6, 5);
    if (trial % 3 == 0) m[5] = m[0];  // force rank deficiency sometimes
    const RelationMatrix rm = RelationMatrix::from_dense(m);
    const std::uint64_t q = random_prime_62(rng);
    EXPECT_GE(q, 1ULL << 61);
    EXPECT_TRUE(is_prime(q));
    EXPECT_EQ(rank_mod_prime(rm, q), smith_normal_form(rm).rank());
  }
}

TEST(Homology, Examples) {
  auto s = homology_summary({ints({1, 1})}, 2);
  EXPECT_EQ(s.b1, 0u);
  EXPECT_EQ(s.log_torsion, 0);
  s = homology_summary({ints({1, 2})}, 3);
  EXPECT_EQ(s.b1, 1u);
  EXPECT_EQ(s.torsion_divisors, ints({2}));
  EXPECT_NEAR(static_cast<double>(s.log_torsion), std::log(2.0), 1e-15);
  s = homology_summary({ints({})}, 2);
  EXPECT_EQ(s.b1, 2u);
  EXPECT_EQ(s.log_torsion, 0);
  EXPECT_THROW(homology_summary({ints({1, 1, 1})}, 2), Error);
}

TEST(Homology, LogTorsionPrecisionOnHugeDivisors) {
  // products of the first k primes, thousands of bits; exact log via a sum of small logs
  std::vector<unsigned long> primes;
  for (unsigned long n = 2; primes.size() < 600; ++n) {
    bool p = true;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) p = false;
    if (p) primes.push_back(n);
  }
  for (std::size_t k : {10u, 100u, 300u, 600u}) {
    mpz_class product = 1;
    long double exact = 0;
    for (std::size_t i = 0; i < k; ++i) {
      product *= primes[i];
      exact += std::log(static_cast<long double>(primes[i]));
    }
    const auto s = homology_summary({{mpz_class(1), product, product * product}}, 3);
    const long double want = 3 * exact;
    EXPECT_LE(std::fabs(s.log_torsion - want) / want, std::ldexp(1.0L, -40)) << k;
    EXPECT_GT(mpz_sizeinbase(product.get_mpz_t(), 2), k > 100 ? 1000u : 0u);
  }
}
