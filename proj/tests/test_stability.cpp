#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace negdep;
using oracle::q;

namespace {

Pmf<Rational> random_full(int d, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(1, 9);
  std::vector<Rational> v(std::size_t{1} << d);
  Rational t = 0;
  for (auto& x : v) t += (x = w(rng));
  for (auto& x : v) x /= t;
  return Pmf<Rational>(d, v);
}

}  // namespace

TEST(Pgf, EvaluateAndDerivative) {
  // P = 1/4 + 1/4 z1 + 1/2 z1 z2.
  const MultiAffinePgf<Rational> p(2, {q(1, 4), q(1, 4), 0, q(1, 2)});
  const std::vector<Rational> one{1, 1}, x{2, 3};
  EXPECT_EQ(p.evaluate(std::span<const Rational>(one)), 1);
  EXPECT_EQ(p.evaluate(std::span<const Rational>(x)), q(1, 4) + q(1, 2) + 3);
  const auto d1 = partial_derivative(p, 0);
  EXPECT_EQ(d1[0u], q(1, 4));
  EXPECT_EQ(d1[2u], q(1, 2));
  EXPECT_EQ(d1[1u], 0);
  EXPECT_THROW(p.evaluate(std::span<const Rational>(std::vector<Rational>{1})), invalid_input);
}

TEST(Pgf, DisjointProductRejectsSharedVariables) {
  const MultiAffinePgf<Rational> a(2, {q(1, 2), q(1, 2), 0, 0});
  const MultiAffinePgf<Rational> b(2, {q(1, 3), 0, q(2, 3), 0});
  const auto ab = disjoint_product(a, b);
  EXPECT_EQ(ab[3u], q(1, 3));
  EXPECT_THROW(disjoint_product(a, a), invalid_input);
}

TEST(Pgf, EspIdentity) {
  for (int d = 0; d <= 8; ++d)
    for (int m = 0; m <= d; ++m) EXPECT_TRUE(esp_identity_check(d, m)) << d << "," << m;
  EXPECT_THROW(esp_identity_check(3, 4), invalid_input);
}

TEST(Poly, SturmCounts) {
  // (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6.
  const RationalPoly p{6, -7, 0, 1};
  EXPECT_EQ(distinct_real_roots(p), 3);
  EXPECT_TRUE(all_roots_real(p));
  // x^2 + 1 has none; (x - 1)^2 (x^2 + 1) has one distinct.
  EXPECT_FALSE(all_roots_real(RationalPoly{1, 0, 1}));
  EXPECT_EQ(distinct_real_roots(RationalPoly{1, -2, 2, -2, 1}), 1);
  EXPECT_TRUE(all_roots_real(RationalPoly{1, -2, 1}));
  EXPECT_TRUE(all_roots_real(RationalPoly{0, 0, 5}));
  EXPECT_NEAR(max_imag_part(companion_roots({1.0, 0.0, 1.0})), 1.0, 1e-12);
}

TEST(Rayleigh, GapAtOnesIsMinusCovariance) {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const auto f = random_full(3 + rep % 3, rng);
    const MultiAffinePgf<Rational> p(f);
    const std::vector<Rational> ones(static_cast<std::size_t>(f.dim()), Rational(1));
    for (int a = 0; a < f.dim(); ++a)
      for (int b = a + 1; b < f.dim(); ++b)
        EXPECT_EQ(rayleigh_gap(p, a, b, std::span<const Rational>(ones)), -oracle::cov(oracle::probs(f), a, b));
  }
  const MultiAffinePgf<Rational> p(2, {q(1, 2), 0, 0, q(1, 2)});
  EXPECT_THROW(rayleigh_gap(p, 0, 0, std::span<const Rational>(std::vector<Rational>{1, 1})), invalid_input);
}

TEST(StronglyRayleigh, LinearProductAndComonotone) {
  const MarginalMeans<Rational> p({q(3, 20), q(1, 20), q(1, 4), q(3, 10), q(1, 10)});
  const auto lin = is_strongly_rayleigh(lower_frechet_pmf(p));
  EXPECT_EQ(lin.status, SRStatus::StableCertified);
  EXPECT_EQ(lin.method, SRMethod::Linear);

  const auto prod = is_strongly_rayleigh(Pmf<Rational>::product(MarginalMeans<Rational>({q(1, 3), q(1, 2), q(1, 5)})));
  EXPECT_EQ(prod.status, SRStatus::StableCertified);
  EXPECT_EQ(prod.method, SRMethod::Product);

  // (1 + z1 z2) / 2.
  const auto co = is_strongly_rayleigh(Pmf<Rational>(2, {q(1, 2), 0, 0, q(1, 2)}));
  EXPECT_EQ(co.status, SRStatus::NotStable);
  ASSERT_TRUE(co.witness);
  EXPECT_EQ(co.witness->exact_gap, q(-1, 4));
}

TEST(StronglyRayleigh, ExchangeableRoute) {
  // Levels 1 and 2 for d = 4: not linear, symmetric and real rooted.
  const auto f = exchangeable_max_entropy(4, q(3, 8));
  const auto v = is_strongly_rayleigh(f);
  EXPECT_EQ(v.status, SRStatus::StableCertified);
  EXPECT_EQ(v.method, SRMethod::SymmetricRealRooted);

  // Exchangeable on levels 0 and 2 for d = 3: s(z) = (1 + z^2)/2 is not real rooted.
  std::vector<Rational> w(8, Rational(0));
  w[0] = q(1, 2);
  for (std::uint32_t i : {3u, 5u, 6u}) w[i] = q(1, 6);
  const auto g = is_strongly_rayleigh(Pmf<Rational>(3, w));
  EXPECT_EQ(g.status, SRStatus::NotStable);
  ASSERT_TRUE(g.witness);
  EXPECT_LT(g.witness->exact_gap, 0);
}

TEST(StronglyRayleigh, PaddedExchangeableIsNotRefuted) {
  // s2/3 on the three pairs of {1,2,3} and s3 on (1,1,1,0).
  const Rational s2 = q(3, 5), s3 = q(2, 5);
  std::vector<Rational> w(16, Rational(0));
  for (std::uint32_t i : {3u, 5u, 6u}) w[i] = s2 / 3;
  w[7] = s3;
  const auto v = is_strongly_rayleigh(Pmf<Rational>(4, w));
  EXPECT_NE(v.status, SRStatus::NotStable);
}

TEST(StronglyRayleigh, ConditionalBernoulliIsCertified) {
  const auto res = solve_max_entropy(MarginalMeans<double>({0.35, 0.45, 0.5, 0.7}));
  const auto v = is_strongly_rayleigh(res.pmf);
  EXPECT_EQ(v.status, SRStatus::StableCertified);
  EXPECT_EQ(v.method, SRMethod::ConditionalBernoulli);
}

TEST(StronglyRayleigh, FalsificationIsDeterministic) {
  std::mt19937_64 rng(42);
  const auto f = to_float(random_full(4, rng));
  SearchBudget b;
  b.seed = 7;
  b.lattice_points = 2000;
  const auto v1 = falsify_stability(MultiAffinePgf<double>(f), b);
  const auto v2 = falsify_stability(MultiAffinePgf<double>(f), b);
  EXPECT_EQ(v1.status, v2.status);
  EXPECT_EQ(v1.stats.samples, v2.stats.samples);
  if (v1.status == SRStatus::NotStable) {
    ASSERT_TRUE(v1.witness);
    EXPECT_LT(v1.witness->exact_gap, 0);
  }
}
