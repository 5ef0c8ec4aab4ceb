#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace negdep;
using oracle::q;

TEST(Chain, EndpointsAndOrdering) {
  const MarginalMeans<Rational> p(std::vector<Rational>(4, q(3, 10)));
  const std::vector<Rational> alphas{0, q(1, 4), q(1, 2), q(3, 4), 1};
  const auto c = alpha_chain(p, alphas);
  ASSERT_EQ(c.pmfs.size(), 5u);
  EXPECT_EQ(c.pmfs.front(), exchangeable_max_entropy(4, q(3, 10)));
  EXPECT_EQ(c.pmfs.back(), Pmf<Rational>::product(p));
  ASSERT_EQ(c.links.size(), 4u);
  for (const auto& l : c.links) EXPECT_EQ(l.relation, Relation::Less);
  for (std::size_t k = 0; k < c.pmfs.size(); ++k) {
    EXPECT_EQ(marginal_means(c.pmfs[k]), p);
    EXPECT_TRUE(is_nsd(c.pmfs[k]).verdict);
    EXPECT_EQ(is_sigma_ctm(c.pmfs[k]).verdict, k == 0);
  }
}

TEST(Chain, Validation) {
  const MarginalMeans<Rational> p(std::vector<Rational>(3, q(1, 3)));
  EXPECT_THROW(alpha_chain(p, std::vector<Rational>{}), invalid_input);
  EXPECT_THROW(alpha_chain(p, std::vector<Rational>{q(1, 2), q(1, 4)}), invalid_input);
  EXPECT_THROW(alpha_chain(p, std::vector<Rational>{q(3, 2)}), invalid_input);
  // No closed form for unequal interior means in exact mode.
  const MarginalMeans<Rational> u({q(7, 20), q(9, 20), q(1, 2), q(7, 10)});
  EXPECT_THROW(alpha_chain(u, std::vector<Rational>{0}), invalid_input);
  EXPECT_NO_THROW(alpha_chain(to_float(u), std::vector<double>{0.0, 0.5}));
}

TEST(Polarization, SingletonBlocksAreTheIdentity) {
  PolarizationSpec<Rational> s{3, {{0}, {1}, {2}}, {q(2, 5), q(2, 5), q(2, 5)}};
  const auto pol = polarize(s);
  EXPECT_EQ(pol.pmf, pol.block_pmf);
  EXPECT_EQ(pol.pmf, exchangeable_max_entropy(3, q(2, 5)));
  EXPECT_TRUE(pgf_compose_check(pol.pmf, s, pol.block_pmf));
}

TEST(Polarization, TwoBlocksOfTwo) {
  PolarizationSpec<Rational> s{4, {{0, 1}, {2, 3}}, {q(1, 4), q(1, 4)}};
  const auto pol = polarize(s);
  EXPECT_EQ(pol.p_prime, MarginalMeans<Rational>({q(1, 2), q(1, 2)}));
  EXPECT_EQ(marginal_means(pol.pmf), MarginalMeans<Rational>(std::vector<Rational>(4, q(1, 4))));
  EXPECT_EQ(sum_pmf(pol.pmf)[1], 1);
  // Each of the four unit vectors gets 1/4.
  for (std::uint32_t i : {1u, 2u, 4u, 8u}) EXPECT_EQ(pol.pmf[i], q(1, 4));
  EXPECT_TRUE(pgf_compose_check(pol.pmf, s, pol.block_pmf));
  EXPECT_TRUE(is_sigma_ctm(pol.pmf).verdict);
  EXPECT_NE(is_strongly_rayleigh(pol.pmf).status, SRStatus::NotStable);
}

TEST(Polarization, RandomSpecsCompose) {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 25; ++rep) {
    const int d = 3 + static_cast<int>(rng() % 4);
    std::vector<int> perm(static_cast<std::size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int nb = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
    PolarizationSpec<Rational> s{d, std::vector<std::vector<int>>(static_cast<std::size_t>(nb)), {}};
    for (int k = 0; k < d; ++k) s.blocks[static_cast<std::size_t>(k < nb ? k : rng() % nb)].push_back(perm[static_cast<std::size_t>(k)]);
    std::vector<Rational> bp;
    for (const auto& blk : s.blocks) {
      const long lam = static_cast<long>(blk.size());
      s.block_p.push_back(q(1 + static_cast<long>(rng() % 4), 5 * lam));
      bp.push_back(s.block_p.back() * lam);
    }
    // Any pmf on the block level works; use a product law.
    const auto block = Pmf<Rational>::product(MarginalMeans<Rational>(bp));
    const auto j = polarize_with(s, block);
    EXPECT_TRUE(pgf_compose_check(j, s, block));
    for (std::size_t h = 0; h < s.blocks.size(); ++h)
      for (int l : s.blocks[h]) EXPECT_EQ(marginal_means(j)[l], s.block_p[h]);
  }
}

TEST(Polarization, Validation) {
  EXPECT_THROW(polarize(PolarizationSpec<Rational>{3, {{0, 1}, {1, 2}}, {q(1, 4), q(1, 4)}}), invalid_input);
  EXPECT_THROW(polarize(PolarizationSpec<Rational>{3, {{0, 1}}, {q(1, 4)}}), invalid_input);
  EXPECT_THROW(polarize(PolarizationSpec<Rational>{2, {{0, 1}}, {q(1, 2)}}), invalid_input);
  EXPECT_THROW(polarize(PolarizationSpec<Rational>{2, {{0}, {1}}, {q(1, 2)}}), invalid_input);
}

TEST(Polarization, EspComposition) {
  // E_{2,1}(z1 + z2, z3 + z4)/4 via a block pmf uniform on level 1.
  PolarizationSpec<Rational> s{4, {{0, 1}, {2, 3}}, {q(1, 4), q(1, 4)}};
  const Pmf<Rational> block(2, {0, q(1, 2), q(1, 2), 0});
  const auto j = polarize_with(s, block);
  const auto e = elementary_symmetric<Rational>(4, 1);
  for (std::uint32_t i = 0; i < 16; ++i) EXPECT_EQ(j[i], e[i] / 4);
}
