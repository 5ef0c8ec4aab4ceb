#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"

using namespace negdep;
using oracle::q;

namespace {

std::string fixture(const std::string& name) { return std::string(NEGDEP_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Json, PmfRoundTrip) {
  const Pmf<Rational> f(3, {0, q(1, 5), q(1, 5), q(1, 5), q(2, 5), 0, 0, 0});
  const auto j = pmf_to_json(f);
  EXPECT_EQ(j["probs"]["001"], "2/5");
  EXPECT_FALSE(j["probs"].contains("000"));
  EXPECT_EQ(pmf_from_json<Rational>(j), f);
  const auto path = (std::filesystem::temp_directory_path() / "negdep_roundtrip.json").string();
  emit_pmf(f, path);
  EXPECT_EQ(parse_pmf<Rational>(path), f);
  std::remove(path.c_str());
}

TEST(Json, FloatsAreReadExactlyInRationalMode) {
  const auto j = json::parse(R"({"d": 2, "probs": {"00": 0.35, "11": 0.65}})");
  const auto f = pmf_from_json<Rational>(j);
  EXPECT_EQ(f[0u], q(7, 20));
  EXPECT_EQ(f[3u], q(13, 20));
  EXPECT_DOUBLE_EQ(pmf_from_json<double>(j)[3u], 0.65);
}

TEST(Json, PointMassInDimensionOne) {
  const auto f = pmf_from_json<Rational>(json::parse(R"({"d": 1, "probs": {"1": 1}})"));
  EXPECT_EQ(f[1u], 1);
  EXPECT_EQ(f[0u], 0);
}

TEST(Json, Errors) {
  EXPECT_THROW(parse_pmf<Rational>(fixture("bad_key.json")), invalid_input);
  EXPECT_THROW(parse_pmf<Rational>(fixture("missing.json")), invalid_input);
  EXPECT_THROW(pmf_from_json<Rational>(json::parse(R"({"d": 1})")), invalid_input);
  EXPECT_THROW(pmf_from_json<Rational>(json::parse(R"({"d": 1, "probs": {"0": "-1/2", "1": "3/2"}})")), invalid_input);
  EXPECT_THROW(pmf_from_json<Rational>(json::parse(R"({"d": 1, "probs": {"0": true}})")), invalid_input);
  EXPECT_THROW(pmf_from_json<Rational>(json::parse(R"({"d": 40, "probs": {}})")), dimension_error);
  EXPECT_THROW(pmf_from_json<Rational>(json::parse(R"({"d": 2, "probs": {"00": "1/2"}})")), invalid_input);
}

TEST(Fixtures, Example42) {
  const auto f = parse_pmf<Rational>(fixture("example42.json"));
  EXPECT_EQ(covariance(f, 0, 1), q(1, 25));
  EXPECT_TRUE(is_sigma_ctm(f).verdict);
}

TEST(Fixtures, Table3AndTable2) {
  const auto f3 = parse_pmf<Rational>(fixture("table3_fH.json"));
  EXPECT_EQ(f3, exchangeable_max_entropy(3, q(2, 5)));
  const auto ft = parse_pmf<double>(fixture("table3_ftilde.json"));
  EXPECT_TRUE(is_sigma_ctm(ft).verdict);
  const auto f2 = parse_pmf<double>(fixture("table2_fH.json"));
  const auto res = solve_max_entropy(MarginalMeans<double>({0.35, 0.45, 0.5, 0.7}));
  EXPECT_TRUE(approx_equal(f2, res.pmf, 1e-6));
  const auto co = parse_pmf<Rational>(fixture("comonotone.json"));
  EXPECT_EQ(is_strongly_rayleigh(co).status, SRStatus::NotStable);
}

TEST(RationalList, Parsing) {
  EXPECT_EQ(parse_rational_list("7/20,0.45, 1/2"), (std::vector<Rational>{q(7, 20), q(9, 20), q(1, 2)}));
  EXPECT_THROW(parse_rational_list(""), invalid_input);
  EXPECT_THROW(parse_rational_list("1/2,x"), invalid_input);
}

TEST(Reproduce, SubsetRunsOnlyThoseGroups) {
  ReproOptions o;
  o.only = {"table3", "example42"};
  const auto items = reproduce_paper(o);
  ASSERT_FALSE(items.empty());
  for (const auto& it : items) {
    EXPECT_TRUE(it.group == "table3" || it.group == "example42");
    EXPECT_TRUE(it.pass) << it.group << "/" << it.id << ": " << it.computed << " vs " << it.expected;
  }
  o.only = {"nope"};
  EXPECT_THROW(reproduce_paper(o), invalid_input);
}

TEST(Reproduce, ZeroToleranceFailsRoundedItems) {
  ReproOptions o;
  o.only = {"table3"};
  o.tolerance = 0.0;
  const auto items = reproduce_paper(o);
  bool some_failed = false;
  for (const auto& it : items) some_failed = some_failed || !it.pass;
  EXPECT_TRUE(some_failed);
  const auto j = repro_to_json(items);
  EXPECT_GT(j["failed"].get<int>(), 0);
}

TEST(ReportJson, CoordinatesAreOneBased) {
  const Pmf<Rational> f(3, {0, q(1, 5), q(1, 5), q(1, 5), q(2, 5), 0, 0, 0});
  const auto j = to_json(is_pnc(f), 3);
  EXPECT_EQ(j["verdict"], false);
  EXPECT_EQ(j["witness"]["cov"], "1/25");
  EXPECT_EQ(j["witness"]["j1"], 1);
  EXPECT_EQ(j["witness"]["j2"], 2);
}
