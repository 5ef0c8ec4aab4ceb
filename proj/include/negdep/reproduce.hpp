#pragma once

// Regenerates the published tables and worked examples and compares them
// with the printed values. Each item carries its own tolerance; exact items
// compare rational strings.

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "negdep/constructions.hpp"
#include "negdep/json_io.hpp"
#include "negdep/maxent.hpp"
#include "negdep/orders.hpp"
#include "negdep/polytope.hpp"
#include "negdep/properties.hpp"
#include "negdep/stability.hpp"

namespace negdep {

struct ReproItem {
  std::string group;
  std::string id;
  std::string expected;
  std::string computed;
  double tolerance = 0.0;  // 0 for exact comparisons
  bool pass = false;
};

struct ReproOptions {
  std::vector<std::string> only;     // groups to run; empty runs all
  std::optional<double> tolerance;   // overrides every numeric tolerance
};

inline const std::vector<std::string>& repro_groups() {
  static const std::vector<std::string> g{"table2",       "table3",        "example42",  "lower-frechet",
                                          "exchangeable", "equal-means",   "cb3",        "polarization",
                                          "final"};
  return g;
}

namespace detail {

class Recorder {
 public:
  Recorder(std::string group, const ReproOptions& o, std::vector<ReproItem>& out)
      : group_(std::move(group)), opts_(o), out_(out) {}

  void exact(const std::string& id, const std::string& expected, const std::string& computed) {
    out_.push_back({group_, id, expected, computed, 0.0, expected == computed});
  }
  void flag(const std::string& id, bool expected, bool computed) {
    exact(id, expected ? "true" : "false", computed ? "true" : "false");
  }
  void approx(const std::string& id, double expected, double computed, double tol) {
    const double t = opts_.tolerance.value_or(tol);
    std::ostringstream e, c;
    e.precision(12);
    c.precision(12);
    e << expected;
    c << computed;
    out_.push_back({group_, id, e.str(), c.str(), t, std::abs(expected - computed) <= t});
  }

 private:
  std::string group_;
  const ReproOptions& opts_;
  std::vector<ReproItem>& out_;
};

inline std::string join_rationals(const Pmf<Rational>& f, const std::vector<std::uint32_t>& idx) {
  std::string s;
  for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + to_string(f[idx[k]]);
  return s;
}

inline MarginalMeans<Rational> means(std::initializer_list<Rational> v) { return MarginalMeans<Rational>(std::vector<Rational>(v)); }

inline void repro_table2(Recorder& r) {
  // Joint-mix class with p_bullet = 2; columns 1100,1010,0110,1001,0101,0011.
  const std::vector<std::uint32_t> cols{3, 5, 6, 9, 10, 12};
  const auto p = means({Rational(7, 20), Rational(9, 20), Rational(1, 2), Rational(7, 10)});
  const auto poly = enumerate_vertices(p, true);
  r.exact("vertex-count", "3", std::to_string(poly.vertices.size()));
  const std::vector<std::string> printed{"0,0,3/10,7/20,3/20,1/5", "0,3/10,0,1/20,9/20,1/5", "3/10,0,0,1/20,3/20,1/2"};
  const std::vector<double> h{1.3351, 1.1922, 1.1421};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string name = "R" + std::to_string(k + 1);
    if (k < poly.vertices.size()) {
      r.exact(name, printed[k], join_rationals(poly.vertices[k], cols));
      r.approx("H(" + name + ")", h[k], entropy(poly.vertices[k]), 1e-4);
    } else {
      r.exact(name, printed[k], "missing");
    }
  }
  const auto res = solve_max_entropy(p);
  const std::vector<double> fh{0.0802, 0.0927, 0.1771, 0.1271, 0.2427, 0.2803};
  for (std::size_t k = 0; k < cols.size(); ++k)
    r.approx("fH(" + outcome_key(Outcome(cols[k]), 4) + ")", fh[k], res.pmf[cols[k]], 1e-3);
  r.approx("H(fH)", 1.6917, entropy(res.pmf), 1e-4);
  if (poly.vertices.size() == 3) {
    const auto dec = decompose(res.pmf, poly);
    const std::vector<double> alpha{0.4235, 0.3090, 0.2675};
    for (std::size_t k = 0; k < 3; ++k) r.approx("alpha" + std::to_string(k + 1), alpha[k], dec.weights[k], 1e-3);
  }
}

inline void repro_table3(Recorder& r) {
  const Rational q(2, 5);
  const auto p = means({q, q, q});
  const auto poly = enumerate_vertices(p, true);
  const std::vector<std::uint32_t> all{0, 1, 2, 3, 4, 5, 6, 7};
  const std::vector<std::string> printed{"0,1/5,1/5,1/5,2/5,0,0,0", "0,1/5,2/5,0,1/5,1/5,0,0", "0,2/5,1/5,0,1/5,0,1/5,0"};
  r.exact("vertex-count", "3", std::to_string(poly.vertices.size()));
  for (std::size_t k = 0; k < 3 && k < poly.vertices.size(); ++k) {
    const std::string name = "R" + std::to_string(k + 1);
    r.exact(name, printed[k], join_rationals(poly.vertices[k], all));
    r.approx("H(" + name + ")", 1.33217904, entropy(poly.vertices[k]), 1e-8);
  }
  const auto res = solve_max_entropy(p);
  r.exact("fH", "0,4/15,4/15,1/15,4/15,1/15,1/15,0", res.exact ? join_rationals(*res.exact, all) : "none");
  r.approx("H(fH)", 1.599014712, entropy(res.pmf), 1e-8);
  const Pmf<double> ft(3, {0.0, 0.2664, 0.267, 0.0666, 0.2666, 0.067, 0.0664, 0.0});
  r.approx("H(ftilde)", 1.599012963, entropy(ft), 1e-8);
  const auto dec = decompose(ft, poly);
  const std::vector<double> alpha{0.333, 0.335, 0.332};
  for (std::size_t k = 0; k < 3 && k < dec.weights.size(); ++k)
    r.approx("alpha" + std::to_string(k + 1), alpha[k], dec.weights[k], 1e-9);
  const auto sr = is_strongly_rayleigh(ft);
  r.flag("ftilde-not-NotStable", true, sr.status != SRStatus::NotStable);
  r.flag("fH-SR-certified", true, is_strongly_rayleigh(*res.exact).status == SRStatus::StableCertified);
}

inline void repro_example42(Recorder& r) {
  const Rational f5(1, 5);
  const Pmf<Rational> f(3, {0, f5, f5, f5, Rational(2, 5), 0, 0, 0});
  r.flag("sigma-ctm(support)", true, is_sigma_ctm(f, SigmaMethod::Support).verdict);
  r.flag("sigma-ctm(definition)", true, is_sigma_ctm(f, SigmaMethod::Definition).verdict);
  r.flag("sigma-ctm(single-vs-rest)", true, is_sigma_ctm(f, SigmaMethod::SingleVsRest).verdict);
  const auto pnc = is_pnc(f);
  r.flag("pnc", false, pnc.verdict);
  r.exact("Cov(I1,I2)", "1/25", to_string(covariance(f, 0, 1)));
  r.flag("na", false, is_na(f).verdict);
}

inline void repro_lower_frechet(Recorder& r) {
  // p_bullet = 17/20 <= 1: the Sigma class is the lower Frechet point.
  const auto p = means({Rational(3, 20), Rational(1, 20), Rational(1, 4), Rational(3, 10), Rational(1, 10)});
  r.flag("frechet-lower-is-pmf", true, frechet_lower_is_pmf(p));
  const auto f = lower_frechet_pmf(p);
  r.exact("pgf", "3/20,3/20,1/20,1/4,3/10,1/10", join_rationals(f, {0, 1, 2, 4, 8, 16}));
  const auto sr = is_strongly_rayleigh(f);
  r.exact("SR", "StableCertified/linear", to_string(sr.status) + "/" + to_string(sr.method));
  r.flag("pairwise-ctm", true, is_pairwise_ctm(f).verdict);
  r.exact("vertex-count", "1", std::to_string(enumerate_vertices(p, true).vertices.size()));
}

inline void repro_exchangeable(Recorder& r) {
  // P = (s2/3)(z1z2 + z1z3 + z2z3) + s3 z1z2z3 with s2 = 3/5, s3 = 2/5.
  const Rational s2(3, 5), s3(2, 5), a = s2 / 3;
  const Pmf<Rational> f(3, {0, 0, 0, a, 0, a, a, s3});
  const auto sr = is_strongly_rayleigh(f);
  r.exact("SR", "StableCertified", to_string(sr.status));
  // Padded with a degenerate fourth coordinate: still SR, no longer exchangeable.
  std::vector<Rational> g(16, Rational(0));
  for (std::uint32_t i = 0; i < 8; ++i) g[i] = f[i];
  const Pmf<Rational> f4(4, std::move(g));
  r.flag("padded-exchangeable", false, is_exchangeable(f4));
  r.flag("padded-not-NotStable", true, is_strongly_rayleigh(f4).status != SRStatus::NotStable);
  r.flag("padded-sigma-ctm", true, is_sigma_ctm(f4).verdict);
}

inline void repro_equal_means(Recorder& r) {
  // f^(m) = 1/C(d,m) whatever the common pi.
  const int d = 5, m = 2;
  for (const Rational& pi : {Rational(1, 5), Rational(7, 10)}) {
    const auto odds = OddsVector<Rational>::from_pi(std::vector<Rational>(d, pi));
    const auto f = cond_bernoulli_pmf(odds, m);
    bool uniform = true;
    for (std::uint32_t i = 0; i < f.size(); ++i)
      uniform = uniform && f[i] == (std::popcount(i) == m ? Rational(1, 10) : Rational(0));
    r.flag("f(m) uniform, pi=" + to_string(pi), true, uniform);
  }
  const auto fh = exchangeable_max_entropy(d, Rational(2, 5));
  r.exact("fH(p=2/5) level 2", "1/10", to_string(fh[3]));
  const auto res = solve_max_entropy(MarginalMeans<double>(std::vector<double>(d, 0.4)));
  r.approx("fH float vs exact", 0.1, res.pmf[3], 1e-10);
}

inline void repro_cb3(Recorder& r) {
  // p_bullet in (1,2): f^H is the conditional Bernoulli law on A_1 u A_2.
  const MarginalMeans<double> p(std::vector<double>{0.35, 0.45, 0.5});
  const auto res = solve_max_entropy(p);
  r.exact("mode", "mplus/1", std::string(res.mode == CbMode::Plus ? "mplus" : "m") + "/" + std::to_string(res.m));
  bool proportional = true;
  try {
    (void)maxent_pgf(res);
  } catch (const std::logic_error&) {
    proportional = false;
  }
  r.flag("pgf proportional to a^i on A*", true, proportional);
  r.exact("support size", "6", std::to_string(res.pmf.support().size()));
}

inline void repro_polarization(Recorder& r) {
  PolarizationSpec<Rational> s{4, {{0, 1}, {2, 3}}, {Rational(1, 4), Rational(1, 4)}};
  const auto pol = polarize(s);
  r.exact("marginals", "1/4,1/4,1/4,1/4",
          [&] {
            std::string t;
            const auto m = marginal_means(pol.pmf);
            for (int j = 0; j < 4; ++j) t += (j ? "," : "") + to_string(m[j]);
            return t;
          }());
  r.exact("P(S=1)", "1", to_string(sum_pmf(pol.pmf)[1]));
  r.flag("pgf composition", true, pgf_compose_check(pol.pmf, s, pol.block_pmf));
  r.flag("sigma-ctm", true, is_sigma_ctm(pol.pmf).verdict);
  r.flag("not-NotStable", true, is_strongly_rayleigh(pol.pmf).status != SRStatus::NotStable);
}

inline void repro_final(Recorder& r) {
  const Rational p(3, 10);
  const auto mm = MarginalMeans<Rational>(std::vector<Rational>(5, p));
  const auto chain = alpha_chain(mm, std::vector<Rational>{Rational(0), Rational(9, 10)}, false);
  const auto& fh = chain.pmfs[0];
  r.exact("fH on A_1", "1/10", to_string(fh[1]));
  r.exact("fH on A_2", "1/20", to_string(fh[3]));
  const auto f = to_float(chain.pmfs[1]);
  const double cov = covariance_of(
      f, [](Outcome o) { const auto i = o.bits(); return std::exp(double((i & 1) + 2 * ((i >> 1) & 1))); },
      [](Outcome o) { const auto i = o.bits(); return std::exp(double(3 * ((i >> 2) & 1) + 4 * ((i >> 3) & 1) + 6 * ((i >> 4) & 1))); });
  r.approx("Cov(h1,h2)", 12.6715, cov, 1e-3);
  r.flag("nsd", true, is_nsd(chain.pmfs[1]).verdict);
  r.flag("na", false, is_na(chain.pmfs[1]).verdict);
  const auto wa = wassoc_leq(chain.pmfs[1], Pmf<Rational>::product(mm));
  r.flag("wassoc not Less", true, wa.relation != Relation::Less && wa.relation != Relation::Equal);
}

}  // namespace detail

inline std::vector<ReproItem> reproduce_paper(const ReproOptions& opts = {}) {
  using Fn = std::function<void(detail::Recorder&)>;
  const std::vector<std::pair<std::string, Fn>> runners{
      {"table2", detail::repro_table2},         {"table3", detail::repro_table3},
      {"example42", detail::repro_example42},   {"lower-frechet", detail::repro_lower_frechet},
      {"exchangeable", detail::repro_exchangeable}, {"equal-means", detail::repro_equal_means},
      {"cb3", detail::repro_cb3},               {"polarization", detail::repro_polarization},
      {"final", detail::repro_final}};
  for (const auto& g : opts.only)
    if (std::find(repro_groups().begin(), repro_groups().end(), g) == repro_groups().end())
      throw invalid_input("unknown reproduction group '" + g + "'");
  std::vector<ReproItem> items;
  for (const auto& [name, fn] : runners) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), name) == opts.only.end()) continue;
    detail::Recorder rec(name, opts, items);
    fn(rec);
  }
  return items;
}

inline json repro_to_json(const std::vector<ReproItem>& items) {
  json a = json::array();
  int failed = 0;
  for (const auto& it : items) {
    a.push_back({{"group", it.group},
                 {"id", it.id},
                 {"expected", it.expected},
                 {"computed", it.computed},
                 {"tolerance", it.tolerance},
                 {"pass", it.pass}});
    failed += it.pass ? 0 : 1;
  }
  return json{{"items", a}, {"failed", failed}, {"total", items.size()}};
}

}  // namespace negdep
