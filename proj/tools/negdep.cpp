// negdep: command-line front end. Exit codes: 0 pass, 1 mismatch, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "negdep/negdep.hpp"

namespace {

using namespace negdep;

struct Common {
  std::string out;
  std::string mode = "rational";
  std::uint64_t seed = 1;
  double tol = 1e-10;
};

int emit(const json& j, const Common& c) {
  const std::string text = j.dump(2);
  if (c.out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream f(c.out);
    if (!f) throw invalid_input("cannot write '" + c.out + "'");
    f << text << '\n';
  }
  return 0;
}

MarginalMeans<Rational> rational_means(const std::string& text, int d_hint = 0) {
  auto v = parse_rational_list(text);
  if (v.size() == 1 && d_hint > 1) v.assign(static_cast<std::size_t>(d_hint), v.front());
  return MarginalMeans<Rational>(std::move(v));
}

std::vector<std::vector<int>> parse_blocks(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string blk;
  while (std::getline(ss, blk, '|')) {
    std::vector<int> b;
    std::stringstream bs(blk);
    std::string item;
    while (std::getline(bs, item, ',')) b.push_back(std::stoi(item) - 1);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

template <Scalar T>
json check_all(const Pmf<T>& f, const std::string& which, const SearchBudget& budget) {
  const int d = f.dim();
  json out{{"d", d}, {"reports", json::array()}};
  auto want = [&](const std::string& name) { return which == "all" || which == name; };
  auto add = [&](const PropertyReport<T>& r) { out["reports"].push_back(to_json(r, d)); };
  if (want("pnc")) add(is_pnc(f));
  if (want("nlc")) add(is_nlc(f));
  if (want("jointmix")) add(is_joint_mix(f));
  if (want("sigma")) {
    for (auto m : {SigmaMethod::Support, SigmaMethod::Definition, SigmaMethod::SingleVsRest}) {
      auto r = is_sigma_ctm(f, m);
      r.property += "/" + to_string(m);
      add(r);
    }
  }
  if (want("pairwise")) add(is_pairwise_ctm(f));
  if (want("na") && d <= kDefaultNaMaxDim) add(is_na(f));
  if (want("nsd") && d <= kDefaultOrderMaxDim) add(is_nsd(f));
  if (want("sr")) out["strongly_rayleigh"] = to_json(is_strongly_rayleigh(f, budget));
  out["marginals"] = vector_to_json<T>(marginal_means(f).values());
  out["sum_pmf"] = vector_to_json<T>(sum_pmf(f).values());
  out["entropy"] = entropy(f);
  return out;
}

template <Scalar T>
json order_json(const Pmf<T>& f, const Pmf<T>& g, const std::string& kind) {
  if (kind == "sm") return to_json(sm_leq(f, g), f.dim());
  if (kind == "wassoc") return to_json(wassoc_leq(f, g), f.dim());
  throw invalid_input("order kind must be sm or wassoc");
}

template <Scalar T>
json decompose_json(const Pmf<T>& f, const FrechetPolytope& poly) {
  const auto dec = decompose(f, poly);
  json verts = json::array();
  for (const auto& v : poly.vertices) verts.push_back(pmf_to_json(v));
  return json{{"weights", vector_to_json<T>(dec.weights)}, {"unique", dec.unique}, {"vertices", verts}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative dependence toolkit for multivariate Bernoulli pmfs"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--out", c.out, "Write JSON here instead of stdout");
  app.add_option("--mode", c.mode, "Arithmetic: rational or float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--seed", c.seed, "Seed for stochastic search and sampling");
  app.add_option("--tol", c.tol, "Numeric tolerance");

  std::string pmf_path, pmf2_path, p_text, alphas_text, blocks_text, property = "all", kind = "sm", force = "auto";
  std::vector<std::string> only;
  bool sigma = false;
  int starts = 64, samples = 0;
  std::optional<double> repro_tol;

  auto* check = app.add_subcommand("check", "Negative dependence properties of a pmf");
  check->add_option("--pmf", pmf_path)->required();
  check->add_option("--property", property)
      ->check(CLI::IsMember({"all", "pnc", "nlc", "jointmix", "sigma", "pairwise", "na", "nsd", "sr"}));
  check->add_option("--starts", starts, "Random starts per pair for the SR search");

  auto* order = app.add_subcommand("order", "Supermodular or weak-association order between two pmfs");
  order->add_option("--pmf", pmf_path)->required();
  order->add_option("--pmf2", pmf2_path)->required();
  order->add_option("--kind", kind)->check(CLI::IsMember({"sm", "wassoc"}));

  auto* cx = app.add_subcommand("cx", "Convex order between the sums of two pmfs");
  cx->add_option("--pmf", pmf_path)->required();
  cx->add_option("--pmf2", pmf2_path)->required();

  auto* sr = app.add_subcommand("sr", "Strongly Rayleigh verdict");
  sr->add_option("--pmf", pmf_path)->required();
  sr->add_option("--starts", starts, "Random starts per pair");

  auto* maxent = app.add_subcommand("maxent", "Maximum-entropy Sigma-countermonotonic pmf");
  maxent->add_option("--p", p_text)->required();
  maxent->add_option("--force", force)->check(CLI::IsMember({"auto", "m", "mplus"}));

  auto* vertices = app.add_subcommand("vertices", "Vertices of the Frechet polytope");
  vertices->add_option("--p", p_text)->required();
  vertices->add_flag("--sigma", sigma, "Restrict to the Sigma-countermonotonic face");
  vertices->add_option("--sample", samples, "Also draw this many random members");

  auto* decomp = app.add_subcommand("decompose", "Convex weights over the polytope vertices");
  decomp->add_option("--pmf", pmf_path)->required();
  decomp->add_option("--p", p_text, "Marginals (default: those of the pmf)");
  decomp->add_flag("--sigma", sigma, "Use the Sigma-countermonotonic face");

  auto* chain = app.add_subcommand("chain", "Alpha-mixture chain between f^H and the product pmf");
  chain->add_option("--p", p_text)->required();
  chain->add_option("--alphas", alphas_text)->required();

  auto* polar = app.add_subcommand("polarize", "Polarization over a block partition");
  polar->add_option("--blocks", blocks_text, "Blocks such as 1,2|3,4")->required();
  polar->add_option("--p", p_text, "Within-block mean, one value or one per block")->required();

  auto* find = app.add_subcommand("find-sigma", "Some Sigma-countermonotonic pmf with the given marginals");
  find->add_option("--p", p_text)->required();

  auto* repro = app.add_subcommand("reproduce-paper", "Regenerate the published tables and examples");
  repro->add_option("--only", only, "Groups to run")->delimiter(',');
  repro->add_option("--item-tol", repro_tol, "Override every numeric item tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const bool exact = c.mode == "rational";
  SearchBudget budget;
  budget.seed = c.seed;
  budget.starts = starts;

  try {
    if (*check) {
      return exact ? emit(check_all(parse_pmf<Rational>(pmf_path), property, budget), c)
                   : emit(check_all(parse_pmf<double>(pmf_path), property, budget), c);
    }
    if (*order) {
      return exact ? emit(order_json(parse_pmf<Rational>(pmf_path), parse_pmf<Rational>(pmf2_path), kind), c)
                   : emit(order_json(parse_pmf<double>(pmf_path), parse_pmf<double>(pmf2_path), kind), c);
    }
    if (*cx) {
      if (exact) {
        const auto f = parse_pmf<Rational>(pmf_path), g = parse_pmf<Rational>(pmf2_path);
        return emit(to_json(cx_leq(sum_pmf(f), sum_pmf(g)), f.dim()), c);
      }
      const auto f = parse_pmf<double>(pmf_path), g = parse_pmf<double>(pmf2_path);
      return emit(to_json(cx_leq(sum_pmf(f), sum_pmf(g)), f.dim()), c);
    }
    if (*sr) {
      return exact ? emit(to_json(is_strongly_rayleigh(parse_pmf<Rational>(pmf_path), budget)), c)
                   : emit(to_json(is_strongly_rayleigh(parse_pmf<double>(pmf_path), budget)), c);
    }
    if (*maxent) {
      MaxEntOptions opts;
      opts.tol = c.tol;
      opts.mode = force == "m" ? MaxEntMode::Integer : force == "mplus" ? MaxEntMode::Plus : MaxEntMode::Auto;
      return emit(to_json(solve_max_entropy(rational_means(p_text), opts)), c);
    }
    if (*vertices) {
      const auto poly = enumerate_vertices(rational_means(p_text), sigma);
      json verts = json::array();
      for (const auto& v : poly.vertices) verts.push_back(pmf_to_json(v));
      json out{{"sigma", sigma}, {"count", poly.vertices.size()}, {"vertices", verts}};
      if (samples > 0) {
        json s = json::array();
        for (const auto& f : sample_polytope(poly, samples, c.seed)) s.push_back(pmf_to_json(f));
        out["samples"] = s;
      }
      return emit(out, c);
    }
    if (*decomp) {
      if (exact) {
        const auto f = parse_pmf<Rational>(pmf_path);
        const auto p = p_text.empty() ? marginal_means(f) : rational_means(p_text);
        return emit(decompose_json(f, enumerate_vertices(p, sigma)), c);
      }
      const auto f = parse_pmf<double>(pmf_path);
      const auto p = p_text.empty() ? rationalize(marginal_means(f)) : rational_means(p_text);
      return emit(decompose_json(f, enumerate_vertices(p, sigma)), c);
    }
    if (*chain) {
      const auto p = rational_means(p_text);
      const auto alphas = parse_rational_list(alphas_text);
      if (exact && closed_form_max_entropy(p)) return emit(to_json(alpha_chain(p, alphas)), c);
      if (exact) std::cerr << "note: no closed-form f^H for these marginals; using float mode\n";
      std::vector<double> ad;
      for (const auto& a : alphas) ad.push_back(a.get_d());
      return emit(to_json(alpha_chain(to_float(p), ad)), c);
    }
    if (*polar) {
      const auto blocks = parse_blocks(blocks_text);
      int d = 0;
      for (const auto& b : blocks) d += static_cast<int>(b.size());
      auto pv = parse_rational_list(p_text);
      if (pv.size() == 1) pv.assign(blocks.size(), pv.front());
      PolarizationSpec<Rational> spec{d, blocks, pv};
      const auto pp = polarization_block_means(spec);
      if (exact && closed_form_max_entropy(pp)) {
        const auto pol = polarize(spec);
        return emit(json{{"pmf", pmf_to_json(pol.pmf)},
                         {"block_pmf", pmf_to_json(pol.block_pmf)},
                         {"pgf_compose_check", pgf_compose_check(pol.pmf, spec, pol.block_pmf)}},
                    c);
      }
      std::vector<double> pd;
      for (const auto& x : pv) pd.push_back(x.get_d());
      PolarizationSpec<double> fspec{d, blocks, pd};
      const auto pol = polarize(fspec);
      return emit(json{{"pmf", pmf_to_json(pol.pmf)},
                       {"block_pmf", pmf_to_json(pol.block_pmf)},
                       {"pgf_compose_check", pgf_compose_check(pol.pmf, fspec, pol.block_pmf, 1e-12)}},
                  c);
    }
    if (*find) return emit(pmf_to_json(find_sigma_ctm(rational_means(p_text))), c);
    if (*repro) {
      ReproOptions ro;
      ro.only = only;
      ro.tolerance = repro_tol;
      const auto items = reproduce_paper(ro);
      const json report = repro_to_json(items);
      emit(report, c);
      return report["failed"].get<int>() == 0 ? 0 : 1;
    }
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dimension_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
