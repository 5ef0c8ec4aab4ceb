#pragma once

// JSON views of reports, verdicts and witnesses. Coordinates are 1-based.

#include <string>
#include <variant>

#include "negdep/constructions.hpp"
#include "negdep/json_io.hpp"
#include "negdep/maxent.hpp"
#include "negdep/orders.hpp"
#include "negdep/properties.hpp"
#include "negdep/stability.hpp"

namespace negdep {

inline json coords_json(std::uint32_t mask) {
  json a = json::array();
  for (int j = 0; j < kMaxDim; ++j)
    if ((mask >> j) & 1u) a.push_back(j + 1);
  return a;
}

/// Members of an upper set given as a bitmask over outcomes of k coordinates.
inline json outcome_set_json(std::uint32_t set, int k) {
  json a = json::array();
  for (std::uint32_t o = 0; o < (1u << k); ++o)
    if ((set >> o) & 1u) a.push_back(outcome_key(Outcome(o), k));
  return a;
}

template <Scalar T>
json to_json(const SupermodularWitness<T>& w, int d) {
  json phi = json::object();
  for (std::uint32_t i = 0; i < w.phi.size(); ++i)
    if (!is_zero(w.phi[i], 0.0)) phi[outcome_key(Outcome(i), d)] = scalar_to_json(w.phi[i]);
  return json{{"type", "supermodular"},
              {"origin", w.origin},
              {"phi", phi},
              {"e_from", scalar_to_json(w.e_from)},
              {"e_to", scalar_to_json(w.e_to)}};
}

template <Scalar T>
json to_json(const UpperSetWitness<T>& w, int d) {
  const int k = std::popcount(w.split);
  const std::uint32_t rest = ((1u << d) - 1u) & ~w.split;
  return json{{"type", "upper-sets"},
              {"lambda1", coords_json(w.split)},
              {"lambda2", coords_json(rest)},
              {"U", outcome_set_json(w.u, k)},
              {"V", outcome_set_json(w.v, d - k)},
              {"cov_from", scalar_to_json(w.cov_from)},
              {"cov_to", scalar_to_json(w.cov_to)}};
}

template <Scalar T>
json witness_json(const PropertyWitness<T>& w, int d) {
  return std::visit(
      [&](const auto& x) -> json {
        using W = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<W, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<W, CovarianceWitness<T>>) {
          return json{{"type", "covariance"}, {"j1", x.j1 + 1}, {"j2", x.j2 + 1}, {"cov", scalar_to_json(x.cov)}};
        } else if constexpr (std::is_same_v<W, LatticeWitness<T>>) {
          return json{{"type", "lattice"},
                      {"i", outcome_key(x.i, d)},
                      {"k", outcome_key(x.k, d)},
                      {"f(i)f(k)", scalar_to_json(x.lhs)},
                      {"f(meet)f(join)", scalar_to_json(x.rhs)}};
        } else if constexpr (std::is_same_v<W, SplitWitness<T>>) {
          return json{{"type", "split"},
                      {"lambda", coords_json(x.lambda)},
                      {"s", x.s},
                      {"t", x.t},
                      {"cdf", scalar_to_json(x.cdf)},
                      {"lower_bound", scalar_to_json(x.bound)}};
        } else if constexpr (std::is_same_v<W, LevelsWitness>) {
          return json{{"type", "levels"}, {"levels", x.levels}};
        } else if constexpr (std::is_same_v<W, UpperSetWitness<T>>) {
          return to_json(x, d);
        } else {
          return to_json(x, d);
        }
      },
      w);
}

template <Scalar T>
json to_json(const PropertyReport<T>& r, int d) {
  return json{{"property", r.property}, {"verdict", r.verdict}, {"witness", witness_json(r.witness, d)}};
}

template <Scalar T>
json to_json(const OrderVerdict<T>& v, int d) {
  json j{{"kind", to_string(v.kind)}, {"relation", to_string(v.relation)}};
  if (!v.transfers.empty()) {
    json t = json::array();
    for (const auto& tr : v.transfers)
      t.push_back({{"i", outcome_key(tr.i, d)}, {"k", outcome_key(tr.k, d)}, {"weight", scalar_to_json(tr.weight)}});
    j["transfers"] = t;
  }
  if (v.sm_forward) j["witness_forward"] = to_json(*v.sm_forward, d);
  if (v.sm_backward) j["witness_backward"] = to_json(*v.sm_backward, d);
  if (v.wa_forward) j["witness_forward"] = to_json(*v.wa_forward, d);
  if (v.wa_backward) j["witness_backward"] = to_json(*v.wa_backward, d);
  if (v.kind == OrderKind::WeakAssociation) j["inequalities_checked"] = v.inequalities_checked;
  if (v.kind == OrderKind::Convex) {
    j["stop_loss_left"] = vector_to_json<T>(v.stop_loss_left);
    j["stop_loss_right"] = vector_to_json<T>(v.stop_loss_right);
  }
  if (v.kind == OrderKind::Supermodular) j["lp_solves"] = v.lp_solves;
  return j;
}

inline json to_json(const SRVerdict& v) {
  json j{{"status", to_string(v.status)},
         {"method", to_string(v.method)},
         {"stats",
          {{"samples", v.stats.samples},
           {"local_minima", v.stats.local_minima},
           {"pairs", v.stats.pairs},
           {"min_gap", std::isfinite(v.stats.min_gap) ? json(v.stats.min_gap) : json(nullptr)},
           {"max_root_imag", v.stats.max_root_imag}}}};
  if (v.witness)
    j["witness"] = {{"j1", v.witness->j1 + 1},
                    {"j2", v.witness->j2 + 1},
                    {"x", v.witness->x},
                    {"gap", v.witness->gap},
                    {"exact_gap", to_string(v.witness->exact_gap)}};
  return j;
}

inline json to_json(const MaxEntResult& r) {
  json j{{"mode", r.mode == CbMode::Integer ? "m" : "mplus"},
         {"m", r.m},
         {"pmf", pmf_to_json(r.pmf)},
         {"pi", r.odds.pi},
         {"residual", r.residual},
         {"iterations", r.iterations},
         {"entropy", entropy(r.pmf)}};
  if (r.exact) j["exact"] = pmf_to_json(*r.exact);
  return j;
}

template <Scalar T>
json to_json(const ChainSpec<T>& c) {
  json pmfs = json::array();
  for (const auto& f : c.pmfs) pmfs.push_back(pmf_to_json(f));
  json links = json::array();
  for (const auto& v : c.links) links.push_back(to_string(v.relation));
  return json{{"p", vector_to_json<T>(c.p.values())},
              {"alphas", vector_to_json<T>(c.alphas)},
              {"pmfs", pmfs},
              {"sm_links", links}};
}

}  // namespace negdep
