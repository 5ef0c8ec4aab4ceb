#pragma once

// Conditional Bernoulli distributions and the maximum-entropy element of the
// Sigma-countermonotonic polytope.
//
// With odds w_j = pi_j / (1 - pi_j), conditioning independent Bern(pi_j) on
// the sum being m (or m or m+1) gives f(i) = w^i / e_m(w) (resp.
// w^i / (e_m + e_{m+1})). The maximum-entropy pmf with marginals p is the
// member of this family whose inclusion probabilities equal p; it is found by
// Newton's method on theta = ln w, whose Jacobian is the covariance matrix of
// the conditional vector.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "negdep/outcome.hpp"
#include "negdep/pgf.hpp"
#include "negdep/pmf.hpp"
#include "negdep/scalar.hpp"

namespace negdep {

/// Latent independent-Bernoulli parameters.
template <Scalar T>
struct OddsVector {
  std::vector<T> pi;
  std::vector<T> w;
  std::vector<double> theta;

  int dim() const { return static_cast<int>(pi.size()); }

  static OddsVector from_pi(std::vector<T> pi) {
    OddsVector o;
    for (const T& v : pi)
      if (!(v > 0) || !(v < 1)) throw invalid_input("pi must lie in (0,1)");
    o.pi = std::move(pi);
    for (const T& v : o.pi) {
      o.w.push_back(T(v / (T(1) - v)));
      o.theta.push_back(std::log(to_double(o.w.back())));
    }
    return o;
  }

  static OddsVector from_w(std::vector<T> w) {
    OddsVector o;
    for (const T& v : w)
      if (!(v > 0)) throw invalid_input("odds must be positive");
    o.w = std::move(w);
    for (const T& v : o.w) {
      o.pi.push_back(T(v / (T(1) + v)));
      o.theta.push_back(std::log(to_double(v)));
    }
    return o;
  }
};

inline OddsVector<double> odds_from_theta(std::span<const double> theta) {
  OddsVector<double> o;
  for (double t : theta) {
    o.theta.push_back(t);
    o.w.push_back(std::exp(t));
    o.pi.push_back(1.0 / (1.0 + std::exp(-t)));
  }
  return o;
}

/// e_0(w), ..., e_d(w) by the cancellation-free row recursion.
template <Scalar T>
std::vector<T> esp_all(std::span<const T> w) {
  std::vector<T> e(w.size() + 1, T(0));
  e[0] = 1;
  for (std::size_t k = 0; k < w.size(); ++k)
    for (std::size_t m = k + 1; m >= 1; --m) e[m] += w[k] * e[m - 1];
  return e;
}

template <Scalar T>
T esp(std::span<const T> w, int m) {
  if (m < 0 || m > static_cast<int>(w.size())) return T(0);
  return esp_all(w)[static_cast<std::size_t>(m)];
}

namespace detail {

template <Scalar T>
T odds_power(std::span<const T> w, std::uint32_t i) {
  T v = 1;
  for (std::size_t j = 0; j < w.size(); ++j)
    if ((i >> j) & 1u) v *= w[j];
  return v;
}

template <Scalar T>
Pmf<T> conditioned_pmf(std::span<const T> w, int lo, int hi) {
  const int d = static_cast<int>(w.size());
  if (d < 1) throw invalid_input("odds vector is empty");
  const auto e = esp_all(w);
  T norm = 0;
  for (int m = lo; m <= hi; ++m) norm += e[static_cast<std::size_t>(m)];
  std::vector<T> probs(std::size_t{1} << d, T(0));
  for (std::uint32_t i = 0; i < probs.size(); ++i) {
    const int l = std::popcount(i);
    if (l >= lo && l <= hi) probs[i] = odds_power(w, i) / norm;
  }
  return Pmf<T>(d, std::move(probs));
}

}  // namespace detail

/// f^(m): independent Bernoullis conditioned on the sum equal to m.
template <Scalar T>
Pmf<T> cond_bernoulli_pmf(const OddsVector<T>& odds, int m) {
  if (m < 0 || m > odds.dim()) throw invalid_input("level m out of range");
  return detail::conditioned_pmf(std::span<const T>(odds.w), m, m);
}

/// f^(m+): conditioned on the sum lying in {m, m+1}.
template <Scalar T>
Pmf<T> cond_bernoulli_pmf_plus(const OddsVector<T>& odds, int m) {
  if (m < 0 || m > odds.dim() - 1) throw invalid_input("level m out of range for the plus family");
  return detail::conditioned_pmf(std::span<const T>(odds.w), m, m + 1);
}

enum class CbMode { Integer, Plus };

/// Inclusion probabilities of f^(m) or f^(m+) from ESPs of w with one coordinate dropped.
template <Scalar T>
MarginalMeans<T> cb_marginals(const OddsVector<T>& odds, CbMode mode, int m) {
  const int d = odds.dim();
  if (m < 0 || m > d || (mode == CbMode::Plus && m > d - 1)) throw invalid_input("level m out of range");
  const auto e = esp_all(std::span<const T>(odds.w));
  auto at = [](const std::vector<T>& v, int k) { return (k >= 0 && k < static_cast<int>(v.size())) ? v[static_cast<std::size_t>(k)] : T(0); };
  const T denom = mode == CbMode::Integer ? at(e, m) : T(at(e, m) + at(e, m + 1));
  std::vector<T> p;
  for (int j = 0; j < d; ++j) {
    std::vector<T> rest;
    for (int k = 0; k < d; ++k)
      if (k != j) rest.push_back(odds.w[static_cast<std::size_t>(k)]);
    const auto er = esp_all(std::span<const T>(rest));
    T num = at(er, m - 1);
    if (mode == CbMode::Plus) num += at(er, m);
    T v = odds.w[static_cast<std::size_t>(j)] * num / denom;
    if constexpr (!is_exact_v<T>) v = std::clamp(v, 0.0, 1.0);
    p.push_back(v);
  }
  return MarginalMeans<T>(std::move(p));
}

// ---------------------------------------------------------------------------

enum class MaxEntMode { Auto, Integer, Plus };

inline std::string to_string(MaxEntMode m) {
  switch (m) {
    case MaxEntMode::Auto: return "auto";
    case MaxEntMode::Integer: return "m";
    case MaxEntMode::Plus: return "mplus";
  }
  return "?";
}

struct MaxEntOptions {
  double tol = 1e-10;
  int max_iter = 200;
  MaxEntMode mode = MaxEntMode::Auto;
  double integer_threshold = 1e-10;
};

inline constexpr int kMaxEntMaxDim = 16;

struct MaxEntResult {
  Pmf<double> pmf;
  OddsVector<double> odds;
  CbMode mode = CbMode::Plus;
  int m = 0;
  double residual = 0.0;
  int iterations = 0;
  std::optional<Pmf<Rational>> exact;  // closed form when one is available
};

namespace detail {

struct CbState {
  std::vector<double> f;  // probabilities on the support list
  Eigen::VectorXd mean;
};

inline CbState cb_state(const std::vector<std::uint32_t>& support, const Eigen::VectorXd& theta) {
  const int d = static_cast<int>(theta.size());
  CbState s;
  s.f.resize(support.size());
  double mx = -INFINITY;
  for (std::size_t k = 0; k < support.size(); ++k) {
    double v = 0.0;
    for (int j = 0; j < d; ++j)
      if ((support[k] >> j) & 1u) v += theta(j);
    s.f[k] = v;
    mx = std::max(mx, v);
  }
  double z = 0.0;
  for (double& v : s.f) z += (v = std::exp(v - mx));
  s.mean = Eigen::VectorXd::Zero(d);
  for (std::size_t k = 0; k < support.size(); ++k) {
    s.f[k] /= z;
    for (int j = 0; j < d; ++j)
      if ((support[k] >> j) & 1u) s.mean(j) += s.f[k];
  }
  return s;
}

}  // namespace detail

/// Exact f^H for equal means p: the minimal sum law spread uniformly over levels.
inline Pmf<Rational> exchangeable_max_entropy(int d, const Rational& p) {
  if (!(p > 0) || !(p < 1)) throw invalid_input("p must lie in (0,1)");
  const auto s = s_min(Rational(p * d), d);
  std::vector<Rational> probs(std::size_t{1} << d, Rational(0));
  for (std::uint32_t i = 0; i < probs.size(); ++i) {
    const int l = std::popcount(i);
    probs[i] = s[l] / Rational(static_cast<long>(binomial(d, l)));
  }
  return Pmf<Rational>(d, std::move(probs));
}

/// Closed-form f^H when one exists: equal means, or p_bullet <= 1 or >= d-1
/// (the Sigma-polytope is then the single lower Frechet point).
inline std::optional<Pmf<Rational>> closed_form_max_entropy(const MarginalMeans<Rational>& p) {
  const auto v = p.values();
  if (std::all_of(v.begin(), v.end(), [&](const Rational& x) { return x == v.front(); }))
    return exchangeable_max_entropy(p.dim(), v.front());
  if (frechet_lower_is_pmf(p)) return lower_frechet_pmf(p);
  return std::nullopt;
}

/// Newton solve for the maximum-entropy Sigma-countermonotonic pmf.
inline MaxEntResult solve_max_entropy(const MarginalMeans<double>& p, const MaxEntOptions& opts = {}) {
  const int d = p.dim();
  if (d > kMaxEntMaxDim) throw dimension_error("dimension above the maximum-entropy bound");
  if (!p.interior()) throw invalid_input("maximum entropy needs p in (0,1)^d");
  const double pb = p.bullet();
  if (!(pb > 0.0) || !(pb < d)) throw invalid_input("p_bullet must lie in (0, d)");

  const double nearest = std::round(pb);
  const bool near_int = std::abs(pb - nearest) <= opts.integer_threshold;
  MaxEntResult res;
  if (opts.mode == MaxEntMode::Integer && !near_int) throw invalid_input("mode m needs an integer p_bullet");
  if (opts.mode == MaxEntMode::Plus && near_int) throw invalid_input("mode mplus needs a non-integer p_bullet");
  res.mode = near_int ? CbMode::Integer : CbMode::Plus;
  res.m = near_int ? static_cast<int>(nearest) : static_cast<int>(std::floor(pb));

  std::vector<std::uint32_t> support;
  for (std::uint32_t i = 0; i < (1u << d); ++i) {
    const int l = std::popcount(i);
    if (l == res.m || (res.mode == CbMode::Plus && l == res.m + 1)) support.push_back(i);
  }

  Eigen::VectorXd target(d), theta(d);
  for (int j = 0; j < d; ++j) {
    target(j) = p[j];
    theta(j) = std::log(p[j] / (1.0 - p[j]));
  }
  auto gauge = [&](Eigen::VectorXd& t) {
    if (res.mode == CbMode::Integer) t.array() -= t.mean();
  };
  gauge(theta);

  detail::CbState st = detail::cb_state(support, theta);
  Eigen::VectorXd r = st.mean - target;
  int it = 0;
  for (; r.lpNorm<Eigen::Infinity>() > opts.tol; ++it) {
    if (it >= opts.max_iter)
      throw convergence_error("maximum-entropy Newton iteration did not converge", r.lpNorm<Eigen::Infinity>());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t k = 0; k < support.size(); ++k) {
      Eigen::VectorXd x(d);
      for (int j = 0; j < d; ++j) x(j) = ((support[k] >> j) & 1u) ? 1.0 : 0.0;
      x -= st.mean;
      jac.noalias() += st.f[k] * (x * x.transpose());
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(r);
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h < 60; ++h, t *= 0.5) {
      Eigen::VectorXd cand = theta - t * step;
      gauge(cand);
      detail::CbState cs = detail::cb_state(support, cand);
      Eigen::VectorXd rc = cs.mean - target;
      if (rc.norm() < r.norm()) {
        theta = cand;
        st = std::move(cs);
        r = rc;
        moved = true;
        break;
      }
    }
    if (!moved)
      throw convergence_error("maximum-entropy line search stalled", r.lpNorm<Eigen::Infinity>());
  }

  std::vector<double> probs(std::size_t{1} << d, 0.0);
  for (std::size_t k = 0; k < support.size(); ++k) probs[support[k]] = st.f[k];
  double total = 0.0;
  for (double v : probs) total += v;
  for (double& v : probs) v /= total;
  res.pmf = Pmf<double>(d, std::move(probs));
  std::vector<double> th(theta.data(), theta.data() + d);
  res.odds = odds_from_theta(th);
  res.residual = r.lpNorm<Eigen::Infinity>();
  res.iterations = it;
  return res;
}

/// Rational targets: numerical solve plus the exact closed form when available.
inline MaxEntResult solve_max_entropy(const MarginalMeans<Rational>& p, const MaxEntOptions& opts = {}) {
  MaxEntResult res = solve_max_entropy(to_float(p), opts);
  res.exact = closed_form_max_entropy(p);
  return res;
}

/// pgf of f^H; checks that its coefficients are proportional to w^i on the support.
inline MultiAffinePgf<double> maxent_pgf(const MaxEntResult& res, double tol = 1e-9) {
  const auto& f = res.pmf;
  std::optional<double> ratio;
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 0.0) continue;
    const double r = f[i] / detail::odds_power(std::span<const double>(res.odds.w), i);
    if (!ratio) ratio = r;
    else if (std::abs(r - *ratio) > tol * std::max(1.0, std::abs(*ratio)))
      throw std::logic_error("maximum-entropy pgf is not proportional to w^i");
  }
  return MultiAffinePgf<double>(f);
}

}  // namespace negdep
