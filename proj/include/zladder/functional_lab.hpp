#pragma once

// Limit functionals of the transformed Fourier system evaluated at finite
// height, with a two-term extrapolation a + b / ln(tau) toward the limit.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "zladder/errors.hpp"
#include "zladder/fermat.hpp"
#include "zladder/fourier_zeta.hpp"
#include "zladder/ladder.hpp"
#include "zladder/parallel.hpp"
#include "zladder/quadrature.hpp"
#include "zladder/zeta_engine.hpp"

namespace zladder {

struct Extrapolation {
  double limit = 0.0;     ///< a
  double slope = 0.0;     ///< b
  double residual = 0.0;  ///< rms misfit
};

/// Least-squares fit of values ~ a + b / ln(grid).
inline Extrapolation extrapolate(const std::vector<double>& grid, const std::vector<double>& values) {
  if (grid.size() != values.size()) throw domain_error("extrapolate: grid and values differ in length");
  if (grid.size() < 3) throw domain_error("extrapolate: needs at least 3 points");
  const std::size_t n = grid.size();
  std::vector<double> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(grid[i] > 1.0)) throw domain_error("extrapolate: grid values must exceed 1");
    u[i] = 1.0 / std::log(grid[i]);
  }
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mu += u[i];
    mv += values[i];
  }
  mu /= static_cast<double>(n);
  mv /= static_cast<double>(n);
  double suu = 0.0, suv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (values[i] - mv);
  }
  if (!(suu > 0.0)) throw domain_error("extrapolate: degenerate grid");
  Extrapolation e;
  e.slope = suv / suu;
  e.limit = mv - e.slope * mu;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = values[i] - (e.limit + e.slope * u[i]);
    ss += r * r;
  }
  e.residual = std::sqrt(ss / static_cast<double>(n));
  return e;
}

struct ConvergenceReport {
  std::string name;
  std::vector<double> grid;        ///< tau or T, ascending
  std::vector<double> heights;     ///< base height T used at each grid point
  std::vector<double> raw;
  std::vector<double> normalized;
  double target = 0.0;
  std::optional<Extrapolation> fit;  ///< present when the grid has >= 3 points
  double margin = 0.0;               ///< |extrapolated (or last) value - target|
  bool trend_ok = false;             ///< |normalized - target| non-increasing along the grid

  double extrapolated_limit() const { return fit ? fit->limit : normalized.back(); }
  double last_deviation() const { return std::abs(normalized.back() - target); }
};

inline void finish_report(ConvergenceReport& rep) {
  if (rep.grid.empty()) throw domain_error(rep.name + ": empty grid");
  for (std::size_t i = 1; i < rep.grid.size(); ++i)
    if (!(rep.grid[i] > rep.grid[i - 1])) throw domain_error(rep.name + ": grid must be strictly increasing");
  if (rep.grid.size() >= 3) rep.fit = extrapolate(rep.grid, rep.normalized);
  rep.margin = std::abs(rep.extrapolated_limit() - rep.target);
  rep.trend_ok = true;
  for (std::size_t i = 1; i < rep.normalized.size(); ++i)
    if (std::abs(rep.normalized[i] - rep.target) > std::abs(rep.normalized[i - 1] - rep.target)) rep.trend_ok = false;
}

/// W(x, tau) = tau^{x / A^{1/k}}; rejects results beyond the ladder domain.
inline double W_subst(double x, double tau, int k, double A, std::optional<double> domain_hi = {}) {
  if (!(x > 0.0)) throw domain_error("W_subst: x must be > 0");
  if (!(tau > 1.0)) throw domain_error("W_subst: tau must be > 1");
  if (k < 1) throw domain_error("W_subst: k must be >= 1");
  if (!(A > 0.0)) throw domain_error("W_subst: A must be > 0");
  const double lnW = x / std::pow(A, 1.0 / k) * std::log(tau);
  if (domain_hi && lnW > std::log(*domain_hi))
    throw range_error("W_subst: W = exp(" + std::to_string(lnW) + ") beyond the ladder domain", std::exp(lnW));
  if (lnW > std::log(std::numeric_limits<double>::max())) throw range_error("W_subst: W overflows", HUGE_VAL);
  return std::exp(lnW);
}

/// A ln^k W / ln^k tau, identically x^k.
inline double theorem1_target_identity(double x, double tau, int k, double A) {
  return A * std::pow(std::log(W_subst(x, tau, k, A)) / std::log(tau), k);
}

/// tau values putting W(x, tau) on the given heights.
inline std::vector<double> tau_grid_for_heights(double x, int k, double A, const std::vector<double>& heights) {
  std::vector<double> out;
  for (double W : heights) out.push_back(std::exp(std::log(W) * std::pow(A, 1.0 / k) / x));
  return out;
}

inline const std::vector<double>& default_heights() {
  static const std::vector<double> h{1e3, 1e4, 1e5, 1e6};
  return h;
}

/// (1/ln^k tau) I_mm at T = W(x, tau); tends to x^k.
inline ConvergenceReport theorem1(const Ladder& lad, double x, int k, const FourierMode& mode,
                                  const std::vector<double>& tau_grid, int workers = 1, double tol = 1e-9) {
  if (k < 1) throw domain_error("theorem1: k must be >= 1");
  const double A = mode_norm(mode);
  ConvergenceReport rep;
  rep.name = "theorem1";
  rep.grid = tau_grid;
  rep.target = std::pow(x, k);
  const std::size_t n = tau_grid.size();
  rep.heights.resize(n);
  rep.raw.resize(n);
  rep.normalized.resize(n);
  for (std::size_t i = 0; i < n; ++i) rep.heights[i] = W_subst(x, tau_grid[i], k, A, lad.domain_hi());
  parallel_for(n, workers, [&](std::size_t i) {
    const TransformSpec spec{rep.heights[i], k, mode.l, tol};
    rep.raw[i] = ip_pullback(lad, mode, mode, spec);
    rep.normalized[i] = rep.raw[i] / std::pow(std::log(tau_grid[i]), k);
  });
  finish_report(rep);
  return rep;
}

enum class FermatVerdict { counterexample_signature, consistent_with_fermat_wiles, inconclusive };

inline std::string to_string(FermatVerdict v) {
  switch (v) {
    case FermatVerdict::counterexample_signature: return "counterexample signature";
    case FermatVerdict::consistent_with_fermat_wiles: return "limit != 1 consistent with Fermat-Wiles";
    case FermatVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct FermatConditionReport {
  ConvergenceReport report;
  std::string rational;      ///< reduced z^n / (x^n + y^n)
  bool target_is_one = false;  ///< exact integer test
  double distance_from_one = 0.0;  ///< |extrapolated limit - 1|
  FermatVerdict verdict = FermatVerdict::inconclusive;
};

/// theorem1 at x = FR with the verdict on whether the limit stays away from 1.
inline FermatConditionReport fermat_zeta_condition(const Ladder& lad, const FermatRational& fr, int k,
                                                   const FourierMode& mode, const std::vector<double>& tau_grid,
                                                   int workers = 1, double min_separation = 0.1) {
  FermatConditionReport out;
  out.report = theorem1(lad, fr.real_value(), k, mode, tau_grid, workers);
  out.report.name = "fermat_zeta_condition";
  out.rational = fr.str();
  out.target_is_one = fr.is_one();
  out.distance_from_one = std::abs(out.report.extrapolated_limit() - 1.0);
  if (out.target_is_one)
    out.verdict = FermatVerdict::counterexample_signature;
  else if (out.distance_from_one > min_separation)
    out.verdict = FermatVerdict::consistent_with_fermat_wiles;
  else
    out.verdict = FermatVerdict::inconclusive;
  return out;
}

namespace detail {

template <class Value>
ConvergenceReport height_report(std::string name, const std::vector<double>& T_grid, double target, int k,
                                int workers, Value value) {
  ConvergenceReport rep;
  rep.name = std::move(name);
  rep.grid = T_grid;
  rep.heights = T_grid;
  rep.target = target;
  const std::size_t n = T_grid.size();
  rep.raw.resize(n);
  rep.normalized.resize(n);
  parallel_for(n, workers, [&](std::size_t i) {
    rep.raw[i] = value(T_grid[i]);
    rep.normalized[i] = k == 0 ? rep.raw[i] : rep.raw[i] / std::pow(std::log(T_grid[i]), k);
  });
  finish_report(rep);
  return rep;
}

}  // namespace detail

/// (1/ln^k T) int prod |zeta|^2 dt over the transformed segment; tends to 2l.
inline ConvergenceReport functional_F1(const Ladder& lad, double l, int k, const std::vector<double>& T_grid,
                                       int workers = 1, double tol = 1e-9) {
  if (k < 0) throw domain_error("functional_F1: k must be >= 0");
  const FourierMode u = FourierMode::unit(l);
  return detail::height_report("F1", T_grid, 2.0 * l, k, workers, [&](double T) {
    return ip_pullback(lad, u, u, TransformSpec{T, k, l, tol});
  });
}

enum class F2Kind { cos2, sin2 };

/// How the Fermat form of F2 sets the mode frequency once l = FR.
enum class FrequencyConvention {
  over_l,     ///< pi m / l with l = FR (follows from the normalization integrals)
  printed,    ///< pi m FR, the frequency scaled by FR rather than divided
};

/// (1/ln^k T) int prod |zeta|^2 f^2 dt with f = cos or sin of mode m; tends to int_0^{2l} f^2.
inline ConvergenceReport functional_F2(const Ladder& lad, double l, int k, int m, const std::vector<double>& T_grid,
                                       F2Kind kind, int workers = 1,
                                       FrequencyConvention conv = FrequencyConvention::over_l, double tol = 1e-9) {
  if (k < 0) throw domain_error("functional_F2: k must be >= 0");
  FourierMode f = kind == F2Kind::cos2 ? FourierMode::cosine(m, l) : FourierMode::sine(m, l);
  if (conv == FrequencyConvention::printed) f.omega = kPi * m * l;
  f.validate();
  return detail::height_report(kind == F2Kind::cos2 ? "F2_cos2" : "F2_sin2", T_grid, mode_norm(f), k, workers,
                               [&](double T) { return ip_pullback(lad, f, f, TransformSpec{T, k, l, tol}); });
}

struct LnPowerEstimate {
  double ratio_k = 0.0;     ///< int weight / ln^k T
  double ratio_root = 0.0;  ///< (int weight)^{1/k} / ln T
};

/// Unit mode with l = 1/2.
inline LnPowerEstimate ln_power_estimator(const Ladder& lad, double T, int k, double tol = 1e-9) {
  if (k < 1) throw domain_error("ln_power_estimator: k must be >= 1");
  const FourierMode u = FourierMode::unit(0.5);
  const double I = ip_pullback(lad, u, u, TransformSpec{T, k, 0.5, tol});
  LnPowerEstimate e;
  e.ratio_k = I / std::pow(std::log(T), k);
  e.ratio_root = std::pow(I, 1.0 / k) / std::log(T);
  return e;
}

inline ConvergenceReport ln_power_report(const Ladder& lad, int k, const std::vector<double>& T_grid,
                                         int workers = 1) {
  return detail::height_report("lnpow", T_grid, 1.0, 0, workers,
                               [&](double T) { return ln_power_estimator(lad, T, k).ratio_root; });
}

struct QuotientOptions {
  UniformOptions quad{};
  PrecisionPolicy policy{};
};

/// [J(T, 1T) / int_T^{1T} |zeta(sigma + it)|^2 dt] * zeta(2 sigma) / ln T; tends to 1.
inline double sigma_quotient(const Ladder& lad, double sigma, double T, const QuotientOptions& opt = {}) {
  if (sigma == 0.5) throw domain_error("sigma_quotient: sigma = 1/2 is the critical line itself");
  if (!(sigma >= 0.55)) throw domain_error("sigma_quotient: requires sigma >= 0.55");
  const double T1 = lad.phi1_inverse(T);
  const double on_line = lad.hl_J(T, T1);
  const PrecisionPolicy pol = opt.policy;
  BatchIntegrand f = [sigma, pol](const PanelLayout& lay, std::span<double> out) {
    offline_abs2_batch(sigma, lay, out, pol);
  };
  const double off_line = integrate_uniform(f, Interval{T, T1}, opt.quad).value;
  const double z2s = zeta_em(2.0 * sigma, 0.0, pol).real();
  return on_line / off_line * z2s / std::log(T);
}

inline ConvergenceReport quotient_report(const Ladder& lad, double sigma, const std::vector<double>& T_grid,
                                         const QuotientOptions& opt = {}) {
  // the offline integral parallelizes internally; grid points run in order
  return detail::height_report("quotient", T_grid, 1.0, 0, 1,
                               [&](double T) { return sigma_quotient(lad, sigma, T, opt); });
}

}  // namespace zladder
