#pragma once

// Riemann zeta on and near the critical line.
//
// Two independent routes are provided:
//   * Riemann-Siegel: Hardy Z(t) from the main sum of length floor(sqrt(t/2pi))
//     plus up to four asymptotic corrections C_1..C_4.
//   * Euler-Maclaurin: zeta(sigma + it) for sigma >= 1/2, any t >= 0, with the
//     truncation length chosen from the precision policy.
// Batched evaluators over uniform panel layouts advance the phases n^{-it}
// by rotation from panel to panel, which is what makes tabulating the
// Hardy-Littlewood integral to heights ~1e6 affordable.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "zladder/errors.hpp"
#include "zladder/zeta_constants.hpp"

namespace zladder {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

struct PrecisionPolicy {
  int rs_correction_terms = 2;  ///< C_1..C_k beyond C_0, 0..4
  double em_crossover = 30.0;   ///< below this height the critical line uses Euler-Maclaurin
  int em_terms = 20;            ///< Euler-Maclaurin Bernoulli corrections
  double target_rel_err = 1e-9;

  void validate() const {
    if (rs_correction_terms < 0 || rs_correction_terms > 4)
      throw domain_error("rs_correction_terms must lie in [0, 4]");
    if (!(em_crossover >= 10.0)) throw domain_error("em_crossover must be >= 10");
    if (em_terms < 2 || em_terms > static_cast<int>(detail::kBernoulliOverFactorial.size()))
      throw domain_error("em_terms must lie in [2, 60]");
    if (!(target_rel_err > 0.0)) throw domain_error("target_rel_err must be > 0");
  }

  friend bool operator==(const PrecisionPolicy&, const PrecisionPolicy&) = default;
};

/// Mean distance between consecutive zeros near height t, 2pi / ln(t / 2pi).
/// Clamped below t = 2pi e where the asymptotic density is meaningless.
inline double mean_zero_spacing(double t) {
  const double tt = std::max(t, kTwoPi * std::numbers::e);
  return kTwoPi / std::log(tt / kTwoPi);
}

namespace detail {

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

/// Sum_{k=0}^{terms} C_k(p) a^{-k}, with x = p - 1/2.
inline double rs_correction_series(double x, double a_inv, int terms) {
  const double y = x * x;
  double acc = horner(kRsC0, y);
  double pw = a_inv;
  if (terms >= 1) { acc += x * horner(kRsC1, y) * pw; pw *= a_inv; }
  if (terms >= 2) { acc += horner(kRsC2, y) * pw; pw *= a_inv; }
  if (terms >= 3) { acc += x * horner(kRsC3, y) * pw; pw *= a_inv; }
  if (terms >= 4) { acc += horner(kRsC4, y) * pw; }
  return acc;
}

/// Riemann-Siegel remainder (-1)^{N-1} a^{-1/2} sum_k C_k a^{-k}, a = sqrt(t/2pi).
inline double rs_remainder(double t, int terms) {
  const double a = std::sqrt(t / kTwoPi);
  const double n = std::floor(a);
  const double sign = (static_cast<long long>(n) % 2 == 1) ? 1.0 : -1.0;
  return sign * rs_correction_series(a - n - 0.5, 1.0 / a, terms) / std::sqrt(a);
}

inline long long rs_length(double t) {
  return static_cast<long long>(std::floor(std::sqrt(t / kTwoPi)));
}

/// Euler-Maclaurin truncation point for |s| under the given policy.
inline long long em_length(double abs_s, const PrecisionPolicy& pol) {
  const double factor = std::pow(1e3 / pol.target_rel_err, 1.0 / (2.0 * pol.em_terms));
  const double n = std::ceil(abs_s / kTwoPi * factor);
  return std::max<long long>(10, static_cast<long long>(n) + 1);
}

/// N^{1-s}/(s-1) + N^{-s}/2 + Bernoulli corrections; everything but the head sum.
inline std::complex<double> em_tail(std::complex<double> s, long long n_trunc, int max_terms) {
  const double nd = static_cast<double>(n_trunc);
  const double ln_n = std::log(nd);
  const std::complex<double> n_ms = std::exp(-s * ln_n);
  std::complex<double> tail = n_ms * nd / (s - 1.0) + 0.5 * n_ms;
  std::complex<double> poch = s;     // s (s+1) ... (s+2j-2)
  std::complex<double> npow = n_ms / nd;  // N^{-s-2j+1}
  double prev = INFINITY;
  for (int j = 1; j <= max_terms; ++j) {
    const std::complex<double> term = kBernoulliOverFactorial[j - 1] * poch * npow;
    const double mag = std::abs(term);
    if (mag > prev) break;  // asymptotic series started to diverge
    tail += term;
    if (mag <= 1e-18 * std::abs(tail)) break;
    prev = mag;
    poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    npow /= nd * nd;
  }
  return tail;
}

}  // namespace detail

/// Riemann-Siegel theta from its asymptotic series. Terms are added while they
/// still decrease, so accuracy degrades gracefully towards t = 1.
inline double theta(double t, const PrecisionPolicy& = {}) {
  if (!(t >= 1.0)) throw domain_error("theta: requires t >= 1, got " + std::to_string(t));
  double value = 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  double pw = inv;
  double prev = INFINITY;
  for (double c : detail::kThetaSeries) {
    const double term = c * pw;
    if (term > prev) break;
    value += term;
    if (term < 1e-17 * std::max(1.0, std::abs(value))) break;
    prev = term;
    pw *= inv2;
  }
  return value;
}

/// Gabcke-type bound on the Riemann-Siegel truncation error in Z(t) after
/// C_0..C_terms. Stated for t >= 200; used below that as an estimate only.
inline double rs_error_bound(double t, int terms) {
  static constexpr double kCoef[5] = {0.127, 0.053, 0.011, 0.031, 0.017};
  return kCoef[terms] * std::pow(t, -(2.0 * terms + 3.0) / 4.0);
}

/// zeta(sigma + it) by Euler-Maclaurin summation. Cost is linear in t; the
/// practical ceiling in double precision is around t ~ 1e7.
inline std::complex<double> zeta_em(double sigma, double t, const PrecisionPolicy& pol = {}) {
  pol.validate();
  if (!(sigma >= 0.5)) throw domain_error("zeta_em: requires sigma >= 1/2");
  if (!(t >= 0.0)) throw domain_error("zeta_em: requires t >= 0");
  if (sigma == 1.0 && t == 0.0) throw domain_error("zeta_em: pole at s = 1");
  const std::complex<double> s(sigma, t);
  const long long n_trunc = detail::em_length(std::abs(s), pol);
  std::complex<double> head = 0.0;
  for (long long n = 1; n < n_trunc; ++n) {
    const double ln_n = std::log(static_cast<double>(n));
    const double amp = std::exp(-sigma * ln_n);
    head += amp * std::complex<double>(std::cos(t * ln_n), -std::sin(t * ln_n));
  }
  return head + detail::em_tail(s, n_trunc, pol.em_terms);
}

/// Everything known about one point of the critical line.
struct CriticalValue {
  double t = 0.0;
  double Z = 0.0;
  double theta = 0.0;
  double abs2 = 0.0;
  bool riemann_siegel = false;  ///< false: Euler-Maclaurin route
  double error_bound = 0.0;     ///< absolute, on Z
  bool accuracy_warning = false;
};

namespace detail {

inline double rs_main_sum(double t, double th) {
  const long long n_len = rs_length(t);
  double sum = 0.0;
  for (long long n = 1; n <= n_len; ++n) {
    const double nd = static_cast<double>(n);
    sum += std::cos(th - t * std::log(nd)) / std::sqrt(nd);
  }
  return 2.0 * sum;
}

}  // namespace detail

inline CriticalValue evaluate_critical(double t, const PrecisionPolicy& pol = {}) {
  pol.validate();
  if (!(t >= 1.0)) throw domain_error("critical line: requires t >= 1, got " + std::to_string(t));
  CriticalValue v;
  v.t = t;
  v.theta = theta(t, pol);
  if (t >= pol.em_crossover) {
    v.riemann_siegel = true;
    v.Z = detail::rs_main_sum(t, v.theta) + detail::rs_remainder(t, pol.rs_correction_terms);
    v.error_bound = rs_error_bound(t, pol.rs_correction_terms);
    v.accuracy_warning = v.error_bound > pol.target_rel_err * std::abs(v.Z);
  } else {
    const std::complex<double> z = zeta_em(0.5, t, pol);
    const std::complex<double> rot(std::cos(v.theta), std::sin(v.theta));
    v.Z = (rot * z).real();
    v.error_bound = pol.target_rel_err * std::abs(z);
  }
  v.abs2 = v.Z * v.Z;
  return v;
}

inline double hardy_Z(double t, const PrecisionPolicy& pol = {}) { return evaluate_critical(t, pol).Z; }

/// |zeta(1/2 + it)|^2 computed as Z(t)^2.
inline double abs2_critical(double t, const PrecisionPolicy& pol = {}) {
  return evaluate_critical(t, pol).abs2;
}

/// |zeta(1/2 + it)|^2 for every t >= 0 (the Hardy-Littlewood integrand).
/// Below the crossover this is |zeta_em|^2 directly, so theta is never needed near t = 0.
inline double critical_integrand(double t, const PrecisionPolicy& pol = {}) {
  if (!(t >= 0.0)) throw domain_error("critical_integrand: requires t >= 0");
  if (t >= pol.em_crossover) return abs2_critical(t, pol);
  return std::norm(zeta_em(0.5, t, pol));
}

/// Uniform panels [a + p w, a + (p + 1) w], p < panels, with nodes at
/// a + (p + u_j) w for unit offsets u_j in [0, 1].
struct PanelLayout {
  double a = 0.0;
  double width = 0.0;
  std::size_t panels = 0;
  std::span<const double> offsets;

  std::size_t nodes_per_panel() const { return offsets.size(); }
  std::size_t size() const { return panels * offsets.size(); }
  double node(std::size_t p, std::size_t j) const {
    return a + (static_cast<double>(p) + offsets[j]) * width;
  }
  double end() const { return a + static_cast<double>(panels) * width; }
};

namespace detail {

/// Panels processed between exact reseeding of the rotated phases.
inline constexpr std::size_t kSweepReseed = 512;

/// S(t) = sum_{n <= cut(t)} amp(n) n^{-it} at every node of `lay`, written to
/// out[p * J + j]. `cut` must be non-decreasing in t. The phases n^{-i t_j}
/// are advanced panel to panel by the fixed rotation n^{-i w}.
template <class Amp, class Cut>
void dirichlet_sweep(const PanelLayout& lay, Amp amp, Cut cut, std::span<std::complex<double>> out) {
  const std::size_t J = lay.nodes_per_panel();
  if (lay.panels == 0 || J == 0) return;
  std::vector<double> re, im, rot_re, rot_im, amps;
  std::vector<long long> cuts(J);
  std::vector<double> acc_re(J), acc_im(J);

  for (std::size_t p0 = 0; p0 < lay.panels; p0 += kSweepReseed) {
    const std::size_t p1 = std::min(lay.panels, p0 + kSweepReseed);
    const long long n_max = cut(lay.node(p1 - 1, J - 1) + lay.width);  // safe upper bound
    const std::size_t nn = static_cast<std::size_t>(std::max<long long>(n_max, 0));
    re.assign(nn * J, 0.0);
    im.assign(nn * J, 0.0);
    rot_re.resize(nn);
    rot_im.resize(nn);
    amps.resize(nn);
    for (std::size_t i = 0; i < nn; ++i) {
      const double ln_n = std::log(static_cast<double>(i + 1));
      amps[i] = amp(static_cast<long long>(i + 1));
      rot_re[i] = std::cos(lay.width * ln_n);
      rot_im[i] = -std::sin(lay.width * ln_n);
      for (std::size_t j = 0; j < J; ++j) {
        const double ph = lay.node(p0, j) * ln_n;
        re[i * J + j] = std::cos(ph);
        im[i * J + j] = -std::sin(ph);
      }
    }
    for (std::size_t p = p0; p < p1; ++p) {
      long long lo = n_max;
      long long hi = 0;
      for (std::size_t j = 0; j < J; ++j) {
        cuts[j] = std::min<long long>(cut(lay.node(p, j)), n_max);
        lo = std::min(lo, cuts[j]);
        hi = std::max(hi, cuts[j]);
      }
      std::fill(acc_re.begin(), acc_re.end(), 0.0);
      std::fill(acc_im.begin(), acc_im.end(), 0.0);
      const std::size_t nlo = static_cast<std::size_t>(std::max<long long>(lo, 0));
      const std::size_t nhi = static_cast<std::size_t>(std::max<long long>(hi, 0));
      for (std::size_t i = 0; i < nn; ++i) {
        double* zr = &re[i * J];
        double* zi = &im[i * J];
        const double a = amps[i];
        const double cr = rot_re[i];
        const double ci = rot_im[i];
        if (i < nlo) {
          for (std::size_t j = 0; j < J; ++j) {
            acc_re[j] += a * zr[j];
            acc_im[j] += a * zi[j];
          }
        } else if (i < nhi) {
          for (std::size_t j = 0; j < J; ++j) {
            if (static_cast<long long>(i) < cuts[j]) {
              acc_re[j] += a * zr[j];
              acc_im[j] += a * zi[j];
            }
          }
        }
        for (std::size_t j = 0; j < J; ++j) {
          const double r = zr[j] * cr - zi[j] * ci;
          zi[j] = zr[j] * ci + zi[j] * cr;
          zr[j] = r;
        }
      }
      for (std::size_t j = 0; j < J; ++j) out[p * J + j] = {acc_re[j], acc_im[j]};
    }
  }
}

}  // namespace detail

/// |zeta(1/2 + it)|^2 at every node of `lay` (out[p * J + j]). Agrees with
/// critical_integrand() pointwise to rounding; much faster on long layouts.
inline void critical_abs2_batch(const PanelLayout& lay, std::span<double> out,
                                const PrecisionPolicy& pol = {}) {
  pol.validate();
  const std::size_t J = lay.nodes_per_panel();
  if (out.size() < lay.size()) throw domain_error("critical_abs2_batch: output too small");
  if (lay.a < pol.em_crossover) {
    for (std::size_t p = 0; p < lay.panels; ++p)
      for (std::size_t j = 0; j < J; ++j) out[p * J + j] = critical_integrand(lay.node(p, j), pol);
    return;
  }
  std::vector<std::complex<double>> sums(lay.size());
  detail::dirichlet_sweep(
      lay, [](long long n) { return 1.0 / std::sqrt(static_cast<double>(n)); },
      [](double t) { return detail::rs_length(t); }, sums);
  for (std::size_t p = 0; p < lay.panels; ++p) {
    for (std::size_t j = 0; j < J; ++j) {
      const double t = lay.node(p, j);
      const double th = theta(t, pol);
      const std::complex<double> s = sums[p * J + j];
      const double z = 2.0 * (std::cos(th) * s.real() - std::sin(th) * s.imag()) +
                       detail::rs_remainder(t, pol.rs_correction_terms);
      out[p * J + j] = z * z;
    }
  }
}

/// |zeta(sigma + it)|^2 at every node of `lay` by Euler-Maclaurin, with one
/// truncation length for the whole layout (chosen at its top end).
inline void offline_abs2_batch(double sigma, const PanelLayout& lay, std::span<double> out,
                               const PrecisionPolicy& pol = {}) {
  pol.validate();
  if (!(sigma >= 0.5)) throw domain_error("offline_abs2_batch: requires sigma >= 1/2");
  if (!(lay.a >= 0.0)) throw domain_error("offline_abs2_batch: requires t >= 0");
  if (out.size() < lay.size()) throw domain_error("offline_abs2_batch: output too small");
  const std::size_t J = lay.nodes_per_panel();
  const double t_top = lay.end();
  const long long n_trunc = detail::em_length(std::abs(std::complex<double>(sigma, t_top)), pol);
  std::vector<std::complex<double>> sums(lay.size());
  detail::dirichlet_sweep(
      lay, [sigma](long long n) { return std::exp(-sigma * std::log(static_cast<double>(n))); },
      [n_trunc](double) { return n_trunc - 1; }, sums);
  for (std::size_t p = 0; p < lay.panels; ++p) {
    for (std::size_t j = 0; j < J; ++j) {
      const std::complex<double> s(sigma, lay.node(p, j));
      if (sigma == 1.0 && s.imag() == 0.0) throw domain_error("offline_abs2_batch: pole at s = 1");
      out[p * J + j] = std::norm(sums[p * J + j] + detail::em_tail(s, n_trunc, pol.em_terms));
    }
  }
}

}  // namespace zladder
