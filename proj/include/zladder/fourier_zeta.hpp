#pragma once

// Fourier system on [0, 2l] and its zeta-transformed counterpart.
//
// Transformed inner products
//   I_ab = int_{kT}^{k(T+2l)} f_a(phi^k(t) - T) f_b(phi^k(t) - T) prod_{r<k} |zeta(1/2 + i phi^r(t))|^2 dt
// are computed two ways. The direct path integrates the oscillatory product
// in t. The pullback substitutes v = phi^k(t); since phi1' * omega_hat = |zeta|^2
// the weight becomes prod_{j=1..k} omega_hat(phi^{-j}(v)), which is smooth.

#include <cmath>
#include <concepts>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zladder/errors.hpp"
#include "zladder/ladder.hpp"
#include "zladder/parallel.hpp"
#include "zladder/quadrature.hpp"

namespace zladder {

enum class ModeKind { unit, cosine, sine };

struct FourierMode {
  ModeKind kind = ModeKind::unit;
  int m = 0;
  double l = 0.5;
  /// Angular frequency override; the standard system uses pi m / l.
  std::optional<double> omega;

  static FourierMode unit(double l) { return {ModeKind::unit, 0, l, {}}; }
  static FourierMode cosine(int m, double l) { return {ModeKind::cosine, m, l, {}}; }
  static FourierMode sine(int m, double l) { return {ModeKind::sine, m, l, {}}; }

  void validate() const {
    if (!(l > 0.0) || !std::isfinite(l)) throw domain_error("FourierMode: l must be > 0");
    if (kind != ModeKind::unit && m < 1) throw domain_error("FourierMode: m must be >= 1");
    if (omega && !(std::isfinite(*omega) && *omega > 0.0)) throw domain_error("FourierMode: omega must be > 0");
  }

  double frequency() const {
    if (kind == ModeKind::unit) return 0.0;
    return omega ? *omega : kPi * m / l;
  }

  double length() const { return 2.0 * l; }

  /// Value at s in [0, 2l] without the range check.
  double operator()(double s) const {
    switch (kind) {
      case ModeKind::unit: return 1.0;
      case ModeKind::cosine: return std::cos(frequency() * s);
      case ModeKind::sine: return std::sin(frequency() * s);
    }
    return 0.0;
  }

  std::string name() const {
    switch (kind) {
      case ModeKind::unit: return "unit";
      case ModeKind::cosine: return "cos" + std::to_string(m);
      case ModeKind::sine: return "sin" + std::to_string(m);
    }
    return "?";
  }

  friend bool operator==(const FourierMode&, const FourierMode&) = default;
};

/// Anything evaluable on [0, length()] with a known squared norm.
/// FourierMode is the only system exercised; others go through numerical product integrals.
template <class M>
concept SegmentMode = requires(const M& f, double s) {
  { f(s) } -> std::convertible_to<double>;
  { f.length() } -> std::convertible_to<double>;
};

/// {unit, cos1, sin1, ..., cosM, sinM}
inline std::vector<FourierMode> fourier_system(int M, double l) {
  std::vector<FourierMode> out{FourierMode::unit(l)};
  for (int m = 1; m <= M; ++m) {
    out.push_back(FourierMode::cosine(m, l));
    out.push_back(FourierMode::sine(m, l));
  }
  return out;
}

inline double mode_eval(const FourierMode& f, double t) {
  f.validate();
  if (!(t >= 0.0 && t <= f.length()))
    throw range_error("mode_eval: t outside [0, 2l]", t);
  return f(t);
}

namespace detail {

// int_0^L cos(w t) dt and int_0^L sin(w t) dt
inline double cos_moment(double w, double L) { return w == 0.0 ? L : std::sin(w * L) / w; }
inline double sin_moment(double w, double L) { return w == 0.0 ? 0.0 : (1.0 - std::cos(w * L)) / w; }

}  // namespace detail

/// int_0^{2l} f_a f_b ds in closed form.
inline double mode_product_integral(const FourierMode& a, const FourierMode& b) {
  a.validate();
  b.validate();
  if (a.l != b.l) throw domain_error("mode_product_integral: modes must share l");
  const double L = a.length();
  if (!a.omega && !b.omega) {
    // integer multiples of pi/l: plain orthogonality, exact
    if (a.kind != b.kind) return 0.0;
    if (a.kind == ModeKind::unit) return L;
    return a.m == b.m ? a.l : 0.0;
  }
  const double wa = a.frequency();
  const double wb = b.frequency();
  const bool sa = a.kind == ModeKind::sine;
  const bool sb = b.kind == ModeKind::sine;
  if (!sa && !sb) return 0.5 * (detail::cos_moment(wa - wb, L) + detail::cos_moment(wa + wb, L));
  if (sa && sb) return 0.5 * (detail::cos_moment(wa - wb, L) - detail::cos_moment(wa + wb, L));
  const double ws = sa ? wa : wb;
  const double wc = sa ? wb : wa;
  return 0.5 * (detail::sin_moment(ws + wc, L) + detail::sin_moment(ws - wc, L));
}

/// A_m = int_0^{2l} f_m^2.
inline double mode_norm(const FourierMode& f) { return mode_product_integral(f, f); }

template <SegmentMode A, SegmentMode B>
double mode_product_integral(const A& a, const B& b, double tol = 1e-12) {
  return integrate([&](double s) { return a(s) * b(s); }, Interval{0.0, a.length()}, tol).value;
}

enum class WeightNormalization {
  raw,            ///< products of |zeta|^2, divided by ln^k T afterwards
  omega_divided,  ///< products of |zeta|^2 / omega_hat, no further scaling
};

struct TransformSpec {
  double T = 1e3;
  int k = 1;
  double l = 0.5;
  double tol = 1e-9;
  WeightNormalization normalization = WeightNormalization::raw;

  void validate() const {
    if (!(T > 0.0) || !std::isfinite(T)) throw domain_error("TransformSpec: T must be > 0");
    if (k < 0) throw domain_error("TransformSpec: k must be >= 0");
    if (!(l > 0.0)) throw domain_error("TransformSpec: l must be > 0");
    if (!(tol > 0.0)) throw domain_error("TransformSpec: tol must be > 0");
  }

  /// ln^k T for raw weights, 1 otherwise.
  double scale() const { return normalization == WeightNormalization::raw ? std::pow(std::log(T), k) : 1.0; }
};

/// prod_{r=0}^{k-1} |zeta(1/2 + i phi^r(t))|^2, optionally divided by omega_hat at each point.
inline double transformed_weight(const Ladder& lad, double t, int k,
                                 WeightNormalization norm = WeightNormalization::raw) {
  if (k < 0) throw domain_error("transformed_weight: k must be >= 0");
  double w = 1.0;
  double x = t;
  for (int r = 0; r < k; ++r) {
    const double y = lad.phi1(x);
    w *= lad.integrand(x);
    if (norm == WeightNormalization::omega_divided) w /= lad.defining_slope(y);
    x = y;
  }
  return w;
}

/// Direct-path evaluator. Forward iterates are cached per quadrature node so a
/// Gram matrix pays the k Newton solves once per node.
class DirectPath {
 public:
  DirectPath(const Ladder& lad, const TransformSpec& spec) : lad_(lad), spec_(spec) {
    spec_.validate();
    if (spec_.k > 0) {
      lo_ = lad_.reverse_tower(spec_.T, spec_.k).levels.back();
      hi_ = lad_.reverse_tower(spec_.T + 2.0 * spec_.l, spec_.k).levels.back();
    }
  }

  double lower() const { return lo_; }
  double upper() const { return hi_; }

  template <SegmentMode A, SegmentMode B>
  double inner_product(const A& a, const B& b) {
    if (spec_.k == 0) {
      if constexpr (std::same_as<A, FourierMode> && std::same_as<B, FourierMode>)
        return mode_product_integral(a, b);
      else
        return mode_product_integral(a, b, spec_.tol);
    }
    auto f = [&](double t) {
      const Node& n = node(t);
      return a(n.s) * b(n.s) * n.weight;
    };
    QuadOptions opt;
    opt.rel_tol = spec_.tol;
    opt.abs_tol = spec_.tol * spec_.scale() * 2.0 * spec_.l;
    opt.initial_width = 0.5 * mean_zero_spacing(hi_);
    return integrate_adaptive(f, Interval{lo_, hi_}, opt).value;
  }

  std::size_t cached_nodes() const { return cache_.size(); }

 private:
  struct Node {
    double s;
    double weight;
  };

  const Node& node(double t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    double w = 1.0;
    double x = t;
    for (int r = 0; r < spec_.k; ++r) {
      const double y = lad_.phi1(x);
      w *= lad_.integrand(x);
      if (spec_.normalization == WeightNormalization::omega_divided) w /= lad_.defining_slope(y);
      x = y;
    }
    const double s = std::clamp(x - spec_.T, 0.0, 2.0 * spec_.l);
    return cache_.emplace(t, Node{s, w}).first->second;
  }

  const Ladder& lad_;
  TransformSpec spec_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::map<double, Node> cache_;
};

template <SegmentMode A, SegmentMode B>
double ip_direct(const Ladder& lad, const A& a, const B& b, const TransformSpec& spec) {
  DirectPath dp(lad, spec);
  return dp.inner_product(a, b);
}

/// Pullback-path evaluator over v in [T, T + 2l].
///
/// The weight W(v) = prod_j omega_j(v) is split as W(T) * int f_a f_b plus a
/// correction int f_a f_b (W(v) - W(T)); the difference is built from
/// log1p of level increments, so tiny functionals keep their relative accuracy.
class PullbackPath {
 public:
  PullbackPath(const Ladder& lad, const TransformSpec& spec) : lad_(lad), spec_(spec) {
    spec_.validate();
    if (spec_.k > 0 && spec_.normalization == WeightNormalization::raw) {
      // make sure the whole segment is inside the table before integrating
      lad_.reverse_tower(spec_.T + 2.0 * spec_.l, spec_.k - 1);
      base_levels_ = lad_.reverse_tower(spec_.T, spec_.k - 1).levels;
      double w = 1.0;
      for (double x : base_levels_) {
        base_omega_.push_back(lad_.defining_slope(x));
        w *= base_omega_.back();
      }
      base_weight_ = w;
    }
  }

  /// W(T).
  double base_weight() const { return base_weight_; }

  /// W(T + s).
  double weight(double s) const { return base_weight_ + weight_delta(s); }

  /// W(T + s) - W(T).
  double weight_delta(double s) const {
    if (!raw()) return 0.0;
    double d = 0.0;   // W_j(v) - W_j(T)
    double wt = 1.0;  // W_j(T)
    double x = spec_.T + s;
    for (std::size_t j = 0; j < base_levels_.size(); ++j) {
      if (j > 0) x = lad_.phi1_inverse(x);
      const double delta = std::log1p((x - base_levels_[j]) / base_levels_[j]);
      d = d * (base_omega_[j] + delta) + wt * delta;
      wt *= base_omega_[j];
    }
    return d;
  }

  template <SegmentMode A, SegmentMode B>
  double inner_product(const A& a, const B& b) const {
    double p;
    if constexpr (std::same_as<A, FourierMode> && std::same_as<B, FourierMode>)
      p = mode_product_integral(a, b);
    else
      p = mode_product_integral(a, b, spec_.tol * 1e-3);
    if (!raw()) return p;
    auto f = [&](double s) { return a(s) * b(s) * weight_delta(s); };
    QuadOptions opt;
    opt.rel_tol = spec_.tol;
    opt.abs_tol = spec_.tol * 1e-3 * base_weight_ * 2.0 * spec_.l;
    const double corr = integrate_adaptive(f, Interval{0.0, 2.0 * spec_.l}, opt).value;
    return base_weight_ * p + corr;
  }

 private:
  bool raw() const { return spec_.k > 0 && spec_.normalization == WeightNormalization::raw; }

  const Ladder& lad_;
  TransformSpec spec_;
  std::vector<double> base_levels_;  ///< T, 1T, ..., (k-1)T
  std::vector<double> base_omega_;
  double base_weight_ = 1.0;
};

template <SegmentMode A, SegmentMode B>
double ip_pullback(const Ladder& lad, const A& a, const B& b, const TransformSpec& spec) {
  return PullbackPath(lad, spec).inner_product(a, b);
}

/// I_mm / (A_m * scale); tends to 1 (normalization of the transformed system).
inline double normalization_check(const Ladder& lad, const FourierMode& f, const TransformSpec& spec) {
  return ip_pullback(lad, f, f, spec) / (mode_norm(f) * spec.scale());
}

inline constexpr std::size_t kMaxGramModes = 12;

/// G[a][b] = I_ab / (sqrt(A_a A_b) * scale), upper triangle computed and mirrored.
inline std::vector<std::vector<double>> gram_matrix(const Ladder& lad, const std::vector<FourierMode>& modes,
                                                    const TransformSpec& spec, int workers = 1) {
  if (modes.empty() || modes.size() > kMaxGramModes)
    throw domain_error("gram_matrix: between 1 and 12 modes");
  for (const auto& m : modes)
    if (m.l != spec.l) throw domain_error("gram_matrix: modes must share the transform's l");
  const std::size_t n = modes.size();
  PullbackPath pb(lad, spec);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<double> vals(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    vals[p] = pb.inner_product(modes[i], modes[j]);
  });
  std::vector<std::vector<double>> G(n, std::vector<double>(n));
  const double sc = spec.scale();
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    G[i][j] = G[j][i] = vals[p] / (std::sqrt(mode_norm(modes[i]) * mode_norm(modes[j])) * sc);
  }
  return G;
}

/// (1/scale) int weight * cos((2 pi m / l)(phi^k(t) - T)) dt; tends to 0.
inline double cosine_diff_functional(const Ladder& lad, int m, double l, const TransformSpec& spec) {
  if (m < 1) throw domain_error("cosine_diff_functional: m must be >= 1");
  if (l != spec.l) throw domain_error("cosine_diff_functional: l must match the transform");
  return ip_pullback(lad, FourierMode::cosine(2 * m, l), FourierMode::unit(l), spec) / spec.scale();
}

}  // namespace zladder
