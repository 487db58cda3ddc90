#pragma once

// Panel quadrature for integrands built on |zeta(1/2 + it)|^2.
//
// Every panel is integrated with the 15-point Kronrod rule; the embedded
// 7-point Gauss rule supplies the error estimate on uniform layouts, and
// bisection differences drive the adaptive integrator. All reductions run in
// a fixed order, so results do not depend on the number of workers.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zladder/errors.hpp"
#include "zladder/parallel.hpp"
#include "zladder/zeta_engine.hpp"

namespace zladder {

struct Interval {
  double a = 0.0;
  double b = 0.0;

  Interval() = default;
  Interval(double lo, double hi) : a(lo), b(hi) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw domain_error("Interval: endpoints must be finite");
    if (!(a < b)) throw domain_error("Interval: requires a < b");
  }
  double length() const { return b - a; }
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
  std::size_t n_evals = 0;
};

namespace detail {

// Kronrod 15 / Gauss 7 on [-1, 1] (QUADPACK qk15). Index 7 is the centre;
// odd indices carry the Gauss nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

/// Unit-panel node offsets (ascending) with Kronrod and Gauss weights for
/// a [0, 1] panel. With `with_left_end` a zero-weight node at u = 0 comes first.
struct UnitRule {
  std::vector<double> u, wk, wg;
};

inline UnitRule make_unit_rule(bool with_left_end) {
  UnitRule r;
  if (with_left_end) {
    r.u.push_back(0.0);
    r.wk.push_back(0.0);
    r.wg.push_back(0.0);
  }
  auto push = [&](double x, std::size_t i) {
    r.u.push_back(0.5 * (1.0 + x));
    r.wk.push_back(0.5 * kWgk[i]);
    r.wg.push_back(i % 2 == 1 ? 0.5 * kWg[i / 2] : 0.0);
  };
  for (std::size_t i = 0; i < 7; ++i) push(-kXgk[i], i);
  push(0.0, 7);
  for (std::size_t i = 7; i-- > 0;) push(kXgk[i], i);
  return r;
}

inline const UnitRule& unit_rule(bool with_left_end) {
  static const UnitRule plain = make_unit_rule(false);
  static const UnitRule ended = make_unit_rule(true);
  return with_left_end ? ended : plain;
}

struct PanelEstimate {
  double kronrod = 0.0;
  double gauss = 0.0;
};

template <class F>
PanelEstimate gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWgk[7] * fc;
  double g = kWg[3] * fc;
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {k * h, g * h};
}

}  // namespace detail

/// Pairwise summation with a fixed split, so the rounding pattern depends only on size.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-10;
  double initial_width = 0.0;  ///< 0: one initial panel
  std::size_t max_evals = 20'000'000;
  int max_depth = 40;
};

/// Adaptive Kronrod-15 with bisection. A panel is accepted when its value and
/// the sum of its two halves differ by at most its share (by length) of
/// max(abs_tol, rel_tol |I|); the reported err_est sums those differences.
template <class F>
QuadResult integrate_adaptive(F&& f, Interval iv, const QuadOptions& opt) {
  if (!(opt.rel_tol > 0.0 || opt.abs_tol > 0.0)) throw domain_error("integrate: tolerance must be > 0");
  const double len = iv.length();
  std::size_t n0 = 1;
  if (opt.initial_width > 0.0) n0 = static_cast<std::size_t>(std::ceil(len / opt.initial_width));
  n0 = std::max<std::size_t>(n0, 1);

  QuadResult res;
  auto panel = [&](double a, double b) {
    res.n_evals += 15;
    return detail::gk15(f, a, b).kronrod;
  };
  std::vector<double> first(n0);
  std::vector<double> edges(n0 + 1);
  for (std::size_t i = 0; i <= n0; ++i)
    edges[i] = (i == n0) ? iv.b : iv.a + len * static_cast<double>(i) / static_cast<double>(n0);
  for (std::size_t i = 0; i < n0; ++i) first[i] = panel(edges[i], edges[i + 1]);
  const double rough = pairwise_sum(first);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(rough));

  std::vector<double> accepted;
  std::vector<double> errs;
  bool exhausted = false;
  struct Item {
    double a, b, value;
    int depth;
  };
  std::vector<Item> stack;
  for (std::size_t i = 0; i < n0; ++i) {
    stack.push_back({edges[i], edges[i + 1], first[i], 0});
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const double m = 0.5 * (it.a + it.b);
      const double left = panel(it.a, m);
      const double right = panel(m, it.b);
      const double diff = std::abs(it.value - (left + right));
      const double share = tol * (it.b - it.a) / len;
      if (diff <= share || it.depth >= opt.max_depth || res.n_evals >= opt.max_evals ||
          m <= it.a || m >= it.b) {
        if (diff > share) exhausted = true;
        accepted.push_back(left + right);
        errs.push_back(diff);
        continue;
      }
      // right pushed first so the left half is finished first
      stack.push_back({m, it.b, right, it.depth + 1});
      stack.push_back({it.a, m, left, it.depth + 1});
    }
  }
  res.value = pairwise_sum(accepted);
  res.err_est = pairwise_sum(errs);
  if (exhausted && res.err_est > std::max(opt.abs_tol, opt.rel_tol * std::abs(res.value)))
    throw convergence_error("integrate: panel budget exhausted", res.value, res.err_est);
  return res;
}

/// integrate(f, [a, b], tol) with err_est <= tol * max(1, |value|). With a
/// height hint t0 the initial panels are at most half the local zero spacing.
template <class F>
QuadResult integrate(F&& f, Interval iv, double tol, std::optional<double> oscillatory_height_hint = {}) {
  if (!(tol > 0.0)) throw domain_error("integrate: tol must be > 0");
  QuadOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol;
  if (oscillatory_height_hint) opt.initial_width = 0.5 * mean_zero_spacing(*oscillatory_height_hint);
  return integrate_adaptive(std::forward<F>(f), iv, opt);
}

/// Batched integrand: fills out[p * J + j] with f at every node of the layout.
using BatchIntegrand = std::function<void(const PanelLayout&, std::span<double>)>;

/// Wraps a pointwise integrand as a batched one.
template <class F>
BatchIntegrand pointwise_batch(F f) {
  return [f](const PanelLayout& lay, std::span<double> out) {
    const std::size_t J = lay.nodes_per_panel();
    for (std::size_t p = 0; p < lay.panels; ++p)
      for (std::size_t j = 0; j < J; ++j) out[p * J + j] = f(lay.node(p, j));
  };
}

/// Panel width as a function of height for uniform tabulation.
struct ZeroSpacingWidth {
  double resolution = 2.0;  ///< panels per mean zero spacing
  double max_width = 1.0;
  double operator()(double t) const { return std::min(max_width, mean_zero_spacing(t) / resolution); }
};

struct UniformOptions {
  ZeroSpacingWidth width{};
  std::size_t block_panels = 1024;
  int workers = 1;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

namespace detail {

struct Block {
  double a;
  double width;
  std::size_t panels;
};

/// Blocks of equal-width panels covering [a, b]; the last block ends exactly at b.
inline std::vector<Block> plan_blocks(double a, double b, const UniformOptions& opt) {
  std::vector<Block> blocks;
  double s = a;
  while (s < b) {
    double w = opt.width(s);
    if (!(w > 0.0)) throw domain_error("plan_blocks: non-positive panel width");
    std::size_t p = opt.block_panels;
    if (s + static_cast<double>(p) * w >= b) {
      p = static_cast<std::size_t>(std::ceil((b - s) / w));
      p = std::max<std::size_t>(p, 1);
      w = (b - s) / static_cast<double>(p);
      blocks.push_back({s, w, p});
      break;
    }
    blocks.push_back({s, w, p});
    s = s + static_cast<double>(p) * w;
  }
  return blocks;
}

struct BlockOutput {
  std::vector<double> kronrod, gauss_diff, left_value;
};

inline std::vector<BlockOutput> evaluate_blocks(const BatchIntegrand& f, const std::vector<Block>& blocks,
                                                bool with_left_end, int workers) {
  const UnitRule& rule = unit_rule(with_left_end);
  const std::size_t J = rule.u.size();
  std::vector<BlockOutput> out(blocks.size());
  parallel_for(blocks.size(), workers, [&](std::size_t bi) {
    const Block& blk = blocks[bi];
    PanelLayout lay{blk.a, blk.width, blk.panels, rule.u};
    std::vector<double> vals(lay.size());
    f(lay, vals);
    BlockOutput& o = out[bi];
    o.kronrod.resize(blk.panels);
    o.gauss_diff.resize(blk.panels);
    if (with_left_end) o.left_value.resize(blk.panels);
    for (std::size_t p = 0; p < blk.panels; ++p) {
      double k = 0.0;
      double g = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        k += rule.wk[j] * vals[p * J + j];
        g += rule.wg[j] * vals[p * J + j];
      }
      o.kronrod[p] = k * blk.width;
      o.gauss_diff[p] = std::abs(k - g) * blk.width;
      if (with_left_end) o.left_value[p] = vals[p * J];
    }
  });
  return out;
}

}  // namespace detail

/// Non-adaptive Kronrod-15 over uniform blocks of panels sized from the local
/// zero spacing. err_est sums |K15 - G7| over panels.
inline QuadResult integrate_uniform(const BatchIntegrand& f, Interval iv, const UniformOptions& opt = {}) {
  const auto blocks = detail::plan_blocks(iv.a, iv.b, opt);
  const auto outs = detail::evaluate_blocks(f, blocks, false, opt.workers);
  std::vector<double> vals;
  std::vector<double> errs;
  for (const auto& o : outs) {
    vals.insert(vals.end(), o.kronrod.begin(), o.kronrod.end());
    errs.insert(errs.end(), o.gauss_diff.begin(), o.gauss_diff.end());
  }
  return {pairwise_sum(vals), pairwise_sum(errs), vals.size() * 15};
}

/// Running integral of a non-negative integrand on a panel grid.
/// cumvals[i] is the integral from nodes[0] to nodes[i]; fvals[i] the integrand there.
struct CumulativeTable {
  std::vector<double> nodes;
  std::vector<double> cumvals;
  std::vector<double> fvals;
  int order = 3;  ///< local interpolant: cubic Hermite
  double err_est = 0.0;
  std::size_t n_evals = 0;

  double lo() const { return nodes.front(); }
  double hi() const { return nodes.back(); }
  double total() const { return cumvals.back(); }
  std::size_t size() const { return nodes.size(); }

  /// Index i of the panel [nodes[i], nodes[i+1]] containing x (the last panel for x = hi()).
  std::size_t panel_of(double x) const {
    if (!(x >= lo() && x <= hi()))
      throw range_error("cumulative table: x = " + std::to_string(x) + " outside [" + std::to_string(lo()) +
                            ", " + std::to_string(hi()) + "]",
                        x);
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::size_t i = static_cast<std::size_t>(it - nodes.begin());
    i = (i == 0) ? 0 : i - 1;
    return std::min(i, nodes.size() - 2);
  }
};

/// Tabulates the running integral of f over [a, b] on panels of width
/// mean_zero_spacing / resolution. Running sums use Neumaier compensation.
inline CumulativeTable build_cumulative(const BatchIntegrand& f, double a, double b,
                                        const UniformOptions& opt = {}) {
  if (!(a < b)) throw domain_error("build_cumulative: requires a < b");
  const auto blocks = detail::plan_blocks(a, b, opt);
  std::size_t panels = 0;
  for (const auto& blk : blocks) panels += blk.panels;
  const std::size_t bytes = (panels + 1) * 3 * sizeof(double);
  if (bytes > opt.memory_budget_bytes)
    throw resource_error("build_cumulative: table needs " + std::to_string(bytes) + " bytes, budget is " +
                         std::to_string(opt.memory_budget_bytes));
  const auto outs = detail::evaluate_blocks(f, blocks, true, opt.workers);

  CumulativeTable tab;
  tab.nodes.reserve(panels + 1);
  tab.cumvals.reserve(panels + 1);
  tab.fvals.reserve(panels + 1);
  double sum = 0.0;
  double comp = 0.0;
  std::vector<double> errs;
  errs.reserve(panels);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const auto& blk = blocks[bi];
    const auto& o = outs[bi];
    for (std::size_t p = 0; p < blk.panels; ++p) {
      tab.nodes.push_back(blk.a + static_cast<double>(p) * blk.width);
      tab.cumvals.push_back(sum + comp);
      tab.fvals.push_back(o.left_value[p]);
      const double x = o.kronrod[p];
      const double t = sum + x;
      comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
      sum = t;
      errs.push_back(o.gauss_diff[p]);
    }
  }
  static const double kZero[1] = {0.0};
  PanelLayout last{b, 1.0, 1, kZero};
  double fb = 0.0;
  f(last, std::span<double>(&fb, 1));
  tab.nodes.push_back(b);
  tab.cumvals.push_back(sum + comp);
  tab.fvals.push_back(fb);
  tab.cumvals.front() = 0.0;
  tab.err_est = pairwise_sum(errs);
  tab.n_evals = panels * 16 + 1;
  return tab;
}

/// Cubic Hermite interpolation of the running integral, using the stored
/// integrand values as slopes. Slopes are limited (Fritsch-Carlson) where
/// needed so the interpolant stays non-decreasing.
inline double query_cumulative(const CumulativeTable& tab, double x) {
  const std::size_t i = tab.panel_of(x);
  const double x0 = tab.nodes[i];
  const double h = tab.nodes[i + 1] - x0;
  const double F0 = tab.cumvals[i];
  const double F1 = tab.cumvals[i + 1];
  if (x == x0) return F0;
  if (x == tab.nodes[i + 1]) return F1;
  const double delta = F1 - F0;
  double d0 = tab.fvals[i] * h;
  double d1 = tab.fvals[i + 1] * h;
  if (delta > 0.0 && d0 >= 0.0 && d1 >= 0.0) {
    const double al = d0 / delta;
    const double be = d1 / delta;
    const double r2 = al * al + be * be;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      d0 *= tau;
      d1 *= tau;
    }
  } else if (delta == 0.0) {
    return F0;
  }
  const double s = (x - x0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * F0 + (s3 - 2 * s2 + s) * d0 + (-2 * s3 + 3 * s2) * F1 + (s3 - s2) * d1;
}

/// Bound on |query_cumulative - exact| inside panel i given max |f'''| there
/// (valid where the slope limiter is inactive).
inline double hermite_error_bound(const CumulativeTable& tab, std::size_t i, double f3_max) {
  const double h = tab.nodes[i + 1] - tab.nodes[i];
  return h * h * h * h / 384.0 * f3_max;
}

}  // namespace zladder
