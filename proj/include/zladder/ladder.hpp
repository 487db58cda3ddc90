#pragma once

// Operational Jacob's ladder.
//
// phi1(T) is the root y of  y ln y + (gamma - ln 2pi) y + c0 = J(T),  where
// J(T) is the Hardy-Littlewood integral of |zeta(1/2 + it)|^2 over [0, T].
// Differentiating gives phi1'(t) * omega_hat(t) = |zeta(1/2 + it)|^2 with
// omega_hat(t) = ln phi1(t) + 1 + gamma - ln 2pi.
//
// J is read from a cumulative table plus an exact Kronrod-15 integral over the
// partial panel, so J'(x) is the integrand itself and not an interpolant.

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zladder/errors.hpp"
#include "zladder/quadrature.hpp"
#include "zladder/zeta_engine.hpp"

namespace zladder {

struct LadderConfig {
  double gamma = kEulerGamma;
  double c0 = 0.0;
  double newton_tol = 1e-12;
  int max_newton_iters = 100;
  double domain_hi = 2e5;
  double validity_floor = 100.0;

  void validate() const {
    if (!(newton_tol > 0.0)) throw domain_error("LadderConfig: newton_tol must be > 0");
    if (max_newton_iters < 1) throw domain_error("LadderConfig: max_newton_iters must be >= 1");
    if (!(domain_hi > 100.0)) throw domain_error("LadderConfig: domain_hi must be > 100");
    if (!std::isfinite(gamma) || !std::isfinite(c0)) throw domain_error("LadderConfig: gamma and c0 must be finite");
  }
};

struct LadderBuildOptions {
  double resolution = 2.0;  ///< table panels per mean zero spacing
  int workers = 1;
  std::size_t memory_budget_bytes = std::size_t{1} << 30;
};

/// [T, 1T, ..., kT] with levels[r] = phi1^{-r}(T).
struct ReverseTower {
  int k = 0;
  std::vector<double> levels;
};

struct GapRecord {
  int r = 0;
  double gap = 0.0;         ///< rT - (r-1)T
  double prediction = 0.0;  ///< (1 - gamma) rT / ln rT
  double ratio = 0.0;
  std::optional<double> adjacent_ratio;  ///< gap[r+1] / gap[r]
};

struct GapReport {
  std::vector<GapRecord> records;
  double sum_of_gaps = 0.0;
  double span = 0.0;  ///< kT - T
};

struct IncrementRecord {
  int r = 0;
  double segment_integral = 0.0;  ///< J over [(r-1)T, rT]
  double prediction = 0.0;        ///< (1 - gamma) (r-1)T
  double ratio = 0.0;
  std::optional<double> adjacent_ratio;
};

struct IncrementReport {
  std::vector<IncrementRecord> records;
  double sum_of_segments = 0.0;
  double total_integral = 0.0;  ///< J over [T, kT]
};

class Ladder {
 public:
  static inline constexpr int kCacheSchemaVersion = 1;

  Ladder(LadderConfig cfg, PrecisionPolicy pol, double resolution, std::shared_ptr<const CumulativeTable> table)
      : cfg_(cfg), pol_(pol), resolution_(resolution), table_(std::move(table)) {
    cfg_.validate();
    pol_.validate();
    if (!table_ || table_->size() < 2) throw domain_error("Ladder: empty table");
    cfg_.domain_hi = table_->hi();
  }

  static Ladder build(const LadderConfig& cfg, const PrecisionPolicy& pol, const LadderBuildOptions& opt = {}) {
    cfg.validate();
    pol.validate();
    UniformOptions u;
    u.width.resolution = opt.resolution;
    u.workers = opt.workers;
    u.memory_budget_bytes = opt.memory_budget_bytes;
    BatchIntegrand f = [pol](const PanelLayout& lay, std::span<double> out) { critical_abs2_batch(lay, out, pol); };
    auto tab = std::make_shared<CumulativeTable>(build_cumulative(f, 0.0, cfg.domain_hi, u));
    return Ladder(cfg, pol, opt.resolution, std::move(tab));
  }

  /// Same table, different ladder constants (c0 / gamma sweeps).
  Ladder with_config(LadderConfig cfg) const {
    cfg.domain_hi = table_->hi();
    return Ladder(cfg, pol_, resolution_, table_);
  }

  const LadderConfig& config() const { return cfg_; }
  const PrecisionPolicy& policy() const { return pol_; }
  const CumulativeTable& table() const { return *table_; }
  double resolution() const { return resolution_; }
  double domain_hi() const { return table_->hi(); }

  /// |zeta(1/2 + it)|^2, the integrand behind the table.
  double integrand(double t) const { return critical_integrand(t, pol_); }

  /// J(x) = integral of |zeta(1/2 + it)|^2 over [0, x].
  double J(double x) const {
    if (!(x >= 0.0)) throw domain_error("J: requires x >= 0");
    if (x > domain_hi())
      throw range_error("J: x = " + std::to_string(x) + " beyond domain_hi = " + std::to_string(domain_hi()), x);
    const std::size_t i = table_->panel_of(x);
    const double x0 = table_->nodes[i];
    if (x == x0) return table_->cumvals[i];
    if (x == table_->nodes[i + 1]) return table_->cumvals[i + 1];
    auto f = [this](double t) { return integrand(t); };
    return table_->cumvals[i] + detail::gk15(f, x0, x).kronrod;
  }

  /// J over [a, b].
  double hl_J(double a, double b) const {
    if (!(a >= 0.0)) throw domain_error("hl_J: requires a >= 0");
    if (!(a < b)) throw domain_error("hl_J: requires a < b");
    if (a == 0.0) return J(b);
    const std::size_t ia = table_->panel_of(std::min(a, domain_hi()));
    if (b <= table_->nodes[ia + 1]) {
      auto f = [this](double t) { return integrand(t); };
      return detail::gk15(f, a, b).kronrod;
    }
    return J(b) - J(a);
  }

  /// Left side of the defining equation, y ln y + (gamma - ln 2pi) y + c0.
  double defining_lhs(double y) const { return y * std::log(y) + (cfg_.gamma - std::log(kTwoPi)) * y + cfg_.c0; }

  /// d/dy of defining_lhs; also omega_hat evaluated through phi1.
  double defining_slope(double y) const { return std::log(y) + 1.0 + cfg_.gamma - std::log(kTwoPi); }

  double phi1(double T) const {
    check_floor(T, "phi1");
    const double target = J(T);
    return solve_defining(target, T);
  }

  double omega_hat(double t) const { return defining_slope(phi1(t)); }

  /// x with phi1(x) = U: inverts J at defining_lhs(U).
  double phi1_inverse(double U) const {
    check_floor(U, "phi1_inverse");
    const double target = defining_lhs(U);
    return invert_J(target);
  }

  double forward_iter(double t, int r) const {
    if (r < 0) throw domain_error("forward_iter: r must be >= 0");
    for (int i = 0; i < r; ++i) {
      if (t < cfg_.validity_floor)
        throw domain_error("forward_iter: iterate " + std::to_string(t) + " fell below the validity floor");
      t = phi1(t);
    }
    return t;
  }

  ReverseTower reverse_tower(double T, int k) const {
    if (k < 0) throw domain_error("reverse_tower: k must be >= 0");
    check_floor(T, "reverse_tower");
    ReverseTower tw;
    tw.k = k;
    tw.levels.push_back(T);
    for (int r = 1; r <= k; ++r) tw.levels.push_back(phi1_inverse(tw.levels.back()));
    return tw;
  }

  /// prod_{r=0}^{k-1} omega_hat(phi1^r(alpha)).
  double omega_product(double alpha, int k) const {
    double prod = 1.0;
    double t = alpha;
    for (int r = 0; r < k; ++r) {
      const double next = phi1(t);
      prod *= defining_slope(next);
      t = next;
    }
    return prod;
  }

  /// Height needed in the table for J to reach `target` (main-term estimate).
  static double required_domain(double target) {
    double x = std::max(target / 10.0, 100.0);
    for (int i = 0; i < 100; ++i) {
      const double g = x * std::log(x / kTwoPi) + (2.0 * kEulerGamma - 1.0) * x - target;
      const double dg = std::log(x / kTwoPi) + 2.0 * kEulerGamma;
      const double nx = x - g / dg;
      if (std::abs(nx - x) < 1e-9 * x) return nx;
      x = std::max(nx, 1.0);
    }
    return x;
  }

  // --- cache file: one JSON header line, then raw little-endian doubles ---

  void save(const std::filesystem::path& path) const {
    static_assert(std::endian::native == std::endian::little, "cache format is little-endian");
    nlohmann::json h = cache_header(pol_, resolution_);
    h["domain_hi"] = domain_hi();
    h["nodes"] = table_->size();
    h["err_est"] = table_->err_est;
    h["n_evals"] = table_->n_evals;
    h["gamma"] = cfg_.gamma;
    h["c0"] = cfg_.c0;
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
      if (!os) throw resource_error("cannot write ladder cache " + tmp);
      os << h.dump() << '\n';
      auto put = [&os](const std::vector<double>& v) {
        os.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
      };
      put(table_->nodes);
      put(table_->cumvals);
      put(table_->fvals);
      if (!os) throw resource_error("short write on ladder cache " + tmp);
    }
    std::filesystem::rename(tmp, path);
  }

  /// Loads a cache if it was built with the same policy and resolution and
  /// covers cfg.domain_hi; returns nullopt otherwise.
  static std::optional<Ladder> load(const std::filesystem::path& path, const LadderConfig& cfg,
                                    const PrecisionPolicy& pol, double resolution) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::string line;
    if (!std::getline(is, line)) return std::nullopt;
    nlohmann::json h;
    try {
      h = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    nlohmann::json want = cache_header(pol, resolution);
    for (const auto& key : {"format", "schema_version", "policy", "resolution"})
      if (h.value(key, nlohmann::json()) != want[key]) return std::nullopt;
    if (h.value("domain_hi", 0.0) < cfg.domain_hi) return std::nullopt;
    const std::size_t n = h.value("nodes", std::size_t{0});
    if (n < 2) return std::nullopt;
    auto tab = std::make_shared<CumulativeTable>();
    auto get = [&is, n](std::vector<double>& v) {
      v.resize(n);
      is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    };
    get(tab->nodes);
    get(tab->cumvals);
    get(tab->fvals);
    if (!is) return std::nullopt;
    tab->err_est = h.value("err_est", 0.0);
    tab->n_evals = h.value("n_evals", std::size_t{0});
    return Ladder(cfg, pol, resolution, std::move(tab));
  }

  static Ladder load_or_build(const LadderConfig& cfg, const PrecisionPolicy& pol, const LadderBuildOptions& opt,
                              const std::optional<std::filesystem::path>& cache) {
    if (cache) {
      if (auto l = load(*cache, cfg, pol, opt.resolution)) return *std::move(l);
    }
    Ladder l = build(cfg, pol, opt);
    if (cache) l.save(*cache);
    return l;
  }

 private:
  static nlohmann::json cache_header(const PrecisionPolicy& pol, double resolution) {
    return {{"format", "zladder-ladder-cache"},
            {"schema_version", kCacheSchemaVersion},
            {"resolution", resolution},
            {"policy",
             {{"rs_correction_terms", pol.rs_correction_terms},
              {"em_crossover", pol.em_crossover},
              {"em_terms", pol.em_terms},
              {"target_rel_err", pol.target_rel_err}}}};
  }

  void check_floor(double t, const char* who) const {
    if (!(t >= cfg_.validity_floor))
      throw domain_error(std::string(who) + ": argument " + std::to_string(t) + " below the validity floor " +
                         std::to_string(cfg_.validity_floor));
  }

  /// Root of defining_lhs(y) = target; safeguarded Newton.
  double solve_defining(double target, double T) const {
    double lo = std::exp(-(cfg_.gamma - std::log(kTwoPi)));  // lhs - c0 vanishes here and increases beyond
    double hi = std::max(2.0 * T, lo * 2.0);
    while (defining_lhs(hi) < target) hi *= 2.0;
    if (defining_lhs(lo) > target)
      throw domain_error("phi1: J(T) - c0 too small for a root above the minimum of the defining equation");
    double y = T * (1.0 - (1.0 - cfg_.gamma) / std::log(T));
    if (!(y > lo && y < hi)) y = 0.5 * (lo + hi);
    const double tol = cfg_.newton_tol * std::max(1.0, std::abs(target));
    for (int it = 0; it < cfg_.max_newton_iters; ++it) {
      const double r = defining_lhs(y) - target;
      double ny = y - r / defining_slope(y);
      // one Newton step past the residual test leaves y at rounding level,
      // which keeps phi1 smooth enough for nested quadrature
      if (std::abs(r) <= tol) return (ny > lo && ny < hi) ? ny : y;
      if (r > 0.0) hi = y; else lo = y;
      if (!(ny > lo && ny < hi)) ny = 0.5 * (lo + hi);
      if (ny == y) return y;
      y = ny;
    }
    throw convergence_error("phi1: Newton did not converge", y, std::abs(defining_lhs(y) - target));
  }

  /// x with J(x) = target, bracketed Newton inside the table panel that holds target.
  double invert_J(double target) const {
    const auto& tab = *table_;
    if (target > tab.total()) {
      const double need = required_domain(target);
      throw range_error("phi1_inverse: result beyond domain_hi = " + std::to_string(domain_hi()) +
                            "; a domain of about " + std::to_string(need) + " is required",
                        need);
    }
    auto it = std::upper_bound(tab.cumvals.begin(), tab.cumvals.end(), target);
    std::size_t i = static_cast<std::size_t>(it - tab.cumvals.begin());
    i = (i == 0) ? 0 : std::min(i - 1, tab.size() - 2);
    double lo = tab.nodes[i];
    double hi = tab.nodes[i + 1];
    const double F0 = tab.cumvals[i];
    const double F1 = tab.cumvals[i + 1];
    if (target == F0) return lo;
    auto f = [this](double t) { return integrand(t); };
    auto h = [&](double x) { return F0 + detail::gk15(f, tab.nodes[i], x).kronrod - target; };
    double x = (F1 > F0) ? lo + (hi - lo) * (target - F0) / (F1 - F0) : 0.5 * (lo + hi);
    const double tol = cfg_.newton_tol * std::max(1.0, std::abs(target)) * 1e-2;
    for (int iter = 0; iter < cfg_.max_newton_iters; ++iter) {
      const double r = (x == tab.nodes[i]) ? F0 - target : h(x);
      const double d = integrand(x);
      if (std::abs(r) <= tol) {
        const double polished = (d > 0.0) ? x - r / d : x;
        return (polished >= lo && polished <= hi) ? polished : x;
      }
      if (r > 0.0) hi = x; else lo = x;
      double nx = (d > 0.0) ? x - r / d : 0.5 * (lo + hi);
      if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
      if (nx == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) return nx;
      x = nx;
    }
    throw convergence_error("phi1_inverse: bracketed Newton did not converge", x, std::abs(h(x)));
  }

  LadderConfig cfg_;
  PrecisionPolicy pol_;
  double resolution_;
  std::shared_ptr<const CumulativeTable> table_;
};

/// Gaps between consecutive tower levels against (1 - gamma) rT / ln rT.
inline GapReport gap_report(const ReverseTower& tw, double gamma = kEulerGamma) {
  if (tw.k < 1 || tw.levels.size() != static_cast<std::size_t>(tw.k) + 1)
    throw domain_error("gap_report: needs a tower with k >= 1");
  GapReport rep;
  std::vector<double> gaps;
  for (int r = 1; r <= tw.k; ++r) {
    const double hi = tw.levels[r];
    GapRecord rec;
    rec.r = r;
    rec.gap = hi - tw.levels[r - 1];
    rec.prediction = (1.0 - gamma) * hi / std::log(hi);
    rec.ratio = rec.gap / rec.prediction;
    rep.records.push_back(rec);
    gaps.push_back(rec.gap);
  }
  for (std::size_t r = 0; r + 1 < rep.records.size(); ++r)
    rep.records[r].adjacent_ratio = rep.records[r + 1].gap / rep.records[r].gap;
  rep.sum_of_gaps = pairwise_sum(gaps);
  rep.span = tw.levels.back() - tw.levels.front();
  return rep;
}

/// Hardy-Littlewood increments over the tower segments against (1 - gamma) (r-1)T.
inline IncrementReport increment_report(const Ladder& lad, const ReverseTower& tw) {
  if (tw.k < 1 || tw.levels.size() != static_cast<std::size_t>(tw.k) + 1)
    throw domain_error("increment_report: needs a tower with k >= 1");
  IncrementReport rep;
  std::vector<double> segs;
  const double gamma = lad.config().gamma;
  for (int r = 1; r <= tw.k; ++r) {
    IncrementRecord rec;
    rec.r = r;
    rec.segment_integral = lad.hl_J(tw.levels[r - 1], tw.levels[r]);
    rec.prediction = (1.0 - gamma) * tw.levels[r - 1];
    rec.ratio = rec.segment_integral / rec.prediction;
    rep.records.push_back(rec);
    segs.push_back(rec.segment_integral);
  }
  for (std::size_t r = 0; r + 1 < rep.records.size(); ++r)
    rep.records[r].adjacent_ratio = rep.records[r + 1].segment_integral / rep.records[r].segment_integral;
  rep.sum_of_segments = pairwise_sum(segs);
  rep.total_integral = lad.hl_J(tw.levels.front(), tw.levels.back());
  return rep;
}

}  // namespace zladder
