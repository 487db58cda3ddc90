// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/large_ladder.hpp"
#include "support/oracles.hpp"
#include "zladder/cli.hpp"
#include "zladder/functional_lab.hpp"
#include "zladder/report.hpp"

using namespace zladder;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  Json data;  ///< every number the verdict depends on, compared across worker counts
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  ///< seconds; 0 for none
  std::function<Outcome(const Ladder&, int)> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

double max_dev(const auto& records) {
  double w = 0.0;
  for (const auto& r : records) w = std::max(w, std::abs(r.ratio - 1.0));
  return w;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

Outcome zeta_cross_validation(const Ladder&, int) {
  PrecisionPolicy pol;
  pol.rs_correction_terms = 4;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(50.0, 5000.0);
  double worst = 0.0, worst_t = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    const double z = hardy_Z(t, pol);
    const double e = std::norm(zeta_em(0.5, t, pol));
    const double r = std::abs(z * z - e) / e;
    if (r > worst) {
      worst = r;
      worst_t = t;
    }
  }
  Outcome o;
  o.data = {{"worst", worst}, {"worst_t", worst_t}};
  require(o, worst < 1e-8, "worst relative error " + fmt("%.3g", worst) + " at t = " + fmt("%.6g", worst_t));
  if (o.pass) o.detail = "worst relative error " + fmt("%.3g", worst);
  return o;
}

Outcome landmarks(const Ladder&, int) {
  Outcome o;
  const bool sign_change = std::signbit(hardy_Z(14.0)) != std::signbit(hardy_Z(14.2));
  double lo = 17.0, hi = 18.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (theta(mid) < 0.0 ? lo : hi) = mid;
  }
  const double root = 0.5 * (lo + hi);
  const auto& g = zladder::testing::goldens();
  const double z0 = g["first_zero"];
  const double r0 = g["theta_root"];
  o.data = {{"theta_root", root}, {"golden_zero", z0}, {"golden_theta_root", r0}};
  require(o, sign_change, "no sign change of Z in [14.0, 14.2]");
  require(o, z0 > 14.0 && z0 < 14.2, "golden zero outside [14.0, 14.2]");
  require(o, root > 17.7 && root < 18.0, "theta root outside [17.7, 18.0]");
  require(o, std::abs(root - r0) < 1e-9, "theta root disagrees with golden");
  if (o.pass) o.detail = "theta root " + fmt("%.12g", root) + ", first zero " + fmt("%.12g", z0);
  return o;
}

Outcome hardy_littlewood(const Ladder& lad, int) {
  const double T = 5000.0;
  const double main = T * (std::log(T) + 2.0 * kEulerGamma - 1.0 - std::log(kTwoPi));
  auto f = [](double t) { return critical_integrand(t); };
  const double table = lad.J(T);
  const double adaptive = integrate(f, Interval{0.0, T}, 1e-11, T).value;
  const double simpson = zladder::testing::simpson(f, 0.0, T, 1'000'000);
  const double main_dev = std::abs(table - main) / main;
  const double d_table = std::abs(table - simpson) / simpson;
  const double d_adaptive = std::abs(adaptive - simpson) / simpson;
  Outcome o;
  o.data = {{"J_table", table}, {"J_adaptive", adaptive}, {"J_simpson", simpson}};
  require(o, main_dev < 0.02, "main term deviation " + fmt("%.3g", main_dev));
  require(o, d_table < 1e-6, "table vs Simpson " + fmt("%.3g", d_table));
  require(o, d_adaptive < 1e-6, "adaptive vs Simpson " + fmt("%.3g", d_adaptive));
  if (o.pass)
    o.detail = "main term within " + fmt("%.3g", main_dev) + ", adaptive/table vs Simpson " +
               fmt("%.2g", std::max(d_table, d_adaptive));
  return o;
}

Outcome ladder_soundness(const Ladder& lad, int) {
  Outcome o;
  double worst_rt = 0.0;
  for (double U : {1e3, 1e4, 1e5}) {
    const double x = lad.phi1_inverse(U);
    worst_rt = std::max(worst_rt, std::abs(lad.phi1(x) - U) / U);
    o.data["round_trip"].push_back(x);
  }
  require(o, worst_rt < 1e-9, "round trip " + fmt("%.3g", worst_rt));
  std::vector<double> devs;
  double at_1e5_lo = INFINITY, at_1e5_hi = -INFINITY;
  for (double T : default_heights()) {
    const auto tw = lad.reverse_tower(T, 3);
    for (int r = 1; r <= 3; ++r) {
      require(o, tw.levels[r] > tw.levels[r - 1], "tower not increasing at " + fmt("%g", T));
      require(o, std::abs(lad.phi1(tw.levels[r]) - tw.levels[r - 1]) <= lad.config().newton_tol * tw.levels[r - 1],
              "defining equation residual at " + fmt("%g", T));
    }
    const auto g = gap_report(tw, lad.config().gamma);
    devs.push_back(max_dev(g.records));
    if (T == 1e5)
      for (const auto& r : g.records) {
        at_1e5_lo = std::min(at_1e5_lo, r.ratio);
        at_1e5_hi = std::max(at_1e5_hi, r.ratio);
      }
    o.data["towers"].push_back(tw.levels);
  }
  o.data["gap_deviation"] = devs;
  require(o, at_1e5_lo >= 0.7 && at_1e5_hi <= 1.3, "gap ratio at 1e5 outside [0.7, 1.3]");
  require(o, strictly_decreasing(devs), "gap ratio deviation not shrinking across decades");
  if (o.pass) {
    std::ostringstream s;
    s << "round trip " << fmt("%.2g", worst_rt) << ", gap ratio deviation";
    for (double d : devs) s << ' ' << fmt("%.3g", d);
    o.detail = s.str();
  }
  return o;
}

Outcome increment_law(const Ladder& lad, int) {
  Outcome o;
  std::vector<double> devs;
  for (double T : default_heights()) {
    const auto tw = lad.reverse_tower(T, 3);
    const auto inc = increment_report(lad, tw);
    const auto gaps = gap_report(tw, lad.config().gamma);
    devs.push_back(max_dev(inc.records));
    if (T == 1e5)
      for (const auto& r : inc.records) require(o, r.ratio >= 0.7 && r.ratio <= 1.3, "increment ratio at 1e5 outside band");
    require(o, std::abs(inc.sum_of_segments - inc.total_integral) <= 1e-9 * inc.total_integral,
            "segment integrals do not telescope at " + fmt("%g", T));
    require(o, std::abs(gaps.sum_of_gaps - gaps.span) <= 1e-12 * gaps.span, "gaps do not telescope");
    o.data["segments"].push_back({inc.sum_of_segments, inc.total_integral});
  }
  o.data["increment_deviation"] = devs;
  require(o, strictly_decreasing(devs), "increment ratio deviation not shrinking across decades");
  if (o.pass) {
    std::ostringstream s;
    s << "increment ratio deviation";
    for (double d : devs) s << ' ' << fmt("%.3g", d);
    o.detail = s.str();
  }
  return o;
}

Outcome dual_path(const Ladder& lad, int) {
  Outcome o;
  const auto sys = fourier_system(3, 0.5);
  double worst = 0.0;
  for (int k = 1; k <= 2; ++k) {
    const TransformSpec spec{1e3, k, 0.5};
    DirectPath dp(lad, spec);
    PullbackPath pb(lad, spec);
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t j = i; j < sys.size(); ++j) {
        const double d = dp.inner_product(sys[i], sys[j]);
        const double p = pb.inner_product(sys[i], sys[j]);
        const double ref = std::sqrt(mode_norm(sys[i]) * mode_norm(sys[j])) * spec.scale();
        worst = std::max(worst, std::abs(d - p) / ref);
        o.data["pairs"].push_back({d, p});
      }
  }
  require(o, worst < 1e-4, "worst disagreement " + fmt("%.3g", worst));
  if (o.pass) o.detail = "worst disagreement " + fmt("%.3g", worst) + " over 56 pairs";
  return o;
}

Outcome orthogonality(const Ladder& lad, int workers) {
  Outcome o;
  const auto sys = fourier_system(3, 0.5);
  double worst_diag_1e5 = 0.0, worst_off_1e5 = 0.0;
  for (int k = 1; k <= 2; ++k) {
    std::vector<std::vector<std::vector<double>>> Gs;
    for (double T : {1e3, 1e4, 1e5}) Gs.push_back(gram_matrix(lad, sys, TransformSpec{T, k, 0.5}, workers));
    for (std::size_t i = 0; i < sys.size(); ++i) {
      std::vector<double> dev;
      for (const auto& G : Gs) dev.push_back(std::abs(G[i][i] - 1.0));
      require(o, strictly_decreasing(dev), "diagonal " + sys[i].name() + " not approaching 1 for k = " + std::to_string(k));
      worst_diag_1e5 = std::max(worst_diag_1e5, dev.back());
    }
    const auto& G = Gs.back();
    for (std::size_t i = 0; i < sys.size(); ++i)
      for (std::size_t j = 0; j < sys.size(); ++j)
        if (i != j) {
          require(o, std::abs(G[i][j]) < std::min(G[i][i], G[j][j]), "off-diagonal not below diagonal");
          worst_off_1e5 = std::max(worst_off_1e5, std::abs(G[i][j]));
        }
    o.data["gram"].push_back(Gs);
  }
  if (o.pass)
    o.detail = "at 1e5: diagonal deviation <= " + fmt("%.3g", worst_diag_1e5) + ", off-diagonal <= " +
               fmt("%.2g", worst_off_1e5);
  return o;
}

Outcome functional_targets(const Ladder& lad, int workers) {
  Outcome o;
  const auto& H = default_heights();
  const auto f1 = functional_F1(lad, 0.5, 1, H, workers);
  const auto c2 = functional_F2(lad, 0.5, 1, 1, H, F2Kind::cos2, workers);
  const auto s2 = functional_F2(lad, 0.5, 1, 1, H, F2Kind::sin2, workers);
  require(o, f1.trend_ok && f1.margin < 0.25 * f1.target, "F1 not trending to 2l");
  require(o, c2.trend_ok && c2.margin < 0.25 * c2.target, "F2 not trending to l");
  double worst_id = 0.0;
  for (std::size_t i = 0; i < H.size(); ++i)
    worst_id = std::max(worst_id, std::abs(c2.normalized[i] + s2.normalized[i] - f1.normalized[i]));
  require(o, worst_id < 1e-8, "cos^2 + sin^2 != F1 by " + fmt("%.3g", worst_id));
  std::vector<double> cd;
  for (double T : H) cd.push_back(std::abs(cosine_diff_functional(lad, 1, 0.5, TransformSpec{T, 1, 0.5})));
  require(o, strictly_decreasing(cd), "cosine difference functional not decreasing");
  o.data = {{"F1", to_json(f1)}, {"F2cos", to_json(c2)}, {"F2sin", to_json(s2)}, {"cosdiff", cd}};
  const auto mode = FourierMode::cosine(1, 0.5);
  std::ostringstream s;
  s << "F1 -> " << fmt("%.4g", f1.extrapolated_limit()) << ", F2 -> " << fmt("%.4g", c2.extrapolated_limit())
    << ", theorem1";
  for (double x : {0.5, 1.0, 2.0})
    for (int k : {1, 2}) {
      const auto rep = theorem1(lad, x, k, mode, tau_grid_for_heights(x, k, mode_norm(mode), H), workers);
      require(o, rep.margin < 0.25 * rep.target,
              "theorem1 x=" + fmt("%g", x) + " k=" + std::to_string(k) + " misses x^k by " + fmt("%.3g", rep.margin));
      require(o, rep.margin < rep.last_deviation(),
              "theorem1 x=" + fmt("%g", x) + " k=" + std::to_string(k) + " extrapolation no better than raw");
      o.data["theorem1"].push_back(to_json(rep));
      s << ' ' << fmt("%.4g", rep.extrapolated_limit()) << "/" << fmt("%g", rep.target);
    }
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome fermat(const Ladder& lad, int workers) {
  Outcome o;
  require(o, fermat_rational(3, 4, 5, 3).str() == "125/91", "(3,4,5,3) is not 125/91");
  require(o, fermat_rational(1, 1, 1, 3).str() == "1/2", "(1,1,1,3) is not 1/2");
  require(o, fermat_rational(3, 4, 5, 2).is_one(), "(3,4,5,2) is not exactly 1");
  const auto mode = FourierMode::cosine(1, 0.5);
  const auto control = fermat_rational(3, 4, 5, 2);
  const auto cubic = fermat_rational(3, 4, 5, 3);
  const auto a = fermat_zeta_condition(lad, control, 1, mode,
                                       tau_grid_for_heights(control.real_value(), 1, mode_norm(mode), default_heights()),
                                       workers);
  const auto b = fermat_zeta_condition(lad, cubic, 1, mode,
                                       tau_grid_for_heights(cubic.real_value(), 1, mode_norm(mode), default_heights()),
                                       workers);
  require(o, a.verdict == FermatVerdict::counterexample_signature, "n = 2 control verdict: " + to_string(a.verdict));
  require(o, b.verdict == FermatVerdict::consistent_with_fermat_wiles, "(3,4,5,3) verdict: " + to_string(b.verdict));
  require(o, b.distance_from_one > 0.2, "(3,4,5,3) margin from 1 is " + fmt("%.3g", b.distance_from_one));
  o.data = {{"control", to_json(a)}, {"cubic", to_json(b)}};
  if (o.pass)
    o.detail = "(3,4,5,3) limit " + fmt("%.4g", b.report.extrapolated_limit()) + ", margin from 1 " +
               fmt("%.3g", b.distance_from_one);
  return o;
}

Outcome quotient(const Ladder& lad, int workers) {
  Outcome o;
  QuotientOptions q;
  q.quad.workers = workers;
  const auto rep = quotient_report(lad, 1.0, {1e3, 1e4, 1e5}, q);
  require(o, rep.normalized[1] >= 0.7 && rep.normalized[1] <= 1.3, "value at 1e4 is " + fmt("%.4g", rep.normalized[1]));
  require(o, rep.trend_ok, "no monotone improvement");
  o.data = to_json(rep);
  if (o.pass)
    o.detail = "values " + fmt("%.4g", rep.normalized[0]) + " " + fmt("%.4g", rep.normalized[1]) + " " +
               fmt("%.4g", rep.normalized[2]);
  return o;
}

std::vector<Criterion> criteria() {
  return {
      {1, "zeta cross-validation", 10, zeta_cross_validation},
      {2, "first zero and theta root", 1, landmarks},
      {3, "Hardy-Littlewood integral", 120, hardy_littlewood},
      {4, "ladder soundness", 0, ladder_soundness},
      {5, "increment law", 0, increment_law},
      {6, "dual-path agreement", 300, dual_path},
      {7, "orthogonality trends", 0, orthogonality},
      {8, "functional targets", 0, functional_targets},
      {9, "Fermat machinery", 0, fermat},
      {10, "sigma quotient", 0, quotient},
  };
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cli_output(const std::vector<std::string>& args, int workers) {
  std::vector<std::string> full{"zladder"};
  full.insert(full.end(), args.begin(), args.end());
  full.insert(full.end(), {"--domain-hi", "1.1e6", "--cache", ZLADDER_LARGE_CACHE, "--workers", std::to_string(workers)});
  std::vector<const char*> argv;
  for (const auto& a : full) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(code) + "\n" + out.str() + err.str();
}

bool same_bytes(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

Outcome determinism(const Ladder& lad, const std::vector<std::string>& serial_results) {
  Outcome o;
  for (int w : {4, 8}) {
    const Ladder rebuilt = Ladder::build(lad.config(), lad.policy(), LadderBuildOptions{lad.resolution(), w});
    const auto& a = lad.table();
    const auto& b = rebuilt.table();
    require(o, same_bytes(a.nodes, b.nodes) && same_bytes(a.cumvals, b.cumvals) && same_bytes(a.fvals, b.fvals),
            "table built with " + std::to_string(w) + " workers differs");
  }
  const auto list = criteria();
  for (int w : {4, 8})
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto out = list[i].run(lad, w);
      if (out.data.dump() != serial_results[i])
        require(o, false, "criterion " + std::to_string(list[i].id) + " differs with " + std::to_string(w) + " workers");
    }
  const std::vector<std::vector<std::string>> commands{
      {"ladder", "-T", "1e5", "-k", "3"},
      {"ortho", "-T", "1e4", "-k", "2", "-M", "2", "--format", "csv"},
      {"functional", "--which", "T1", "-x", "1", "-k", "1"},
      {"functional", "--which", "F1", "-k", "2"},
  };
  for (const auto& cmd : commands) {
    const std::string ref = cli_output(cmd, 1);
    for (int w : {4, 8})
      if (cli_output(cmd, w) != ref) require(o, false, "cli " + cmd.front() + " differs with " + std::to_string(w) + " workers");
  }
  if (o.pass) o.detail = "table, criteria 1-10 and 4 CLI reports identical at 1, 4 and 8 workers";
  return o;
}

void print(int id, const std::string& title, const Outcome& o, double secs) {
  std::printf("%s  criterion %2d  %-28s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

}  // namespace

int main() {
  const auto t_load = std::chrono::steady_clock::now();
  const Ladder lad = zladder::testing::large_ladder();
  std::printf("ladder table: %zu nodes to %.6g (%.1f s)\n", lad.table().size(), lad.domain_hi(), seconds_since(t_load));
  bool all = true;
  std::vector<std::string> serial;
  for (const auto& c : criteria()) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run(lad, 1);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs = seconds_since(t0);
    if (c.time_limit > 0 && secs > c.time_limit) require(o, false, "runtime over " + fmt("%g", c.time_limit) + " s");
    serial.push_back(o.data.dump());
    print(c.id, c.title, o, secs);
    all = all && o.pass;
  }
  const auto t0 = std::chrono::steady_clock::now();
  Outcome det;
  try {
    det = determinism(lad, serial);
  } catch (const std::exception& e) {
    det.pass = false;
    det.detail = std::string("threw: ") + e.what();
  }
  print(11, "determinism", det, seconds_since(t0));
  all = all && det.pass;
  return all ? 0 : 1;
}
