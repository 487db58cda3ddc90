#pragma once

// Command-line front end: configuration merging, subcommands, exit codes.
//
// Precedence: built-in defaults < config file < ZLADDER_WORKERS < explicit flags.
// Exit codes: 0 success, 2 domain, 3 range / resource / budget, 4 usage.

#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zladder/errors.hpp"
#include "zladder/fermat.hpp"
#include "zladder/fourier_zeta.hpp"
#include "zladder/functional_lab.hpp"
#include "zladder/ladder.hpp"
#include "zladder/parallel.hpp"
#include "zladder/report.hpp"
#include "zladder/zeta_engine.hpp"

namespace zladder::cli {

enum ExitCode : int { kOk = 0, kDomain = 2, kRange = 3, kUsage = 4 };

inline double parse_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e) throw usage_error("bad number for " + key + ": '" + s + "'");
  return v;
}

inline int parse_int(const std::string& key, const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw usage_error("bad integer for " + key + ": '" + s + "'");
  return v;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RunConfig {
  double domain_hi = 2e5;
  PrecisionPolicy precision{};
  double c0 = 0.0;
  double gamma = kEulerGamma;
  double newton_tol = 1e-12;
  int max_newton_iters = 100;
  double resolution = 2.0;
  double tol = 1e-9;
  std::string format = "json";
  std::string output;  ///< empty: stdout
  std::string cache;   ///< ladder table cache file; empty: none
  int workers = 1;

  static const std::vector<std::string>& keys() {
    static const std::vector<std::string> k{"domain_hi", "rs_correction_terms", "em_crossover", "em_terms",
                                            "target_rel_err", "c0", "gamma", "newton_tol", "max_newton_iters",
                                            "resolution", "tol", "format", "output", "cache", "workers"};
    return k;
  }

  void set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "domain_hi") domain_hi = parse_double(key, v);
    else if (key == "rs_correction_terms") precision.rs_correction_terms = parse_int(key, v);
    else if (key == "em_crossover") precision.em_crossover = parse_double(key, v);
    else if (key == "em_terms") precision.em_terms = parse_int(key, v);
    else if (key == "target_rel_err") precision.target_rel_err = parse_double(key, v);
    else if (key == "c0") c0 = parse_double(key, v);
    else if (key == "gamma") gamma = parse_double(key, v);
    else if (key == "newton_tol") newton_tol = parse_double(key, v);
    else if (key == "max_newton_iters") max_newton_iters = parse_int(key, v);
    else if (key == "resolution") resolution = parse_double(key, v);
    else if (key == "tol") tol = parse_double(key, v);
    else if (key == "format") format = v;
    else if (key == "output") output = v;
    else if (key == "cache") cache = v;
    else if (key == "workers") workers = parse_int(key, v);
    else throw usage_error("unknown config key '" + key + "'");
  }

  /// key = value lines; '#' starts a comment.
  void merge_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw usage_error("cannot read config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
      ++lineno;
      if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw usage_error(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
      set(trim(line.substr(0, eq)), line.substr(eq + 1));
    }
  }

  void validate() const {
    try {
      precision.validate();
      ladder_config().validate();
    } catch (const domain_error& e) {
      throw usage_error(std::string("invalid configuration: ") + e.what());
    }
    if (format != "json" && format != "csv") throw usage_error("format must be json or csv");
    if (!(resolution > 0.0)) throw usage_error("resolution must be > 0");
    if (!(tol > 0.0)) throw usage_error("tol must be > 0");
    if (workers < 1) throw usage_error("workers must be >= 1");
  }

  LadderConfig ladder_config() const {
    LadderConfig c;
    c.gamma = gamma;
    c.c0 = c0;
    c.newton_tol = newton_tol;
    c.max_newton_iters = max_newton_iters;
    c.domain_hi = domain_hi;
    return c;
  }

  LadderBuildOptions build_options() const {
    LadderBuildOptions o;
    o.resolution = resolution;
    o.workers = workers;
    return o;
  }

  /// Everything that affects numbers. Worker count and file paths are left out
  /// so reports are byte-identical however they were produced.
  Json to_json() const {
    return {{"domain_hi", domain_hi},
            {"rs_correction_terms", precision.rs_correction_terms},
            {"em_crossover", precision.em_crossover},
            {"em_terms", precision.em_terms},
            {"target_rel_err", precision.target_rel_err},
            {"c0", c0},
            {"gamma", gamma},
            {"newton_tol", newton_tol},
            {"max_newton_iters", max_newton_iters},
            {"resolution", resolution},
            {"tol", tol},
            {"format", format}};
  }
};

inline FourierMode parse_mode(const std::string& s, double l) {
  if (s == "unit") return FourierMode::unit(l);
  auto numbered = [&](const std::string& prefix) -> std::optional<int> {
    if (s.rfind(prefix, 0) != 0) return std::nullopt;
    return parse_int("mode", s.substr(prefix.size()));
  };
  if (auto m = numbered("cos")) return FourierMode::cosine(*m, l);
  if (auto m = numbered("sin")) return FourierMode::sine(*m, l);
  throw usage_error("mode must be unit, cosN or sinN: '" + s + "'");
}

inline FermatRational parse_fermat(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.size() != 4) throw usage_error("fermat tuple must be x,y,z,n: '" + s + "'");
  std::vector<BigInt> xyz;
  for (int i = 0; i < 3; ++i) {
    const auto& p = parts[i];
    if (p.empty() || p.find_first_not_of("0123456789") != std::string::npos)
      throw usage_error("fermat tuple entries must be positive integers: '" + s + "'");
    xyz.emplace_back(p);
  }
  const int n = parse_int("fermat n", parts[3]);
  try {
    return FermatRational(xyz[0], xyz[1], xyz[2], n);
  } catch (const domain_error& e) {
    throw usage_error(std::string("fermat tuple: ") + e.what());
  }
}

/// Decades 1e3, 1e4, ... whose k-fold tower still fits below domain_hi.
inline std::vector<double> default_grid(double domain_hi, int k) {
  std::vector<double> g;
  for (double T : default_heights())
    if (T * std::pow(1.0 + 0.5 / std::log(T), std::max(k, 1)) + 2.0 <= domain_hi) g.push_back(T);
  if (g.empty()) throw range_error("no default grid height fits below domain_hi", 1.1e3);
  return g;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) { define(); }

  int run(int argc, const char* const* argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out_ << app_.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n" << usage_text();
      return kUsage;
    }
    try {
      finalize_config();
      return dispatch();
    } catch (const usage_error& e) {
      err_ << "error: " << e.what() << "\n" << usage_text();
      return kUsage;
    } catch (const range_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kRange;
    } catch (const resource_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kRange;
    } catch (const convergence_error& e) {
      err_ << "error: " << e.what() << " (best " << fmt17(e.best_estimate()) << ", error "
           << fmt17(e.achieved_error()) << ")\n";
      return kRange;
    } catch (const domain_error& e) {
      err_ << "error: " << e.what() << "\n";
      return kDomain;
    }
  }

  const RunConfig& config() const { return cfg_; }

 private:
  void define() {
    app_.description("Hardy-Littlewood integral, Jacob's ladder and zeta-transformed Fourier functionals");
    app_.require_subcommand(1);
    app_.fallthrough();  // global flags may follow the subcommand
    app_.add_option("--config", config_file_, "key = value configuration file");
    for (const auto& key : RunConfig::keys()) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      flag_opts_[key] = app_.add_option(flag, flag_vals_[key], "override " + key);
    }

    auto* zeta = app_.add_subcommand("zeta", "Z(t), theta(t) and |zeta(1/2+it)|^2");
    zeta->add_option("-t,--t", zeta_t_, "heights")->delimiter(',');
    zeta->add_option("--batch", zeta_batch_, "file with one height per line");

    auto* ladder = app_.add_subcommand("ladder", "reverse tower with gap and increment reports");
    ladder->add_option("-T,--T", T_, "base height")->required();
    ladder->add_option("-k,--k", k_, "tower depth")->capture_default_str();

    auto* ortho = app_.add_subcommand("ortho", "normalized Gram matrix of the transformed Fourier system");
    ortho->add_option("-T,--T", T_, "base height")->required();
    ortho->add_option("-l,--l", l_, "half period")->capture_default_str();
    ortho->add_option("-k,--k", k_, "iteration depth")->capture_default_str();
    ortho->add_option("-M,--M", M_, "highest harmonic (modes unit, cos1, sin1, ..., cosM, sinM)")
        ->capture_default_str();
    ortho->add_option("--normalization", normalization_, "raw or omega_divided")->capture_default_str();

    auto* fn = app_.add_subcommand("functional", "limit functionals on a height grid");
    fn->add_option("--which", which_, "T1, T2, F1, F2, lnpow or quotient")
        ->required()
        ->check(CLI::IsMember({"T1", "T2", "F1", "F2", "lnpow", "quotient"}));
    fn->add_option("-x,--x", x_, "T1 scale x")->capture_default_str();
    fn->add_option("-k,--k", k_, "iteration depth")->capture_default_str();
    fn->add_option("-m,--m", m_, "harmonic for F2")->capture_default_str();
    fn->add_option("-l,--l", l_, "half period")->capture_default_str();
    fn->add_option("--mode", mode_, "mode for T1/T2: unit, cosN, sinN")->capture_default_str();
    fn->add_option("--fermat", fermat_, "x,y,z,n");
    fn->add_option("--kind", kind_, "F2 kind: cos2 or sin2")->check(CLI::IsMember({"cos2", "sin2"}))
        ->capture_default_str();
    fn->add_option("--convention", convention_, "F2 Fermat frequency: over_l or printed")
        ->check(CLI::IsMember({"over_l", "printed"}))
        ->capture_default_str();
    fn->add_option("--sigma", sigma_, "quotient abscissa")->capture_default_str();
    fn->add_option("--grid", grid_, "heights T (or W for T1/T2)")->delimiter(',');
    fn->add_option("--tau-grid", tau_grid_, "explicit tau values for T1/T2")->delimiter(',');
    fn->add_option("--min-separation", min_separation_, "T2 verdict threshold on |limit - 1|")
        ->capture_default_str();

    auto* sweep = app_.add_subcommand("sweep-c0", "ladder sensitivity to the integration constant c0");
    sweep->add_option("-T,--T", T_, "base height")->required();
    sweep->add_option("-k,--k", k_, "tower depth")->capture_default_str();
    sweep->add_option("--c0-values", c0_values_, "c0 values")->delimiter(',')->required();
  }

  std::string usage_text() const {
    if (const auto subs = app_.get_subcommands(); !subs.empty()) return subs.front()->help();
    return app_.help();
  }

  void finalize_config() {
    if (!config_file_.empty()) cfg_.merge_file(config_file_);
    cfg_.workers = workers_from_env(cfg_.workers);
    for (const auto& key : RunConfig::keys())
      if (flag_opts_[key]->count() > 0) cfg_.set(key, flag_vals_[key]);
    cfg_.validate();
  }

  Json envelope(const std::string& command, Json result) const {
    return {{"schema_version", kReportSchemaVersion},
            {"command", command},
            {"config", cfg_.to_json()},
            {"result", std::move(result)}};
  }

  /// Writes either the JSON envelope or the CSV body to the configured sink.
  void emit(const std::string& command, const Json& result, const std::function<void(std::ostream&)>& csv) {
    std::ofstream file;
    std::ostream* os = &out_;
    if (!cfg_.output.empty()) {
      file.open(cfg_.output, std::ios::trunc);
      if (!file) throw resource_error("cannot write " + cfg_.output);
      os = &file;
    }
    if (cfg_.format == "json") {
      *os << envelope(command, result).dump(2) << '\n';
    } else {
      csv_preamble(*os, command, cfg_.to_json());
      csv(*os);
    }
  }

  Ladder ladder() const {
    std::optional<std::filesystem::path> cache;
    if (!cfg_.cache.empty()) cache = cfg_.cache;
    return Ladder::load_or_build(cfg_.ladder_config(), cfg_.precision, cfg_.build_options(), cache);
  }

  int dispatch() {
    const auto* sub = app_.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "zeta") return cmd_zeta();
    if (name == "ladder") return cmd_ladder();
    if (name == "ortho") return cmd_ortho();
    if (name == "functional") return cmd_functional();
    return cmd_sweep_c0();
  }

  int cmd_zeta() {
    std::vector<double> ts = zeta_t_;
    if (!zeta_batch_.empty()) {
      std::ifstream is(zeta_batch_);
      if (!is) throw usage_error("cannot read batch file " + zeta_batch_);
      std::string line;
      while (std::getline(is, line)) {
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (!line.empty()) ts.push_back(parse_double("batch height", line));
      }
    }
    if (ts.empty()) throw usage_error("zeta: give --t or --batch");
    std::vector<CriticalValue> vals;
    for (double t : ts) vals.push_back(evaluate_critical(t, cfg_.precision));
    Json result;
    if (vals.size() == 1 && zeta_batch_.empty()) {
      result = to_json(vals.front());
    } else {
      result = Json::array();
      for (const auto& v : vals) result.push_back(to_json(v));
    }
    emit("zeta", result, [&](std::ostream& os) {
      CsvWriter w(os, {"t", "Z", "theta", "abs2"});
      for (const auto& v : vals) w.row({v.t, v.Z, v.theta, v.abs2});
    });
    return kOk;
  }

  int cmd_ladder() {
    if (k_ < 0) throw usage_error("ladder: k must be >= 0");
    const Ladder lad = ladder();
    const ReverseTower tw = lad.reverse_tower(T_, k_);
    std::optional<GapReport> gaps;
    std::optional<IncrementReport> inc;
    if (k_ >= 1) {
      gaps = gap_report(tw, cfg_.gamma);
      inc = increment_report(lad, tw);
    }
    const GapReport* g = gaps ? &*gaps : nullptr;
    const IncrementReport* s = inc ? &*inc : nullptr;
    emit("ladder", to_json(tw, g, s), [&](std::ostream& os) { write_csv(os, tw, g, s); });
    return kOk;
  }

  int cmd_ortho() {
    if (M_ < 0 || 2 * M_ + 1 > static_cast<int>(kMaxGramModes))
      throw usage_error("ortho: M must be between 0 and 5");
    if (k_ < 0) throw usage_error("ortho: k must be >= 0");
    const auto modes = fourier_system(M_, l_);
    TransformSpec spec{T_, k_, l_, cfg_.tol};
    if (normalization_ == "omega_divided")
      spec.normalization = WeightNormalization::omega_divided;
    else if (normalization_ != "raw")
      throw usage_error("normalization must be raw or omega_divided");
    std::vector<std::vector<double>> G;
    if (k_ == 0) {
      G.assign(modes.size(), std::vector<double>(modes.size()));
      for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j)
          G[i][j] = mode_product_integral(modes[i], modes[j]) / std::sqrt(mode_norm(modes[i]) * mode_norm(modes[j]));
    } else {
      G = gram_matrix(ladder(), modes, spec, cfg_.workers);
    }
    Json names = Json::array();
    for (const auto& m : modes) names.push_back(m.name());
    Json result{{"T", T_}, {"l", l_}, {"k", k_}, {"normalization", normalization_}, {"modes", names}, {"gram", G}};
    emit("ortho", result, [&](std::ostream& os) { write_gram_csv(os, modes, G); });
    return kOk;
  }

  std::vector<double> heights_or_default(int k) const {
    return grid_.empty() ? default_grid(cfg_.domain_hi, k) : grid_;
  }

  int cmd_functional() {
    if (which_ == "T1" || which_ == "T2") return functional_theorem();
    const Ladder lad = ladder();
    ConvergenceReport rep;
    Json extra = Json::object();
    if (which_ == "F1" || which_ == "F2") {
      double l = l_;
      std::optional<FermatRational> fr;
      if (!fermat_.empty()) {
        fr = parse_fermat(fermat_);
        l = fr->real_value();
        extra["rational"] = fr->str();
        extra["target_is_one"] = fr->is_one();
      }
      const auto grid = heights_or_default(k_);
      if (which_ == "F1") {
        rep = functional_F1(lad, l, k_, grid, cfg_.workers, cfg_.tol);
        if (fr) extra["condition"] = fr->is_one() ? "target == 2" : "target != 2";
      } else {
        const auto conv = convention_ == "printed" ? FrequencyConvention::printed : FrequencyConvention::over_l;
        rep = functional_F2(lad, l, k_, m_, grid, kind_ == "cos2" ? F2Kind::cos2 : F2Kind::sin2, cfg_.workers,
                            conv, cfg_.tol);
        extra["convention"] = convention_;
        if (fr) extra["condition"] = fr->is_one() ? "target == 1" : "target != 1";
      }
    } else if (which_ == "lnpow") {
      rep = ln_power_report(lad, k_, heights_or_default(k_), cfg_.workers);
    } else {
      QuotientOptions q;
      q.policy = cfg_.precision;
      q.quad.workers = cfg_.workers;
      std::vector<double> grid = grid_;
      if (grid.empty())
        for (double T : default_grid(cfg_.domain_hi, 1))
          if (T <= 1e5) grid.push_back(T);
      rep = quotient_report(lad, sigma_, grid, q);
      extra["sigma"] = sigma_;
    }
    Json result = to_json(rep);
    for (auto& [key, v] : extra.items()) result[key] = v;
    emit("functional", result, [&](std::ostream& os) { write_csv(os, rep); });
    return kOk;
  }

  int functional_theorem() {
    std::optional<FermatRational> fr;
    if (which_ == "T2") {
      if (fermat_.empty()) throw usage_error("functional T2 needs --fermat x,y,z,n");
      fr = parse_fermat(fermat_);
    }
    const FourierMode mode = parse_mode(mode_, l_);
    mode.validate();
    const double x = fr ? fr->real_value() : x_;
    if (!(x > 0.0)) throw usage_error("x must be > 0");
    if (k_ < 1) throw usage_error("T1/T2 need k >= 1");
    const std::vector<double> taus =
        tau_grid_.empty() ? tau_grid_for_heights(x, k_, mode_norm(mode), heights_or_default(k_)) : tau_grid_;
    const Ladder lad = ladder();
    Json result;
    std::function<void(std::ostream&)> csv;
    if (fr) {
      const auto rep = fermat_zeta_condition(lad, *fr, k_, mode, taus, cfg_.workers, min_separation_);
      result = to_json(rep);
      csv = [rep](std::ostream& os) { write_csv(os, rep.report); };
    } else {
      const auto rep = theorem1(lad, x, k_, mode, taus, cfg_.workers, cfg_.tol);
      result = to_json(rep);
      csv = [rep](std::ostream& os) { write_csv(os, rep); };
    }
    result["mode"] = mode.name();
    result["k"] = k_;
    emit("functional", result, csv);
    return kOk;
  }

  int cmd_sweep_c0() {
    if (k_ < 1) throw usage_error("sweep-c0: k must be >= 1");
    const Ladder base = ladder();
    struct Row {
      double c0;
      ReverseTower tw;
      GapReport gaps;
      IncrementReport inc;
    };
    std::vector<Row> rows;
    for (double c0 : c0_values_) {
      LadderConfig lc = base.config();
      lc.c0 = c0;
      const Ladder lad = base.with_config(lc);
      ReverseTower tw = lad.reverse_tower(T_, k_);
      rows.push_back({c0, tw, gap_report(tw, lc.gamma), increment_report(lad, tw)});
    }
    Json result = Json::array();
    for (const auto& r : rows) {
      Json j = to_json(r.tw, &r.gaps, &r.inc);
      j["c0"] = r.c0;
      result.push_back(j);
    }
    emit("sweep-c0", result, [&](std::ostream& os) {
      CsvWriter w(os, {"c0", "r", "level", "gap_ratio", "increment_ratio"});
      for (const auto& r : rows)
        for (int i = 1; i <= r.tw.k; ++i)
          w.row({r.c0, double(i), r.tw.levels[i], r.gaps.records[i - 1].ratio, r.inc.records[i - 1].ratio});
    });
    return kOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"zladder"};
  RunConfig cfg_;
  std::string config_file_;
  std::map<std::string, std::string> flag_vals_;
  std::map<std::string, CLI::Option*> flag_opts_;

  std::vector<double> zeta_t_;
  std::string zeta_batch_;
  double T_ = 1e4;
  int k_ = 1;
  double l_ = 0.5;
  int M_ = 3;
  int m_ = 1;
  double x_ = 1.0;
  std::string normalization_ = "raw";
  std::string which_;
  std::string mode_ = "cos1";
  std::string fermat_;
  std::string kind_ = "cos2";
  std::string convention_ = "over_l";
  double sigma_ = 1.0;
  double min_separation_ = 0.1;
  std::vector<double> grid_;
  std::vector<double> tau_grid_;
  std::vector<double> c0_values_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Runner r(out, err);
  return r.run(argc, argv);
}

}  // namespace zladder::cli
