#pragma once

// JSON and CSV emission. CSV numbers use 17 significant digits so doubles
// round-trip; JSON uses the shortest round-trip form.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zladder/fourier_zeta.hpp"
#include "zladder/functional_lab.hpp"
#include "zladder/ladder.hpp"
#include "zladder/zeta_engine.hpp"

namespace zladder {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::ordered_json;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

inline Json to_json(const CriticalValue& v) {
  return {{"t", v.t}, {"Z", v.Z}, {"theta", v.theta}, {"abs2", v.abs2}};
}

inline Json to_json(const ReverseTower& tw, const GapReport* gaps, const IncrementReport* inc) {
  Json j;
  j["k"] = tw.k;
  j["levels"] = tw.levels;
  if (gaps) {
    Json recs = Json::array();
    for (const auto& r : gaps->records)
      recs.push_back({{"r", r.r},
                      {"gap", r.gap},
                      {"prediction", r.prediction},
                      {"ratio", r.ratio},
                      {"adjacent_ratio", opt_json(r.adjacent_ratio)}});
    j["gaps"] = {{"records", recs}, {"sum_of_gaps", gaps->sum_of_gaps}, {"span", gaps->span}};
  }
  if (inc) {
    Json recs = Json::array();
    for (const auto& r : inc->records)
      recs.push_back({{"r", r.r},
                      {"segment_integral", r.segment_integral},
                      {"prediction", r.prediction},
                      {"ratio", r.ratio},
                      {"adjacent_ratio", opt_json(r.adjacent_ratio)}});
    j["increments"] = {
        {"records", recs}, {"sum_of_segments", inc->sum_of_segments}, {"total_integral", inc->total_integral}};
  }
  return j;
}

inline Json to_json(const ConvergenceReport& r) {
  Json j{{"name", r.name},      {"grid", r.grid},     {"heights", r.heights},
         {"raw", r.raw},        {"normalized", r.normalized}, {"target", r.target}};
  if (r.fit)
    j["extrapolation"] = {{"limit", r.fit->limit}, {"slope", r.fit->slope}, {"residual", r.fit->residual}};
  else
    j["extrapolation"] = nullptr;
  j["margin"] = r.margin;
  j["trend_ok"] = r.trend_ok;
  return j;
}

inline Json to_json(const FermatConditionReport& f) {
  Json j = to_json(f.report);
  j["rational"] = f.rational;
  j["target_is_one"] = f.target_is_one;
  j["distance_from_one"] = f.distance_from_one;
  j["verdict"] = to_string(f.verdict);
  return j;
}

/// Column-oriented CSV writer with a fixed header.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header) : os_(os), cols_(header.size()) {
    row_strings(header);
  }

  void row(const std::vector<double>& v) {
    std::vector<std::string> s;
    s.reserve(v.size());
    for (double x : v) s.push_back(fmt17(x));
    row_strings(s);
  }

  void row_strings(const std::vector<std::string>& v) {
    if (v.size() != cols_) throw std::logic_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os_ << ',';
      os_ << v[i];
    }
    os_ << '\n';
  }

 private:
  std::ostream& os_;
  std::size_t cols_;
};

/// Comment preamble carried by every CSV file.
inline void csv_preamble(std::ostream& os, const std::string& command, const Json& config) {
  os << "# schema_version=" << kReportSchemaVersion << '\n';
  os << "# command=" << command << '\n';
  os << "# config=" << config.dump() << '\n';
}

inline void write_csv(std::ostream& os, const ConvergenceReport& r) {
  CsvWriter w(os, {"grid", "height", "raw", "normalized", "target"});
  for (std::size_t i = 0; i < r.grid.size(); ++i) w.row({r.grid[i], r.heights[i], r.raw[i], r.normalized[i], r.target});
}

inline std::string csv_cell(const std::optional<double>& v) { return v ? fmt17(*v) : std::string(); }

inline void write_csv(std::ostream& os, const ReverseTower& tw, const GapReport* gaps, const IncrementReport* inc) {
  CsvWriter w(os, {"r", "level", "gap", "gap_prediction", "gap_ratio", "adjacent_gap_ratio", "segment_integral",
                   "increment_prediction", "increment_ratio", "adjacent_integral_ratio"});
  for (int r = 0; r <= tw.k; ++r) {
    std::vector<std::string> row{std::to_string(r), fmt17(tw.levels[r])};
    if (r >= 1 && gaps) {
      const auto& g = gaps->records[r - 1];
      row.insert(row.end(), {fmt17(g.gap), fmt17(g.prediction), fmt17(g.ratio), csv_cell(g.adjacent_ratio)});
    } else {
      row.insert(row.end(), 4, "");
    }
    if (r >= 1 && inc) {
      const auto& s = inc->records[r - 1];
      row.insert(row.end(),
                 {fmt17(s.segment_integral), fmt17(s.prediction), fmt17(s.ratio), csv_cell(s.adjacent_ratio)});
    } else {
      row.insert(row.end(), 4, "");
    }
    w.row_strings(row);
  }
}

inline void write_gram_csv(std::ostream& os, const std::vector<FourierMode>& modes,
                           const std::vector<std::vector<double>>& G) {
  std::vector<std::string> header{"mode"};
  for (const auto& m : modes) header.push_back(m.name());
  CsvWriter w(os, header);
  for (std::size_t i = 0; i < modes.size(); ++i) {
    std::vector<std::string> row{modes[i].name()};
    for (double v : G[i]) row.push_back(fmt17(v));
    w.row_strings(row);
  }
}

}  // namespace zladder
