#include "carma/report.hpp"

#include <cmath>

namespace carma {

using nlohmann::json;

namespace {

// JSON has no inf/nan; keep them readable instead of silently writing null.
json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

json law_json(const ScalarLaw& law) {
  return json{{"kind", to_string(law.kind)}, {"parameter", number(law.parameter)}};
}

}  // namespace

json to_json(const GofEntry& e) {
  return json{{"statistic", e.statistic},
              {"law", law_json(e.law)},
              {"sample_count", e.n},
              {"mean", number(e.mean)},
              {"variance", number(e.variance)},
              {"ks_d", number(e.ks_d)},
              {"ks_critical", number(e.ks_critical)},
              {"z", number(e.z)},
              {"pass", e.pass}};
}

json to_json(const SuiteReport& s) {
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back(to_json(e));
  return json{{"omega", s.omega}, {"entries", entries}, {"all_pass", s.all_pass()}};
}

json to_json(const CorrelationReport& r) {
  json matrix = json::array();
  for (const auto& row : r.matrix) {
    json jr = json::array();
    for (const auto& v : row) jr.push_back(number(v));
    matrix.push_back(jr);
  }
  json tested = json::array();
  for (const auto& p : r.tested)
    tested.push_back(json{{"a", p.a}, {"b", p.b}, {"corr", number(p.corr)}});
  return json{{"labels", r.labels},
              {"matrix", matrix},
              {"tested", tested},
              {"standard_error", number(r.standard_error)},
              {"max_abs", number(r.max_abs)}};
}

json to_json(const CovarianceCheck& c) {
  return json{{"T", c.horizon},
              {"omega", c.omega},
              {"theoretical", number(c.theoretical)},
              {"empirical", number(c.empirical)},
              {"standard_error", number(c.standard_error)},
              {"z", number(c.z)},
              {"theoretical_as_printed", number(c.theoretical_as_printed)},
              {"z_as_printed", number(c.z_as_printed)},
              {"pass", c.pass}};
}

json to_json(const ConvergenceRow& r) {
  json rms = json::array();
  for (double v : r.rms) rms.push_back(number(v));
  json ratio = json::array();
  for (const auto& v : r.ratio) ratio.push_back(number(v));
  return json{{"h_max", r.h_max},
              {"N", r.n_points},
              {"N_h3", number(r.n_h3)},
              {"rms", rms},
              {"ratio", ratio}};
}

json to_json(const MCReport& r) {
  json suites = json::array();
  for (const auto& s : r.suites) suites.push_back(to_json(s));
  json cov = json::array();
  for (const auto& c : r.covariance) cov.push_back(to_json(c));
  json conv = json::array();
  for (const auto& c : r.convergence) conv.push_back(to_json(c));
  return json{{"report_version", kReportVersion},
              {"T", r.horizon},
              {"h_max", r.h_max},
              {"mesh", r.mesh},
              {"M", r.paths},
              {"N", r.n_points},
              {"N_h3", number(r.n_h3)},
              {"alpha", r.alpha},
              {"master_seed", r.master_seed},
              {"driver", r.driver},
              {"suites", suites},
              {"correlations", r.correlations ? to_json(*r.correlations) : json(nullptr)},
              {"covariance", cov},
              {"convergence", conv}};
}

}  // namespace carma
