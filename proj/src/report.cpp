#include "plcurv/report.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <sstream>

namespace plcurv {

MeasureEstimate summarize(const std::vector<double>& values, long rejections) {
  MeasureEstimate e;
  e.samples = static_cast<long>(values.size());
  e.rejections = rejections;
  if (values.empty()) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / e.samples;
  if (e.samples > 1) {
    double ss = 0.0;
    for (double v : values) {
      double d = v - e.mean;
      ss += d * d;
    }
    e.std_error = std::sqrt(ss / (e.samples * (e.samples - 1.0)));
  }
  return e;
}

MeasureEstimate product_estimate(const MeasureEstimate& a, const MeasureEstimate& b) {
  MeasureEstimate e;
  e.mean = a.mean * b.mean;
  e.std_error = std::sqrt(a.mean * a.mean * b.std_error * b.std_error +
                          b.mean * b.mean * a.std_error * a.std_error +
                          a.std_error * a.std_error * b.std_error * b.std_error);
  e.samples = std::min(a.samples, b.samples);
  e.rejections = a.rejections + b.rejections;
  return e;
}

MeasureEstimate scale_estimate(const MeasureEstimate& a, double factor) {
  MeasureEstimate e = a;
  e.mean *= factor;
  e.std_error *= std::abs(factor);
  return e;
}

MeasureEstimate sum_estimates(const std::vector<MeasureEstimate>& terms) {
  MeasureEstimate e;
  double var = 0.0;
  long samples = 0;
  for (const auto& t : terms) {
    e.mean += t.mean;
    var += t.std_error * t.std_error;
    e.rejections += t.rejections;
    samples = std::max(samples, t.samples);
  }
  e.std_error = std::sqrt(var);
  e.samples = samples;
  return e;
}

VerificationReport make_verification(const std::string& name,
                                     const MeasureEstimate& lhs,
                                     const MeasureEstimate& rhs,
                                     double abs_tol, double rel_tol) {
  VerificationReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_diff = std::abs(lhs.mean - rhs.mean);
  r.rel_diff = rhs.mean != 0.0 ? r.abs_diff / std::abs(rhs.mean) : INFINITY;
  r.combined_std_error = std::sqrt(lhs.std_error * lhs.std_error +
                                   rhs.std_error * rhs.std_error);
  r.abs_tol = abs_tol;
  r.rel_tol = rel_tol;
  r.pass = r.abs_diff <= std::max({abs_tol, rel_tol * std::abs(rhs.mean),
                                   4.0 * r.combined_std_error});
  return r;
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["seed"] = seed;
  nlohmann::ordered_json p = nlohmann::ordered_json::object();
  for (const auto& [k, v] : params) p[k] = v;
  j["params"] = p;
  j["results"] = nlohmann::ordered_json::array();
  for (const auto& row : results) {
    nlohmann::ordered_json r;
    r["name"] = row.name;
    r["value"] = row.value;
    r["std_error"] = row.std_error;
    r["samples"] = row.samples;
    if (row.exact)
      r["exact"] = *row.exact;
    else
      r["exact"] = nullptr;
    if (row.pass)
      r["pass"] = *row.pass;
    else
      r["pass"] = nullptr;
    j["results"].push_back(r);
  }
  j["rejections"] = rejections;
  j["wall_ms"] = wall_ms;
  return j.dump(2) + "\n";
}

std::string RunReport::to_csv() const {
  std::ostringstream out;
  out << "name,value,std_error,samples,exact,pass\n";
  out.precision(17);
  for (const auto& row : results) {
    out << row.name << ',' << row.value << ',' << row.std_error << ','
        << row.samples << ',';
    if (row.exact) out << *row.exact;
    out << ',';
    if (row.pass) out << (*row.pass ? "true" : "false");
    out << '\n';
  }
  return out.str();
}

bool RunReport::all_pass() const {
  for (const auto& row : results)
    if (row.pass && !*row.pass) return false;
  return true;
}

}  // namespace plcurv
