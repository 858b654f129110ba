#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace plcurv {

// A Monte Carlo estimate: sample mean, standard error of the mean, number of
// accepted samples, and how many draws were rejected (degenerate position)
// and redrawn along the way.
struct MeasureEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
  long rejections = 0;
};

// Mean and standard error of a sequence laid out in sample order.
MeasureEstimate summarize(const std::vector<double>& values, long rejections = 0);

// Estimate of a*b for independent estimates (first-order error propagation).
MeasureEstimate product_estimate(const MeasureEstimate& a, const MeasureEstimate& b);

MeasureEstimate scale_estimate(const MeasureEstimate& a, double factor);

MeasureEstimate sum_estimates(const std::vector<MeasureEstimate>& terms);

// Outcome of comparing two estimates of the same quantity. The verdict is
//   |lhs - rhs| <= max(abs_tol, rel_tol * |rhs|, 4 * combined std error)
// so exact agreement, relative agreement and statistical agreement each
// suffice on their own.
struct VerificationReport {
  std::string name;
  MeasureEstimate lhs;
  MeasureEstimate rhs;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  double combined_std_error = 0.0;
  double abs_tol = 0.0;
  double rel_tol = 0.0;
  bool pass = false;
};

VerificationReport make_verification(const std::string& name,
                                     const MeasureEstimate& lhs,
                                     const MeasureEstimate& rhs,
                                     double abs_tol, double rel_tol);

// One row of a run report; `exact` and `pass` are present only when a target
// value is known.
struct ResultRow {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  long samples = 0;
  std::optional<double> exact;
  std::optional<bool> pass;
};

// Serializable record of a CLI run. JSON field order is fixed so reruns with
// the same seed produce identical numeric fields.
struct RunReport {
  std::string command;
  std::vector<std::string> inputs;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<ResultRow> results;
  long rejections = 0;
  long wall_ms = 0;

  std::string to_json() const;
  std::string to_csv() const;
  bool all_pass() const;
};

}  // namespace plcurv
