#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcm/confusion.hpp"
#include "hcm/taxonomy.hpp"

namespace hcm {

// A ratio that may be undefined because of a zero denominator. Undefined
// values carry the reason and order below every defined value.
class Measure {
 public:
  static Measure of(double v) { return Measure(v, {}); }
  static Measure undefined(std::string cause) { return Measure(0.0, std::move(cause)); }

  bool defined() const noexcept { return cause_.empty(); }
  // Only meaningful when defined().
  double value() const noexcept { return value_; }
  const std::string& cause() const noexcept { return cause_; }

  // Ranking order: undefined < any defined value.
  friend bool rank_less(const Measure& a, const Measure& b) {
    if (!a.defined()) return b.defined();
    if (!b.defined()) return false;
    return a.value_ < b.value_;
  }

 private:
  Measure(double v, std::string cause) : value_(v), cause_(std::move(cause)) {}
  double value_;
  std::string cause_;
};

struct MetricReport {
  Measure acc = Measure::undefined("not computed");
  Measure ppv = Measure::undefined("not computed");
  Measure tpr = Measure::undefined("not computed");
  Measure fnr = Measure::undefined("not computed");
  Measure fpr = Measure::undefined("not computed");
  Measure tnr = Measure::undefined("not computed");
  Measure pt = Measure::undefined("not computed");
  Measure f1 = Measure::undefined("not computed");
  Measure mcc = Measure::undefined("not computed");
  double beta = 1.0;
  Measure hp = Measure::undefined("not computed");
  Measure hr = Measure::undefined("not computed");
  Measure hf = Measure::undefined("not computed");
};

// Metric names in report column order.
std::span<const std::string_view> metric_names();
// Looks a metric up by its column name; throws std::out_of_range.
const Measure& metric_by_name(const MetricReport& r, std::string_view name);

// Binary-classification measures of a confusion matrix. Fills the flat
// fields; hp/hr/hf stay undefined.
MetricReport flat_metrics(const HierarchicalConfusion& c);

struct PathPair {
  AllocationPath true_path;
  AllocationPath pred_path;
};

struct HierarchicalPrf {
  Measure hp = Measure::undefined("not computed");
  Measure hr = Measure::undefined("not computed");
  Measure hf = Measure::undefined("not computed");
};

// Set-based hierarchical precision/recall/F_beta, root included:
//   hp = Σ|true ∩ pred| / Σ|pred|,  hr = Σ|true ∩ pred| / Σ|true|
//   hf = (1 + β²)·hp·hr / (β²·hp + hr)
// Throws EmptyRecordList and InvalidBeta (β <= 0 or not finite).
HierarchicalPrf hierarchical_prf(std::span<const PathPair> records, double beta = 1.0);

}  // namespace hcm
