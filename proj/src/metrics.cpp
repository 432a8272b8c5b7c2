#include "hcm/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hcm/error.hpp"

namespace hcm {

namespace {

Measure ratio(double num, double den, const char* cause) {
  if (den == 0.0) return Measure::undefined(cause);
  return Measure::of(num / den);
}

constexpr std::array<std::string_view, 12> kNames = {
    "acc", "ppv", "tpr", "fnr", "fpr", "tnr", "pt", "f1", "mcc", "hp", "hr", "hf"};

}  // namespace

std::span<const std::string_view> metric_names() { return kNames; }

const Measure& metric_by_name(const MetricReport& r, std::string_view name) {
  if (name == "acc") return r.acc;
  if (name == "ppv") return r.ppv;
  if (name == "tpr") return r.tpr;
  if (name == "fnr") return r.fnr;
  if (name == "fpr") return r.fpr;
  if (name == "tnr") return r.tnr;
  if (name == "pt") return r.pt;
  if (name == "f1") return r.f1;
  if (name == "mcc") return r.mcc;
  if (name == "hp") return r.hp;
  if (name == "hr") return r.hr;
  if (name == "hf") return r.hf;
  throw std::out_of_range("unknown metric '" + std::string(name) + "'");
}

MetricReport flat_metrics(const HierarchicalConfusion& c) {
  const auto tp = static_cast<double>(c.tp);
  const auto tn = static_cast<double>(c.tn);
  const auto fp = static_cast<double>(c.fp);
  const auto fn = static_cast<double>(c.fn);

  MetricReport r;
  r.acc = ratio(tp + tn, tp + tn + fp + fn, "tp+tn+fp+fn = 0");
  r.ppv = ratio(tp, tp + fp, "tp+fp = 0");
  r.tpr = ratio(tp, tp + fn, "tp+fn = 0");
  r.fnr = ratio(fn, fn + tp, "fn+tp = 0");
  r.fpr = ratio(fp, fp + tn, "fp+tn = 0");
  r.tnr = ratio(tn, tn + fp, "tn+fp = 0");
  r.f1 = ratio(2 * tp, 2 * tp + fp + fn, "2tp+fp+fn = 0");

  if (!r.tpr.defined() || !r.tnr.defined()) {
    r.pt = Measure::undefined("tpr or tnr undefined");
  } else {
    const double tpr = r.tpr.value();
    const double tnr = r.tnr.value();
    r.pt = ratio(std::sqrt(tpr * (1.0 - tnr)) + tnr - 1.0, tpr + tnr - 1.0, "tpr+tnr-1 = 0");
  }

  // The radicand is split into four roots so the product cannot overflow.
  const double den =
      std::sqrt(tp + fp) * std::sqrt(tp + fn) * std::sqrt(tn + fp) * std::sqrt(tn + fn);
  if (den == 0.0) {
    r.mcc = Measure::undefined("a marginal sum is 0");
  } else {
    const double v = (tp * tn - fp * fn) / den;
    r.mcc = Measure::of(std::clamp(v, -1.0, 1.0));
  }
  r.hp = r.hr = r.hf = Measure::undefined("not computed");
  return r;
}

HierarchicalPrf hierarchical_prf(std::span<const PathPair> records, double beta) {
  if (records.empty()) throw Error(ErrorCode::EmptyRecordList, "no records for hP/hR/hF");
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::InvalidBeta, "beta must be a positive finite number");

  std::uint64_t overlap = 0;
  std::uint64_t pred_total = 0;
  std::uint64_t true_total = 0;
  for (const auto& [truth, pred] : records) {
    // Paths hold no repeated nodes, so set intersection is a membership count.
    for (auto v : pred.nodes) {
      if (std::find(truth.nodes.begin(), truth.nodes.end(), v) != truth.nodes.end()) ++overlap;
    }
    pred_total += pred.size();
    true_total += truth.size();
  }

  HierarchicalPrf out;
  out.hp = ratio(static_cast<double>(overlap), static_cast<double>(pred_total), "Σ|pred| = 0");
  out.hr = ratio(static_cast<double>(overlap), static_cast<double>(true_total), "Σ|true| = 0");
  if (!out.hp.defined() || !out.hr.defined()) {
    out.hf = Measure::undefined("hp or hr undefined");
  } else {
    const double b2 = beta * beta;
    const double hp = out.hp.value();
    const double hr = out.hr.value();
    out.hf = ratio((1.0 + b2) * hp * hr, b2 * hp + hr, "hp = hr = 0");
  }
  return out;
}

}  // namespace hcm
