#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hcm/confusion.hpp"
#include "hcm/dataset.hpp"
#include "hcm/metrics.hpp"

namespace hcm {

// Percentage with two decimals, halves rounded away from zero; "n/a" when
// undefined.
std::string format_percent(const Measure& m);

struct ComparisonRow {
  std::string model;
  HierarchicalConfusion confusion;
  MetricReport report;
  std::size_t rank = 0;
};

struct ComparisonTable {
  std::string rank_metric = "mcc";
  std::vector<ComparisonRow> rows;
};

// Assigns ranks by descending `rank_metric` (undefined last, tied models share
// the smaller rank) and orders rows by rank, then model name. Throws
// std::invalid_argument for an unknown metric or duplicate model names.
ComparisonTable rank_models(std::vector<ComparisonRow> rows, std::string_view rank_metric);

// Header: model tp tn fp fn acc ppv tpr fnr fpr tnr pt f1 mcc hp hr hf
std::string render_tsv(const EvaluationRun& run);
std::string render_json(const EvaluationRun& run);

// Same columns as render_tsv plus a trailing rank column.
std::string render_tsv(const ComparisonTable& table);
std::string render_json(const ComparisonTable& table);

// `model<TAB>tp<TAB>tn<TAB>fp<TAB>fn` per line; lines starting with '#' are
// comments. Replays published confusion counts without the raw data.
std::vector<std::pair<std::string, HierarchicalConfusion>> parse_replay_counts(
    std::string_view text);

}  // namespace hcm
