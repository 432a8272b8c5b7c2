#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcm/confusion.hpp"
#include "hcm/metrics.hpp"
#include "hcm/taxonomy.hpp"

namespace hcm {

enum class PathCount { Spl, Mpl };
enum class LabelDepth { Mlnp, Nmlnp };

struct ProblemKind {
  Structure structure = Structure::Tree;
  PathCount paths = PathCount::Spl;
  LabelDepth depth = LabelDepth::Mlnp;

  friend bool operator==(const ProblemKind&, const ProblemKind&) = default;
};

// "tree-spl-mlnp", "dag-mpl-nmlnp", ...
std::string to_string(const ProblemKind& k);
std::optional<ProblemKind> parse_problem_kind(std::string_view s);

// Records keep their input order; `index` maps a record id to its position.
template <typename Value>
struct RecordTable {
  std::vector<std::pair<std::string, Value>> records;
  std::unordered_map<std::string, std::size_t> index;

  const Value* find(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? nullptr : &records[it->second].second;
  }
  std::size_t size() const noexcept { return records.size(); }
};

using TruthTable = RecordTable<GroundTruth>;
using PredictionTable = RecordTable<PredictionSet>;

// `parent<TAB>child` per line, `#` comments, blank lines ignored.
Taxonomy parse_taxonomy_file(std::string_view text);
// `record<TAB>class1;class2;...` per line.
TruthTable parse_truth_file(std::string_view text, const Taxonomy& t);
// `record<TAB>R>A>A1;R>B;...` per line. On tree taxonomies a bare class id is
// accepted in place of a path and expanded to its unique root path.
PredictionTable parse_prediction_file(std::string_view text, const Taxonomy& t);

std::string serialize_predictions(const PredictionTable& preds, const Taxonomy& t);

// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

// Structure from the taxonomy, MPL if any record carries several classes or
// several predicted paths, NMLNP if any true class is an inner node.
ProblemKind infer_kind(const Taxonomy& t, const TruthTable& truth, const PredictionTable& preds);

// Throws KindMismatch when the inputs violate the declared kind.
void validate_kind(const ProblemKind& kind, const Taxonomy& t, const TruthTable& truth,
                   const PredictionTable& preds);

enum class SkipReason { MissingPrediction, MissingTruth };
std::string_view to_string(SkipReason r);

struct SkippedRecord {
  std::string id;
  SkipReason reason;

  friend bool operator==(const SkippedRecord&, const SkippedRecord&) = default;
};

struct EvaluationRun {
  std::string model_name;
  HierarchicalConfusion confusion;
  MetricReport report;
  std::size_t record_count = 0;
  std::vector<SkippedRecord> skipped;
};

struct EvaluateOptions {
  std::string model_name = "model";
  double beta = 1.0;
  // Score records without a prediction as the bare root path instead of
  // skipping them.
  bool missing_as_root = false;
};

// Sums confuse_record over every record with both truth and prediction, then
// derives the flat metrics (and hP/hR/hF for SPL kinds). Throws
// EmptyIntersection if nothing could be evaluated.
EvaluationRun evaluate_model(const Taxonomy& t, const TruthTable& truth,
                             const PredictionTable& preds, const ProblemKind& kind,
                             const EvaluateOptions& options = {});

}  // namespace hcm
