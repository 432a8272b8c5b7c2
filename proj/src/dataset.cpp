#include "hcm/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hcm/error.hpp"

namespace hcm {

namespace {

struct Line {
  std::size_t number;
  std::string_view text;
};

// Splits on '\n', strips a trailing '\r' and drops empty lines.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back({number, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
}

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
  });
}

// `id<TAB>payload` with both parts non-empty.
std::pair<std::string_view, std::string_view> split_record(const Line& line) {
  auto fields = split(line.text, '\t');
  if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
    throw Error(ErrorCode::MalformedLine,
                "line " + std::to_string(line.number) + ": expected 'record<TAB>value'",
                line.number);
  }
  return {fields[0], fields[1]};
}

template <typename Value>
void insert_record(RecordTable<Value>& table, std::string_view id, Value value,
                   std::size_t line) {
  std::string key(id);
  if (table.index.count(key)) {
    throw Error(ErrorCode::DuplicateRecord,
                "line " + std::to_string(line) + ": record '" + key + "' repeated", line);
  }
  table.index.emplace(key, table.records.size());
  table.records.emplace_back(std::move(key), std::move(value));
}

std::string at_line(std::size_t n) { return "line " + std::to_string(n) + ": "; }

}  // namespace

std::string to_string(const ProblemKind& k) {
  std::string s(to_string(k.structure));
  s += k.paths == PathCount::Spl ? "-spl" : "-mpl";
  s += k.depth == LabelDepth::Mlnp ? "-mlnp" : "-nmlnp";
  return s;
}

std::optional<ProblemKind> parse_problem_kind(std::string_view s) {
  auto parts = split(s, '-');
  if (parts.size() != 3) return std::nullopt;
  ProblemKind k;
  if (parts[0] == "tree")
    k.structure = Structure::Tree;
  else if (parts[0] == "dag")
    k.structure = Structure::Dag;
  else
    return std::nullopt;
  if (parts[1] == "spl")
    k.paths = PathCount::Spl;
  else if (parts[1] == "mpl")
    k.paths = PathCount::Mpl;
  else
    return std::nullopt;
  if (parts[2] == "mlnp")
    k.depth = LabelDepth::Mlnp;
  else if (parts[2] == "nmlnp")
    k.depth = LabelDepth::Nmlnp;
  else
    return std::nullopt;
  return k;
}

std::string_view to_string(SkipReason r) {
  return r == SkipReason::MissingPrediction ? "MissingPrediction" : "MissingTruth";
}

Taxonomy parse_taxonomy_file(std::string_view text) {
  std::vector<Edge> edges;
  for (const auto& line : split_lines(text)) {
    if (line.text.front() == '#') continue;
    auto fields = split(line.text, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw Error(ErrorCode::MalformedLine, at_line(line.number) + "expected 'parent<TAB>child'",
                  line.number);
    }
    for (auto f : fields) {
      if (has_space(f) || f.find('>') != std::string_view::npos ||
          f.find(';') != std::string_view::npos) {
        throw Error(ErrorCode::InvalidNodeId,
                    at_line(line.number) + "invalid node id '" + std::string(f) + "'",
                    line.number);
      }
    }
    edges.emplace_back(std::string(fields[0]), std::string(fields[1]));
  }
  return Taxonomy::build(edges);
}

TruthTable parse_truth_file(std::string_view text, const Taxonomy& t) {
  TruthTable table;
  for (const auto& line : split_lines(text)) {
    auto [id, payload] = split_record(line);
    GroundTruth truth;
    for (auto token : split(payload, ';')) {
      if (token.empty())
        throw Error(ErrorCode::MalformedLine, at_line(line.number) + "empty class", line.number);
      auto cls = t.find(token);
      if (!cls) {
        throw Error(ErrorCode::UnknownClass,
                    at_line(line.number) + "record '" + std::string(id) + "' has unknown class '" +
                        std::string(token) + "'",
                    line.number);
      }
      if (std::find(truth.classes.begin(), truth.classes.end(), *cls) != truth.classes.end()) {
        throw Error(ErrorCode::DuplicateClassInRecord,
                    at_line(line.number) + "class '" + std::string(token) + "' repeated",
                    line.number);
      }
      truth.classes.push_back(*cls);
    }
    insert_record(table, id, std::move(truth), line.number);
  }
  return table;
}

PredictionTable parse_prediction_file(std::string_view text, const Taxonomy& t) {
  PredictionTable table;
  for (const auto& line : split_lines(text)) {
    auto [id, payload] = split_record(line);
    PredictionSet preds;
    for (auto slot : split(payload, ';')) {
      if (slot.empty())
        throw Error(ErrorCode::MalformedLine, at_line(line.number) + "empty path", line.number);
      AllocationPath path;
      for (auto token : split(slot, '>')) {
        if (token.empty()) {
          throw Error(ErrorCode::MalformedLine,
                      at_line(line.number) + "empty node in path '" + std::string(slot) + "'",
                      line.number);
        }
        auto node = t.find(token);
        if (!node) {
          throw Error(ErrorCode::InvalidPath,
                      at_line(line.number) + "unknown node '" + std::string(token) + "' in path",
                      line.number);
        }
        path.nodes.push_back(*node);
      }
      if (path.size() == 1 && path.nodes.front() != t.root() &&
          t.structure() == Structure::Tree) {
        path = t.true_paths(path.nodes.front()).front();
      }
      if (auto defect = t.check_path(path)) {
        throw Error(ErrorCode::InvalidPath,
                    at_line(line.number) + "path '" + std::string(slot) + "': " + *defect,
                    line.number);
      }
      preds.paths.push_back(std::move(path));
    }
    insert_record(table, id, std::move(preds), line.number);
  }
  return table;
}

std::string serialize_predictions(const PredictionTable& preds, const Taxonomy& t) {
  std::string out;
  for (const auto& [id, set] : preds.records) {
    out += id;
    out += '\t';
    for (std::size_t i = 0; i < set.paths.size(); ++i) {
      if (i) out += ';';
      out += t.format_path(set.paths[i]);
    }
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemKind infer_kind(const Taxonomy& t, const TruthTable& truth, const PredictionTable& preds) {
  ProblemKind k;
  k.structure = t.structure();
  for (const auto& [id, g] : truth.records) {
    if (g.classes.size() > 1) k.paths = PathCount::Mpl;
    for (auto c : g.classes) {
      if (!t.is_leaf(c)) k.depth = LabelDepth::Nmlnp;
    }
  }
  for (const auto& [id, p] : preds.records) {
    if (p.paths.size() > 1) k.paths = PathCount::Mpl;
    for (const auto& path : p.paths) {
      if (!t.is_leaf(path_leaf(path))) k.depth = LabelDepth::Nmlnp;
    }
  }
  return k;
}

void validate_kind(const ProblemKind& kind, const Taxonomy& t, const TruthTable& truth,
                   const PredictionTable& preds) {
  if (kind.structure != t.structure()) {
    throw Error(ErrorCode::KindMismatch, "kind " + to_string(kind) + " declared but taxonomy is a " +
                                             std::string(to_string(t.structure())));
  }
  for (const auto& [id, g] : truth.records) {
    if (kind.paths == PathCount::Spl && g.classes.size() != 1)
      throw Error(ErrorCode::KindMismatch, "record '" + id + "' has several true classes (SPL)");
    if (kind.depth == LabelDepth::Mlnp) {
      for (auto c : g.classes) {
        if (!t.is_leaf(c)) {
          throw Error(ErrorCode::KindMismatch,
                      "record '" + id + "' true class '" + t.label(c) + "' is not a leaf (MLNP)");
        }
      }
    }
  }
  for (const auto& [id, p] : preds.records) {
    if (kind.paths == PathCount::Spl && p.paths.size() != 1)
      throw Error(ErrorCode::KindMismatch, "record '" + id + "' has several predicted paths (SPL)");
    if (kind.depth == LabelDepth::Mlnp) {
      for (const auto& path : p.paths) {
        if (!t.is_leaf(path_leaf(path))) {
          throw Error(ErrorCode::KindMismatch,
                      "record '" + id + "' prediction '" + t.format_path(path) +
                          "' does not end at a leaf (MLNP)");
        }
      }
    }
  }
}

EvaluationRun evaluate_model(const Taxonomy& t, const TruthTable& truth,
                             const PredictionTable& preds, const ProblemKind& kind,
                             const EvaluateOptions& options) {
  validate_kind(kind, t, truth, preds);

  EvaluationRun run;
  run.model_name = options.model_name;

  std::unordered_map<NodeIndex, std::vector<AllocationPath>> path_cache;
  auto paths_of = [&](NodeIndex c) -> const std::vector<AllocationPath>& {
    auto it = path_cache.find(c);
    if (it == path_cache.end()) it = path_cache.emplace(c, t.true_paths(c)).first;
    return it->second;
  };

  const PredictionSet root_only{{AllocationPath{{t.root()}}}};
  std::vector<PathPair> pairs;
  std::vector<ClassPaths> expanded;
  for (const auto& [id, g] : truth.records) {
    const PredictionSet* p = preds.find(id);
    if (p == nullptr) {
      if (!options.missing_as_root) {
        run.skipped.push_back({id, SkipReason::MissingPrediction});
        continue;
      }
      p = &root_only;
    }
    expanded.clear();
    for (auto c : g.classes) expanded.push_back({c, paths_of(c)});
    run.confusion += confuse_record(t, expanded, p->paths);
    ++run.record_count;
    if (kind.paths == PathCount::Spl) {
      const auto& w = expanded.front().paths;
      const auto& pred = p->paths.front();
      pairs.push_back({w[select_benevolent(w, pred)], pred});
    }
  }
  for (const auto& [id, p] : preds.records) {
    if (truth.find(id) == nullptr) run.skipped.push_back({id, SkipReason::MissingTruth});
  }
  if (run.record_count == 0)
    throw Error(ErrorCode::EmptyIntersection, "no record has both truth and prediction");

  run.report = flat_metrics(run.confusion);
  run.report.beta = options.beta;
  if (kind.paths == PathCount::Spl) {
    auto prf = hierarchical_prf(pairs, options.beta);
    run.report.hp = prf.hp;
    run.report.hr = prf.hr;
    run.report.hf = prf.hf;
  } else {
    run.report.hp = run.report.hr = run.report.hf = Measure::undefined("multi-path problem");
  }
  return run;
}

}  // namespace hcm
