#include "hcm/confusion.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hcm/error.hpp"

namespace hcm {

namespace {

void require_valid(const Taxonomy& t, const AllocationPath& p, const char* what) {
  if (auto defect = t.check_path(p))
    throw Error(ErrorCode::PathNotInTaxonomy, std::string(what) + ": " + *defect);
}

// Eq. 4 on already validated paths.
HierarchicalConfusion confuse_checked(const Taxonomy& t, const AllocationPath& true_path,
                                      const AllocationPath& pred_path) {
  enum : unsigned char { kTrue = 1, kPred = 2, kCounted = 4 };
  std::vector<unsigned char> mark(t.size(), 0);
  for (auto v : true_path.nodes) mark[v] |= kTrue;
  for (auto v : pred_path.nodes) mark[v] |= kPred;

  HierarchicalConfusion c;
  for (auto v : pred_path.nodes) {
    if (v == t.root()) continue;
    if (mark[v] & kTrue)
      ++c.tp;
    else
      ++c.fp;
  }
  for (auto v : true_path.nodes) {
    if (!(mark[v] & kPred)) ++c.fn;
  }

  const auto common = common_path_length(true_path, pred_path);
  for (std::size_t i = 0; i < common; ++i) {
    for (auto n : t.neighbors(true_path.nodes[i])) {
      if (mark[n] & (kTrue | kCounted)) continue;
      mark[n] |= kCounted;
      ++c.tn;
    }
  }
  for (auto d : t.descendants(true_path.nodes[common - 1])) {
    if (mark[d] & (kTrue | kPred | kCounted)) continue;
    mark[d] |= kCounted;
    ++c.tn;
  }
  return c;
}

// Lexicographic comparison helper for benevolent tie-breaking.
struct Candidate {
  std::size_t common = 0;
  const AllocationPath* path = nullptr;
  NodeIndex cls = 0;

  bool better_than(const Candidate& o) const {
    if (o.path == nullptr) return true;
    if (common != o.common) return common > o.common;
    if (*path != *o.path) return *path < *o.path;
    return cls < o.cls;
  }
};

}  // namespace

std::ostream& operator<<(std::ostream& os, const HierarchicalConfusion& c) {
  return os << "(tp=" << c.tp << ", tn=" << c.tn << ", fp=" << c.fp << ", fn=" << c.fn << ")";
}

HierarchicalConfusion confuse_spl_tree(const Taxonomy& t, const AllocationPath& true_path,
                                       const AllocationPath& pred_path) {
  require_valid(t, true_path, "true path");
  require_valid(t, pred_path, "predicted path");
  return confuse_checked(t, true_path, pred_path);
}

std::size_t select_benevolent(std::span<const AllocationPath> true_paths,
                              const AllocationPath& pred) {
  if (true_paths.empty()) throw Error(ErrorCode::EmptyTruePaths, "no true path to compare with");
  std::size_t best = 0;
  Candidate best_c;
  for (std::size_t i = 0; i < true_paths.size(); ++i) {
    Candidate c{common_path_length(true_paths[i], pred), &true_paths[i]};
    if (c.better_than(best_c)) {
      best_c = c;
      best = i;
    }
  }
  return best;
}

HierarchicalConfusion confuse_spl(const Taxonomy& t, std::span<const AllocationPath> true_paths,
                                  const AllocationPath& pred) {
  if (true_paths.empty()) throw Error(ErrorCode::EmptyTruePaths, "no true path to compare with");
  for (const auto& p : true_paths) require_valid(t, p, "true path");
  require_valid(t, pred, "predicted path");
  return confuse_checked(t, true_paths[select_benevolent(true_paths, pred)], pred);
}

HierarchicalConfusion confuse_record(const Taxonomy& t, const GroundTruth& truth,
                                     const PredictionSet& preds) {
  if (truth.classes.empty()) throw Error(ErrorCode::EmptyTruth, "record has no true class");
  std::vector<ClassPaths> expanded;
  expanded.reserve(truth.classes.size());
  for (auto cls : truth.classes) expanded.push_back({cls, t.true_paths(cls)});
  return confuse_record(t, expanded, preds.paths);
}

HierarchicalConfusion confuse_record(const Taxonomy& t, std::span<const ClassPaths> truth,
                                     std::span<const AllocationPath> preds) {
  if (truth.empty()) throw Error(ErrorCode::EmptyTruth, "record has no true class");
  if (preds.empty()) throw Error(ErrorCode::EmptyPredictions, "record has no prediction");
  for (const auto& cp : truth) {
    if (cp.paths.empty())
      throw Error(ErrorCode::EmptyTruePaths, "class '" + t.label(cp.cls) + "' has no path");
    for (const auto& p : cp.paths) require_valid(t, p, "true path");
  }
  for (const auto& p : preds) require_valid(t, p, "predicted path");

  // m-values against the full truth set, computed once.
  std::vector<std::size_t> m(preds.size(), 0);
  for (std::size_t k = 0; k < preds.size(); ++k) {
    for (const auto& cp : truth) {
      for (const auto& p : cp.paths) m[k] = std::max(m[k], common_path_length(p, preds[k]));
    }
  }
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return m[a] > m[b]; });

  std::vector<char> remaining(truth.size(), 1);
  std::size_t remaining_count = truth.size();
  HierarchicalConfusion total;
  for (auto k : order) {
    const auto& pred = preds[k];
    if (remaining_count == 0) {
      total.fp += pred.size() - 1;
      continue;
    }
    Candidate best;
    std::size_t best_class = 0;
    for (std::size_t j = 0; j < truth.size(); ++j) {
      if (!remaining[j]) continue;
      for (const auto& p : truth[j].paths) {
        Candidate c{common_path_length(p, pred), &p, truth[j].cls};
        if (c.better_than(best)) {
          best = c;
          best_class = j;
        }
      }
    }
    total += confuse_checked(t, *best.path, pred);
    remaining[best_class] = 0;
    --remaining_count;
  }
  for (std::size_t j = 0; j < truth.size(); ++j) {
    if (!remaining[j]) continue;
    std::size_t shortest = truth[j].paths.front().size();
    for (const auto& p : truth[j].paths) shortest = std::min(shortest, p.size());
    total.fn += shortest - 1;
  }
  return total;
}

HierarchicalConfusion aggregate(std::span<const HierarchicalConfusion> records) {
  HierarchicalConfusion sum;
  for (const auto& r : records) sum += r;
  return sum;
}

}  // namespace hcm
