#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "hcm/taxonomy.hpp"

namespace hcm {

struct HierarchicalConfusion {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  HierarchicalConfusion& operator+=(const HierarchicalConfusion& o) noexcept {
    tp += o.tp;
    tn += o.tn;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend HierarchicalConfusion operator+(HierarchicalConfusion a,
                                         const HierarchicalConfusion& b) noexcept {
    return a += b;
  }
  friend bool operator==(const HierarchicalConfusion&, const HierarchicalConfusion&) = default;
};

std::ostream& operator<<(std::ostream& os, const HierarchicalConfusion& c);

// True classes C{o_d} of one object.
struct GroundTruth {
  std::vector<NodeIndex> classes;
};

// Predicted allocation paths P_d of one object.
struct PredictionSet {
  std::vector<AllocationPath> paths;
};

// One true class together with all of its root-to-class paths (W_{d,j}).
struct ClassPaths {
  NodeIndex cls = 0;
  std::vector<AllocationPath> paths;
};

// Confusion of a single predicted path against a single true path, counted on
// node sets:
//   tp = |pred ∩ true \ {root}|
//   fp = |pred \ true|
//   fn = |true \ pred|
//   tn = |(∪_{c ∈ common} N{c} \ true) ∪ (D{Z{common}} \ (true ∪ pred))|
// Throws PathNotInTaxonomy for paths that are not valid in `t`.
HierarchicalConfusion confuse_spl_tree(const Taxonomy& t, const AllocationPath& true_path,
                                       const AllocationPath& pred_path);

// Index of the true path sharing the longest common path with `pred`; ties go
// to the lexicographically smallest path. Throws EmptyTruePaths.
std::size_t select_benevolent(std::span<const AllocationPath> true_paths,
                              const AllocationPath& pred);

// Benevolent single-path confusion: scores `pred` against the best matching
// alternative in `true_paths`.
HierarchicalConfusion confuse_spl(const Taxonomy& t, std::span<const AllocationPath> true_paths,
                                  const AllocationPath& pred);

// Generalized confusion for any problem kind (tree or DAG, SPL or MPL,
// MLNP or NMLNP).
//
// Each prediction gets a score m: its longest common path with any path of
// any true class. Predictions are visited by descending m (stable on input
// order). A visited prediction is paired with the remaining class and path
// that match it best, scored with confuse_spl_tree, and that class is then
// retired. Once every class is retired, further predictions count entirely
// as false positives. Classes never paired add the length of their shortest
// path (root excluded) as false negatives.
HierarchicalConfusion confuse_record(const Taxonomy& t, const GroundTruth& truth,
                                     const PredictionSet& preds);

// Same as above with W_{d,j} already expanded; lets callers cache true_paths.
HierarchicalConfusion confuse_record(const Taxonomy& t, std::span<const ClassPaths> truth,
                                     std::span<const AllocationPath> preds);

HierarchicalConfusion aggregate(std::span<const HierarchicalConfusion> records);

}  // namespace hcm
