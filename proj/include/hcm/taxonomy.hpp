#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hcm {

// Dense index of a class inside one Taxonomy. Indices are assigned in
// lexicographic order of the node labels, so comparing index sequences
// compares label sequences.
using NodeIndex = std::uint32_t;

enum class Structure { Tree, Dag };

std::string_view to_string(Structure s);

// Root-anchored sequence of classes where every consecutive pair is a direct
// (parent, child) edge. Validity is checked against a Taxonomy, see
// Taxonomy::check_path.
struct AllocationPath {
  std::vector<NodeIndex> nodes;

  std::size_t size() const noexcept { return nodes.size(); }
  bool empty() const noexcept { return nodes.empty(); }

  friend auto operator<=>(const AllocationPath&, const AllocationPath&) = default;
  friend bool operator==(const AllocationPath&, const AllocationPath&) = default;
};

// Last node of a path (Z{.}).
NodeIndex path_leaf(const AllocationPath& p);

// Longest root-anchored sequence shared consecutively by both paths. Both
// paths start at the same root, so this is their longest common prefix.
AllocationPath common_path(const AllocationPath& a, const AllocationPath& b);

// Length of common_path(a, b) without materializing it.
std::size_t common_path_length(const AllocationPath& a, const AllocationPath& b);

using Edge = std::pair<std::string, std::string>;

// Immutable rooted DAG of classes with precomputed ancestor, descendant and
// neighbor indexes. All queries are read-only.
class Taxonomy {
 public:
  // Validates and indexes the edge list. Duplicate edges are dropped and
  // reported through warnings(); every other defect throws hcm::Error.
  static Taxonomy build(std::span<const Edge> edges,
                        std::optional<std::string_view> declared_root = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  NodeIndex root() const noexcept { return root_; }
  Structure structure() const noexcept { return structure_; }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

  // Label <-> index conversion. index_of throws UnknownNode.
  NodeIndex index_of(std::string_view label) const;
  std::optional<NodeIndex> find(std::string_view label) const;
  const std::string& label(NodeIndex n) const;

  // All returned spans are sorted ascending and free of duplicates.
  std::span<const NodeIndex> parents(NodeIndex n) const;
  std::span<const NodeIndex> children(NodeIndex n) const;
  std::span<const NodeIndex> descendants(NodeIndex n) const;
  std::span<const NodeIndex> ancestors(NodeIndex n) const;
  // Nodes other than n sharing at least one direct parent with n.
  std::span<const NodeIndex> neighbors(NodeIndex n) const;

  bool is_leaf(NodeIndex n) const { return children(n).empty(); }
  bool has_edge(NodeIndex parent, NodeIndex child) const;

  // Every root-to-n path, sorted lexicographically. A tree yields exactly one.
  std::vector<AllocationPath> true_paths(NodeIndex n) const;

  // Returns a description of the first defect, or nullopt for a valid path.
  std::optional<std::string> check_path(const AllocationPath& p) const;

  AllocationPath path_from_labels(std::span<const std::string> labels) const;
  std::string format_path(const AllocationPath& p, std::string_view sep = ">") const;

 private:
  Taxonomy() = default;
  void check_index(NodeIndex n) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::vector<NodeIndex>> parents_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<std::vector<NodeIndex>> descendants_;
  std::vector<std::vector<NodeIndex>> ancestors_;
  std::vector<std::vector<NodeIndex>> neighbors_;
  std::vector<std::string> warnings_;
  NodeIndex root_ = 0;
  Structure structure_ = Structure::Tree;
};

}  // namespace hcm
