#include "hcm/taxonomy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hcm/error.hpp"

namespace hcm {

namespace {

bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f' ||
        c == '>' || c == ';')
      return false;
  }
  return true;
}

void sort_unique(std::vector<NodeIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

std::string_view to_string(Structure s) {
  return s == Structure::Tree ? "tree" : "dag";
}

NodeIndex path_leaf(const AllocationPath& p) {
  if (p.empty()) throw Error(ErrorCode::PathNotInTaxonomy, "empty allocation path");
  return p.nodes.back();
}

std::size_t common_path_length(const AllocationPath& a, const AllocationPath& b) {
  const auto n = std::min(a.size(), b.size());
  std::size_t k = 0;
  while (k < n && a.nodes[k] == b.nodes[k]) ++k;
  return k;
}

AllocationPath common_path(const AllocationPath& a, const AllocationPath& b) {
  const auto k = common_path_length(a, b);
  return AllocationPath{{a.nodes.begin(), a.nodes.begin() + static_cast<std::ptrdiff_t>(k)}};
}

Taxonomy Taxonomy::build(std::span<const Edge> edges,
                         std::optional<std::string_view> declared_root) {
  if (edges.empty()) throw Error(ErrorCode::EmptyEdgeList, "taxonomy has no edges");

  Taxonomy t;

  // Intern labels in sorted order so the result is independent of edge order.
  std::set<std::string, std::less<>> labels;
  for (const auto& [parent, child] : edges) {
    for (const auto* s : {&parent, &child}) {
      if (!valid_label(*s))
        throw Error(ErrorCode::InvalidNodeId, "invalid node id '" + *s + "'");
      labels.insert(*s);
    }
  }
  t.labels_.assign(labels.begin(), labels.end());
  for (NodeIndex i = 0; i < t.labels_.size(); ++i) t.index_.emplace(t.labels_[i], i);

  const auto n = t.labels_.size();
  t.parents_.resize(n);
  t.children_.resize(n);

  std::set<std::pair<NodeIndex, NodeIndex>> seen;
  std::map<std::pair<NodeIndex, NodeIndex>, std::size_t> duplicates;
  for (const auto& [parent, child] : edges) {
    const auto p = t.index_.at(parent);
    const auto c = t.index_.at(child);
    if (!seen.emplace(p, c).second) {
      ++duplicates[{p, c}];
      continue;
    }
    t.parents_[c].push_back(p);
    t.children_[p].push_back(c);
  }
  for (const auto& [edge, count] : duplicates) {
    t.warnings_.push_back("duplicate edge " + t.labels_[edge.first] + " -> " +
                          t.labels_[edge.second] + " ignored (" + std::to_string(count) +
                          (count == 1 ? " extra copy)" : " extra copies)"));
  }
  for (auto& v : t.parents_) sort_unique(v);
  for (auto& v : t.children_) sort_unique(v);

  std::vector<NodeIndex> sources;
  for (NodeIndex i = 0; i < n; ++i)
    if (t.parents_[i].empty()) sources.push_back(i);

  if (sources.empty())
    throw Error(ErrorCode::CycleDetected, "every node has a parent, the edge relation is cyclic");
  if (sources.size() > 1) {
    std::string names;
    for (auto s : sources) names += (names.empty() ? "" : ", ") + t.labels_[s];
    throw Error(ErrorCode::MultipleRoots, "nodes without parents: " + names);
  }
  t.root_ = sources.front();
  if (declared_root && t.labels_[t.root_] != *declared_root) {
    throw Error(ErrorCode::DeclaredRootMismatch, "declared root '" + std::string(*declared_root) +
                                                     "' but the edge list is rooted at '" +
                                                     t.labels_[t.root_] + "'");
  }

  std::vector<char> reached(n, 0);
  std::vector<NodeIndex> stack{t.root_};
  reached[t.root_] = 1;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto c : t.children_[v]) {
      if (!reached[c]) {
        reached[c] = 1;
        stack.push_back(c);
      }
    }
  }
  for (NodeIndex i = 0; i < n; ++i) {
    if (!reached[i])
      throw Error(ErrorCode::UnreachableNode,
                  "node '" + t.labels_[i] + "' is not reachable from root");
  }

  // Kahn's algorithm; whatever is left unprocessed sits on a cycle.
  std::vector<std::size_t> in_degree(n);
  for (NodeIndex i = 0; i < n; ++i) in_degree[i] = t.parents_[i].size();
  std::vector<NodeIndex> topo;
  topo.reserve(n);
  topo.push_back(t.root_);
  for (std::size_t head = 0; head < topo.size(); ++head) {
    for (auto c : t.children_[topo[head]]) {
      if (--in_degree[c] == 0) topo.push_back(c);
    }
  }
  if (topo.size() != n) {
    for (NodeIndex i = 0; i < n; ++i) {
      if (in_degree[i] != 0)
        throw Error(ErrorCode::CycleDetected, "node '" + t.labels_[i] + "' lies on a cycle");
    }
  }

  t.structure_ = Structure::Tree;
  for (NodeIndex i = 0; i < n; ++i) {
    if (t.parents_[i].size() > 1) t.structure_ = Structure::Dag;
  }

  t.ancestors_.resize(n);
  for (auto v : topo) {
    auto& acc = t.ancestors_[v];
    for (auto p : t.parents_[v]) {
      acc.push_back(p);
      acc.insert(acc.end(), t.ancestors_[p].begin(), t.ancestors_[p].end());
    }
    sort_unique(acc);
  }
  t.descendants_.resize(n);
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto& acc = t.descendants_[*it];
    for (auto c : t.children_[*it]) {
      acc.push_back(c);
      acc.insert(acc.end(), t.descendants_[c].begin(), t.descendants_[c].end());
    }
    sort_unique(acc);
  }
  t.neighbors_.resize(n);
  for (NodeIndex v = 0; v < n; ++v) {
    auto& acc = t.neighbors_[v];
    for (auto p : t.parents_[v]) {
      for (auto sibling : t.children_[p]) {
        if (sibling != v) acc.push_back(sibling);
      }
    }
    sort_unique(acc);
  }
  return t;
}

void Taxonomy::check_index(NodeIndex n) const {
  if (n >= labels_.size())
    throw Error(ErrorCode::UnknownNode, "node index " + std::to_string(n) + " out of range");
}

NodeIndex Taxonomy::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(ErrorCode::UnknownNode, "unknown node '" + std::string(label) + "'");
}

std::optional<NodeIndex> Taxonomy::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Taxonomy::label(NodeIndex n) const {
  check_index(n);
  return labels_[n];
}

std::span<const NodeIndex> Taxonomy::parents(NodeIndex n) const {
  check_index(n);
  return parents_[n];
}

std::span<const NodeIndex> Taxonomy::children(NodeIndex n) const {
  check_index(n);
  return children_[n];
}

std::span<const NodeIndex> Taxonomy::descendants(NodeIndex n) const {
  check_index(n);
  return descendants_[n];
}

std::span<const NodeIndex> Taxonomy::ancestors(NodeIndex n) const {
  check_index(n);
  return ancestors_[n];
}

std::span<const NodeIndex> Taxonomy::neighbors(NodeIndex n) const {
  check_index(n);
  return neighbors_[n];
}

bool Taxonomy::has_edge(NodeIndex parent, NodeIndex child) const {
  check_index(parent);
  check_index(child);
  const auto& ps = parents_[child];
  return std::binary_search(ps.begin(), ps.end(), parent);
}

std::vector<AllocationPath> Taxonomy::true_paths(NodeIndex n) const {
  check_index(n);
  std::vector<AllocationPath> out;
  // Walk upward from n; each completed walk reversed is a root-to-n path.
  std::vector<NodeIndex> walk{n};
  auto rec = [&](auto&& self, NodeIndex v) -> void {
    if (v == root_) {
      out.push_back(AllocationPath{{walk.rbegin(), walk.rend()}});
      return;
    }
    for (auto p : parents_[v]) {
      walk.push_back(p);
      self(self, p);
      walk.pop_back();
    }
  };
  rec(rec, n);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> Taxonomy::check_path(const AllocationPath& p) const {
  if (p.empty()) return "path is empty";
  for (auto v : p.nodes) {
    if (v >= labels_.size()) return "node index " + std::to_string(v) + " out of range";
  }
  if (p.nodes.front() != root_)
    return "path does not start at root '" + labels_[root_] + "'";
  std::vector<char> seen(labels_.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[p.nodes[i]]) return "node '" + labels_[p.nodes[i]] + "' repeated";
    seen[p.nodes[i]] = 1;
    if (i > 0 && !has_edge(p.nodes[i - 1], p.nodes[i])) {
      return "no edge " + labels_[p.nodes[i - 1]] + " -> " + labels_[p.nodes[i]];
    }
  }
  return std::nullopt;
}

AllocationPath Taxonomy::path_from_labels(std::span<const std::string> labels) const {
  AllocationPath p;
  p.nodes.reserve(labels.size());
  for (const auto& l : labels) p.nodes.push_back(index_of(l));
  return p;
}

std::string Taxonomy::format_path(const AllocationPath& p, std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += sep;
    out += label(p.nodes[i]);
  }
  return out;
}

}  // namespace hcm
