#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcm/taxonomy.hpp"

namespace fixtures {

using Edges = std::vector<std::pair<std::string, std::string>>;

// T1: R->{A,B}; A->{A1,A2}; B->{B1,B2}; A1->{A1a,A1b}
inline const Edges& t1_edges() {
  static const Edges e = {{"R", "A"},   {"R", "B"},   {"A", "A1"},  {"A", "A2"},
                          {"B", "B1"},  {"B", "B2"},  {"A1", "A1a"}, {"A1", "A1b"}};
  return e;
}

// D1: R->{A,B}; A->C; B->C
inline const Edges& d1_edges() {
  static const Edges e = {{"R", "A"}, {"R", "B"}, {"A", "C"}, {"B", "C"}};
  return e;
}

inline hcm::Taxonomy t1() { return hcm::Taxonomy::build(t1_edges()); }
inline hcm::Taxonomy d1() { return hcm::Taxonomy::build(d1_edges()); }

inline hcm::AllocationPath path(const hcm::Taxonomy& t, std::initializer_list<const char*> labels) {
  hcm::AllocationPath p;
  for (const char* l : labels) p.nodes.push_back(t.index_of(l));
  return p;
}

inline std::vector<std::string> labels(const hcm::Taxonomy& t, std::span<const hcm::NodeIndex> s) {
  std::vector<std::string> out;
  for (auto v : s) out.push_back(t.label(v));
  return out;
}

}  // namespace fixtures
