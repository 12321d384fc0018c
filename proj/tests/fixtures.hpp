#pragma once

// Shared graphs for tests and the acceptance suite.

#include <vector>

#include "raag/graph.hpp"

namespace fixtures {

using raag::CommutationGraph;

inline CommutationGraph p4() {
  return CommutationGraph({"a", "b", "c", "d"},
                          {{"a", "b"}, {"b", "c"}, {"c", "d"}});
}

// The seven-vertex graph from the worked centraliser example: a is adjacent
// to everything, b1-c1-d1-d2-c2-b2 closes a cycle through a, plus the chords
// b2-d2, d2-c1, c2-d1, d1-b1.
inline CommutationGraph fig1() {
  return CommutationGraph(
      {"a", "b1", "b2", "c1", "c2", "d1", "d2"},
      {{"a", "b2"},  {"b2", "c2"}, {"c2", "d2"}, {"d2", "d1"}, {"d1", "c1"},
       {"c1", "b1"}, {"b1", "a"},  {"b2", "d2"}, {"d2", "a"},  {"a", "d1"},
       {"d1", "b1"}, {"d2", "c1"}, {"c1", "a"},  {"a", "c2"},  {"c2", "d1"}});
}

inline CommutationGraph free_group(int rank) {
  std::vector<std::string> names;
  for (int i = 0; i < rank; ++i) names.push_back(std::string(1, char('x' + i)));
  return CommutationGraph(names, {});
}

inline CommutationGraph free_abelian(int rank) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < rank; ++i) names.push_back(std::string(1, char('a' + i)));
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) edges.push_back({names[i], names[j]});
  return CommutationGraph(names, edges);
}

inline CommutationGraph cycle(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  for (int i = 0; i < n; ++i) edges.push_back({names[i], names[(i + 1) % n]});
  return CommutationGraph(names, edges);
}

// Fixed corpus of graphs on <= 5 vertices used by the oracle-equivalence and
// chordality sweeps: paths, cycles, stars, completes, and a few mixed ones.
inline std::vector<CommutationGraph> small_corpus() {
  std::vector<CommutationGraph> out;
  out.push_back(CommutationGraph({"a"}, {}));                       // point
  out.push_back(free_group(2));                                     // F2
  out.push_back(free_abelian(2));                                   // Z^2
  out.push_back(free_group(3));                                     // F3
  out.push_back(free_abelian(3));                                   // Z^3
  out.push_back(CommutationGraph({"a", "b", "c"}, {{"a", "b"}}));   // Z^2 * Z
  out.push_back(CommutationGraph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));  // P3
  out.push_back(cycle(3));
  out.push_back(p4());
  out.push_back(cycle(4));
  out.push_back(free_abelian(4));
  out.push_back(free_group(4));
  out.push_back(CommutationGraph({"a", "b", "c", "d"},
                                 {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}, {"a", "c"}}));
  out.push_back(CommutationGraph({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}}));
  out.push_back(CommutationGraph({"a", "b", "c", "d"},
                                 {{"a", "b"}, {"a", "c"}, {"a", "d"}}));  // star
  out.push_back(CommutationGraph({"a", "b", "c", "d", "e"},
                                 {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}}));  // P5
  out.push_back(cycle(5));
  out.push_back(free_abelian(5));
  out.push_back(CommutationGraph({"a", "b", "c", "d", "e"},
                                 {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}}));
  out.push_back(CommutationGraph({"a", "b", "c", "d", "e"},
                                 {{"a", "b"}, {"a", "c"}, {"a", "d"}, {"a", "e"}, {"b", "c"}, {"d", "e"}}));
  return out;
}

}  // namespace fixtures
