#pragma once

// Brute-force reference computations, kept deliberately independent of the
// library's normal-form path: plain letter strings, exhaustive closures.

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace oracle {

using raag::CommutationGraph;
using Letters = std::string;  // char: gen*2 + (sign<0)

inline Letters to_letters(const raag::Word& w) {
  Letters ls;
  for (const auto& s : w.syls) {
    long long n = s.exp < 0 ? -s.exp : s.exp;
    for (long long i = 0; i < n; ++i)
      ls.push_back((char)(s.gen * 2 + (s.exp < 0 ? 1 : 0)));
  }
  return ls;
}

// Closure of a letter string under adjacent commuting swaps and free
// cancellation of adjacent inverse pairs.
inline std::unordered_set<Letters> closure(const CommutationGraph& g,
                                           const Letters& start) {
  std::unordered_set<Letters> seen{start};
  std::vector<Letters> queue{start};
  while (!queue.empty()) {
    Letters cur = queue.back();
    queue.pop_back();
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      int ga = cur[i] / 2, gb = cur[i + 1] / 2;
      if (ga == gb && (cur[i] ^ 1) == cur[i + 1]) {
        Letters nxt = cur.substr(0, i) + cur.substr(i + 2);
        if (seen.insert(nxt).second) queue.push_back(nxt);
      }
      if (ga != gb && g.adjacent(ga, gb)) {
        Letters nxt = cur;
        std::swap(nxt[i], nxt[i + 1]);
        if (seen.insert(nxt).second) queue.push_back(nxt);
      }
    }
  }
  return seen;
}

// Least (length, lex) string in the closure: a canonical form for the element.
inline Letters canonical(const CommutationGraph& g, const raag::Word& w) {
  Letters best;
  bool have = false;
  for (const auto& c : closure(g, to_letters(w))) {
    if (!have || c.size() < best.size() ||
        (c.size() == best.size() && c < best)) {
      best = c;
      have = true;
    }
  }
  return best;
}

inline bool equal(const CommutationGraph& g, const raag::Word& u,
                  const raag::Word& v) {
  return canonical(g, u) == canonical(g, v);
}

// Exhaustive induced-cycle search.
inline bool chordal(const CommutationGraph& g) {
  int n = g.size();
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> vs;
    for (int v = 0; v < n; ++v)
      if (mask & (1 << v)) vs.push_back(v);
    if (vs.size() < 4) continue;
    // induced subgraph is a cycle iff connected and every degree is 2
    bool deg_ok = true;
    for (int v : vs) {
      int d = 0;
      for (int u : vs)
        if (u != v && g.adjacent(u, v)) ++d;
      if (d != 2) { deg_ok = false; break; }
    }
    if (!deg_ok) continue;
    std::vector<int> stack{vs[0]};
    std::unordered_set<int> seen{vs[0]};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : vs)
        if (u != v && g.adjacent(u, v) && seen.insert(u).second)
          stack.push_back(u);
    }
    if (seen.size() == vs.size()) return false;
  }
  return true;
}

}  // namespace oracle
