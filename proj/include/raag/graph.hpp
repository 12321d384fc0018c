#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace raag {

// Sorted vector of vertex indices into a fixed CommutationGraph.
using VertexSet = std::vector<int>;

inline VertexSet vs_sorted(VertexSet v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool vs_contains(const VertexSet& s, int v) {
  return std::binary_search(s.begin(), s.end(), v);
}

inline VertexSet vs_union(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline VertexSet vs_intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

inline VertexSet vs_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

inline bool vs_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Finite simple graph over named generators.  The vertex order is the total
// order used for shortlex everywhere downstream; it is the declared order
// (or lexicographic on names when none is declared).
class CommutationGraph {
 public:
  CommutationGraph() = default;

  CommutationGraph(std::vector<std::string> vertices,
                   const std::vector<std::pair<std::string, std::string>>& edges,
                   bool keep_order = false) {
    if (!keep_order) std::sort(vertices.begin(), vertices.end());
    names_ = std::move(vertices);
    for (int i = 0; i < (int)names_.size(); ++i) {
      if (index_.count(names_[i]))
        throw std::invalid_argument("duplicate vertex: " + names_[i]);
      index_[names_[i]] = i;
    }
    adj_.assign(names_.size(), std::vector<bool>(names_.size(), false));
    nbr_.assign(names_.size(), {});
    for (const auto& [a, b] : edges) add_edge(index_of(a), index_of(b));
  }

  int size() const { return (int)names_.size(); }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::invalid_argument("unknown generator: " + name);
    return it->second;
  }

  bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }

  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  bool adjacent(int u, int v) const { return u != v && adj_[u][v]; }
  const std::vector<int>& neighbours(int v) const { return nbr_[v]; }

  int edge_count() const {
    int m = 0;
    for (int v = 0; v < size(); ++v) m += (int)nbr_[v].size();
    return m / 2;
  }

  VertexSet all_vertices() const {
    VertexSet r(size());
    for (int i = 0; i < size(); ++i) r[i] = i;
    return r;
  }

  bool operator==(const CommutationGraph& o) const {
    return names_ == o.names_ && adj_ == o.adj_;
  }

 protected:
  void add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("loop at vertex " + names_[u]);
    if (adj_[u][v]) throw std::invalid_argument("duplicate edge " + names_[u] +
                                                "-" + names_[v]);
    adj_[u][v] = adj_[v][u] = true;
    nbr_[u].push_back(v);
    nbr_[v].push_back(u);
    std::sort(nbr_[u].begin(), nbr_[u].end());
    std::sort(nbr_[v].begin(), nbr_[v].end());
  }

  std::vector<std::string> names_;
  std::map<std::string, int> index_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<int>> nbr_;
};

// lk(Y) = vertices outside Y adjacent to every member of Y.
inline VertexSet link(const CommutationGraph& g, const VertexSet& y) {
  VertexSet r;
  for (int x = 0; x < g.size(); ++x) {
    if (vs_contains(y, x)) continue;
    bool all = true;
    for (int v : y)
      if (!g.adjacent(x, v)) { all = false; break; }
    if (all && !y.empty()) r.push_back(x);
  }
  return r;
}

// st(Y): union with the link for a single vertex, intersection of the
// individual stars in general (these agree on singletons).
inline VertexSet star(const CommutationGraph& g, const VertexSet& y) {
  if (y.empty()) throw std::invalid_argument("star of empty set");
  VertexSet r = g.all_vertices();
  for (int v : y) {
    VertexSet sv = link(g, {v});
    sv.insert(std::lower_bound(sv.begin(), sv.end(), v), v);
    r = vs_intersect(r, sv);
  }
  return r;
}

struct LinkStar {
  VertexSet link;
  VertexSet star;
};

inline LinkStar link_star(const CommutationGraph& g, const VertexSet& y) {
  if (y.empty()) throw std::invalid_argument("link/star of empty set");
  return {link(g, y), star(g, y)};
}

inline bool is_clique(const CommutationGraph& g, const VertexSet& y) {
  for (size_t i = 0; i < y.size(); ++i)
    for (size_t j = i + 1; j < y.size(); ++j)
      if (!g.adjacent(y[i], y[j])) return false;
  return true;
}

// Connected components of the complement graph restricted to y, ordered by
// least vertex.  These are the supports of the blocks downstream.
inline std::vector<VertexSet> complement_components(const CommutationGraph& g,
                                                    const VertexSet& y) {
  std::vector<VertexSet> comps;
  std::vector<bool> seen(g.size(), false);
  for (int s : y) {
    if (seen[s]) continue;
    VertexSet comp;
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int u : y)
        if (!seen[u] && u != v && !g.adjacent(u, v)) {
          seen[u] = true;
          stack.push_back(u);
        }
    }
    comps.push_back(vs_sorted(std::move(comp)));
  }
  std::sort(comps.begin(), comps.end(),
            [](const VertexSet& a, const VertexSet& b) { return a[0] < b[0]; });
  return comps;
}

// Either a perfect elimination ordering or an induced cycle of length >= 4.
struct ChordalityWitness {
  bool chordal = false;
  std::vector<int> peo;
  std::vector<int> cycle;
};

namespace detail {

// Lexicographic BFS; returns the visit order.
inline std::vector<int> lex_bfs(const CommutationGraph& g) {
  int n = g.size();
  std::vector<std::vector<int>> label(n);
  std::vector<bool> done(n, false);
  std::vector<int> order;
  for (int step = n; step > 0; --step) {
    int best = -1;
    for (int v = 0; v < n; ++v) {
      if (done[v]) continue;
      if (best < 0 || label[v] > label[best]) best = v;
    }
    done[best] = true;
    order.push_back(best);
    for (int u : g.neighbours(best))
      if (!done[u]) label[u].push_back(step);
  }
  return order;
}

// Shortest u-w path avoiding `forbidden`; empty when none exists.
inline std::vector<int> avoiding_path(const CommutationGraph& g, int u, int w,
                                      const std::vector<bool>& forbidden) {
  std::vector<int> prev(g.size(), -2);
  std::vector<int> queue{u};
  prev[u] = -1;
  for (size_t h = 0; h < queue.size(); ++h) {
    int v = queue[h];
    if (v == w) break;
    for (int x : g.neighbours(v)) {
      if (prev[x] != -2 || (forbidden[x] && x != w)) continue;
      prev[x] = v;
      queue.push_back(x);
    }
  }
  if (prev[w] == -2) return {};
  std::vector<int> path;
  for (int v = w; v != -1; v = prev[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Induced cycle through non-adjacent u,w with common neighbour v.
inline std::vector<int> hole_through(const CommutationGraph& g, int v, int u,
                                     int w) {
  std::vector<bool> forbidden(g.size(), false);
  forbidden[v] = true;
  for (int x : g.neighbours(v)) forbidden[x] = true;
  forbidden[u] = forbidden[w] = false;
  auto path = avoiding_path(g, u, w, forbidden);
  if (path.empty()) return {};
  path.insert(path.begin(), v);
  return path;  // v,u,...,w is an induced cycle: the path is shortest and
                // its interior avoids N[v]
}

}  // namespace detail

// Lex-BFS + elimination check.  On failure extracts an induced cycle
// (checkable certificate both ways).
inline ChordalityWitness is_chordal(const CommutationGraph& g) {
  ChordalityWitness w;
  int n = g.size();
  auto order = detail::lex_bfs(g);
  std::vector<int> peo(order.rbegin(), order.rend());
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[peo[i]] = i;

  bool eliminates = true;
  for (int i = 0; i < n && eliminates; ++i) {
    int v = peo[i];
    std::vector<int> later;
    for (int x : g.neighbours(v))
      if (pos[x] > i) later.push_back(x);
    for (size_t a = 0; a < later.size() && eliminates; ++a)
      for (size_t b = a + 1; b < later.size(); ++b)
        if (!g.adjacent(later[a], later[b])) { eliminates = false; break; }
  }
  if (eliminates) {
    w.chordal = true;
    w.peo = peo;
    return w;
  }
  // Non-chordal: some induced cycle passes through a vertex and two of its
  // non-adjacent neighbours, with the rest of the cycle avoiding its closed
  // neighbourhood.  Scan triples until one yields a hole.
  for (int v = 0; v < n; ++v) {
    const auto& nb = g.neighbours(v);
    for (size_t a = 0; a < nb.size(); ++a)
      for (size_t b = a + 1; b < nb.size(); ++b) {
        if (g.adjacent(nb[a], nb[b])) continue;
        auto cycle = detail::hole_through(g, v, nb[a], nb[b]);
        if (!cycle.empty()) {
          w.chordal = false;
          w.cycle = cycle;
          return w;
        }
      }
  }
  throw std::logic_error("elimination failed but no hole found");
}

// Replays a claimed PEO; used by tests and by callers that want to verify
// witnesses independently.
inline bool verify_peo(const CommutationGraph& g, const std::vector<int>& peo) {
  if ((int)peo.size() != g.size()) return false;
  std::vector<int> pos(g.size(), -1);
  for (int i = 0; i < (int)peo.size(); ++i) pos[peo[i]] = i;
  for (int p : pos)
    if (p < 0) return false;
  for (int i = 0; i < (int)peo.size(); ++i) {
    int v = peo[i];
    std::vector<int> later;
    for (int x : g.neighbours(v))
      if (pos[x] > i) later.push_back(x);
    for (size_t a = 0; a < later.size(); ++a)
      for (size_t b = a + 1; b < later.size(); ++b)
        if (!g.adjacent(later[a], later[b])) return false;
  }
  return true;
}

inline bool verify_induced_cycle(const CommutationGraph& g,
                                 const std::vector<int>& cycle) {
  size_t k = cycle.size();
  if (k < 4) return false;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j == k - 1);
      if (g.adjacent(cycle[i], cycle[j]) != consecutive) return false;
    }
  return true;
}

// All cliques (nonempty), used by the representative-set construction.
inline std::vector<VertexSet> all_cliques(const CommutationGraph& g) {
  std::vector<VertexSet> out;
  VertexSet cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (!cur.empty()) out.push_back(cur);
    for (int v = from; v < g.size(); ++v) {
      bool ok = true;
      for (int u : cur)
        if (!g.adjacent(u, v)) { ok = false; break; }
      if (ok) {
        cur.push_back(v);
        self(self, v + 1);
        cur.pop_back();
      }
    }
  };
  rec(rec, 0);
  return out;
}

// Clique tree of a chordal graph: vertices are the maximal cliques, edges a
// maximum-weight spanning tree on separator sizes.  Used for the base of the
// tree-of-groups decomposition.
struct CliqueTree {
  std::vector<VertexSet> cliques;
  std::vector<std::pair<int, int>> edges;          // indices into cliques
  std::vector<VertexSet> separators;               // parallel to edges
};

inline CliqueTree clique_tree(const CommutationGraph& g) {
  auto w = is_chordal(g);
  if (!w.chordal) throw std::invalid_argument("clique tree of non-chordal graph");
  std::vector<int> pos(g.size());
  for (int i = 0; i < (int)w.peo.size(); ++i) pos[w.peo[i]] = i;
  std::vector<VertexSet> cand;
  for (int i = 0; i < g.size(); ++i) {
    int v = w.peo[i];
    VertexSet c{v};
    for (int x : g.neighbours(v))
      if (pos[x] > i) c.push_back(x);
    cand.push_back(vs_sorted(std::move(c)));
  }
  CliqueTree t;
  for (auto& c : cand) {
    bool maximal = true;
    for (auto& d : cand)
      if (&c != &d && c != d && vs_subset(c, d)) { maximal = false; break; }
    if (maximal && std::find(t.cliques.begin(), t.cliques.end(), c) ==
                       t.cliques.end())
      t.cliques.push_back(c);
  }
  std::sort(t.cliques.begin(), t.cliques.end());
  // Prim on separator weights
  int k = (int)t.cliques.size();
  if (k <= 1) return t;
  std::vector<bool> in(k, false);
  in[0] = true;
  for (int step = 1; step < k; ++step) {
    int bi = -1, bj = -1, bw = -1;
    for (int i = 0; i < k; ++i) {
      if (!in[i]) continue;
      for (int j = 0; j < k; ++j) {
        if (in[j]) continue;
        int wt = (int)vs_intersect(t.cliques[i], t.cliques[j]).size();
        if (wt > bw) { bw = wt; bi = i; bj = j; }
      }
    }
    in[bj] = true;
    t.edges.emplace_back(bi, bj);
    t.separators.push_back(vs_intersect(t.cliques[bi], t.cliques[bj]));
  }
  return t;
}

}  // namespace raag
