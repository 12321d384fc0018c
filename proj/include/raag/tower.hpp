#pragma once

#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "raag/discriminate.hpp"
#include "raag/group.hpp"

namespace raag {

// Gamma_l with its partition of edges into d-edges and c-edges.  Level 0 has
// d-edges only.
struct LayeredGraph {
  CommutationGraph graph;
  std::set<std::pair<int, int>> c_edges;  // normalised (min,max)

  bool is_c(int u, int v) const {
    return c_edges.count({std::min(u, v), std::max(u, v)}) > 0;
  }
  bool is_d(int u, int v) const { return graph.adjacent(u, v) && !is_c(u, v); }
};

struct OrthResult {
  VertexSet perp;
  VertexSet closure;
  bool closed = false;
  bool indecomposable = false;
  bool co_irreducible = false;
};

// K^perp, K^perp-perp, and the co-irreducibility test: closed plus
// E_d-direct indecomposability of the complement.  Indecomposability is
// connectivity of the graph on K^perp whose edges are the non-d-joined pairs.
inline OrthResult orth(const LayeredGraph& lg, const VertexSet& y) {
  OrthResult r;
  r.perp = link(lg.graph, y);
  r.closure = r.perp.empty() ? VertexSet{} : link(lg.graph, r.perp);
  r.closed = (r.closure == y);
  if (r.perp.empty()) {
    r.indecomposable = false;
  } else if (r.perp.size() == 1) {
    r.indecomposable = true;
  } else {
    std::vector<int> comp(r.perp.size(), -1);
    std::vector<size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      size_t i = stack.back();
      stack.pop_back();
      for (size_t j = 0; j < r.perp.size(); ++j) {
        if (comp[j] >= 0 || i == j) continue;
        if (!lg.is_d(r.perp[i], r.perp[j])) {  // non-d-joined pairs are edges
          comp[j] = 0;
          stack.push_back(j);
        }
      }
    }
    r.indecomposable = std::find(comp.begin(), comp.end(), -1) == comp.end();
  }
  r.co_irreducible = r.closed && r.indecomposable;
  return r;
}

enum class FloorKind { A2Abelian, B1, C };

inline const char* floor_tag(FloorKind k) {
  switch (k) {
    case FloorKind::A2Abelian: return "a2";
    case FloorKind::B1: return "b1";
    case FloorKind::C: return "c";
  }
  return "?";
}

// Surface data for a quadratic floor: the relator
//   W = prod [x_{2i-1},x_{2i}] (prod u_i^{x_i}) u_{m+1}   (orientable), or
//   W = prod x_i^2 (prod u_i^{x_i}) u_{m+1}               (non-orientable),
// together with the solution data v_j, w_k witnessing
//   u_{m+1}^{-1} = prod [v_{2i-1},v_{2i}] prod u_i^{w_i}.
struct QuadraticData {
  bool orientable = true;
  int genus = 0;
  std::vector<std::string> u_words;  // u_{2g+1},...,u_m,u_{m+1}
  std::vector<std::string> v_words;  // 2g (orientable) or g entries
  std::vector<std::string> w_words;  // one per conjugated boundary word
};

struct FloorSpec {
  FloorKind kind = FloorKind::B1;
  std::vector<std::string> k_generators;  // Y_l, naming K_l
  std::string u;                          // B1 only
  int m_new = 1;
  std::optional<QuadraticData> quadratic;
};

// A relator, stored as a word over the generators of Gamma_l.
using GenWord = std::vector<std::pair<int, long long>>;

struct Floor {
  FloorSpec spec;
  LayeredGraph gamma;          // Gamma_l
  VertexSet y;                 // K_l generators (ids in Gamma_{l-1})
  VertexSet perp;              // K_l^perp
  std::vector<int> new_vertices;
  std::vector<GenWord> relators;          // S'_l
  std::vector<std::string> relator_text;  // printable forms
  GroupPtr group;              // group handle after this floor
  bool presentational = false; // quadratic floors keep the previous handle
  int edge_rank = 0;           // rank of the amalgamated subgroup
  GroupElem attach;            // A2/B1: the centraliser's defining element;
                               // C: the attaching element t
  std::string note;
};

class TowerPresentation {
 public:
  explicit TowerPresentation(CommutationGraph base, size_t budget = 16) {
    base_.graph = std::move(base);
    g0_ = Group::make_raag(base_.graph, budget);
    for (int v = 0; v < base_.graph.size(); ++v) {
      vgen_.push_back({0, v});
      has_gen_.push_back(true);
    }
  }

  const LayeredGraph& layer(int level) const {
    return level == 0 ? base_ : floors_.at(level - 1).gamma;
  }
  int height() const { return (int)floors_.size(); }
  const std::vector<Floor>& floors() const { return floors_; }
  const Floor& floor(int level) const { return floors_.at(level - 1); }
  GroupPtr base_group() const { return g0_; }
  GroupPtr group_at(int level) const {
    return level == 0 ? g0_ : floors_.at(level - 1).group;
  }
  GroupPtr top_group() const { return group_at(height()); }

  bool vertex_has_gen(int v) const { return has_gen_.at(v); }

  // pi: a word over Gamma_l into the group of level l.
  GroupElem eval_word(int level, const GenWord& w) const {
    GroupPtr g = group_at(level);
    GroupElem e = g->identity();
    for (const auto& [v, exp] : w) {
      if (!has_gen_.at(v))
        throw std::invalid_argument(
            "generator " + layer(level).graph.name(v) +
            " belongs to a quadratic floor and has no group image");
      e = g->mul(e, g->gen(vgen_.at(v), exp));
    }
    return e;
  }

  GenWord parse_gen_word(int level, const std::string& text) const {
    auto w = parse_word(layer(level).graph, text);
    GenWord out;
    for (const auto& s : w.syls) out.push_back({s.gen, s.exp});
    return out;
  }

  void add_floor(const FloorSpec& spec);

 private:
  LayeredGraph base_;
  GroupPtr g0_;
  std::vector<Floor> floors_;
  std::vector<GenRef> vgen_;      // Gamma vertex -> chain generator
  std::vector<bool> has_gen_;
};

namespace detail {

inline std::string print_gen_word(const CommutationGraph& g, const GenWord& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, e] : w) {
    if (!first) out << ' ';
    first = false;
    out << g.name(v);
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

inline GenWord gw_conj(const GenWord& u, const GenWord& by) {
  GenWord out;
  for (auto it = by.rbegin(); it != by.rend(); ++it)
    out.push_back({it->first, -it->second});
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), by.begin(), by.end());
  return out;
}

inline GenWord gw_commutator(const GenWord& a, const GenWord& b) {
  GenWord out;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    out.push_back({it->first, -it->second});
  for (auto it = b.rbegin(); it != b.rend(); ++it)
    out.push_back({it->first, -it->second});
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace detail

// Generating elements of C_{G_{l-1}}(<K^perp>): the chain generators that
// commute with every member, plus the cyclic roots of the members' own
// centralisers when they qualify.
inline std::vector<GroupElem> set_centralizer_generators(
    const TowerPresentation& t, int level, const VertexSet& perp) {
  GroupPtr g = t.group_at(level);
  std::vector<GroupElem> members;
  for (int v : perp) members.push_back(t.eval_word(level, {{v, 1}}));
  std::vector<GroupElem> cands;
  for (const auto& r : g->all_generators()) cands.push_back(g->gen(r));
  for (const auto& m : members) {
    auto c = g->centralizer(m);
    if (c.root && g->is_identity(c.conjugator)) cands.push_back(g->lift(*c.root));
  }
  std::vector<GroupElem> out;
  for (const auto& cand : cands) {
    bool ok = true;
    for (const auto& m : members)
      if (!g->commute(cand, m)) { ok = false; break; }
    if (!ok) continue;
    bool dup = false;
    for (const auto& o : out)
      if (g->equal(o, cand)) dup = true;
    if (!dup) out.push_back(cand);
  }
  return out;
}

// Quadratic identity u_{m+1}^{-1} = prod [v_{2i-1},v_{2i}] prod u_i^{w_i},
// evaluated exactly in the level group.  Returns an error message on failure.
inline std::optional<std::string> verify_quadratic_identity(
    const TowerPresentation& t, int level, const QuadraticData& q) {
  GroupPtr g = t.group_at(level);
  int g2 = q.orientable ? 2 * q.genus : q.genus;
  int m = g2 + (int)q.u_words.size() - 1;
  if ((int)q.w_words.size() != m - g2)
    return "quadratic data: expected " + std::to_string(m - g2) + " w-words";
  if ((int)q.v_words.size() != g2)
    return "quadratic data: expected " + std::to_string(g2) + " v-words";
  auto ev = [&](const std::string& s) {
    return t.eval_word(level, t.parse_gen_word(level, s));
  };
  GroupElem rhs = g->identity();
  if (q.orientable) {
    for (int i = 0; i < q.genus; ++i) {
      auto v1 = ev(q.v_words[2 * i]);
      auto v2 = ev(q.v_words[2 * i + 1]);
      rhs = g->mul(rhs, g->mul(g->mul(g->inv(v1), g->inv(v2)),
                               g->mul(v1, v2)));
    }
  } else {
    for (int i = 0; i < q.genus; ++i) {
      auto v = ev(q.v_words[i]);
      rhs = g->mul(rhs, g->mul(v, v));
    }
  }
  for (size_t i = 0; i + 1 < q.u_words.size(); ++i) {
    auto ui = ev(q.u_words[i]);
    auto wi = ev(q.w_words[i]);
    rhs = g->mul(rhs, g->conj_by(ui, wi));
  }
  auto lhs = g->inv(ev(q.u_words.back()));
  if (!g->equal(lhs, rhs))
    return "quadratic identity fails: u_{m+1}^-1 != boundary product";
  return std::nullopt;
}

inline void TowerPresentation::add_floor(const FloorSpec& spec) {
  int l = height() + 1;
  if (l > 1 && floors_.back().presentational)
    throw std::invalid_argument(
        "floors above a quadratic floor are unsupported; exact computation "
        "routes through embed_quadratic");
  const LayeredGraph& prev = layer(l - 1);
  GroupPtr cur = group_at(l - 1);

  Floor f;
  f.spec = spec;
  for (const auto& n : spec.k_generators)
    f.y.push_back(prev.graph.index_of(n));
  f.y = vs_sorted(std::move(f.y));
  auto o = orth(prev, f.y);
  if (!o.co_irreducible) {
    std::string why = !o.closed ? "K is not closed (K^perp-perp != K)"
                                : "K^perp is E_d-directly decomposable";
    throw std::invalid_argument("floor " + std::to_string(l) + ": " + why);
  }
  f.perp = o.perp;
  if (spec.m_new < 1)
    throw std::invalid_argument("floor needs at least one new generator");

  // the amalgamated centraliser / attaching data, per floor kind
  std::vector<GroupElem> c_gens;  // generators of C for the basic relators
  bool perp_clique = is_clique(prev.graph, f.perp);
  switch (spec.kind) {
    case FloorKind::A2Abelian: {
      if (!perp_clique)
        throw std::invalid_argument("a2 floor needs abelian K^perp");
      GenWord gy;
      for (int v : f.perp) gy.push_back({v, 1});
      f.attach = eval_word(l - 1, gy);
      auto cent = cur->centralizer(f.attach);
      if (!cent.abelian)
        throw std::invalid_argument(
            "a2 floor with non-abelian centraliser is normalised away; "
            "re-root the tower (witness element " +
            detail::print_gen_word(prev.graph, gy) + ")");
      f.edge_rank = cent.rank();
      c_gens = cur->centralizer_generators(cent);
      break;
    }
    case FloorKind::B1: {
      auto uw = parse_gen_word(l - 1, spec.u);
      Word raw{&prev.graph, {}};
      for (auto& [v, e] : uw) raw.syls.push_back({v, e});
      NormalWord u = normalize(raw);
      if (!vs_subset(u.support(), f.perp))
        throw std::invalid_argument("b1 floor: u is not supported on K^perp");
      if (!is_cyclically_reduced(u))
        throw std::invalid_argument("b1 floor: u is not cyclically reduced");
      if (complement_components(prev.graph, u.support()).size() != 1)
        throw std::invalid_argument("b1 floor: u is not a block element");
      if (detail::block_root(u, 16).multiplicity != 1)
        throw std::invalid_argument("b1 floor: u is a proper power");
      GenWord gu;
      for (const auto& s : u.syls) gu.push_back({s.gen, s.exp});
      f.attach = eval_word(l - 1, gu);
      auto cent = cur->centralizer(f.attach);
      if (!cent.abelian)
        throw std::invalid_argument(
            "b1 floor: C(u) is non-abelian (witness element " + spec.u + ")");
      f.edge_rank = cent.rank();
      c_gens = cur->centralizer_generators(cent);
      break;
    }
    case FloorKind::C: {
      if (!spec.quadratic)
        throw std::invalid_argument("quadratic floor needs surface data");
      const auto& q = *spec.quadratic;
      if (perp_clique)
        throw std::invalid_argument("quadratic floor needs non-abelian K^perp");
      int g2 = q.orientable ? 2 * q.genus : q.genus;
      int m = g2 + (int)q.u_words.size() - 1;
      if (m != spec.m_new)
        throw std::invalid_argument("quadratic floor: m_new must equal " +
                                    std::to_string(m));
      // Euler characteristic 1 - m <= -2, or the [x1,x2]u3 shape
      bool chi_ok = (m >= 3) || (q.orientable && q.genus == 1 && m == 2);
      if (!chi_ok)
        throw std::invalid_argument(
            "quadratic floor: Euler characteristic condition fails");
      // all data words live in K^perp
      for (const auto* vec : {&q.u_words, &q.v_words, &q.w_words})
        for (const auto& s : *vec) {
          auto gw = parse_gen_word(l - 1, s);
          for (auto& [v, e] : gw)
            if (!vs_contains(f.perp, v))
              throw std::invalid_argument("quadratic floor: datum " + s +
                                          " leaves K^perp");
        }
      // the constraint subgroup must be non-abelian
      std::vector<GroupElem> data;
      for (const auto* vec : {&q.u_words, &q.v_words, &q.w_words})
        for (const auto& s : *vec)
          data.push_back(eval_word(l - 1, parse_gen_word(l - 1, s)));
      bool nonab = false;
      for (size_t i = 0; i < data.size() && !nonab; ++i)
        for (size_t j = i + 1; j < data.size() && !nonab; ++j)
          if (!cur->commute(data[i], data[j])) nonab = true;
      if (!nonab)
        throw std::invalid_argument(
            "quadratic floor: constraint subgroup is abelian");
      if (auto err = verify_quadratic_identity(*this, l - 1, q))
        throw std::invalid_argument("quadratic floor: " + *err);
      // attaching element t = u_{2g+1}...u_m, or u_{m+1} when m = 2g
      GroupElem tformal = cur->identity();
      if (m > g2) {
        for (size_t i = 0; i + 1 < q.u_words.size(); ++i)
          tformal = cur->mul(
              tformal, eval_word(l - 1, parse_gen_word(l - 1, q.u_words[i])));
      } else {
        tformal = eval_word(l - 1, parse_gen_word(l - 1, q.u_words.back()));
      }
      f.attach = tformal;
      auto cent = cur->centralizer(f.attach);
      if (!cent.abelian)
        throw std::invalid_argument(
            "quadratic floor: C(t) is non-abelian, embedding unsupported");
      f.edge_rank = cent.rank();
      // basic relators for the quadratic floor use C(K^perp)
      c_gens = set_centralizer_generators(*this, l - 1, f.perp);
      break;
    }
  }

  // Gamma_l: previous graph plus the new generators
  std::vector<std::string> names = prev.graph.names();
  std::vector<std::string> xnames;
  for (int i = 1; i <= spec.m_new; ++i) {
    std::string n = "x" + std::to_string(l) + "_" + std::to_string(i);
    if (prev.graph.has_vertex(n))
      throw std::invalid_argument("generator name clash: " + n);
    names.push_back(n);
    xnames.push_back(n);
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (int a = 0; a < prev.graph.size(); ++a)
    for (int b : prev.graph.neighbours(a))
      if (a < b) edges.push_back({prev.graph.name(a), prev.graph.name(b)});
  // d-edges from the new generators to Y_l
  for (const auto& xn : xnames)
    for (int yv : f.y) edges.push_back({xn, prev.graph.name(yv)});
  f.gamma.c_edges = prev.c_edges;
  // c-edges by floor kind
  bool decomposable = complement_components(prev.graph, f.perp).size() > 1;
  bool xx_c = spec.kind == FloorKind::B1 ||
              (spec.kind == FloorKind::A2Abelian && decomposable) ||
              (spec.kind == FloorKind::C && decomposable);
  bool xperp_c = decomposable;
  auto add_c = [&](const std::string& a, const std::string& b) {
    edges.push_back({a, b});
  };
  if (xx_c)
    for (size_t i = 0; i < xnames.size(); ++i)
      for (size_t j = i + 1; j < xnames.size(); ++j)
        add_c(xnames[i], xnames[j]);
  if (xperp_c)
    for (const auto& xn : xnames)
      for (int pv : f.perp) add_c(xn, prev.graph.name(pv));
  f.gamma.graph = CommutationGraph(names, edges, /*keep_order=*/true);
  // record the c-edges with the new ids
  if (xx_c)
    for (size_t i = 0; i < xnames.size(); ++i)
      for (size_t j = i + 1; j < xnames.size(); ++j) {
        int a = f.gamma.graph.index_of(xnames[i]);
        int b = f.gamma.graph.index_of(xnames[j]);
        f.gamma.c_edges.insert({std::min(a, b), std::max(a, b)});
      }
  if (xperp_c)
    for (const auto& xn : xnames)
      for (int pv : f.perp) {
        int a = f.gamma.graph.index_of(xn);
        f.gamma.c_edges.insert({std::min(a, pv), std::max(a, pv)});
      }
  for (const auto& xn : xnames) f.new_vertices.push_back(f.gamma.graph.index_of(xn));

  // group wiring
  if (spec.kind == FloorKind::C) {
    f.presentational = true;
    f.group = cur;
    for ([[maybe_unused]] const auto& xn : xnames) has_gen_.push_back(false);
    for (size_t i = 0; i < xnames.size(); ++i) vgen_.push_back({-1, -1});
  } else {
    f.group = Group::extend(cur, f.attach, xnames);
    for (int i = 0; i < spec.m_new; ++i) {
      vgen_.push_back({f.group->level(), i});
      has_gen_.push_back(true);
    }
  }

  // relators S'_l: [c, x_i] for c in the generating set of C, plus the
  // quadratic relator for C floors
  auto elem_to_genword = [&](const GroupElem& e) {
    // serialisable because every centraliser generator is a product of chain
    // generators (letters) or a base word
    GenWord out;
    std::function<void(const GroupElem&)> rec = [&](const GroupElem& x) {
      if (x.level == 0) {
        for (const auto& s : x.word.syls) out.push_back({s.gen, s.exp});
        return;
      }
      const Group* gx = f.group->at_level(x.level);
      for (size_t i = 0; i < x.syl.size(); ++i) {
        rec(x.syl[i]);
        if (i < x.avec.size())
          for (int j = 0; j < gx->a_rank(); ++j)
            if (x.avec[i][j] != 0) {
              int vid = f.gamma.graph.index_of(gx->a_names()[j]);
              out.push_back({vid, x.avec[i][j]});
            }
      }
    };
    rec(e);
    return out;
  };
  for (const auto& c : c_gens) {
    GenWord cw = elem_to_genword(c);
    for (int i = 0; i < spec.m_new; ++i) {
      GenWord xw{{f.new_vertices[i], 1}};
      f.relators.push_back(detail::gw_commutator(cw, xw));
    }
  }
  if (spec.kind == FloorKind::C) {
    const auto& q = *spec.quadratic;
    int g2 = q.orientable ? 2 * q.genus : q.genus;
    GenWord W;
    auto append = [&](const GenWord& w) {
      W.insert(W.end(), w.begin(), w.end());
    };
    if (q.orientable) {
      for (int i = 0; i < q.genus; ++i)
        append(detail::gw_commutator({{f.new_vertices[2 * i], 1}},
                                     {{f.new_vertices[2 * i + 1], 1}}));
    } else {
      for (int i = 0; i < q.genus; ++i)
        append({{f.new_vertices[i], 1}, {f.new_vertices[i], 1}});
    }
    for (size_t i = 0; i + 1 < q.u_words.size(); ++i) {
      // u_i conjugated by x_i, indices 2g+1..m
      GenWord uw;
      for (auto [v, e] : parse_gen_word(l - 1, q.u_words[i])) uw.push_back({v, e});
      append(detail::gw_conj(uw, {{f.new_vertices[g2 + (int)i], 1}}));
    }
    GenWord ulast;
    for (auto [v, e] : parse_gen_word(l - 1, q.u_words.back()))
      ulast.push_back({v, e});
    append(ulast);
    f.relators.push_back(W);
  }
  for (const auto& r : f.relators)
    f.relator_text.push_back(detail::print_gen_word(f.gamma.graph, r));

  floors_.push_back(std::move(f));
}

// --- floor decomposition, retraction, tree --------------------------------

struct FloorDecomposition {
  std::string tag;  // a2 / b1 / c
  std::string vertex_left;
  std::string vertex_right;
  std::string edge_group;
  int edge_rank = 0;
};

inline FloorDecomposition floor_decomposition(const TowerPresentation& t,
                                              int level) {
  const Floor& f = t.floor(level);
  FloorDecomposition d;
  d.tag = floor_tag(f.spec.kind);
  d.vertex_left = "G_" + std::to_string(level - 1);
  std::ostringstream xs;
  for (size_t i = 0; i < f.new_vertices.size(); ++i)
    xs << (i ? "," : "") << f.gamma.graph.name(f.new_vertices[i]);
  switch (f.spec.kind) {
    case FloorKind::A2Abelian:
      d.vertex_right = "C(K^perp) x Z^" + std::to_string(f.spec.m_new);
      d.edge_group = "C(K^perp)";
      d.edge_rank = f.edge_rank;
      break;
    case FloorKind::B1:
      d.vertex_right = "C(u) x Z^" + std::to_string(f.spec.m_new);
      d.edge_group = "C(" + f.spec.u + ")";
      d.edge_rank = f.edge_rank;
      break;
    case FloorKind::C: {
      const auto& q = *f.spec.quadratic;
      int g2 = q.orientable ? 2 * q.genus : q.genus;
      int m = f.spec.m_new;
      d.vertex_right = "<" + xs.str() + " | W> x C(K^perp)";
      d.edge_group = "C(K^perp) x <u_{2g+1..m}>";
      int crank = (int)set_centralizer_generators(t, level - 1, f.perp).size();
      d.edge_rank = crank + (m - g2);
      break;
    }
  }
  return d;
}

struct RetractionReport {
  bool passed = true;
  std::vector<std::string> checked;
  std::string witness;  // offending relator on failure
};

// rho: G_l -> G_{l-1}: x_i -> 1 for basic/abelian floors; x_i -> v_i (or w_i)
// for quadratic floors.  Every relator of S'_l must die.
inline RetractionReport retraction_check(const TowerPresentation& t, int level) {
  const Floor& f = t.floor(level);
  GroupPtr g = t.group_at(level - 1);
  RetractionReport rep;

  std::vector<GroupElem> ximg(f.new_vertices.size(), g->identity());
  if (f.spec.kind == FloorKind::C) {
    const auto& q = *f.spec.quadratic;
    int g2 = q.orientable ? 2 * q.genus : q.genus;
    for (int i = 0; i < g2; ++i)
      ximg[i] = t.eval_word(level - 1, t.parse_gen_word(level - 1, q.v_words[i]));
    for (int i = g2; i < (int)ximg.size(); ++i)
      ximg[i] = t.eval_word(level - 1,
                            t.parse_gen_word(level - 1, q.w_words[i - g2]));
  }
  auto rho = [&](const GenWord& w) {
    GroupElem e = g->identity();
    for (const auto& [v, exp] : w) {
      auto it = std::find(f.new_vertices.begin(), f.new_vertices.end(), v);
      if (it != f.new_vertices.end()) {
        const GroupElem& img = ximg[it - f.new_vertices.begin()];
        e = g->mul(e, g->pow(img, exp));
      } else {
        e = g->mul(e, t.eval_word(level - 1, {{v, exp}}));
      }
    }
    return e;
  };
  for (size_t i = 0; i < f.relators.size(); ++i) {
    if (g->is_identity(rho(f.relators[i]))) {
      rep.checked.push_back(f.relator_text[i]);
    } else {
      rep.passed = false;
      rep.witness = f.relator_text[i];
      return rep;
    }
  }
  return rep;
}

// --- tree of groups ---------------------------------------------------------

struct TreeVertex {
  std::string kind;   // "free-abelian", "abelian-times-surface", "subtower"
  std::string label;
  int rank = 0;       // abelian rank (the abelian factor for surfaces)
  int genus = 0;
  bool orientable = true;
};

struct TreeEdge {
  int a = 0, b = 0;
  int rank = 0;
  std::string label;
};

struct TreeOfGroups {
  std::vector<TreeVertex> vertices;
  std::vector<TreeEdge> edges;

  bool is_tree() const {
    if (vertices.empty()) return false;
    if (edges.size() + 1 != vertices.size()) return false;
    std::vector<std::vector<int>> adj(vertices.size());
    for (const auto& e : edges) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    std::vector<bool> seen(vertices.size(), false);
    std::vector<int> stack{0};
    seen[0] = true;
    size_t cnt = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u : adj[v])
        if (!seen[u]) {
          seen[u] = true;
          ++cnt;
          stack.push_back(u);
        }
    }
    return cnt == vertices.size();
  }
};

// The hierarchical decomposition flattened: the base RAAG expands into its
// chordal clique tree, every floor adds one vertex and one abelian edge,
// attached to the previous floor's vertex (or, at the bottom, to the base
// clique-tree vertex meeting the amalgamated subgroup's support best).
inline TreeOfGroups tree_decomposition(const TowerPresentation& t) {
  TreeOfGroups tree;
  const CommutationGraph& g0 = t.base_group()->graph();
  auto ct = clique_tree(g0);
  for (const auto& c : ct.cliques) {
    TreeVertex v;
    v.kind = "free-abelian";
    v.rank = (int)c.size();
    std::ostringstream lbl;
    lbl << "<";
    for (size_t i = 0; i < c.size(); ++i) lbl << (i ? "," : "") << g0.name(c[i]);
    lbl << ">";
    v.label = lbl.str();
    tree.vertices.push_back(v);
  }
  for (size_t i = 0; i < ct.edges.size(); ++i) {
    TreeEdge e;
    e.a = ct.edges[i].first;
    e.b = ct.edges[i].second;
    e.rank = (int)ct.separators[i].size();
    std::ostringstream lbl;
    lbl << "<";
    for (size_t j = 0; j < ct.separators[i].size(); ++j)
      lbl << (j ? "," : "") << g0.name(ct.separators[i][j]);
    lbl << ">";
    e.label = lbl.str();
    tree.edges.push_back(e);
  }

  int prev_vertex = -1;
  for (int l = 1; l <= t.height(); ++l) {
    const Floor& f = t.floor(l);
    TreeVertex v;
    int attach_to;
    if (prev_vertex >= 0) {
      attach_to = prev_vertex;
    } else {
      // best-overlapping base clique with the support of the edge subgroup
      VertexSet supp;
      if (f.attach.level == 0) supp = f.attach.word.support();
      int best = 0;
      size_t best_overlap = 0;
      for (size_t i = 0; i < ct.cliques.size(); ++i) {
        size_t ov = vs_intersect(ct.cliques[i], supp).size();
        if (ov > best_overlap) {
          best_overlap = ov;
          best = (int)i;
        }
      }
      attach_to = best;
    }
    TreeEdge e;
    e.a = attach_to;
    if (f.spec.kind == FloorKind::C) {
      const auto& q = *f.spec.quadratic;
      v.kind = "abelian-times-surface";
      v.rank = f.edge_rank - 1;  // O(t); the edge is <t> x O(t)
      v.genus = q.genus;
      v.orientable = q.orientable;
      v.label = "Sigma_" + std::to_string(q.genus) + (q.orientable ? "" : "-") +
                " x Z^" + std::to_string(v.rank);
      e.rank = f.edge_rank;
      e.label = "<t> x O(t)";
    } else {
      v.kind = "free-abelian";
      v.rank = f.edge_rank + f.spec.m_new;
      v.label = "Z^" + std::to_string(v.rank);
      e.rank = f.edge_rank;
      e.label = "C_" + std::to_string(l - 1);
    }
    tree.vertices.push_back(v);
    e.b = (int)tree.vertices.size() - 1;
    tree.edges.push_back(e);
    prev_vertex = e.b;
  }
  return tree;
}

inline std::string tree_to_dot(const TreeOfGroups& t) {
  std::ostringstream out;
  out << "graph tower_tree {\n  node [shape=box];\n";
  for (size_t i = 0; i < t.vertices.size(); ++i)
    out << "  v" << i << " [label=\"" << t.vertices[i].label << "\"];\n";
  for (const auto& e : t.edges)
    out << "  v" << e.a << " -- v" << e.b << " [label=\"" << e.label << " (rk "
        << e.rank << ")\"];\n";
  out << "}\n";
  return out.str();
}

// --- quadratic floor embedding ------------------------------------------------

// T* = <G, y | [C,y]> and psi: g -> g, x_i -> rho(x_i)^y.  Exact arithmetic
// for a quadratic floor lives here.
struct QuadraticEmbedding {
  GroupPtr tstar;
  std::vector<GroupElem> x_images;  // psi(x_i), elements of T*
  GroupElem y;
};

inline QuadraticEmbedding embed_quadratic(const TowerPresentation& t, int level) {
  const Floor& f = t.floor(level);
  if (f.spec.kind != FloorKind::C)
    throw std::invalid_argument("embed_quadratic needs a quadratic floor");
  GroupPtr g = t.group_at(level - 1);
  std::string yname = "y" + std::to_string(level);
  while (g->name_taken(yname)) yname += "'";
  QuadraticEmbedding emb;
  emb.tstar = Group::extend(g, f.attach, {yname});
  emb.y = emb.tstar->a_generator(0);
  const auto& q = *f.spec.quadratic;
  int g2 = q.orientable ? 2 * q.genus : q.genus;
  for (int i = 0; i < f.spec.m_new; ++i) {
    const std::string& w =
        i < g2 ? q.v_words[i] : q.w_words[i - g2];
    auto rho = t.eval_word(level - 1, t.parse_gen_word(level - 1, w));
    emb.x_images.push_back(
        emb.tstar->conj_by(emb.tstar->lift(rho), emb.y));
  }
  return emb;
}

// psi applied to a word over Gamma_l (x-generators and lower generators).
inline GroupElem quadratic_image(const TowerPresentation& t, int level,
                                 const QuadraticEmbedding& emb,
                                 const GenWord& w) {
  const Floor& f = t.floor(level);
  GroupElem e = emb.tstar->identity();
  for (const auto& [v, exp] : w) {
    auto it = std::find(f.new_vertices.begin(), f.new_vertices.end(), v);
    if (it != f.new_vertices.end()) {
      e = emb.tstar->mul(
          e, emb.tstar->pow(emb.x_images[it - f.new_vertices.begin()], exp));
    } else {
      e = emb.tstar->mul(
          e, emb.tstar->lift(t.eval_word(level - 1, {{v, exp}})));
    }
  }
  return e;
}

}  // namespace raag
