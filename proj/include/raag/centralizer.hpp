#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace raag {

// Case split for centralisers of cyclically reduced elements of a coherent
// RAAG: every block of g is a generator power and lk(g) is not a clique
// (non-abelian, canonical); every block is a generator power and lk(g) is a
// clique (abelian, canonical); or g has the single multi-generator block
// allowed by chordality (abelian, non-canonical, cyclic part generated by the
// block root).
enum class CentKind { NonAbelianCanonical, AbelianCanonical, AbelianNonCanonical };

struct CentralizerDescription {
  CentKind kind = CentKind::AbelianCanonical;
  NormalWord z_root;      // AbelianNonCanonical: root block word of length >= 2
  VertexSet z_vertices;   // canonical kinds: alpha(core)
  VertexSet o_part;       // commuting generator factors
  VertexSet generators;   // canonical kinds: alpha(core) + link
  NormalWord conjugator;  // C(g) = conjugator C(core) conjugator^-1
  NormalWord core;        // cyclically reduced conjugate the split refers to

  bool abelian() const { return kind != CentKind::NonAbelianCanonical; }

  // Generators of C(core) as words: the cyclic part first, then vertices.
  std::vector<NormalWord> generator_words() const {
    std::vector<NormalWord> out;
    if (kind == CentKind::AbelianNonCanonical) {
      out.push_back(z_root);
      for (int v : o_part) out.push_back(nw_generator(*z_root.graph, v));
    } else {
      for (int v : generators) out.push_back(nw_generator(*core.graph, v));
    }
    return out;
  }

  // Free rank when abelian.
  int rank() const {
    if (kind == CentKind::AbelianNonCanonical) return 1 + (int)o_part.size();
    return (int)generators.size();
  }
};

inline void require_chordal(const CommutationGraph& g) {
  if (!is_chordal(g).chordal)
    throw std::invalid_argument("graph is not chordal (RAAG not coherent)");
}

inline CentralizerDescription centralizer(const NormalWord& w0,
                                          size_t length_budget = 16) {
  const CommutationGraph& g = *w0.graph;
  require_chordal(g);
  if (w0.trivial()) throw std::invalid_argument("centralizer of the identity");
  auto cr = cyclic_reduce(w0);
  CentralizerDescription d;
  d.conjugator = cr.conjugator;
  d.core = cr.core;

  auto blocks = block_decompose(cr.core);
  const NormalWord* big = nullptr;
  VertexSet single_gens;
  for (const auto& b : blocks.blocks) {
    if (b.support().size() >= 2) {
      if (big) throw std::logic_error("two multi-generator blocks in a chordal RAAG");
      big = &b;
    } else {
      single_gens.push_back(b.support()[0]);
    }
  }
  single_gens = vs_sorted(std::move(single_gens));
  VertexSet lk = link(g, cr.core.support());

  if (big) {
    d.kind = CentKind::AbelianNonCanonical;
    d.z_root = detail::block_root(*big, length_budget).root;
    d.o_part = vs_union(single_gens, lk);
    d.generators = d.o_part;
  } else if (is_clique(g, lk)) {
    d.kind = CentKind::AbelianCanonical;
    d.z_vertices = single_gens;
    d.o_part = lk;
    d.generators = vs_union(single_gens, lk);
  } else {
    d.kind = CentKind::NonAbelianCanonical;
    d.z_vertices = single_gens;
    d.o_part = lk;
    d.generators = vs_union(single_gens, lk);
  }
  return d;
}

inline CentralizerDescription centralizer(const Word& w,
                                          size_t length_budget = 16) {
  return centralizer(normalize(w), length_budget);
}

// Membership in C(g) by projecting onto the z- and o-supports; valid because
// the two supports are disjoint and commute elementwise, so the parabolic
// they generate splits as a direct product.
inline bool member_of_centralizer(const CentralizerDescription& d,
                                  const NormalWord& x) {
  NormalWord y = d.conjugator.trivial() ? x : conjugate(x, d.conjugator);
  if (y.trivial()) return true;
  if (d.kind != CentKind::AbelianNonCanonical)
    return vs_subset(y.support(), d.generators);
  VertexSet zsupp = d.z_root.support();
  VertexSet allowed = vs_union(zsupp, d.o_part);
  if (!vs_subset(y.support(), allowed)) return false;
  Word zpart{y.graph, {}};
  for (const auto& s : y.syls)
    if (vs_contains(zsupp, s.gen)) zpart.syls.push_back(s);
  NormalWord z = normalize(zpart);
  if (z.trivial()) return true;
  if (z.length() % d.z_root.length() != 0) return false;
  long long k = z.length() / d.z_root.length();
  return power(d.z_root, k) == z || power(d.z_root, -k) == z;
}

// Lemma "there exists g in <Y> with C(Y)=C(g)": Y must be a clique.
inline std::pair<NormalWord, CentralizerDescription> centralizer_of_set(
    const CommutationGraph& g, const VertexSet& y) {
  if (!is_clique(g, y))
    throw std::invalid_argument("centralizer_of_set needs a clique");
  if (y.empty())
    throw std::invalid_argument("centralizer_of_set needs a nonempty set");
  Word w{&g, {}};
  for (int v : y) w.syls.push_back({v, 1});
  auto nw = normalize(w);
  return {nw, centralizer(nw)};
}

// Z(w) x O(w) assignment: trivial Z for canonical abelian centralisers, the
// block root for abelian non-canonical ones, alpha(w) for non-abelian ones.
struct ZOSplit {
  std::optional<NormalWord> z_cyclic;  // abelian non-canonical case
  VertexSet z_vertices;                // non-abelian case
  VertexSet o;
};

inline ZOSplit zo_split(const NormalWord& w) {
  const CommutationGraph& g = *w.graph;
  if (w.trivial()) {
    // identity representative: fine exactly when the whole group is abelian
    if (!is_clique(g, g.all_vertices()))
      throw std::invalid_argument("zo_split of the identity in a non-abelian RAAG");
    return ZOSplit{std::nullopt, {}, g.all_vertices()};
  }
  if (!is_cyclically_reduced(w))
    throw std::invalid_argument("zo_split needs a cyclically reduced element");
  auto d = centralizer(w);
  ZOSplit s;
  switch (d.kind) {
    case CentKind::AbelianCanonical:
      s.o = d.generators;
      break;
    case CentKind::AbelianNonCanonical:
      s.z_cyclic = d.z_root;
      s.o = d.o_part;
      break;
    case CentKind::NonAbelianCanonical:
      s.z_vertices = d.z_vertices;
      s.o = d.o_part;
      break;
  }
  return s;
}

// --- representative sets -----------------------------------------------------

struct RepresentativeSet {
  std::vector<NormalWord> w_k;  // clique representatives
  std::vector<NormalWord> w_b;  // block representatives up to the length bound
  int bound = 0;
};

namespace detail {

inline NormalWord clique_word(const CommutationGraph& g, const VertexSet& c) {
  Word w{&g, {}};
  for (int v : c) w.syls.push_back({v, 1});
  return normalize(w);
}

// All distinct normal words of geodesic length exactly 1..bound.
inline std::vector<NormalWord> element_ball(const CommutationGraph& g, int bound) {
  std::vector<NormalWord> all;
  std::map<std::vector<Syllable>, bool> seen;
  std::vector<NormalWord> layer{nw_identity(g)};
  for (int len = 1; len <= bound; ++len) {
    std::vector<NormalWord> next;
    for (const auto& w : layer) {
      for (int v = 0; v < g.size(); ++v) {
        for (long long e : {1LL, -1LL}) {
          auto x = concat(w, nw_generator(g, v, e));
          if (x.length() != len) continue;
          if (seen.emplace(x.syls, true).second) next.push_back(x);
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return all;
}

inline bool normal_word_less(const NormalWord& a, const NormalWord& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return to_letters(a) < to_letters(b);
}

}  // namespace detail

// The representative set W = W_K u W_B: W_K from clique classes under
// st-equivalence, W_B the cyclically reduced root block words of length >= 2
// up to conjugacy and inversion, materialised up to `block_length_bound`.
inline RepresentativeSet representatives(const CommutationGraph& g,
                                         int block_length_bound) {
  require_chordal(g);
  RepresentativeSet reps;
  reps.bound = block_length_bound;

  // classes of cliques under st(C) = st(D)
  std::map<VertexSet, std::vector<VertexSet>> classes;
  for (const auto& c : all_cliques(g)) classes[star(g, c)].push_back(c);
  for (auto& [st_c, members] : classes) {
    size_t min_card = members[0].size();
    for (const auto& m : members) min_card = std::min(min_card, m.size());
    std::vector<VertexSet> min_members;
    for (const auto& m : members)
      if (m.size() == min_card) min_members.push_back(m);
    std::sort(min_members.begin(), min_members.end());
    if (is_clique(g, st_c)) {
      reps.w_k.push_back(detail::clique_word(g, min_members.front()));
    } else {
      for (const auto& m : min_members)
        reps.w_k.push_back(detail::clique_word(g, m));
    }
  }
  std::sort(reps.w_k.begin(), reps.w_k.end(), detail::normal_word_less);

  // block representatives: enumerate the ball, filter, quotient by
  // conjugacy + inversion, keep the shortlex-least member of each class
  std::map<LetterString, NormalWord> by_class;
  for (const auto& w : detail::element_ball(g, block_length_bound)) {
    if (w.length() < 2) continue;
    if (!is_cyclically_reduced(w)) continue;
    if (w.support().size() < 2) continue;
    if (complement_components(g, w.support()).size() != 1) continue;
    if (detail::block_root(w, (size_t)block_length_bound).multiplicity != 1)
      continue;
    auto key = conjugacy_canonical(w, true, (size_t)block_length_bound);
    auto it = by_class.find(key);
    if (it == by_class.end())
      by_class.emplace(key, w);
    else if (detail::normal_word_less(w, it->second))
      it->second = w;
  }
  for (auto& [key, w] : by_class) reps.w_b.push_back(w);
  std::sort(reps.w_b.begin(), reps.w_b.end(), detail::normal_word_less);
  return reps;
}

// --- conjugacy representative -------------------------------------------------

// Finds w in W with C(g) = h C(w) h^-1; unique w when C(g) is abelian.
struct ConjugacyRepresentative {
  NormalWord w;
  NormalWord h;
};

inline ConjugacyRepresentative conjugacy_representative(
    const NormalWord& g0, const RepresentativeSet& reps,
    size_t length_budget = 16) {
  const CommutationGraph& g = *g0.graph;
  if (g0.trivial())
    throw std::invalid_argument("conjugacy representative of the identity");
  auto cr = cyclic_reduce(g0);
  auto d = centralizer(cr.core, length_budget);

  if (d.kind != CentKind::AbelianNonCanonical) {
    VertexSet st_class = star(g, cr.core.support());
    for (const auto& w : reps.w_k) {
      // the identity representative (free abelian convention) has the whole
      // group as centraliser: st(emptyset) = V
      VertexSet wstar = w.trivial() ? g.all_vertices() : star(g, w.support());
      VertexSet wgens = w.trivial() ? g.all_vertices() : centralizer(w).generators;
      if (wstar == st_class && wgens == d.generators)
        return {w, cr.conjugator};
    }
    throw std::runtime_error("no clique representative found for " +
                             print_word(g0));
  }

  const NormalWord& b = d.z_root;
  if (b.length() > reps.bound)
    throw BudgetExceeded("block root " + print_word(b) +
                         " longer than representative bound " +
                         std::to_string(reps.bound));
  auto key = conjugacy_canonical(b, true, length_budget);
  for (const auto& w : reps.w_b) {
    if (w.length() != b.length()) continue;
    if (conjugacy_canonical(w, true, length_budget) != key) continue;
    auto m = find_conjugator(w, b, length_budget);
    if (!m) continue;
    return {w, concat(cr.conjugator, m->q)};
  }
  throw std::runtime_error("no block representative found for " +
                           print_word(g0));
}

}  // namespace raag
