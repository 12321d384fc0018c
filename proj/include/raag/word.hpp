#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "raag/graph.hpp"

namespace raag {

struct Syllable {
  int gen = 0;
  long long exp = 0;
  auto operator<=>(const Syllable&) const = default;
};

// A word over the generators of a commutation graph.  Plain input type; the
// canonical form lives in NormalWord.
struct Word {
  const CommutationGraph* graph = nullptr;
  std::vector<Syllable> syls;
};

// Canonical representative: freely and commutation-reduced, then the
// shortlex-least linearisation under the graph's vertex order.  Two words are
// equal in the group iff their NormalWords are syllable-identical.
struct NormalWord {
  const CommutationGraph* graph = nullptr;
  std::vector<Syllable> syls;

  long long length() const {
    long long n = 0;
    for (const auto& s : syls) n += s.exp < 0 ? -s.exp : s.exp;
    return n;
  }
  VertexSet support() const {
    VertexSet v;
    for (const auto& s : syls) v.push_back(s.gen);
    return vs_sorted(std::move(v));
  }
  bool trivial() const { return syls.empty(); }
  bool operator==(const NormalWord& o) const { return syls == o.syls; }
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline bool gens_dependent(const CommutationGraph& g, int a, int b) {
  return a == b || !g.adjacent(a, b);
}

// Append one syllable to a reduced syllable list, keeping it reduced: scan
// back past commuting syllables; merge with the first blocker when it carries
// the same generator.
inline void append_reduced(const CommutationGraph& g,
                           std::vector<Syllable>& out, Syllable s) {
  while (s.exp != 0) {
    int hit = -1;
    for (int i = (int)out.size() - 1; i >= 0; --i) {
      if (out[i].gen == s.gen) { hit = i; break; }
      if (gens_dependent(g, out[i].gen, s.gen)) { hit = -2; break; }
    }
    if (hit < 0) {
      out.push_back(s);
      return;
    }
    s.exp += out[hit].exp;
    out.erase(out.begin() + hit);
  }
}

// Shortlex-least linearisation of a reduced syllable list: repeatedly emit
// the least available generator (no earlier dependent syllable unemitted).
inline std::vector<Syllable> linearize(const CommutationGraph& g,
                                       std::vector<Syllable> in) {
  std::vector<Syllable> out;
  out.reserve(in.size());
  while (!in.empty()) {
    int best = -1;
    for (int i = 0; i < (int)in.size(); ++i) {
      bool avail = true;
      for (int j = 0; j < i; ++j)
        if (gens_dependent(g, in[j].gen, in[i].gen)) { avail = false; break; }
      if (avail && (best < 0 || in[i].gen < in[best].gen)) best = i;
    }
    out.push_back(in[best]);
    in.erase(in.begin() + best);
  }
  return out;
}

}  // namespace detail

inline NormalWord normalize(const Word& w) {
  if (!w.graph) throw std::invalid_argument("word without graph");
  std::vector<Syllable> red;
  for (const auto& s : w.syls) {
    if (s.gen < 0 || s.gen >= w.graph->size())
      throw std::invalid_argument("generator not in graph");
    if (s.exp != 0) detail::append_reduced(*w.graph, red, s);
  }
  return NormalWord{w.graph, detail::linearize(*w.graph, std::move(red))};
}

inline Word as_word(const NormalWord& w) { return Word{w.graph, w.syls}; }

inline NormalWord nw_identity(const CommutationGraph& g) {
  return NormalWord{&g, {}};
}

inline NormalWord nw_generator(const CommutationGraph& g, int gen,
                               long long exp = 1) {
  return normalize(Word{&g, {{gen, exp}}});
}

inline NormalWord inverse(const NormalWord& w) {
  Word r{w.graph, {}};
  for (auto it = w.syls.rbegin(); it != w.syls.rend(); ++it)
    r.syls.push_back({it->gen, -it->exp});
  return normalize(r);
}

inline NormalWord concat(const NormalWord& a, const NormalWord& b) {
  if (!(*a.graph == *b.graph)) throw std::invalid_argument("mismatched graphs");
  Word r{a.graph, a.syls};
  r.syls.insert(r.syls.end(), b.syls.begin(), b.syls.end());
  return normalize(r);
}

inline NormalWord power(const NormalWord& w, long long k) {
  NormalWord base = k < 0 ? inverse(w) : w;
  long long n = k < 0 ? -k : k;
  NormalWord acc = nw_identity(*w.graph);
  for (long long i = 0; i < n; ++i) acc = concat(acc, base);
  return acc;
}

inline NormalWord conjugate(const NormalWord& w, const NormalWord& by) {
  return concat(concat(inverse(by), w), by);
}

inline bool equal(const Word& u, const Word& v) {
  if (!u.graph || !v.graph || !(*u.graph == *v.graph))
    throw std::invalid_argument("mismatched graphs");
  return normalize(u) == normalize(v);
}

inline bool commute(const NormalWord& a, const NormalWord& b) {
  return concat(a, b) == concat(b, a);
}

// --- parsing & printing ("a b^-2 c") -------------------------------------

inline Word parse_word(const CommutationGraph& g, const std::string& text) {
  Word w{&g, {}};
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long long e = 1;
    if (caret != std::string::npos) {
      try {
        e = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in token: " + tok);
      }
    }
    if (e != 0) w.syls.push_back({g.index_of(name), e});
  }
  return w;
}

inline std::string print_word(const NormalWord& w) {
  if (w.syls.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& s : w.syls) {
    if (!first) out << ' ';
    first = false;
    out << w.graph->name(s.gen);
    if (s.exp != 1) out << '^' << s.exp;
  }
  return out.str();
}

// --- cyclic reduction ------------------------------------------------------

inline bool is_cyclically_reduced(const NormalWord& w) {
  return concat(w, w).length() == 2 * w.length();
}

struct CyclicReduction {
  NormalWord core;        // cyclically reduced
  NormalWord conjugator;  // w = conjugator * core * conjugator^-1
};

inline CyclicReduction cyclic_reduce(const NormalWord& w) {
  const CommutationGraph& g = *w.graph;
  std::vector<Syllable> cur = w.syls;
  NormalWord conj = nw_identity(g);
  for (;;) {
    int n = (int)cur.size();
    int pick_front = -1, pick_back = -1;
    for (int i = 0; i < n; ++i) {
      bool front = true;
      for (int j = 0; j < i; ++j)
        if (detail::gens_dependent(g, cur[j].gen, cur[i].gen)) { front = false; break; }
      if (!front) continue;
      for (int j = n - 1; j > i; --j) {
        if (cur[j].gen == cur[i].gen) {
          bool back = true;
          for (int k = j + 1; k < n; ++k)
            if (detail::gens_dependent(g, cur[k].gen, cur[j].gen)) { back = false; break; }
          if (back && (cur[i].exp > 0) != (cur[j].exp > 0) &&
              (pick_front < 0 || cur[i].gen < cur[pick_front].gen)) {
            pick_front = i;
            pick_back = j;
          }
          break;  // nearer same-gen syllables block farther ones
        }
        if (detail::gens_dependent(g, cur[j].gen, cur[i].gen)) break;
      }
    }
    if (pick_front < 0) break;
    Syllable& f = cur[pick_front];
    Syllable& b = cur[pick_back];
    long long af = f.exp < 0 ? -f.exp : f.exp;
    long long ab = b.exp < 0 ? -b.exp : b.exp;
    long long c = af <= ab ? f.exp : -b.exp;
    conj = concat(conj, nw_generator(g, f.gen, c));
    f.exp -= c;
    b.exp += c;
    std::vector<Syllable> next;
    for (const auto& s : cur)
      if (s.exp != 0) detail::append_reduced(g, next, s);
    cur = std::move(next);
  }
  NormalWord core{&g, detail::linearize(g, std::move(cur))};
  return {core, conj};
}

// --- block normal form -----------------------------------------------------

struct BlockDecomposition {
  std::vector<NormalWord> blocks;  // pairwise disjointly commuting, ordered by
                                   // least vertex of support
};

inline BlockDecomposition block_decompose(const NormalWord& w) {
  if (!is_cyclically_reduced(w))
    throw std::invalid_argument("block decomposition needs cyclically reduced input");
  BlockDecomposition d;
  for (const auto& comp : complement_components(*w.graph, w.support())) {
    Word part{w.graph, {}};
    for (const auto& s : w.syls)
      if (vs_contains(comp, s.gen)) part.syls.push_back(s);
    d.blocks.push_back(normalize(part));
  }
  return d;
}

// --- bounded shuffle enumeration -------------------------------------------

using LetterString = std::vector<int16_t>;  // gen*2 + (sign<0)

inline LetterString to_letters(const NormalWord& w) {
  LetterString ls;
  for (const auto& s : w.syls) {
    long long n = s.exp < 0 ? -s.exp : s.exp;
    for (long long i = 0; i < n; ++i)
      ls.push_back((int16_t)(s.gen * 2 + (s.exp < 0 ? 1 : 0)));
  }
  return ls;
}

inline NormalWord from_letters(const CommutationGraph& g, const LetterString& ls) {
  Word w{&g, {}};
  for (int16_t l : ls) w.syls.push_back({l / 2, (l & 1) ? -1LL : 1LL});
  return normalize(w);
}

struct LSHash {
  size_t operator()(const LetterString& v) const {
    size_t h = 1469598103934665603ull;
    for (int16_t x : v) {
      h ^= (size_t)(uint16_t)x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// All geodesic letter strings of a reduced word, by closing under adjacent
// commuting swaps.  Throws BudgetExceeded past the limits.
inline std::vector<LetterString> shuffle_closure(const CommutationGraph& g,
                                                 const NormalWord& w,
                                                 size_t length_budget = 16,
                                                 size_t size_budget = 2000000) {
  if ((size_t)w.length() > length_budget)
    throw BudgetExceeded("shuffle enumeration budget exceeded (length " +
                         std::to_string(w.length()) + " > " +
                         std::to_string(length_budget) + ")");
  std::unordered_set<LetterString, LSHash> seen;
  std::vector<LetterString> queue{to_letters(w)};
  seen.insert(queue[0]);
  for (size_t h = 0; h < queue.size(); ++h) {
    LetterString cur = queue[h];
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      int ga = cur[i] / 2, gb = cur[i + 1] / 2;
      if (ga == gb || !g.adjacent(ga, gb)) continue;
      std::swap(cur[i], cur[i + 1]);
      if (seen.insert(cur).second) {
        queue.push_back(cur);
        if (seen.size() > size_budget)
          throw BudgetExceeded("shuffle enumeration budget exceeded (size)");
      }
      std::swap(cur[i], cur[i + 1]);
    }
  }
  return queue;
}

// --- roots ------------------------------------------------------------------

struct RootResult {
  NormalWord root;
  long long multiplicity = 1;
};

namespace detail {

// Root of a block (support induces a connected complement subgraph).
inline RootResult block_root(const NormalWord& b, size_t length_budget) {
  if (b.syls.size() == 1) {
    const auto& s = b.syls[0];
    return {nw_generator(*b.graph, s.gen, s.exp < 0 ? -1 : 1),
            s.exp < 0 ? -s.exp : s.exp};
  }
  long long n = b.length();
  auto reps = shuffle_closure(*b.graph, b, length_budget);
  long long best_k = 1;
  LetterString best_prefix;
  for (const auto& r : reps) {
    for (long long k = n; k >= 2; --k) {
      if (n % k != 0 || k <= best_k) continue;
      long long p = n / k;
      bool periodic = true;
      for (long long i = p; i < n && periodic; ++i)
        if (r[i] != r[i - p]) periodic = false;
      if (periodic) {
        best_k = k;
        best_prefix.assign(r.begin(), r.begin() + p);
        break;
      }
    }
  }
  if (best_k == 1) return {b, 1};
  return {from_letters(*b.graph, best_prefix), best_k};
}

}  // namespace detail

// Unique root: w = root^multiplicity with root not a proper power.
inline RootResult root(const NormalWord& w, size_t length_budget = 16) {
  if (w.trivial()) throw std::invalid_argument("root of the identity");
  auto cr = cyclic_reduce(w);
  auto blocks = block_decompose(cr.core);
  std::vector<RootResult> parts;
  long long d = 0;
  for (const auto& b : blocks.blocks) {
    parts.push_back(detail::block_root(b, length_budget));
    d = std::gcd(d, parts.back().multiplicity);
  }
  NormalWord r = nw_identity(*w.graph);
  for (const auto& p : parts)
    r = concat(r, power(p.root, p.multiplicity / d));
  if (!cr.conjugator.trivial())
    r = concat(concat(cr.conjugator, r), inverse(cr.conjugator));
  return {r, d};
}

// --- conjugacy of cyclically reduced elements -------------------------------

// Cyclically reduced elements of a RAAG are conjugate iff one arises from the
// other by shuffles plus cyclic rotation.  The canonical form is the least
// letter string over the closure's rotations (optionally folding inverses in).
inline LetterString conjugacy_canonical(const NormalWord& w, bool with_inverse,
                                        size_t length_budget = 16) {
  LetterString best;
  bool have = false;
  auto scan = [&](const NormalWord& v) {
    for (const auto& r : shuffle_closure(*v.graph, v, length_budget)) {
      LetterString rot = r;
      for (size_t k = 0; k < std::max<size_t>(r.size(), 1); ++k) {
        if (!have || rot < best) {
          best = rot;
          have = true;
        }
        if (r.empty()) break;
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      }
    }
  };
  scan(w);
  if (with_inverse) scan(inverse(w));
  return best;
}

// Searches q with target = q * w^eps * q^-1 over rotations of shuffles of w.
struct ConjugacyMatch {
  NormalWord q;
  int eps = 1;
};

inline std::optional<ConjugacyMatch> find_conjugator(
    const NormalWord& w, const NormalWord& target, size_t length_budget = 16) {
  for (int eps : {1, -1}) {
    NormalWord v = eps == 1 ? w : inverse(w);
    for (const auto& r : shuffle_closure(*w.graph, v, length_budget)) {
      for (size_t k = 0; k < std::max<size_t>(r.size(), 1); ++k) {
        LetterString rot(r.begin() + k, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + k);
        if (from_letters(*w.graph, rot) == target) {
          // rot = s1^-1 v s1 with s1 the first k letters of r
          LetterString s1(r.begin(), r.begin() + k);
          return ConjugacyMatch{inverse(from_letters(*w.graph, s1)), eps};
        }
        if (r.empty()) break;
      }
    }
  }
  return std::nullopt;
}

}  // namespace raag
