#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raag/centralizer.hpp"
#include "raag/graph.hpp"
#include "raag/word.hpp"

namespace raag {

// One generator somewhere in an extension chain: a vertex of the base RAAG
// (level 0) or an A-generator introduced at some extension level.
struct GenRef {
  int level = 0;
  int index = 0;
  auto operator<=>(const GenRef&) const = default;
};

using AVec = std::vector<long long>;

inline bool avec_zero(const AVec& v) {
  for (long long x : v)
    if (x != 0) return false;
  return true;
}

// Element of a chain group.  Level 0 wraps a NormalWord; level k > 0 is an
// alternating reduced form  w0 a1 w1 a2 ... an wn  with level-(k-1) syllables
// w_i and nonzero A-vectors a_i, the interior w_i outside the amalgamated C.
struct GroupElem {
  int level = 0;
  NormalWord word;               // level 0 payload
  std::vector<GroupElem> syl;    // level > 0: n+1 syllables
  std::vector<AVec> avec;        // level > 0: n vectors

  int top_length() const { return level == 0 ? 0 : (int)avec.size(); }
};

// Z x O structure of a centraliser anywhere in the chain.  The cyclic part is
// `root` (abelian non-canonical cases); non-abelian centralisers carry the
// canonical `z_letters` instead.  O is generated by `letters`.
struct GroupCentralizer {
  bool abelian = true;
  std::string kind;                   // case tag, for reports
  std::optional<GroupElem> root;      // cyclic Z-part
  std::vector<GenRef> z_letters;      // canonical Z-part (non-abelian)
  std::vector<GenRef> letters;        // O-part generators
  GroupElem conjugator;               // C(v) = conj C0 conj^-1
  std::optional<GroupElem> d_part;    // amalgam case: v = d * root^m
  long long m = 1;

  int rank() const {
    return (int)letters.size() + (int)z_letters.size() + (root ? 1 : 0);
  }
};

// Coordinates of an element of an abelian centraliser in its basis.
struct CCoords {
  long long root_exp = 0;
  std::vector<long long> letter_exps;
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

// A coherent RAAG or an iterated direct extension of centralisers over one.
// Immutable; levels are chained by shared pointers.
class Group : public std::enable_shared_from_this<Group> {
 public:
  static GroupPtr make_raag(CommutationGraph g, size_t length_budget = 16) {
    require_chordal(g);
    auto p = std::shared_ptr<Group>(new Group());
    p->graph_ = std::move(g);
    p->budget_ = length_budget;
    return p;
  }

  // Direct extension G(u,B) with B = phi(C(u)) x Z^{a_names.size()}.
  static GroupPtr extend(GroupPtr base, const GroupElem& u,
                         std::vector<std::string> a_names) {
    if (a_names.empty()) throw std::invalid_argument("extension of rank 0");
    auto cent = base->centralizer(u);
    if (!cent.abelian)
      throw std::invalid_argument(
          "extension of non-abelian centraliser unsupported");
    if (!base->is_identity(cent.conjugator))
      throw std::invalid_argument(
          "extension element must be cyclically reduced at its level");
    for (size_t i = 0; i < a_names.size(); ++i) {
      if (base->name_taken(a_names[i]))
        throw std::invalid_argument("generator name already in use: " +
                                    a_names[i]);
      for (size_t j = i + 1; j < a_names.size(); ++j)
        if (a_names[i] == a_names[j])
          throw std::invalid_argument("duplicate A-generator name");
    }
    auto p = std::shared_ptr<Group>(new Group());
    p->graph_ = base->graph_;
    p->budget_ = base->budget_;
    p->level_ = base->level_ + 1;
    p->u_ = u;
    p->c_ = std::move(cent);
    p->a_names_ = std::move(a_names);
    p->base_ = std::move(base);
    return p;
  }

  int level() const { return level_; }
  const Group* base() const { return base_.get(); }
  const CommutationGraph& graph() const { return graph_; }
  int a_rank() const { return (int)a_names_.size(); }
  const std::vector<std::string>& a_names() const { return a_names_; }
  const GroupElem& extended_element() const { return u_; }
  const GroupCentralizer& amalgamated() const { return c_; }
  size_t budget() const { return budget_; }

  const Group* at_level(int lv) const {
    const Group* g = this;
    while (g->level_ > lv) g = g->base_.get();
    if (g->level_ != lv) throw std::logic_error("level not in chain");
    return g;
  }

  bool name_taken(const std::string& n) const {
    if (graph_.has_vertex(n)) return true;
    for (const Group* g = this; g; g = g->base_.get())
      for (const auto& a : g->a_names_)
        if (a == n) return true;
    return false;
  }

  std::string gen_name(const GenRef& r) const {
    if (r.level == 0) return graph_.name(r.index);
    return at_level(r.level)->a_names_.at(r.index);
  }

  std::vector<GenRef> all_generators() const {
    std::vector<GenRef> out;
    for (int v = 0; v < graph_.size(); ++v) out.push_back({0, v});
    for (const Group* g = this; g; g = g->base_.get())
      if (g->level_ > 0)
        for (int i = 0; i < g->a_rank(); ++i) out.push_back({g->level_, i});
    std::sort(out.begin(), out.end());
    return out;
  }

  // --- element construction ---

  GroupElem identity() const {
    if (level_ == 0) return GroupElem{0, nw_identity(graph_), {}, {}};
    GroupElem e;
    e.level = level_;
    e.syl.push_back(base_->identity());
    return e;
  }

  GroupElem from_word(const NormalWord& w) const {
    return lift(GroupElem{0, w, {}, {}});
  }

  // Lift an element of a lower level into this group.
  GroupElem lift(GroupElem e) const {
    while (e.level < level_) {
      GroupElem up;
      up.level = e.level + 1;
      up.syl.push_back(std::move(e));
      e = std::move(up);
    }
    if (e.level != level_)
      throw std::invalid_argument("element above group level");
    return e;
  }

  GroupElem a_generator(int index, long long exp = 1) const {
    if (level_ == 0)
      throw std::invalid_argument("base RAAG has no A-generators");
    if (index < 0 || index >= a_rank())
      throw std::invalid_argument("A-generator index out of range");
    AVec v(a_rank(), 0);
    v[index] = exp;
    return a_element(v);
  }

  GroupElem a_element(const AVec& v) const {
    if ((int)v.size() != a_rank()) throw std::invalid_argument("A-vector rank");
    if (avec_zero(v)) return identity();
    GroupElem e;
    e.level = level_;
    e.syl.push_back(base_->identity());
    e.syl.push_back(base_->identity());
    e.avec.push_back(v);
    return e;
  }

  GroupElem gen(const GenRef& r, long long exp = 1) const {
    if (exp == 0) return identity();
    if (r.level == 0) return from_word(nw_generator(graph_, r.index, exp));
    return lift(at_level(r.level)->a_generator(r.index, exp));
  }

  // --- arithmetic ---

  bool is_identity(const GroupElem& e) const {
    check(e);
    if (level_ == 0) return e.word.trivial();
    return e.avec.empty() && base_->is_identity(e.syl[0]);
  }

  GroupElem mul(const GroupElem& a, const GroupElem& b) const {
    check(a), check(b);
    if (level_ == 0) return GroupElem{0, concat(a.word, b.word), {}, {}};
    GroupElem raw;
    raw.level = level_;
    raw.syl = a.syl;
    raw.avec = a.avec;
    int j = (int)raw.syl.size() - 1;
    raw.syl[j] = base_->mul(raw.syl[j], b.syl[0]);
    raw.syl.insert(raw.syl.end(), b.syl.begin() + 1, b.syl.end());
    raw.avec.insert(raw.avec.end(), b.avec.begin(), b.avec.end());
    return reduce(std::move(raw));
  }

  GroupElem inv(const GroupElem& a) const {
    check(a);
    if (level_ == 0) return GroupElem{0, inverse(a.word), {}, {}};
    GroupElem r;
    r.level = level_;
    for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it)
      r.syl.push_back(base_->inv(*it));
    for (auto it = a.avec.rbegin(); it != a.avec.rend(); ++it) {
      AVec v = *it;
      for (auto& x : v) x = -x;
      r.avec.push_back(std::move(v));
    }
    return reduce(std::move(r));
  }

  GroupElem pow(const GroupElem& a, long long k) const {
    check(a);
    if (level_ == 0) return GroupElem{0, power(a.word, k), {}, {}};
    GroupElem b = k < 0 ? inv(a) : a;
    long long n = k < 0 ? -k : k;
    GroupElem acc = identity();
    for (long long i = 0; i < n; ++i) acc = mul(acc, b);
    return acc;
  }

  GroupElem conj_by(const GroupElem& g, const GroupElem& by) const {
    return mul(mul(inv(by), g), by);
  }

  bool equal(const GroupElem& a, const GroupElem& b) const {
    check(a), check(b);
    if (level_ == 0) return a.word == b.word;
    if (a.avec != b.avec) return false;
    int n = (int)a.avec.size();
    // transfer chain c_{i+1} = w_i^-1 c_i w_i'; must stay in C, close at 1
    GroupElem c = base_->identity();
    for (int i = 0; i <= n; ++i) {
      c = base_->mul(base_->mul(base_->inv(a.syl[i]), c), b.syl[i]);
      if (i < n && !c_coords(c)) return false;
    }
    return base_->is_identity(c);
  }

  bool commute(const GroupElem& a, const GroupElem& b) const {
    return equal(mul(a, b), mul(b, a));
  }

  // Amalgam syllable length at this level: 0 for embedded base elements.
  long long elem_length(const GroupElem& e) const {
    check(e);
    if (level_ == 0) return e.word.length();
    return (long long)e.avec.size();
  }

  // --- the amalgamated subgroup C = C_base(u) (level > 0) ---

  std::optional<CCoords> c_coords(const GroupElem& x) const {
    if (level_ == 0) throw std::logic_error("base RAAG has no amalgamated C");
    return base_->coords_in(c_, x);
  }

  GroupElem c_element(const CCoords& co) const {
    if (level_ == 0) throw std::logic_error("base RAAG has no amalgamated C");
    return base_->element_of(c_, co);
  }

  GroupElem element_of(const GroupCentralizer& basis, const CCoords& co) const {
    GroupElem e = identity();
    if (co.root_exp != 0) e = pow(*basis.root, co.root_exp);
    for (size_t i = 0; i < co.letter_exps.size(); ++i)
      if (co.letter_exps[i] != 0)
        e = mul(e, gen(basis.letters[i], co.letter_exps[i]));
    return e;
  }

  // Membership-with-coordinates in an abelian Z x O basis living in this
  // group: letters commute pairwise and with the root, supports split.
  std::optional<CCoords> coords_in(const GroupCentralizer& basis,
                                   const GroupElem& x) const {
    check(x);
    if (!basis.abelian)
      throw std::logic_error("coords_in needs an abelian basis");
    CCoords co;
    co.letter_exps.assign(basis.letters.size(), 0);
    if (level_ == 0) return coords_level0(basis, x, std::move(co));

    GroupElem y = x;
    // peel a long cyclic part by syllable-length division
    if (basis.root && elem_length(*basis.root) > 0) {
      long long rl = elem_length(*basis.root);
      long long yl = elem_length(y);
      if (yl % rl != 0) return std::nullopt;
      long long k = yl / rl;
      bool done = false;
      for (long long cand : {k, -k}) {
        GroupElem t = mul(y, pow(*basis.root, -cand));
        if (t.top_length() == 0) {
          co.root_exp = cand;
          y = std::move(t);
          done = true;
          break;
        }
        if (cand == 0) break;
      }
      if (!done) return std::nullopt;
    }
    // peel this level's A-profile
    AVec prof(a_rank(), 0);
    if (y.top_length() > 1) return std::nullopt;
    if (y.top_length() == 1) prof = y.avec[0];
    std::vector<int> top_idx(a_rank(), -1);
    for (size_t i = 0; i < basis.letters.size(); ++i)
      if (basis.letters[i].level == level_)
        top_idx[basis.letters[i].index] = (int)i;
    for (int j = 0; j < a_rank(); ++j) {
      if (prof[j] != 0 && top_idx[j] < 0) return std::nullopt;
      if (top_idx[j] >= 0) co.letter_exps[top_idx[j]] = prof[j];
    }
    GroupElem rest = y;
    if (!avec_zero(prof)) {
      AVec neg = prof;
      for (auto& t : neg) t = -t;
      rest = mul(y, a_element(neg));
    }
    if (rest.top_length() != 0) return std::nullopt;
    // recurse on the deeper letters (and a short, embedded root)
    GroupCentralizer deeper;
    deeper.abelian = true;
    deeper.conjugator = base_->identity();
    bool root_down = basis.root && elem_length(*basis.root) == 0;
    if (root_down) deeper.root = basis.root->syl[0];
    for (const auto& l : basis.letters)
      if (l.level < level_) deeper.letters.push_back(l);
    auto down = base_->coords_in(deeper, rest.syl[0]);
    if (!down) return std::nullopt;
    if (root_down) co.root_exp = down->root_exp;
    size_t di = 0;
    for (size_t i = 0; i < basis.letters.size(); ++i)
      if (basis.letters[i].level < level_)
        co.letter_exps[i] = down->letter_exps[di++];
    return co;
  }

  // --- reduced form ---

  GroupElem reduce(GroupElem e) const {
    if (level_ == 0) return e;
    if (e.syl.size() != e.avec.size() + 1)
      throw std::invalid_argument("malformed alternating form");
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t i = 0; i < e.avec.size(); ++i) {
        if (avec_zero(e.avec[i])) {
          e.syl[i] = base_->mul(e.syl[i], e.syl[i + 1]);
          e.syl.erase(e.syl.begin() + i + 1);
          e.avec.erase(e.avec.begin() + i);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      for (size_t i = 1; i + 1 < e.syl.size(); ++i) {
        if (c_coords(e.syl[i])) {
          // ... a_{i-1} c a_i ... = ... (a_{i-1}+a_i) (c w_{i+1}) ...
          for (size_t j = 0; j < e.avec[i].size(); ++j)
            e.avec[i - 1][j] += e.avec[i][j];
          e.syl[i + 1] = base_->mul(e.syl[i], e.syl[i + 1]);
          e.syl.erase(e.syl.begin() + i);
          e.avec.erase(e.avec.begin() + i);
          changed = true;
          break;
        }
      }
    }
    // canonical coset form: push the C-part of every non-final syllable right
    for (size_t i = 0; i + 1 < e.syl.size(); ++i) {
      auto [rep, c] = base_->factor_coset(c_, e.syl[i]);
      if (!base_->is_identity(c)) {
        e.syl[i] = rep;
        e.syl[i + 1] = base_->mul(c, e.syl[i + 1]);
      }
    }
    return e;
  }

  // Deterministic coset factorisation g = rep * c with c in the abelian
  // basis: greedy single-generator descent on the magnitude key, so the
  // representative never gets longer than the input.
  std::pair<GroupElem, GroupElem> factor_coset(const GroupCentralizer& basis,
                                               const GroupElem& g) const {
    check(g);
    GroupElem rep = g;
    GroupElem c = identity();
    std::vector<GroupElem> dirs;
    if (basis.root) {
      dirs.push_back(*basis.root);
      dirs.push_back(inv(*basis.root));
    }
    for (const auto& l : basis.letters) {
      dirs.push_back(gen(l, 1));
      dirs.push_back(gen(l, -1));
    }
    bool improved = true;
    int guard = 100000;
    while (improved && guard-- > 0) {
      improved = false;
      auto key = mag_key(rep);
      for (const auto& d : dirs) {
        GroupElem cand = mul(rep, inv(d));
        if (mag_key(cand) < key) {
          rep = std::move(cand);
          c = mul(d, c);
          improved = true;
          break;
        }
      }
    }
    if (guard <= 0) throw std::logic_error("coset strip did not stabilise");
    return {rep, c};
  }

  // Total serialisation used for deterministic tie-breaks.
  std::vector<long long> canonical_key(const GroupElem& e) const {
    std::vector<long long> key;
    append_key(e, key);
    return key;
  }

  // Serialisation with exponents encoded by magnitude, so greedy descents
  // cannot run off to -infinity.
  std::vector<long long> mag_key(const GroupElem& e) const {
    std::vector<long long> key = canonical_key(e);
    for (auto& x : key) x = x < 0 ? -2 * x + 1 : 2 * x;
    return key;
  }

  // --- centralisers ---

  GroupCentralizer centralizer(const GroupElem& v) const;

  // Generators of C(v), conjugated back to v's position.
  std::vector<GroupElem> centralizer_generators(const GroupCentralizer& c) const {
    std::vector<GroupElem> out;
    auto push = [&](GroupElem e) {
      if (!is_identity(c.conjugator))
        e = mul(mul(c.conjugator, e), inv(c.conjugator));
      out.push_back(std::move(e));
    };
    if (c.root) push(*c.root);
    for (const auto& l : c.z_letters) push(gen(l));
    for (const auto& l : c.letters) push(gen(l));
    return out;
  }

  bool member_of(const GroupCentralizer& c, const GroupElem& x) const {
    GroupElem y = is_identity(c.conjugator)
                      ? x
                      : mul(mul(inv(c.conjugator), x), c.conjugator);
    if (c.abelian) return coords_in(c, y).has_value();
    return supported_by(y, c.z_letters, c.letters);
  }

 private:
  Group() = default;

  void check(const GroupElem& e) const {
    if (e.level != level_)
      throw std::invalid_argument("element level mismatch");
  }

  static long long expsum(const NormalWord& w, int v) {
    long long s = 0;
    for (const auto& syl : w.syls)
      if (syl.gen == v) s += syl.exp;
    return s;
  }

  std::optional<CCoords> coords_level0(const GroupCentralizer& basis,
                                       const GroupElem& x, CCoords co) const {
    VertexSet allowed;
    for (const auto& l : basis.letters) allowed.push_back(l.index);
    allowed = vs_sorted(std::move(allowed));
    VertexSet zsupp;
    if (basis.root) zsupp = basis.root->word.support();
    if (!vs_subset(x.word.support(), vs_union(allowed, zsupp)))
      return std::nullopt;
    if (basis.root) {
      Word zp{&graph_, {}};
      for (const auto& s : x.word.syls)
        if (vs_contains(zsupp, s.gen)) zp.syls.push_back(s);
      NormalWord z = normalize(zp);
      if (!z.trivial()) {
        long long rl = basis.root->word.length();
        if (rl == 0 || z.length() % rl != 0) return std::nullopt;
        long long k = z.length() / rl;
        if (power(basis.root->word, k) == z)
          co.root_exp = k;
        else if (power(basis.root->word, -k) == z)
          co.root_exp = -k;
        else
          return std::nullopt;
      }
    }
    for (size_t i = 0; i < basis.letters.size(); ++i)
      co.letter_exps[i] = expsum(x.word, basis.letters[i].index);
    return co;
  }

  bool supported_by(const GroupElem& y, const std::vector<GenRef>& a,
                    const std::vector<GenRef>& b) const {
    if (level_ == 0) {
      VertexSet allowed;
      for (const auto& l : a)
        if (l.level == 0) allowed.push_back(l.index);
      for (const auto& l : b)
        if (l.level == 0) allowed.push_back(l.index);
      return vs_subset(y.word.support(), vs_sorted(std::move(allowed)));
    }
    for (const auto& v : y.avec)
      for (int j = 0; j < a_rank(); ++j) {
        if (v[j] == 0) continue;
        bool ok = false;
        for (const auto& l : a)
          if (l.level == level_ && l.index == j) ok = true;
        for (const auto& l : b)
          if (l.level == level_ && l.index == j) ok = true;
        if (!ok) return false;
      }
    for (const auto& s : y.syl)
      if (!base_->supported_by(s, a, b)) return false;
    return true;
  }

  void append_key(const GroupElem& e, std::vector<long long>& key) const {
    if (e.level == 0) {
      key.push_back(e.word.length());
      for (const auto& s : e.word.syls) {
        key.push_back(s.gen);
        key.push_back(s.exp);
      }
      return;
    }
    const Group* g = at_level(e.level);
    key.push_back((long long)e.avec.size());
    for (size_t i = 0; i < e.syl.size(); ++i) {
      g->base_->append_key(e.syl[i], key);
      if (i < e.avec.size())
        for (long long x : e.avec[i]) key.push_back(x);
    }
  }

  GroupPtr base_;
  CommutationGraph graph_;
  int level_ = 0;
  size_t budget_ = 16;
  GroupElem u_;
  GroupCentralizer c_;
  std::vector<std::string> a_names_;
};

// --- centraliser computation --------------------------------------------

namespace detail {

inline GroupCentralizer from_raag_centralizer(const CentralizerDescription& d) {
  GroupCentralizer c;
  c.conjugator = GroupElem{0, d.conjugator, {}, {}};
  switch (d.kind) {
    case CentKind::AbelianCanonical:
      c.abelian = true;
      c.kind = "abelian-canonical";
      for (int v : d.generators) c.letters.push_back({0, v});
      break;
    case CentKind::AbelianNonCanonical:
      c.abelian = true;
      c.kind = "abelian-noncanonical";
      c.root = GroupElem{0, d.z_root, {}, {}};
      for (int v : d.o_part) c.letters.push_back({0, v});
      break;
    case CentKind::NonAbelianCanonical:
      c.abelian = false;
      c.kind = "nonabelian-canonical";
      for (int v : d.z_vertices) c.z_letters.push_back({0, v});
      for (int v : d.o_part) c.letters.push_back({0, v});
      break;
  }
  return c;
}

}  // namespace detail

inline GroupCentralizer Group::centralizer(const GroupElem& v0) const {
  check(v0);
  if (is_identity(v0))
    throw std::invalid_argument("centralizer of the identity");
  if (level_ == 0)
    return detail::from_raag_centralizer(raag::centralizer(v0.word, budget_));

  GroupElem v = reduce(v0);
  GroupElem conjugator = identity();
  auto rotate_by = [&](const GroupElem& t) {
    v = mul(mul(t, v), inv(t));
    conjugator = mul(conjugator, inv(t));
  };

  // Cyclic reduction: shrink the syllable count while the ends allow it.
  // The coset-canonical form keeps C-content in the final syllable, so the
  // stable states are: n = 0; n = 1 inside B; or a head outside C.
  int guard = 8 * (int)v.avec.size() + 16;
  while (guard-- > 0) {
    int n = v.top_length();
    if (n == 0) break;
    bool head_c = c_coords(v.syl.front()).has_value();
    bool tail_c = c_coords(v.syl.back()).has_value();
    if (head_c && tail_c) {
      if (n == 1) break;  // element of B
      // B ... B: rotate the whole last B-chunk to the front; always shrinks
      GroupElem t = mul(a_element(v.avec.back()), lift(v.syl.back()));
      rotate_by(t);
      continue;
    }
    if (!tail_c) {
      // ends ... G: rotate the tail syllable to the front
      rotate_by(lift(v.syl.back()));
      continue;
    }
    break;  // head outside C, tail in C: cyclically reduced
  }
  if (guard <= 0) throw std::logic_error("cyclic reduction did not stabilise");

  GroupCentralizer out;
  out.conjugator = conjugator;

  if (v.top_length() == 0) {
    GroupElem w = v.syl[0];
    if (c_coords(w)) {
      auto dbase = base_->centralizer(w);
      if (!base_->is_identity(dbase.conjugator))
        throw std::logic_error("conjugate centraliser for an element of C");
      if (dbase.abelian) {
        // C(v) = C x A = B
        out.abelian = true;
        out.kind = "whole-b";
        if (c_.root) out.root = lift(*c_.root);
        out.letters = c_.letters;
        for (int i = 0; i < a_rank(); ++i) out.letters.push_back({level_, i});
      } else {
        // C(v) = Z_base(v) x <O_base(v), A>
        out.abelian = false;
        out.kind = "z-times-oa";
        if (dbase.root) out.root = lift(*dbase.root);
        out.z_letters = dbase.z_letters;
        out.letters = dbase.letters;
        for (int i = 0; i < a_rank(); ++i) out.letters.push_back({level_, i});
      }
    } else {
      auto dbase = base_->centralizer(w);
      out.abelian = dbase.abelian;
      out.kind = "inherited(" + dbase.kind + ")";
      if (dbase.root) out.root = lift(*dbase.root);
      out.z_letters = dbase.z_letters;
      out.letters = dbase.letters;
      out.conjugator = mul(conjugator, lift(dbase.conjugator));
    }
    return out;
  }

  if (v.top_length() == 1 && c_coords(v.syl[0]) && c_coords(v.syl[1])) {
    // element of B outside C
    out.abelian = true;
    out.kind = "whole-b";
    if (c_.root) out.root = lift(*c_.root);
    out.letters = c_.letters;
    for (int i = 0; i < a_rank(); ++i) out.letters.push_back({level_, i});
    return out;
  }

  // Proper amalgam element: fold the C-tail into the head to reach the shape
  // g1 a1 g2 a2 ... gr ar with every g_i outside C.
  if (!base_->is_identity(v.syl.back())) {
    GroupElem t = lift(v.syl.back());
    GroupElem folded;
    folded.level = level_;
    folded.syl = v.syl;
    folded.syl[0] = base_->mul(v.syl.back(), v.syl[0]);
    folded.syl.back() = base_->identity();
    folded.avec = v.avec;
    conjugator = mul(conjugator, inv(t));
    out.conjugator = conjugator;
    v = std::move(folded);
  }
  int r = v.top_length();
  std::vector<GroupElem> gs(v.syl.begin(), v.syl.end() - 1);

  // O'(z): letters of C(u)'s O-part commuting with every g_i
  out.kind = "cyclic-times-oprime";
  out.abelian = true;
  for (const auto& l : c_.letters) {
    GroupElem le = base_->gen(l);
    bool ok = true;
    for (const auto& gi : gs)
      if (!base_->commute(le, gi)) { ok = false; break; }
    if (ok) out.letters.push_back(l);
  }
  GroupCentralizer oprime;
  oprime.abelian = true;
  oprime.letters = out.letters;
  oprime.conjugator = base_->identity();

  // v = d z^m with z the root modulo <O'>: try the largest period first
  GroupElem z = v;
  long long mult = 1;
  GroupElem d = lift(base_->identity());
  for (long long m = r; m >= 1; --m) {
    if (r % m != 0) continue;
    int p = (int)(r / m);
    GroupElem cand;
    cand.level = level_;
    cand.syl.assign(v.syl.begin(), v.syl.begin() + p);
    cand.syl.push_back(base_->identity());
    cand.avec.assign(v.avec.begin(), v.avec.begin() + p);
    GroupElem rest = mul(v, inv(pow(cand, m)));
    if (rest.top_length() == 0 &&
        base_->coords_in(oprime, rest.syl[0]).has_value()) {
      // strip the O'-content of the candidate's syllables: it commutes with
      // everything in sight, so it pulls out into the d-part
      GroupElem stripped = cand;
      for (auto& s : stripped.syl) s = base_->factor_coset(oprime, s).first;
      GroupElem rest2 = mul(v, inv(pow(stripped, m)));
      if (rest2.top_length() == 0 &&
          base_->coords_in(oprime, rest2.syl[0]).has_value()) {
        z = stripped;
        d = rest2;
      } else {
        z = cand;
        d = rest;
      }
      mult = m;
      break;
    }
  }
  out.root = reduce(std::move(z));
  out.m = mult;
  out.d_part = d;
  return out;
}

}  // namespace raag
