#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "raag/centralizer.hpp"
#include "raag/discriminate.hpp"

namespace raag {

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  int checked = 0;
  int skipped = 0;  // samples past a representative or shuffle budget
  std::string witness;

  void fail(const std::string& w) {
    if (pass) witness = w;
    pass = false;
  }
};

struct ClassCReport {
  std::vector<AxiomResult> results;
  bool passed() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return true;
  }
};

// Sampled falsifier for the class-C axioms with the given representative set.
// It reports, never proves; deterministic for a fixed seed.
inline ClassCReport check_class_c_axioms(const CommutationGraph& g,
                                         const RepresentativeSet& reps,
                                         int sample_length, int sample_count,
                                         unsigned long long seed) {
  require_chordal(g);
  std::mt19937_64 rng(seed);
  auto random_word = [&](int maxlen, const VertexSet& alphabet) {
    Word w{&g, {}};
    if (alphabet.empty()) return normalize(w);
    int len = 1 + (int)(rng() % maxlen);
    for (int i = 0; i < len; ++i)
      w.syls.push_back({alphabet[rng() % alphabet.size()],
                        (rng() % 2) ? 1LL : -1LL});
    return normalize(w);
  };
  VertexSet all = g.all_vertices();

  AxiomResult c1{"C1 torsion-free"};
  AxiomResult c2{"C2 big powers"};
  AxiomResult c3{"C3 unique roots"};
  AxiomResult c4a{"C4a disjoint commuting subsets split"};
  AxiomResult c4b{"C4b canonical generators are independent"};
  AxiomResult c6a{"C6a representatives cover centralisers"};
  AxiomResult c6b{"C6b Z x O splitting"};
  AxiomResult c6c{"C6c O(w) is covered inside itself"};
  AxiomResult c7{"C7 weak malnormality of abelian centralisers"};

  for (int s = 0; s < sample_count; ++s) {
    NormalWord w = random_word(sample_length, all);
    if (w.trivial()) continue;

    // C1: w^k != 1
    ++c1.checked;
    for (long long k = 2; k <= 4; ++k)
      if (power(w, k).trivial()) c1.fail(print_word(w) + "^" + std::to_string(k));

    // C3: root(w^k) = (root(w), k * mult)
    if (w.length() <= 4) {
      ++c3.checked;
      try {
        auto r = root(w);
        for (long long k = 2; k <= 3; ++k) {
          auto rk = root(power(w, k));
          if (!(rk.root == r.root) || rk.multiplicity != k * r.multiplicity)
            c3.fail(print_word(w));
        }
      } catch (const BudgetExceeded&) {
      }
    }

    // C6a: some conjugate representative exists and its centraliser conjugates
    // onto C(g); unique for abelian centralisers
    ++c6a.checked;
    try {
      auto rep = conjugacy_representative(w, reps);
      std::vector<NormalWord> cgens;
      bool abelian_rep;
      if (rep.w.trivial()) {
        // identity representative: C(1) is the whole group
        for (int v : all) cgens.push_back(nw_generator(g, v));
        abelian_rep = is_clique(g, all);
      } else {
        auto dw0 = centralizer(rep.w);
        cgens = dw0.generator_words();
        abelian_rep = dw0.abelian();
      }
      for (const auto& c : cgens) {
        auto img = concat(concat(rep.h, c), inverse(rep.h));
        if (!commute(img, w))
          c6a.fail(print_word(w) + ": witness generator " + print_word(c));
      }
      if (abelian_rep) {
        // uniqueness: no other representative has a conjugate centraliser
        int hits = 0;
        auto dw = rep.w.trivial()
                      ? CentralizerDescription{}
                      : centralizer(rep.w);
        if (!rep.w.trivial() && dw.kind == CentKind::AbelianNonCanonical) {
          auto key = conjugacy_canonical(dw.z_root, true);
          for (const auto& v : reps.w_b)
            if (v.length() == dw.z_root.length() &&
                conjugacy_canonical(v, true) == key)
              ++hits;
        } else {
          VertexSet target = rep.w.trivial() ? g.all_vertices()
                                             : star(g, rep.w.support());
          for (const auto& v : reps.w_k) {
            bool ab = v.trivial() ? is_clique(g, g.all_vertices())
                                  : centralizer(v).abelian();
            VertexSet vstar =
                v.trivial() ? g.all_vertices() : star(g, v.support());
            if (ab && vstar == target) ++hits;
          }
        }
        if (hits != 1)
          c6a.fail(print_word(w) + ": " + std::to_string(hits) +
                   " abelian representatives");
      }
    } catch (const BudgetExceeded&) {
      --c6a.checked;
      ++c6a.skipped;
    } catch (const std::exception& e) {
      c6a.fail(print_word(w) + ": " + e.what());
    }
  }

  // C2: sampled generic pairs collapse nowhere up to a small bound
  for (int s = 0; s < std::min(sample_count, 12); ++s) {
    auto u = random_word(sample_length, all);
    auto v = random_word(sample_length, all);
    if (u.trivial() || v.trivial() || commute(u, v)) continue;
    ++c2.checked;
    if (auto hit = bp_scan({u, v}, 4))
      c2.fail(print_word(u) + ", " + print_word(v));
  }

  // C4a/C4b on sampled subset pairs
  for (int s = 0; s < std::min(sample_count, 40); ++s) {
    VertexSet y, yp;
    for (int v : all) {
      switch (rng() % 3) {
        case 0: y.push_back(v); break;
        case 1: yp.push_back(v); break;
        default: break;
      }
    }
    bool commuting = true;
    for (int a : y)
      for (int b : yp)
        if (!g.adjacent(a, b)) commuting = false;
    if (commuting && !y.empty() && !yp.empty()) {
      ++c4a.checked;
      auto u = random_word(sample_length, y);
      auto v = random_word(sample_length, yp);
      if (!commute(u, v)) c4a.fail(print_word(u) + " vs " + print_word(v));
      if (u == v && !u.trivial()) c4a.fail("nontrivial intersection: " + print_word(u));
    }
    if (!y.empty()) {
      ++c4b.checked;
      for (int x = 0; x < g.size(); ++x) {
        auto probe = random_word(sample_length, y);
        if (probe == nw_generator(g, x) && !vs_contains(y, x))
          c4b.fail(g.name(x));
      }
    }
  }

  // C6b: the Z x O split of every representative
  auto check_split = [&](const NormalWord& w) {
    ++c6b.checked;
    try {
      if (w.trivial()) {
        // identity representative: Z trivial, O the whole (abelian) group
        auto zo0 = zo_split(w);
        if (!zo0.z_cyclic && zo0.z_vertices.empty() &&
            zo0.o == g.all_vertices())
          return;
        c6b.fail("identity representative with nontrivial Z");
        return;
      }
      auto zo = zo_split(w);
      std::vector<NormalWord> zgens, ogens;
      if (zo.z_cyclic) zgens.push_back(*zo.z_cyclic);
      for (int v : zo.z_vertices) zgens.push_back(nw_generator(g, v));
      for (int v : zo.o) ogens.push_back(nw_generator(g, v));
      VertexSet zsupp;
      for (const auto& z : zgens) zsupp = vs_union(zsupp, z.support());
      if (!vs_intersect(zsupp, zo.o).empty())
        c6b.fail(print_word(w) + ": overlapping supports");
      auto d = centralizer(w);
      for (const auto& zgen : zgens)
        for (const auto& ogen : ogens)
          if (!commute(zgen, ogen))
            c6b.fail(print_word(w) + ": [" + print_word(zgen) + "," +
                     print_word(ogen) + "] != 1");
      for (const auto& gen : zgens)
        if (!commute(gen, w) || !member_of_centralizer(d, gen))
          c6b.fail(print_word(w) + ": bad Z generator " + print_word(gen));
      for (const auto& gen : ogens)
        if (!commute(gen, w) || !member_of_centralizer(d, gen))
          c6b.fail(print_word(w) + ": bad O generator " + print_word(gen));
    } catch (const std::exception& e) {
      c6b.fail(print_word(w) + ": " + e.what());
    }
  };
  for (const auto& w : reps.w_k) check_split(w);
  for (const auto& w : reps.w_b) check_split(w);

  // C6c: elements of O(w) have representatives inside O(w)
  auto check_c6c = [&](const NormalWord& w) {
    if (w.trivial()) return;  // C(1) is everything; nothing to cover
    auto zo = zo_split(w);
    if (zo.o.empty()) return;
    for (int s = 0; s < 10; ++s) {
      auto o = random_word(sample_length, zo.o);
      if (o.trivial()) continue;
      ++c6c.checked;
      try {
        auto rep = conjugacy_representative(o, reps);
        // skip when C(o) is conjugate to C(w) itself
        if (rep.w == w) continue;
        bool w0_in = vs_subset(rep.w.support(), zo.o);
        bool h_in = vs_subset(rep.h.support(), zo.o);
        if (!(w0_in && h_in))
          c6c.fail(print_word(w) + ": representative " + print_word(rep.w) +
                   " of " + print_word(o) + " leaves O(w)");
      } catch (const BudgetExceeded&) {
        --c6c.checked;
        ++c6c.skipped;
      } catch (const std::exception& e) {
        c6c.fail(print_word(w) + "/" + print_word(o) + ": " + e.what());
      }
    }
  };
  for (const auto& w : reps.w_k) check_c6c(w);
  for (const auto& w : reps.w_b) check_c6c(w);

  // C7: a, a^h in C(w) with h outside forces a in O(w) and [h,a]=1
  auto check_c7 = [&](const NormalWord& w) {
    if (w.trivial()) return;  // no h outside C(1)
    auto d = centralizer(w);
    if (!d.abelian()) return;
    auto zo = zo_split(w);
    VertexSet csupp = zo.o;
    if (zo.z_cyclic) csupp = vs_union(csupp, zo.z_cyclic->support());
    csupp = vs_union(csupp, zo.z_vertices);
    for (int s = 0; s < 10; ++s) {
      auto a = random_word(sample_length, csupp);
      auto h = random_word(sample_length, all);
      if (a.trivial()) continue;
      if (!member_of_centralizer(d, a)) continue;
      if (member_of_centralizer(d, h)) continue;
      auto ah = conjugate(a, h);
      if (!member_of_centralizer(d, ah)) continue;
      ++c7.checked;
      bool a_in_o = vs_subset(a.support(), zo.o);
      if (!a_in_o || !commute(h, a))
        c7.fail(print_word(w) + ": a=" + print_word(a) + " h=" + print_word(h));
    }
  };
  for (const auto& w : reps.w_k) check_c7(w);
  for (const auto& w : reps.w_b) check_c7(w);

  ClassCReport rep;
  rep.results = {c1, c2, c3, c4a, c4b, c6a, c6b, c6c, c7};
  return rep;
}

}  // namespace raag
