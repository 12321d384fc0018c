#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "raag/group.hpp"
#include "raag/word.hpp"

namespace raag {

// lambda_{psi,m}: G(u,B) -> G, identity on G, a |-> u^{m (psi . a)} on A.
struct RetractionIndex {
  std::vector<long long> psi;
  long long m = 1;
};

struct SeparationCertificate {
  RetractionIndex index;
  GroupElem image;  // element of the base, verified nontrivial
};

inline long long dot(const std::vector<long long>& a, const AVec& b) {
  long long s = 0;
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

inline GroupElem retract(const Group& ext, const RetractionIndex& idx,
                         const GroupElem& e) {
  if (ext.level() == 0)
    throw std::invalid_argument("retract needs an extension group");
  if ((int)idx.psi.size() != ext.a_rank())
    throw std::invalid_argument("psi rank mismatch");
  const Group& base = *ext.base();
  GroupElem acc = base.identity();
  const GroupElem& u = ext.extended_element();
  for (size_t i = 0; i < e.syl.size(); ++i) {
    acc = base.mul(acc, e.syl[i]);
    if (i < e.avec.size())
      acc = base.mul(acc, base.pow(u, idx.m * dot(idx.psi, e.avec[i])));
  }
  return acc;
}

// Discriminating vector psi = (1, N, N^2, ...): psi.v nonzero with pairwise
// distinct magnitudes across the input vectors; N starts at 1 + twice the
// largest coordinate magnitude and descends while that property holds.
inline std::vector<long long> make_psi(std::vector<AVec> vectors) {
  if (vectors.empty()) return {1};
  size_t k = vectors[0].size();
  for (const auto& v : vectors)
    if (v.size() != k) throw std::invalid_argument("mixed A-vector ranks");
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  for (const auto& v : vectors)
    if (avec_zero(v)) throw std::invalid_argument("zero vector in make_psi");
  auto psi_for = [&](long long n) {
    std::vector<long long> psi(k);
    long long p = 1;
    for (size_t i = 0; i < k; ++i) {
      psi[i] = p;
      p *= n;
    }
    return psi;
  };
  auto valid = [&](const std::vector<long long>& psi) {
    std::vector<long long> mags;
    for (const auto& v : vectors) {
      long long d = dot(psi, v);
      if (d == 0) return false;
      mags.push_back(d < 0 ? -d : d);
    }
    std::sort(mags.begin(), mags.end());
    return std::adjacent_find(mags.begin(), mags.end()) == mags.end();
  };
  long long maxmag = 0;
  for (const auto& v : vectors)
    for (long long x : v) maxmag = std::max(maxmag, x < 0 ? -x : x);
  long long n0 = 1 + 2 * maxmag;
  long long best = n0;
  for (long long n = n0 - 1; n >= 1; --n) {
    if (!valid(psi_for(n))) break;
    best = n;
  }
  auto psi = psi_for(best);
  if (!valid(psi)) psi = psi_for(n0);  // fall back to the safe start
  return psi;
}

// Smallest-m separation scan for a nontrivial reduced element.
inline SeparationCertificate separate(const Group& ext, const GroupElem& e,
                                      long long m_budget) {
  GroupElem r = ext.reduce(e);
  if (ext.is_identity(r))
    throw std::invalid_argument("separate needs a nontrivial element");
  std::vector<AVec> vecs;
  for (const auto& v : r.avec)
    if (!avec_zero(v)) vecs.push_back(v);
  RetractionIndex idx;
  idx.psi = vecs.empty() ? std::vector<long long>(ext.a_rank(), 0)
                         : make_psi(vecs);
  if (vecs.empty() && !idx.psi.empty()) idx.psi[0] = 1;
  for (long long m = 1; m <= m_budget; ++m) {
    idx.m = m;
    GroupElem image = retract(ext, idx, r);
    if (!ext.base()->is_identity(image))
      return SeparationCertificate{idx, image};
  }
  std::string psis = "(";
  for (size_t i = 0; i < idx.psi.size(); ++i)
    psis += (i ? "," : "") + std::to_string(idx.psi[i]);
  psis += ")";
  throw BudgetExceeded("separation budget exhausted: psi=" + psis +
                       ", m tried up to " + std::to_string(m_budget));
}

// One (psi, m) separating every element of a finite set from 1 (and, applied
// to quotients, from each other).
inline std::optional<RetractionIndex> separate_family(
    const Group& ext, const std::vector<GroupElem>& elems, long long m_budget) {
  std::vector<AVec> vecs;
  for (const auto& e : elems)
    for (const auto& v : ext.reduce(e).avec)
      if (!avec_zero(v)) vecs.push_back(v);
  RetractionIndex idx;
  idx.psi = vecs.empty() ? std::vector<long long>(ext.a_rank(), 0)
                         : make_psi(vecs);
  if (vecs.empty() && !idx.psi.empty()) idx.psi[0] = 1;
  for (long long m = 1; m <= m_budget; ++m) {
    idx.m = m;
    bool ok = true;
    for (const auto& e : elems)
      if (ext.base()->is_identity(retract(ext, idx, e))) { ok = false; break; }
    if (ok) return idx;
  }
  return std::nullopt;
}

// --- big powers scan ---------------------------------------------------------

// Searches positive exponent tuples with u_1^{a_1} ... u_k^{a_k} = 1 up to the
// bound, in increasing max-norm.  The tuple must be generic: consecutive
// entries do not commute.
inline std::optional<std::vector<long long>> bp_scan(
    const std::vector<NormalWord>& tuple, long long n_bound) {
  if (tuple.empty()) throw std::invalid_argument("empty tuple");
  const CommutationGraph& g = *tuple[0].graph;
  for (size_t i = 0; i + 1 < tuple.size(); ++i)
    if (commute(tuple[i], tuple[i + 1]))
      throw std::invalid_argument(
          "tuple is not generic: consecutive entries " + print_word(tuple[i]) +
          " and " + print_word(tuple[i + 1]) + " commute");
  size_t k = tuple.size();
  std::vector<long long> alpha(k, 1);
  for (long long maxn = 1; maxn <= n_bound; ++maxn) {
    // enumerate alpha in [1,maxn]^k with max-norm exactly maxn
    std::vector<long long> idx(k, 1);
    for (;;) {
      long long mx = 0;
      for (long long v : idx) mx = std::max(mx, v);
      if (mx == maxn) {
        NormalWord prod = nw_identity(g);
        for (size_t i = 0; i < k; ++i)
          prod = concat(prod, power(tuple[i], idx[i]));
        if (prod.trivial()) return idx;
      }
      size_t pos = 0;
      while (pos < k && idx[pos] == maxn) idx[pos++] = 1;
      if (pos == k) break;
      ++idx[pos];
    }
  }
  return std::nullopt;
}

}  // namespace raag
