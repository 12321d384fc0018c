#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "raag/discriminate.hpp"

using namespace raag;

static NormalWord parse_nw(const Group& g, const std::string& s) {
  return normalize(parse_word(g.graph(), s));
}

static GroupElem random_elem(const Group& g, std::mt19937_64& rng, int len) {
  auto gens = g.all_generators();
  GroupElem e = g.identity();
  for (int i = 0; i < len; ++i)
    e = g.mul(e, g.gen(gens[rng() % gens.size()], (rng() % 2) ? 1 : -1));
  return e;
}

TEST_CASE("make_psi reproduces the worked values") {
  CHECK(make_psi({{1, 0}, {0, 1}, {1, -1}}) == std::vector<long long>{1, 3});
  CHECK(make_psi({{5}}) == std::vector<long long>{1});
  CHECK(make_psi({{1, 1}, {1, -1}}) == std::vector<long long>{1, 2});
  // values are nonzero with distinct magnitudes
  std::vector<AVec> vs{{2, 1}, {-1, 3}, {0, 2}, {4, -1}};
  auto psi = make_psi(vs);
  std::vector<long long> mags;
  for (const auto& v : vs) {
    long long d = dot(psi, v);
    CHECK(d != 0);
    mags.push_back(d < 0 ? -d : d);
  }
  std::sort(mags.begin(), mags.end());
  CHECK(std::adjacent_find(mags.begin(), mags.end()) == mags.end());
}

TEST_CASE("retract on the F2 extension") {
  auto f2 = Group::make_raag(fixtures::free_group(2));
  auto ext = Group::extend(f2, f2->from_word(parse_nw(*f2, "x")), {"s"});
  auto s = ext->a_generator(0);
  auto y = ext->from_word(parse_nw(*f2, "y"));

  // s |-> x^3 under psi=(1), m=3
  auto im = retract(*ext, {{1}, 3}, s);
  CHECK(f2->equal(im, f2->from_word(parse_nw(*f2, "x^3"))));

  // [y,s] |-> [y,x] != 1 under psi=(1), m=1
  auto comm = ext->mul(ext->mul(ext->mul(y, s), ext->inv(y)), ext->inv(s));
  auto im2 = retract(*ext, {{1}, 1}, comm);
  CHECK(f2->equal(im2, f2->from_word(parse_nw(*f2, "y x y^-1 x^-1"))));

  // identity on the base
  auto base_elem = ext->from_word(parse_nw(*f2, "x y^-2 x"));
  CHECK(f2->equal(retract(*ext, {{1}, 5}, base_elem),
                  f2->from_word(parse_nw(*f2, "x y^-2 x"))));
}

TEST_CASE("retract is a homomorphism and fixes C pointwise") {
  auto p4 = Group::make_raag(fixtures::p4());
  auto ext = Group::extend(p4, p4->from_word(parse_nw(*p4, "a c")), {"s1", "s2"});
  std::mt19937_64 rng(53);
  RetractionIndex idx{{1, 3}, 2};
  for (int t = 0; t < 200; ++t) {
    auto e1 = random_elem(*ext, rng, 1 + (int)(rng() % 5));
    auto e2 = random_elem(*ext, rng, 1 + (int)(rng() % 5));
    CHECK(p4->equal(retract(*ext, idx, ext->mul(e1, e2)),
                    p4->mul(retract(*ext, idx, e1), retract(*ext, idx, e2))));
  }
  // well-definedness on C: the B-side copy of c retracts to c
  auto c = p4->from_word(parse_nw(*p4, "a c a c b^-1"));
  CHECK(p4->equal(retract(*ext, idx, ext->lift(c)), c));
}

TEST_CASE("separate finds small certificates") {
  auto f2 = Group::make_raag(fixtures::free_group(2));
  auto ext = Group::extend(f2, f2->from_word(parse_nw(*f2, "x")), {"s"});
  auto s = ext->a_generator(0);
  auto y = ext->from_word(parse_nw(*f2, "y"));

  auto c1 = separate(*ext, s, 16);
  CHECK(c1.index.m == 1);
  CHECK_FALSE(f2->is_identity(c1.image));

  auto comm = ext->mul(ext->mul(ext->mul(y, s), ext->inv(y)), ext->inv(s));
  auto c2 = separate(*ext, comm, 16);
  CHECK(c2.index.m == 1);
  CHECK(f2->equal(c2.image, f2->from_word(parse_nw(*f2, "y x y^-1 x^-1"))));

  // y s y^-1 s^-1 y s^2: nontrivial, certificate within budget
  auto e = ext->mul(comm, ext->mul(y, ext->mul(s, s)));
  auto c3 = separate(*ext, e, 16);
  CHECK_FALSE(f2->is_identity(c3.image));
  CHECK(f2->equal(c3.image, retract(*ext, c3.index, e)));

  CHECK_THROWS_AS(separate(*ext, ext->identity(), 16), std::invalid_argument);
}

TEST_CASE("separate never certifies the identity image (random sweep)") {
  auto p4 = Group::make_raag(fixtures::p4());
  auto ext = Group::extend(p4, p4->from_word(parse_nw(*p4, "a c")), {"s1", "s2"});
  std::mt19937_64 rng(59);
  int found = 0;
  for (int t = 0; t < 120; ++t) {
    auto e = random_elem(*ext, rng, 1 + (int)(rng() % 6));
    if (ext->is_identity(e)) continue;
    auto cert = separate(*ext, e, 64);
    CHECK_FALSE(p4->is_identity(cert.image));
    CHECK(p4->equal(cert.image, retract(*ext, cert.index, e)));
    ++found;
  }
  CHECK(found > 80);
}

TEST_CASE("a single retraction separates a finite family") {
  auto p4 = Group::make_raag(fixtures::p4());
  auto ext = Group::extend(p4, p4->from_word(parse_nw(*p4, "a c")), {"s1", "s2"});
  std::mt19937_64 rng(61);
  std::vector<GroupElem> family;
  while (family.size() < 10) {
    auto e = random_elem(*ext, rng, 1 + (int)(rng() % 4));
    if (ext->is_identity(e)) continue;
    bool dup = false;
    for (const auto& f : family)
      if (ext->equal(e, f)) dup = true;
    if (!dup) family.push_back(e);
  }
  std::vector<GroupElem> targets = family;
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      targets.push_back(ext->mul(family[i], ext->inv(family[j])));
  auto idx = separate_family(*ext, targets, 64);
  REQUIRE(idx.has_value());
  for (const auto& e : targets)
    CHECK_FALSE(p4->is_identity(retract(*ext, *idx, e)));
}

TEST_CASE("bp scan") {
  auto f2 = fixtures::free_group(2);
  auto x = normalize(parse_word(f2, "x"));
  auto y = normalize(parse_word(f2, "y"));
  CHECK_FALSE(bp_scan({x, y}, 10).has_value());

  auto p4 = fixtures::p4();
  CHECK_FALSE(bp_scan({normalize(parse_word(p4, "a")), normalize(parse_word(p4, "d"))}, 5)
                  .has_value());
  CHECK_THROWS_AS(bp_scan({normalize(parse_word(p4, "a")), normalize(parse_word(p4, "b"))}, 5),
                  std::invalid_argument);

  // positive control: the 4-cycle RAAG is F2 x F2, which is not BP; this
  // generic tuple collapses at every exponent
  auto c4 = CommutationGraph({"a", "b", "c", "d"},
                             {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  std::vector<NormalWord> tuple{
      normalize(parse_word(c4, "a b")), normalize(parse_word(c4, "a^-1 d")),
      normalize(parse_word(c4, "c d^-1")), normalize(parse_word(c4, "c^-1 b^-1"))};
  auto hit = bp_scan(tuple, 3);
  REQUIRE(hit.has_value());
  NormalWord prod = nw_identity(c4);
  for (size_t i = 0; i < tuple.size(); ++i)
    prod = concat(prod, power(tuple[i], (*hit)[i]));
  CHECK(prod.trivial());
}
