#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "raag/tower.hpp"

using namespace raag;

static VertexSet vs_of(const CommutationGraph& g, std::vector<std::string> names) {
  VertexSet v;
  for (const auto& n : names) v.push_back(g.index_of(n));
  return vs_sorted(std::move(v));
}

TEST_CASE("orthogonal complements and co-irreducibility") {
  TowerPresentation t(fixtures::p4());
  const auto& lg = t.layer(0);
  const auto& g = lg.graph;

  auto o = orth(lg, vs_of(g, {"b"}));
  CHECK(o.perp == vs_of(g, {"a", "c"}));
  CHECK(o.closure == vs_of(g, {"b"}));
  CHECK(o.co_irreducible);

  auto o2 = orth(lg, vs_of(g, {"a"}));
  CHECK(o2.perp == vs_of(g, {"b"}));
  CHECK(o2.closure == vs_of(g, {"a", "c"}));
  CHECK_FALSE(o2.closed);

  TowerPresentation k2(fixtures::free_abelian(2));
  auto o3 = orth(k2.layer(0), {0});
  CHECK(o3.perp == VertexSet{1});
  CHECK(o3.closure == VertexSet{0});
  CHECK(o3.co_irreducible);
}

static FloorSpec b1_p4() {
  FloorSpec s;
  s.kind = FloorKind::B1;
  s.k_generators = {"b"};
  s.u = "a c";
  s.m_new = 2;
  return s;
}

TEST_CASE("B1 floor over P4") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(b1_p4());
  CHECK(t.height() == 1);
  const Floor& f = t.floor(1);
  CHECK(f.edge_rank == 2);  // <ac> x <b>
  CHECK(f.group->a_rank() == 2);
  CHECK(f.gamma.graph.size() == 6);
  // d-edges x_i-b, c-edge x1-x2
  CHECK(f.gamma.is_d(f.gamma.graph.index_of("x1_1"), f.gamma.graph.index_of("b")));
  CHECK(f.gamma.is_c(f.gamma.graph.index_of("x1_1"), f.gamma.graph.index_of("x1_2")));
  // relators: [ac, x_i], [b, x_i]
  CHECK(f.relators.size() == 4);

  auto rep = retraction_check(t, 1);
  CHECK(rep.passed);
  CHECK(rep.checked.size() == 4);

  auto d = floor_decomposition(t, 1);
  CHECK(d.tag == "b1");
  CHECK(d.edge_rank == 2);
}

TEST_CASE("floor preconditions are rejected with witnesses") {
  TowerPresentation t(fixtures::p4());
  FloorSpec bad = b1_p4();
  bad.k_generators = {"a"};  // not closed
  CHECK_THROWS_WITH_AS(t.add_floor(bad), doctest::Contains("not closed"),
                       std::invalid_argument);

  bad = b1_p4();
  bad.u = "a c a c";  // proper power
  CHECK_THROWS_WITH_AS(t.add_floor(bad), doctest::Contains("proper power"),
                       std::invalid_argument);

  bad = b1_p4();
  bad.u = "a";  // not a block of K^perp... a is a block; use a word leaving perp
  bad.u = "a d";
  CHECK_THROWS_WITH_AS(t.add_floor(bad), doctest::Contains("not supported"),
                       std::invalid_argument);

  // a2 with non-abelian K^perp
  FloorSpec a2;
  a2.kind = FloorKind::A2Abelian;
  a2.k_generators = {"b"};
  a2.m_new = 1;
  CHECK_THROWS_WITH_AS(t.add_floor(a2), doctest::Contains("abelian K^perp"),
                       std::invalid_argument);
}

TEST_CASE("A2 floor on top of a B1 floor (nested extension)") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(b1_p4());
  // K = {b, x1_2}: K^perp = {x1_1}, closed, with C(x1_1) = B free abelian rank 4
  FloorSpec a2;
  a2.kind = FloorKind::A2Abelian;
  a2.k_generators = {"b", "x1_2"};
  a2.m_new = 1;
  t.add_floor(a2);
  CHECK(t.height() == 2);
  const Floor& f = t.floor(2);
  CHECK(f.edge_rank == 4);
  CHECK(f.group->level() == 2);
  CHECK(retraction_check(t, 2).passed);
  auto d = floor_decomposition(t, 2);
  CHECK(d.tag == "a2");
  CHECK(d.edge_rank == 4);
}

TEST_CASE("B1 floor over a B1 floor through a case-(iii) centraliser") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(b1_p4());
  FloorSpec b2;
  b2.kind = FloorKind::B1;
  b2.k_generators = {"b"};
  b2.u = "a x1_1";
  b2.m_new = 1;
  t.add_floor(b2);
  const Floor& f = t.floor(2);
  CHECK(f.edge_rank == 2);  // <a x1_1> x <b>
  CHECK(retraction_check(t, 2).passed);
}

static FloorSpec c_floor_p4() {
  FloorSpec s;
  s.kind = FloorKind::C;
  s.k_generators = {"b"};
  s.m_new = 2;
  QuadraticData q;
  q.orientable = true;
  q.genus = 1;
  q.u_words = {"c^-1 a^-1 c a"};  // u_3 = [v1,v2]^-1 with v1=a, v2=c
  q.v_words = {"a", "c"};
  q.w_words = {};
  s.quadratic = q;
  return s;
}

TEST_CASE("quadratic floor over P4: validation, relators, retraction") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(c_floor_p4());
  const Floor& f = t.floor(1);
  CHECK(f.presentational);
  // basic relators [b, x_i] (C(K^perp) = <st({a,c})> = <b>) plus W
  CHECK(f.relators.size() == 3);
  CHECK(retraction_check(t, 1).passed);
  auto d = floor_decomposition(t, 1);
  CHECK(d.tag == "c");
  CHECK(d.edge_rank == 1);  // C(K^perp) = <b>, no conjugated boundaries

  // no floors above a quadratic floor
  CHECK_THROWS_WITH_AS(t.add_floor(b1_p4()), doctest::Contains("quadratic"),
                       std::invalid_argument);

  // corrupted solution data fails the identity check
  auto bad = c_floor_p4();
  bad.quadratic->v_words = {"a", "c^-1"};
  TowerPresentation t2(fixtures::p4());
  CHECK_THROWS_WITH_AS(t2.add_floor(bad),
                       doctest::Contains("quadratic identity"),
                       std::invalid_argument);
  CHECK(verify_quadratic_identity(t2, 0, *bad.quadratic).has_value());

  // abelian constraint subgroup is rejected
  auto ab = c_floor_p4();
  ab.quadratic->u_words = {"a^-1 a"};  // trivial u_3
  ab.quadratic->v_words = {"a", "a"};
  TowerPresentation t3(fixtures::p4());
  CHECK_THROWS_WITH_AS(t3.add_floor(ab), doctest::Contains("abelian"),
                       std::invalid_argument);
}

TEST_CASE("tree decomposition of the bare P4") {
  TowerPresentation t(fixtures::p4());
  auto tree = tree_decomposition(t);
  REQUIRE(tree.vertices.size() == 3);
  CHECK(tree.is_tree());
  for (const auto& v : tree.vertices) CHECK(v.rank == 2);
  for (const auto& e : tree.edges) CHECK(e.rank == 1);
  auto dot = tree_to_dot(tree);
  CHECK(dot.find("graph tower_tree") != std::string::npos);
}

TEST_CASE("tree decomposition grows one vertex and one abelian edge per floor") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(b1_p4());
  auto tree = tree_decomposition(t);
  CHECK(tree.is_tree());
  REQUIRE(tree.vertices.size() == 4);
  const auto& v = tree.vertices.back();
  CHECK(v.kind == "free-abelian");
  CHECK(v.rank == 4);  // <ac> x <b> x Z^2
  CHECK(tree.edges.back().rank == 2);

  FloorSpec a2;
  a2.kind = FloorKind::A2Abelian;
  a2.k_generators = {"b", "x1_2"};
  a2.m_new = 1;
  t.add_floor(a2);
  auto tree2 = tree_decomposition(t);
  CHECK(tree2.is_tree());
  CHECK(tree2.vertices.back().rank == 5);
  CHECK(tree2.edges.back().rank == 4);
}

TEST_CASE("tree decomposition of a quadratic floor follows the surface form") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(c_floor_p4());
  auto tree = tree_decomposition(t);
  CHECK(tree.is_tree());
  const auto& v = tree.vertices.back();
  CHECK(v.kind == "abelian-times-surface");
  CHECK(v.genus == 1);
  CHECK(v.orientable);
  CHECK(v.rank == 1);               // O(t) = <b>
  CHECK(tree.edges.back().rank == 2);  // <t> x O(t)
}

TEST_CASE("quadratic embedding separates sampled images") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(c_floor_p4());
  auto emb = embed_quadratic(t, 1);
  const Group& T = *emb.tstar;

  // base elements map to themselves
  auto a = T.from_word(normalize(parse_word(t.base_group()->graph(), "a")));
  CHECK(T.equal(quadratic_image(t, 1, emb, t.parse_gen_word(1, "a")), a));

  // x1 maps to v1^y
  auto x1img = quadratic_image(t, 1, emb, t.parse_gen_word(1, "x1_1"));
  CHECK(T.equal(x1img, T.conj_by(a, emb.y)));

  // the quadratic relator dies in T*
  const Floor& f = t.floor(1);
  auto wimg = quadratic_image(t, 1, emb, f.relators.back());
  CHECK(T.is_identity(wimg));

  // sampled nontrivial words in the x-generators separate from 1
  std::mt19937_64 rng(71);
  int separated = 0;
  for (int trial = 0; trial < 20; ++trial) {
    GenWord w;
    int len = 1 + (int)(rng() % 4);
    for (int i = 0; i < len; ++i) {
      int v = f.new_vertices[rng() % f.new_vertices.size()];
      w.push_back({v, (rng() % 2) ? 1 : -1});
    }
    auto img = quadratic_image(t, 1, emb, w);
    if (T.is_identity(img)) continue;  // freely cancelling sample
    auto cert = separate(T, img, 64);
    CHECK_FALSE(T.base()->is_identity(cert.image));
    ++separated;
  }
  CHECK(separated >= 10);
}

TEST_CASE("level-to-level discrimination down a height-3 tower") {
  TowerPresentation t(fixtures::p4());
  t.add_floor(b1_p4());
  FloorSpec a2;
  a2.kind = FloorKind::A2Abelian;
  a2.k_generators = {"b", "x1_2"};
  a2.m_new = 1;
  t.add_floor(a2);
  FloorSpec b3;
  b3.kind = FloorKind::B1;
  b3.k_generators = {"b"};
  b3.u = "a x2_1";
  b3.m_new = 1;
  t.add_floor(b3);

  auto g3 = t.top_group();
  std::mt19937_64 rng(79);
  auto gens = g3->all_generators();
  int separated = 0;
  for (int trial = 0; trial < 30 && separated < 15; ++trial) {
    GroupElem e = g3->identity();
    int len = 1 + (int)(rng() % 4);
    for (int i = 0; i < len; ++i)
      e = g3->mul(e, g3->gen(gens[rng() % gens.size()], (rng() % 2) ? 1 : -1));
    if (g3->is_identity(e)) continue;
    // compose per-level separations down to the base RAAG
    GroupElem cur = e;
    const Group* level = g3.get();
    bool ok = true;
    while (level->level() > 0) {
      auto cert = separate(*level, cur, 64);
      cur = cert.image;
      level = level->base();
      if (level->is_identity(cur)) { ok = false; break; }
    }
    CHECK(ok);
    CHECK(cur.level == 0);
    CHECK_FALSE(cur.word.trivial());
    ++separated;
  }
  CHECK(separated >= 15);
}

TEST_CASE("towers over the figure-1 graph") {
  TowerPresentation t(fixtures::fig1());
  FloorSpec b1;
  b1.kind = FloorKind::B1;
  b1.k_generators = {"a", "c2", "d2"};
  b1.u = "b2 d1";
  b1.m_new = 2;
  t.add_floor(b1);
  CHECK(t.floor(1).edge_rank == 4);  // <b2 d1> x <a,c2,d2>
  CHECK(retraction_check(t, 1).passed);

  // second B1 floor amalgamating the whole of B
  FloorSpec b2;
  b2.kind = FloorKind::B1;
  b2.k_generators = {"a", "c2", "d2"};
  b2.u = "b2 d1";
  b2.m_new = 1;
  t.add_floor(b2);
  CHECK(t.floor(2).edge_rank == 6);
  CHECK(retraction_check(t, 2).passed);
  auto tree = tree_decomposition(t);
  CHECK(tree.is_tree());
  CHECK(tree.vertices.back().rank == 7);
}
