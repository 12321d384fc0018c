#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "raag/class_c.hpp"
#include "raag/discriminate.hpp"
#include "raag/tower.hpp"
#include "raag/zt.hpp"

namespace raag {

using nlohmann::json;

// {"vertices": [...], "edges": [["a","b"],...], "order": optional}
inline CommutationGraph graph_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON needs \"vertices\" and \"edges\"");
  std::vector<std::string> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(v.get<std::string>());
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edge must be a pair of vertex names");
    edges.push_back({e.at(0).get<std::string>(), e.at(1).get<std::string>()});
  }
  bool keep_order = false;
  if (j.contains("order")) {
    std::vector<std::string> order;
    for (const auto& v : j.at("order")) order.push_back(v.get<std::string>());
    auto sorted_order = order, sorted_v = vertices;
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(sorted_v.begin(), sorted_v.end());
    if (sorted_order != sorted_v)
      throw std::invalid_argument("order must list every vertex exactly once");
    vertices = order;
    keep_order = true;
  }
  return CommutationGraph(vertices, edges, keep_order);
}

inline json graph_to_json(const CommutationGraph& g) {
  json j;
  j["vertices"] = g.names();
  json edges = json::array();
  for (int a = 0; a < g.size(); ++a)
    for (int b : g.neighbours(a))
      if (a < b) edges.push_back({g.name(a), g.name(b)});
  j["edges"] = edges;
  return j;
}

inline json word_to_json(const NormalWord& w) {
  json j;
  j["word"] = print_word(w);
  json syls = json::array();
  for (const auto& s : w.syls) syls.push_back({w.graph->name(s.gen), s.exp});
  j["syllables"] = syls;
  j["length"] = w.length();
  return j;
}

// Extension spec: {"base": <graph or nested spec>, "u": "a c",
//                  "a_rank": 2, "a_names": ["s1","s2"]}
struct ExtensionSpec {
  GroupPtr group;  // the built extension
};

inline GroupPtr group_from_json(const json& j, size_t budget) {
  if (j.contains("vertices")) return Group::make_raag(graph_from_json(j), budget);
  if (!j.contains("base") || !j.contains("u"))
    throw std::invalid_argument("extension JSON needs \"base\" and \"u\"");
  GroupPtr base = group_from_json(j.at("base"), budget);
  NormalWord u = normalize(parse_word(base->graph(), j.at("u").get<std::string>()));
  std::vector<std::string> names;
  if (j.contains("a_names"))
    for (const auto& n : j.at("a_names")) names.push_back(n.get<std::string>());
  int rank = j.value("a_rank", (int)names.size());
  if (rank <= 0) throw std::invalid_argument("a_rank must be positive");
  for (int i = (int)names.size(); i < rank; ++i) {
    std::string n = "s" + std::to_string(i + 1);
    while (base->name_taken(n)) n += "'";
    names.push_back(n);
  }
  if ((int)names.size() != rank)
    throw std::invalid_argument("a_names does not match a_rank");
  return Group::extend(base, base->from_word(u), names);
}

// Word over base generators and A-generator names, e.g. "y s y^-1 s^-1".
inline GroupElem elem_from_string(const Group& g, const std::string& text) {
  GroupElem e = g.identity();
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long long exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in token: " + tok);
      }
    }
    GenRef ref{-1, -1};
    if (g.graph().has_vertex(name)) {
      ref = {0, g.graph().index_of(name)};
    } else {
      for (const Group* lv = &g; lv; lv = lv->base())
        for (int i = 0; i < lv->a_rank(); ++i)
          if (lv->a_names()[i] == name) ref = {lv->level(), i};
      if (ref.level < 0) throw std::invalid_argument("unknown generator: " + name);
    }
    e = g.mul(e, g.gen(ref, exp));
  }
  return e;
}

// Elements: a word string over the generators (base and A-names), or an
// alternating array [g, [vector], g, ..., g] with nested element encodings.
inline GroupElem elem_from_json(const Group& g, const json& j) {
  if (j.is_string()) return elem_from_string(g, j.get<std::string>());
  if (!j.is_array() || j.size() % 2 == 0)
    throw std::invalid_argument(
        "element must be a word string or an odd-length alternating array");
  if (g.level() == 0) {
    if (j.size() != 1) throw std::invalid_argument("base element must be a word");
    return elem_from_json(g, j.at(0));
  }
  GroupElem raw;
  raw.level = g.level();
  for (size_t i = 0; i < j.size(); ++i) {
    if (i % 2 == 0) {
      raw.syl.push_back(elem_from_json(*g.base(), j.at(i)));
    } else {
      AVec v = j.at(i).get<AVec>();
      if ((int)v.size() != g.a_rank())
        throw std::invalid_argument("A-vector has wrong rank");
      raw.avec.push_back(std::move(v));
    }
  }
  return g.reduce(std::move(raw));
}

inline json elem_to_json(const Group& g, const GroupElem& e) {
  if (e.level == 0) return print_word(e.word);
  json j = json::array();
  for (size_t i = 0; i < e.syl.size(); ++i) {
    j.push_back(elem_to_json(*g.at_level(e.level)->base(), e.syl[i]));
    if (i < e.avec.size()) j.push_back(e.avec[i]);
  }
  return j;
}

inline json centralizer_to_json(const CentralizerDescription& d) {
  json j;
  switch (d.kind) {
    case CentKind::NonAbelianCanonical: j["kind"] = "non-abelian-canonical"; break;
    case CentKind::AbelianCanonical: j["kind"] = "abelian-canonical"; break;
    case CentKind::AbelianNonCanonical: j["kind"] = "abelian-non-canonical"; break;
  }
  const CommutationGraph& g = *d.core.graph;
  if (d.kind == CentKind::AbelianNonCanonical) j["z_root"] = print_word(d.z_root);
  json zv = json::array();
  for (int v : d.z_vertices) zv.push_back(g.name(v));
  j["z_vertices"] = zv;
  json o = json::array();
  for (int v : d.o_part) o.push_back(g.name(v));
  j["o_part"] = o;
  json gens = json::array();
  for (const auto& w : d.generator_words()) gens.push_back(print_word(w));
  j["generators"] = gens;
  if (!d.conjugator.trivial()) j["conjugator"] = print_word(d.conjugator);
  j["abelian"] = d.abelian();
  return j;
}

inline json group_centralizer_to_json(const Group& g, const GroupCentralizer& c) {
  json j;
  j["kind"] = c.kind;
  j["abelian"] = c.abelian;
  if (c.root) j["root"] = elem_to_json(g, *c.root);
  json z = json::array();
  for (const auto& l : c.z_letters) z.push_back(g.gen_name(l));
  j["z_letters"] = z;
  json o = json::array();
  for (const auto& l : c.letters) o.push_back(g.gen_name(l));
  j["letters"] = o;
  if (!g.is_identity(c.conjugator))
    j["conjugator"] = elem_to_json(g, c.conjugator);
  j["rank"] = c.rank();
  return j;
}

inline json certificate_to_json(const Group& base,
                                const SeparationCertificate& cert) {
  json j;
  j["psi"] = cert.index.psi;
  j["m"] = cert.index.m;
  j["image"] = elem_to_json(base, cert.image);
  return j;
}

// Chain spec: {"base": <graph>, "steps": [{"u": "a c", "degree": 1}, ...]};
// steps that omit "degree" fall back to the given default truncation.
inline IceChain chain_from_json(const json& j, size_t budget,
                                int default_degree = 2) {
  if (!j.contains("base")) throw std::invalid_argument("chain JSON needs \"base\"");
  GroupPtr base = Group::make_raag(graph_from_json(j.at("base")), budget);
  std::vector<IceStep> steps;
  if (j.contains("steps"))
    for (const auto& s : j.at("steps")) {
      IceStep st;
      st.u = normalize(parse_word(base->graph(), s.at("u").get<std::string>()));
      st.degree = s.value("degree", default_degree);
      steps.push_back(std::move(st));
    }
  return build_ice(base, steps);
}

inline json axiom_report_to_json(const AxiomReport& r) {
  json out = json::array();
  for (const auto& item : r.items) {
    json j;
    j["axiom"] = item.axiom;
    j["status"] = item.failures.empty() ? "pass" : "fail";
    j["checked"] = item.checked;
    j["skipped"] = item.skipped;
    if (!item.failures.empty()) j["witness"] = item.failures.front();
    out.push_back(j);
  }
  return out;
}

inline json class_c_report_to_json(const ClassCReport& r) {
  json out = json::array();
  for (const auto& res : r.results) {
    json j;
    auto space = res.axiom.find(' ');
    j["axiom"] = res.axiom.substr(0, space);
    j["description"] = res.axiom;
    j["status"] = res.pass ? "pass" : "fail";
    j["checked"] = res.checked;
    if (res.skipped) j["skipped"] = res.skipped;
    if (!res.pass) j["witness"] = res.witness;
    out.push_back(j);
  }
  return out;
}

// Tower spec: {"base": <graph>, "floors": [
//   {"kind": "b1", "k": ["b"], "u": "a c", "m": 2},
//   {"kind": "a2", "k": [...], "m": 1},
//   {"kind": "c", "k": ["b"], "m": 2, "orientable": true, "genus": 1,
//    "u_words": [...], "v_words": [...], "w_words": [...]} ]}
inline FloorSpec floor_from_json(const json& j) {
  FloorSpec s;
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "a2") s.kind = FloorKind::A2Abelian;
  else if (kind == "b1") s.kind = FloorKind::B1;
  else if (kind == "c") s.kind = FloorKind::C;
  else throw std::invalid_argument("unknown floor kind: " + kind);
  for (const auto& n : j.at("k")) s.k_generators.push_back(n.get<std::string>());
  s.m_new = j.value("m", 1);
  if (s.kind == FloorKind::B1) s.u = j.at("u").get<std::string>();
  if (s.kind == FloorKind::C) {
    QuadraticData q;
    q.orientable = j.value("orientable", true);
    q.genus = j.value("genus", 1);
    for (const auto& w : j.at("u_words")) q.u_words.push_back(w.get<std::string>());
    for (const auto& w : j.at("v_words")) q.v_words.push_back(w.get<std::string>());
    if (j.contains("w_words"))
      for (const auto& w : j.at("w_words")) q.w_words.push_back(w.get<std::string>());
    s.quadratic = std::move(q);
  }
  return s;
}

inline TowerPresentation tower_from_json(const json& j, size_t budget) {
  if (!j.contains("base")) throw std::invalid_argument("tower JSON needs \"base\"");
  TowerPresentation t(graph_from_json(j.at("base")), budget);
  if (j.contains("floors"))
    for (const auto& f : j.at("floors")) t.add_floor(floor_from_json(f));
  return t;
}

inline json tree_to_json(const TreeOfGroups& t) {
  json j;
  json vs = json::array();
  for (const auto& v : t.vertices) {
    json jv;
    jv["kind"] = v.kind;
    jv["label"] = v.label;
    jv["rank"] = v.rank;
    if (v.kind == "abelian-times-surface") {
      jv["genus"] = v.genus;
      jv["orientable"] = v.orientable;
    }
    vs.push_back(jv);
  }
  j["vertices"] = vs;
  json es = json::array();
  for (const auto& e : t.edges)
    es.push_back({{"a", e.a}, {"b", e.b}, {"rank", e.rank}, {"label", e.label}});
  j["edges"] = es;
  j["is_tree"] = t.is_tree();
  return j;
}

}  // namespace raag
