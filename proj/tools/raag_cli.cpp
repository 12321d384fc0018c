// Batch front-end: parse specs, run operations, emit JSON/DOT.
//
// Exit codes: 0 success / true; 1 mathematical negative (not chordal,
// elements unequal, axiom failure); 2 input error; 3 budget or truncation
// exceeded.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "raag/json_io.hpp"

using namespace raag;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

struct Options {
  std::string input;
  std::string word, left, right, element;
  std::string tuple;
  std::string exp = "t";
  std::string base_word;
  long long m = 2;
  long long budget = 16;
  int length_bound = 6;
  int degree = 2;
  int level = -1;
  int samples = 200;
  int sample_length = 4;
  std::string m_values = "1,2,3,5";
  unsigned long long seed = 0;
  bool dot = false;
};

std::vector<long long> parse_ll_list(const std::string& s) {
  std::vector<long long> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

int run(const std::string& cmd, const Options& o) {
  if (cmd == "check-coherent") {
    auto g = graph_from_json(load_json(o.input));
    auto w = is_chordal(g);
    json j;
    j["chordal"] = w.chordal;
    if (w.chordal) {
      json peo = json::array();
      for (int v : w.peo) peo.push_back(g.name(v));
      j["peo"] = peo;
    } else {
      json cyc = json::array();
      for (int v : w.cycle) cyc.push_back(g.name(v));
      j["cycle"] = cyc;
    }
    std::cout << j.dump(2) << "\n";
    return w.chordal ? 0 : 1;
  }
  if (cmd == "normalize") {
    auto g = graph_from_json(load_json(o.input));
    std::cout << word_to_json(normalize(parse_word(g, o.word))).dump(2) << "\n";
    return 0;
  }
  if (cmd == "equals") {
    auto g = graph_from_json(load_json(o.input));
    bool eq = equal(parse_word(g, o.left), parse_word(g, o.right));
    json j;
    j["equal"] = eq;
    std::cout << j.dump(2) << "\n";
    return eq ? 0 : 1;
  }
  if (cmd == "centralizer") {
    auto g = graph_from_json(load_json(o.input));
    auto d = centralizer(normalize(parse_word(g, o.element)), o.budget);
    std::cout << centralizer_to_json(d).dump(2) << "\n";
    return 0;
  }
  if (cmd == "representatives") {
    auto g = graph_from_json(load_json(o.input));
    auto reps = representatives(g, o.length_bound);
    json j;
    json wk = json::array(), wb = json::array();
    for (const auto& w : reps.w_k) wk.push_back(print_word(w));
    for (const auto& w : reps.w_b) wb.push_back(print_word(w));
    j["w_k"] = wk;
    j["w_b"] = wb;
    j["bound"] = reps.bound;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "root") {
    auto g = graph_from_json(load_json(o.input));
    auto r = root(normalize(parse_word(g, o.element)), o.budget);
    json j;
    j["root"] = print_word(r.root);
    j["multiplicity"] = r.multiplicity;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "blocks") {
    auto g = graph_from_json(load_json(o.input));
    auto cr = cyclic_reduce(normalize(parse_word(g, o.element)));
    auto d = block_decompose(cr.core);
    json j;
    j["core"] = print_word(cr.core);
    j["conjugator"] = print_word(cr.conjugator);
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back(print_word(b));
    j["blocks"] = blocks;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "extend") {
    auto g = group_from_json(load_json(o.input), o.budget);
    if (g->level() == 0)
      throw std::invalid_argument("input is a plain graph, not an extension spec");
    json j;
    j["level"] = g->level();
    j["a_rank"] = g->a_rank();
    j["a_names"] = g->a_names();
    j["amalgamated"] = group_centralizer_to_json(*g->base(), g->amalgamated());
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "reduce") {
    auto g = group_from_json(load_json(o.input), o.budget);
    auto e = o.element.find('[') == std::string::npos
                 ? elem_from_string(*g, o.element)
                 : elem_from_json(*g, json::parse(o.element));
    json j;
    j["element"] = elem_to_json(*g, e);
    j["length"] = e.top_length();
    j["trivial"] = g->is_identity(e);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "separate") {
    auto g = group_from_json(load_json(o.input), o.budget);
    auto e = o.element.find('[') == std::string::npos
                 ? elem_from_string(*g, o.element)
                 : elem_from_json(*g, json::parse(o.element));
    auto cert = separate(*g, e, o.budget);
    std::cout << certificate_to_json(*g->base(), cert).dump(2) << "\n";
    return 0;
  }
  if (cmd == "bp-scan") {
    auto g = graph_from_json(load_json(o.input));
    std::vector<NormalWord> tuple;
    std::istringstream in(o.tuple);
    std::string tok;
    while (std::getline(in, tok, ',')) tuple.push_back(normalize(parse_word(g, tok)));
    auto hit = bp_scan(tuple, o.budget);
    json j;
    j["collapse"] = hit.has_value();
    if (hit) j["exponents"] = *hit;
    std::cout << j.dump(2) << "\n";
    return hit ? 1 : 0;
  }
  if (cmd == "ice-build") {
    auto chain = chain_from_json(load_json(o.input), o.budget, o.degree);
    json j;
    j["height"] = chain.height();
    json lv = json::array();
    for (const auto& l : chain.levels) {
      json x;
      x["a_rank"] = l.group->a_rank();
      x["a_names"] = l.group->a_names();
      x["degree"] = l.degree;
      lv.push_back(x);
    }
    j["levels"] = lv;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "zt-eval") {
    auto chain = chain_from_json(load_json(o.input), o.budget, o.degree);
    auto base = chain.base;
    auto g = base->from_word(normalize(parse_word(base->graph(), o.base_word)));
    auto e = realize_power(chain, g, parse_poly(o.exp));
    auto img = eval_at(chain, o.m, e);
    json j;
    j["base"] = o.base_word;
    j["exp"] = o.exp;
    j["m"] = o.m;
    j["value"] = print_word(img.word);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "axiom-check") {
    auto chain = chain_from_json(load_json(o.input), o.budget, o.degree);
    auto rep = axiom_check(chain, o.samples, parse_ll_list(o.m_values), o.seed);
    std::cout << axiom_report_to_json(rep).dump(2) << "\n";
    return rep.passed() ? 0 : 1;
  }
  if (cmd == "tower-build") {
    auto t = tower_from_json(load_json(o.input), o.budget);
    json j;
    j["height"] = t.height();
    json fl = json::array();
    for (int l = 1; l <= t.height(); ++l) {
      const auto& f = t.floor(l);
      json x;
      x["kind"] = floor_tag(f.spec.kind);
      x["edge_rank"] = f.edge_rank;
      x["relators"] = f.relator_text;
      x["presentational"] = f.presentational;
      auto d = floor_decomposition(t, l);
      x["decomposition"] = {{"tag", d.tag},
                            {"left", d.vertex_left},
                            {"right", d.vertex_right},
                            {"edge", d.edge_group},
                            {"edge_rank", d.edge_rank}};
      fl.push_back(x);
    }
    j["floors"] = fl;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  if (cmd == "tower-tree") {
    auto t = tower_from_json(load_json(o.input), o.budget);
    auto tree = tree_decomposition(t);
    if (o.dot)
      std::cout << tree_to_dot(tree);
    else
      std::cout << tree_to_json(tree).dump(2) << "\n";
    return tree.is_tree() ? 0 : 1;
  }
  if (cmd == "tower-check") {
    auto t = tower_from_json(load_json(o.input), o.budget);
    json out = json::array();
    bool all = true;
    for (int l = 1; l <= t.height(); ++l) {
      if (o.level > 0 && l != o.level) continue;
      auto rep = retraction_check(t, l);
      json j;
      j["level"] = l;
      j["status"] = rep.passed ? "pass" : "fail";
      j["relators_checked"] = rep.checked.size();
      if (!rep.passed) j["witness"] = rep.witness;
      all = all && rep.passed;
      out.push_back(j);
    }
    std::cout << out.dump(2) << "\n";
    return all ? 0 : 1;
  }
  if (cmd == "class-c-check") {
    auto g = graph_from_json(load_json(o.input));
    auto reps = representatives(g, o.length_bound);
    auto rep = check_class_c_axioms(g, reps, o.sample_length, o.samples, o.seed);
    std::cout << class_c_report_to_json(rep).dump(2) << "\n";
    return rep.passed() ? 0 : 1;
  }
  throw std::invalid_argument("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computation in coherent RAAGs, centraliser extensions, "
               "truncated Z[t]-completions, and graph towers"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool takes_input = true) {
    if (takes_input)
      sub->add_option("input", o.input, "input JSON file")->required();
    sub->add_option("--seed", o.seed, "PRNG seed (default 0)");
    sub->add_option("--budget", o.budget, "search/shuffle budget (default 16)");
    sub->add_option("--length-bound", o.length_bound,
                    "block representative bound (default 6)");
    sub->add_option("--degree", o.degree, "truncation degree (default 2)");
    return sub;
  };

  auto* c1 = add_common(app.add_subcommand("check-coherent", "chordality with witness"));
  (void)c1;
  auto* c2 = add_common(app.add_subcommand("normalize", "normal form of a word"));
  c2->add_option("--word", o.word)->required();
  auto* c3 = add_common(app.add_subcommand("equals", "word equality"));
  c3->add_option("--left", o.left)->required();
  c3->add_option("--right", o.right)->required();
  auto* c4 = add_common(app.add_subcommand("centralizer", "structured centraliser"));
  c4->add_option("--element", o.element)->required();
  add_common(app.add_subcommand("representatives", "the set W = W_K u W_B"));
  auto* c5 = add_common(app.add_subcommand("root", "unique root"));
  c5->add_option("--element", o.element)->required();
  auto* c6 = add_common(app.add_subcommand("blocks", "cyclic reduction and block form"));
  c6->add_option("--element", o.element)->required();
  add_common(app.add_subcommand("extend", "build a centraliser extension"));
  auto* c7 = add_common(app.add_subcommand("reduce", "reduced form in an extension"));
  c7->add_option("--element", o.element, "element JSON")->required();
  auto* c8 = add_common(app.add_subcommand("separate", "separation certificate"));
  c8->add_option("--element", o.element, "element JSON")->required();
  auto* c9 = add_common(app.add_subcommand("bp-scan", "big-powers collapse scan"));
  c9->add_option("--tuple", o.tuple, "comma-separated words")->required();
  add_common(app.add_subcommand("ice-build", "build an ICE chain"));
  auto* c10 = add_common(app.add_subcommand("zt-eval", "specialise t -> m"));
  c10->add_option("--base-word", o.base_word)->required();
  c10->add_option("--exp", o.exp, "polynomial exponent, e.g. 2+t^2");
  c10->add_option("--m", o.m, "specialisation point");
  auto* c11 = add_common(app.add_subcommand("axiom-check", "exponential axioms"));
  c11->add_option("--samples", o.samples);
  c11->add_option("--m-values", o.m_values, "comma-separated");
  add_common(app.add_subcommand("tower-build", "build and validate a tower"));
  auto* c12 = add_common(app.add_subcommand("tower-tree", "tree-of-groups decomposition"));
  c12->add_flag("--dot", o.dot, "emit DOT instead of JSON");
  auto* c13 = add_common(app.add_subcommand("tower-check", "retraction checks"));
  c13->add_option("--level", o.level, "check one floor only");
  auto* c14 = add_common(app.add_subcommand("class-c-check", "class-C axiom falsifier"));
  c14->add_option("--samples", o.samples);
  c14->add_option("--sample-length", o.sample_length);

  CLI11_PARSE(app, argc, argv);
  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const TruncationExceeded& e) {
    std::cerr << "truncation exceeded: " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
