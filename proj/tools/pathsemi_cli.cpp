// Command-line front end: batch analysis and exact arithmetic for graph
// inverse semigroups, Leavitt inverse semigroups, and Leavitt path algebras.
//
// Exit codes: 0 success / decided-true, 1 decided-false, 2 usage error,
// 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathsemi/congruence.hpp"
#include "pathsemi/contraction.hpp"
#include "pathsemi/graph.hpp"
#include "pathsemi/lpa.hpp"
#include "pathsemi/morphism.hpp"

using namespace pathsemi;
using core::Graph;
using gis::GisElement;

namespace {

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw core::parse_error("cannot open graph file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return core::load_graph(ss.str());
}

std::string join_vertices(const Graph& g, const std::vector<int>& vs) {
  std::string out = "{";
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += g.vertex_id(vs[i]);
  }
  return out + "}";
}

std::string cycle_text(const Graph& g, const core::Cycle& c) {
  std::string out;
  for (size_t i = 0; i < c.edges.size(); ++i) {
    if (i) out += ".";
    out += g.edge_id(c.edges[i]);
  }
  return out;
}

std::string immersion_text(const core::CircleImmersion& ci, const Graph& g) {
  using K = core::CircleImmersion::Kind;
  switch (ci.kind) {
    case K::NotImmersible: return "NotCircleImmersible";
    case K::TreeWithSink:
      return "TreeWithSink(sink=" + g.vertex_id(ci.sink) +
             ", depth=" + std::to_string(ci.max_depth) + ")";
    case K::TreeNoSinkCover: return "TreeNoSinkCover";
    case K::UniqueCycleCover:
      return "UniqueCycleCover(length=" + std::to_string(ci.cycle_length) + ")";
  }
  return "?";
}

std::string rational_text(const lpa::Rational& r) {
  std::string out = std::to_string(r.numerator());
  if (r.denominator() != 1) out += "/" + std::to_string(r.denominator());
  return out;
}

std::string algebra_text(const Graph& g, const lpa::AlgebraElement& a) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [term, coeff] : a) {
    if (!first) out += " + ";
    first = false;
    out += rational_text(coeff) + "*" + gis::format_element(g, term);
  }
  return out;
}

std::string pair_text(const Graph& g, const cong::CongruencePair& pair) {
  std::string out = "W={";
  bool first = true;
  for (int v : pair.W) {
    if (!first) out += ",";
    first = false;
    out += g.vertex_id(v);
  }
  out += "} f={";
  first = true;
  for (const auto& [c, fv] : pair.f) {
    if (!first) out += ", ";
    first = false;
    out += cycle_text(g, c) + ":" + (fv.infinite ? "inf" : std::to_string(fv.value));
  }
  return out + "}";
}

int cmd_analyze(const std::string& path, const std::string& format) {
  Graph g = load_graph_file(path);
  auto classes = core::sim_classes(g);
  auto sccs = core::strongly_connected_components(g);
  auto cycles = core::cycles_up_to_conjugacy(g);
  auto ci = core::classify_circle_immersion(g);
  bool comb = li::is_combinatorial(g);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["file"] = path;
    j["vertices"] = g.n_vertices();
    j["edges"] = g.n_edges();
    auto names = [&](const std::vector<int>& vs) {
      std::vector<std::string> out;
      for (int v : vs) out.push_back(g.vertex_id(v));
      return out;
    };
    for (const auto& c : classes) j["classes"].push_back(names(c));
    for (const auto& c : sccs) j["sccs"].push_back(names(c));
    for (const auto& c : cycles) j["cycles"].push_back(cycle_text(g, c));
    j["universal_rank"] = gis::universal_rank(g);
    for (int v = 0; v < g.n_vertices(); ++v)
      j["local_ranks"][g.vertex_id(v)] = gis::local_universal_rank(g, v);
    j["circle_immersion"] = immersion_text(ci, g);
    j["li_combinatorial"] = comb;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "graph: " << path << " (" << g.n_vertices() << " vertices, " << g.n_edges()
            << " edges)\n";
  std::cout << "classes:";
  for (const auto& c : classes) std::cout << " " << join_vertices(g, c);
  std::cout << "\nsccs:";
  for (const auto& c : sccs) std::cout << " " << join_vertices(g, c);
  std::cout << "\ncycles:";
  for (const auto& c : cycles) std::cout << " " << cycle_text(g, c);
  std::cout << "\nuniversal-rank: " << gis::universal_rank(g) << "\n";
  for (int v = 0; v < g.n_vertices(); ++v)
    std::cout << "local-rank " << g.vertex_id(v) << ": " << gis::local_universal_rank(g, v)
              << "\n";
  std::cout << "circle-immersion: " << immersion_text(ci, g) << "\n";
  std::cout << "li-combinatorial: " << (comb ? "yes" : "no") << "\n";
  return 0;
}

int cmd_iso(const std::string& p1, const std::string& p2, bool witness) {
  Graph g = load_graph_file(p1);
  Graph d = load_graph_file(p2);
  auto w = contract::li_isomorphic(g, d);
  if (!w) {
    std::cout << "not-isomorphic\n";
    return 1;
  }
  std::cout << "isomorphic\n";
  if (witness) {
    for (int v = 0; v < g.n_vertices(); ++v)
      std::cout << g.vertex_id(v) << " -> " << d.vertex_id(w->psi[v]) << "\n";
    for (int e = 0; e < g.n_edges(); ++e) {
      GisElement x{false, core::DirectedPath{g.src(e), {e}}, core::empty_path(g.rng(e))};
      std::cout << g.edge_id(e) << " -> " << gis::format_element(d, contract::apply_witness(*w, x))
                << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computation in graph inverse semigroups and Leavitt path algebras"};
  app.require_subcommand(1);
  int rc = 0;

  // analyze
  std::string an_path, an_format{"text"};
  auto* analyze = app.add_subcommand("analyze", "structural report for a graph file");
  analyze->add_option("graph", an_path)->required();
  analyze->add_option("--format", an_format)->check(CLI::IsMember({"text", "json"}));
  analyze->callback([&] { rc = cmd_analyze(an_path, an_format); });

  // mul
  std::string mul_path, mul_x, mul_y;
  bool mul_leavitt = false;
  auto* mul = app.add_subcommand("mul", "multiply two elements");
  mul->add_option("graph", mul_path)->required();
  mul->add_option("x", mul_x)->required();
  mul->add_option("y", mul_y)->required();
  mul->add_flag("--leavitt", mul_leavitt);
  mul->callback([&] {
    Graph g = load_graph_file(mul_path);
    GisElement x = gis::parse_element(g, mul_x), y = gis::parse_element(g, mul_y);
    GisElement z = mul_leavitt ? li::li_multiply(g, x, y) : gis::gis_multiply(x, y);
    std::cout << gis::format_element(g, z) << "\n";
  });

  // reduce
  std::string red_path, red_x;
  auto* reduce = app.add_subcommand("reduce", "Leavitt canonical form of an element");
  reduce->add_option("graph", red_path)->required();
  reduce->add_option("x", red_x)->required();
  reduce->callback([&] {
    Graph g = load_graph_file(red_path);
    std::cout << gis::format_element(g, li::li_reduce(g, gis::parse_element(g, red_x))) << "\n";
  });

  // green
  std::string gr_path, gr_x, gr_y;
  auto* green = app.add_subcommand("green", "Green's relations between two elements");
  green->add_option("graph", gr_path)->required();
  green->add_option("x", gr_x)->required();
  green->add_option("y", gr_y)->required();
  green->callback([&] {
    Graph g = load_graph_file(gr_path);
    GisElement x = gis::parse_element(g, gr_x), y = gis::parse_element(g, gr_y);
    auto show = [&](li::GreenRel r) {
      return li::green_relation(g, r, x, y) ? "yes" : "no";
    };
    std::cout << "R=" << show(li::GreenRel::R) << " L=" << show(li::GreenRel::L)
              << " H=" << show(li::GreenRel::H) << " D=" << show(li::GreenRel::D)
              << " J=" << show(li::GreenRel::J) << "\n";
  });

  // brandt
  std::string br_path;
  auto* brandt = app.add_subcommand("brandt", "Brandt classification of LI for the graph");
  brandt->add_option("graph", br_path)->required();
  brandt->callback([&] {
    Graph g = load_graph_file(br_path);
    auto b = li::classify_brandt(g);
    if (!b) {
      std::cout << "not-brandt\n";
      rc = 1;
      return;
    }
    std::cout << "B(" << b->index_size << ", "
              << (b->group == li::MaxSubgroup::Trivial ? "trivial" : "Z") << ")\n";
  });

  // iso
  std::string iso_p1, iso_p2;
  bool iso_witness = false;
  auto* iso = app.add_subcommand("iso", "decide LI-isomorphism of two graphs");
  iso->add_option("graph1", iso_p1)->required();
  iso->add_option("graph2", iso_p2)->required();
  iso->add_flag("--witness", iso_witness);
  iso->callback([&] { rc = cmd_iso(iso_p1, iso_p2, iso_witness); });

  // congruences
  std::string cg_path;
  unsigned cg_maxf = 1;
  auto* congr = app.add_subcommand("congruences", "enumerate congruence pairs");
  congr->add_option("graph", cg_path)->required();
  congr->add_option("--max-f", cg_maxf)->required();
  congr->callback([&] {
    Graph g = load_graph_file(cg_path);
    for (const auto& pair : cong::enumerate_pairs(g, cg_maxf))
      std::cout << pair_text(g, pair)
                << " gis-quotient: " << (cong::preserves_gis(g, pair) ? "yes" : "no") << "\n";
  });

  // universal
  std::string un_path, un_vertex;
  auto* universal = app.add_subcommand("universal", "universal group rank (optionally local)");
  universal->add_option("graph", un_path)->required();
  universal->add_option("vertex", un_vertex);
  universal->callback([&] {
    Graph g = load_graph_file(un_path);
    if (un_vertex.empty()) {
      std::cout << gis::universal_rank(g) << "\n";
    } else {
      auto v = g.find_vertex(un_vertex);
      if (!v) throw core::parse_error("unknown vertex '" + un_vertex + "'");
      std::cout << gis::local_universal_rank(g, *v) << "\n";
    }
  });

  // lpa reduce / lpa dim
  auto* lpa_cmd = app.add_subcommand("lpa", "Leavitt path algebra operations");
  lpa_cmd->require_subcommand(1);
  std::string lr_path, lr_x;
  auto* lpa_reduce = lpa_cmd->add_subcommand("reduce", "natural-basis combination");
  lpa_reduce->add_option("graph", lr_path)->required();
  lpa_reduce->add_option("x", lr_x)->required();
  lpa_reduce->callback([&] {
    Graph g = load_graph_file(lr_path);
    auto gamma = lpa::default_gamma(g);
    std::cout << algebra_text(g, lpa::to_basis(g, gamma, gis::parse_element(g, lr_x))) << "\n";
  });
  std::string ld_path;
  auto* lpa_dim = lpa_cmd->add_subcommand("dim", "algebra dimension (acyclic graphs)");
  lpa_dim->add_option("graph", ld_path)->required();
  lpa_dim->callback([&] {
    Graph g = load_graph_file(ld_path);
    if (!core::is_acyclic(g)) {
      std::cout << "infinite (cyclic)\n";
      return;
    }
    std::cout << lpa::dimension_if_acyclic(g) << "\n";
  });

  // morphism
  auto* morph = app.add_subcommand("morphism", "directed cover/immersion tools");
  morph->require_subcommand(1);
  std::string mc_path;
  auto* mcheck = morph->add_subcommand("check", "classify a graph morphism");
  mcheck->add_option("morphism", mc_path)->required();
  mcheck->callback([&] {
    auto m = core::load_morphism_file(mc_path);
    auto cls = core::check_morphism(m);
    std::cout << core::to_string(cls) << "\n";
    if (cls == core::MorphClass::NotMorphism) rc = 1;
  });
  std::string ml_path, ml_p, ml_v;
  auto* mlift = morph->add_subcommand("lift", "lift a codomain path at a fiber vertex");
  mlift->add_option("morphism", ml_path)->required();
  mlift->add_option("path", ml_p)->required();
  mlift->add_option("vertex", ml_v)->required();
  mlift->callback([&] {
    auto m = core::load_morphism_file(ml_path);
    auto v = m.dom.find_vertex(ml_v);
    if (!v) throw core::parse_error("unknown vertex '" + ml_v + "'");
    auto lifted = core::lift_path(m, gis::parse_path_side(m.cod, ml_p), *v);
    std::cout << gis::format_path_side(m.dom, lifted) << "\n";
  });
  std::string mp_path, mp_p, mp_v;
  auto* mprefix = morph->add_subcommand("prefix", "maximal liftable prefix at a fiber vertex");
  mprefix->add_option("morphism", mp_path)->required();
  mprefix->add_option("path", mp_p)->required();
  mprefix->add_option("vertex", mp_v)->required();
  mprefix->callback([&] {
    auto m = core::load_morphism_file(mp_path);
    auto v = m.dom.find_vertex(mp_v);
    if (!v) throw core::parse_error("unknown vertex '" + mp_v + "'");
    auto [lift, rest] = core::lift_max_prefix(m, gis::parse_path_side(m.cod, mp_p), *v);
    std::cout << "lift: " << gis::format_path_side(m.dom, lift) << "\n";
    std::cout << "rest: " << gis::format_path_side(m.cod, rest) << "\n";
  });
  std::string mcir_path, mcir_p;
  auto* mcircuit = morph->add_subcommand("circuit", "lift a circuit power until it closes");
  mcircuit->add_option("morphism", mcir_path)->required();
  mcircuit->add_option("circuit", mcir_p)->required();
  mcircuit->callback([&] {
    auto m = core::load_morphism_file(mcir_path);
    auto lift = core::lift_circuit_power(m, gis::parse_path_side(m.cod, mcir_p));
    std::cout << "period: " << lift.period << "\n";
    std::cout << "entry: " << m.dom.vertex_id(lift.entry_vertex) << "\n";
    std::cout << "circuit: " << gis::format_path_side(m.dom, lift.circuit) << "\n";
  });
  std::string mpc_path, mpc_v;
  auto* mpoly = morph->add_subcommand("polycyclic", "polycyclic generators over a bouquet cover");
  mpoly->add_option("morphism", mpc_path)->required();
  mpoly->add_option("vertex", mpc_v)->required();
  mpoly->callback([&] {
    auto m = core::load_morphism_file(mpc_path);
    auto v = m.dom.find_vertex(mpc_v);
    if (!v) throw core::parse_error("unknown vertex '" + mpc_v + "'");
    auto wit = li::polycyclic_witness(m, *v);
    std::cout << "p: " << gis::format_path_side(m.dom, wit.p_tilde) << "\n";
    for (const auto& [letter, r] : wit.r)
      std::cout << "r[" << m.cod.edge_id(letter) << "]: " << gis::format_element(m.dom, r)
                << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const core::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
