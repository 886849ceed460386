#include <catch2/catch_amalgamated.hpp>

#include "pathsemi/gis.hpp"
#include "pathsemi/morphism.hpp"
#include "test_util.hpp"

using namespace pathsemi;
using core::DirectedPath;
using core::Graph;
using core::GraphMorphism;
using core::MorphClass;
using testutil::load_fixture;

namespace {
GraphMorphism load_m(const std::string& name) {
  return core::load_morphism_file(testutil::fixture_path(name));
}

DirectedPath path_by_ids(const Graph& g, int base, const std::vector<std::string>& ids) {
  DirectedPath p = core::empty_path(base);
  for (const auto& id : ids) p.edges.push_back(*g.find_edge(id));
  return p;
}
}  // namespace

TEST_CASE("morphism classification") {
  CHECK(core::check_morphism(load_m("fix_c3_to_b1.morphism")) == MorphClass::DirectedCover);
  CHECK(core::check_morphism(load_m("edge_to_b1.morphism")) == MorphClass::DirectedImmersion);
  CHECK(core::check_morphism(load_m("fix_cov2_to_b2.morphism")) == MorphClass::DirectedCover);
  CHECK(core::check_morphism(load_m("b1_to_b1.morphism")) == MorphClass::DirectedCover);

  // Broken incidence yields NotMorphism.
  GraphMorphism bad = load_m("fix_c3_to_b1.morphism");
  bad.vmap[1] = 0;  // vmap no longer commutes with src/rng... B1 has one vertex
  bad.emap[0] = 0;
  CHECK(core::check_morphism(bad) == MorphClass::DirectedCover);  // single codomain vertex: still fine
  GraphMorphism folded = load_m("fix_cov2_to_b2.morphism");
  folded.emap[*folded.dom.find_edge("bX")] = *folded.cod.find_edge("a");
  // x now sends both out-edges to a: not injective on the out-star.
  CHECK(core::check_morphism(folded) == MorphClass::Morphism);
}

TEST_CASE("path lifting along covers") {
  GraphMorphism m = load_m("fix_c3_to_b1.morphism");
  DirectedPath aaa = path_by_ids(m.cod, 0, {"a", "a", "a"});
  DirectedPath lift = core::lift_path(m, aaa, *m.dom.find_vertex("x1"));
  CHECK(lift.edges == std::vector<int>{*m.dom.find_edge("c1"), *m.dom.find_edge("c2"),
                                       *m.dom.find_edge("c3")});
  DirectedPath empty_lift = core::lift_path(m, core::empty_path(0), *m.dom.find_vertex("x2"));
  CHECK(empty_lift.edges.empty());
  CHECK(empty_lift.base == *m.dom.find_vertex("x2"));

  GraphMorphism cov2 = load_m("fix_cov2_to_b2.morphism");
  DirectedPath ab = path_by_ids(cov2.cod, 0, {"a", "b"});
  DirectedPath lifted = core::lift_path(cov2, ab, *cov2.dom.find_vertex("x"));
  CHECK(lifted.edges == std::vector<int>{*cov2.dom.find_edge("aX"), *cov2.dom.find_edge("bY")});
}

TEST_CASE("maximal prefix lifting along immersions") {
  GraphMorphism e2b = load_m("edge_to_b1.morphism");
  DirectedPath aa = path_by_ids(e2b.cod, 0, {"a", "a"});
  auto [prefix, lift] = core::lift_max_prefix(e2b, aa, *e2b.dom.find_vertex("z1"));
  CHECK(prefix.edges.size() == 1);
  CHECK(lift.edges == std::vector<int>{*e2b.dom.find_edge("ze")});
  GraphMorphism c3 = load_m("fix_c3_to_b1.morphism");
  auto [p2, l2] = core::lift_max_prefix(c3, aa, *c3.dom.find_vertex("x1"));
  CHECK(p2.edges.size() == 2);
  CHECK(l2.edges == std::vector<int>{*c3.dom.find_edge("c1"), *c3.dom.find_edge("c2")});
  auto [p3, l3] = core::lift_max_prefix(e2b, core::empty_path(0), *e2b.dom.find_vertex("z2"));
  CHECK(p3.edges.empty());
  CHECK(l3.edges.empty());
}

TEST_CASE("circuit power lifting") {
  GraphMorphism c3 = load_m("fix_c3_to_b1.morphism");
  DirectedPath a = path_by_ids(c3.cod, 0, {"a"});
  auto lifted = core::lift_circuit_power(c3, a);
  CHECK(lifted.period == 3);
  CHECK(lifted.circuit.edges.size() == 3);
  CHECK(core::path_source(c3.dom, lifted.circuit) == lifted.entry_vertex);
  CHECK(core::path_range(c3.dom, lifted.circuit) == lifted.entry_vertex);

  GraphMorphism id = load_m("b1_to_b1.morphism");
  DirectedPath a1 = path_by_ids(id.cod, 0, {"a"});
  auto ident = core::lift_circuit_power(id, a1);
  CHECK(ident.period == 1);
  CHECK(ident.circuit.edges.size() == 1);

  GraphMorphism cov2 = load_m("fix_cov2_to_b2.morphism");
  DirectedPath a2 = path_by_ids(cov2.cod, 0, {"a"});
  auto two = core::lift_circuit_power(cov2, a2);
  CHECK(two.period == 2);
  CHECK(two.circuit.edges.size() == 2);
}

TEST_CASE("covers lift every path at every fiber vertex") {
  for (auto name : {"fix_c3_to_b1.morphism", "fix_cov2_to_b2.morphism", "b1_to_b1.morphism"}) {
    GraphMorphism m = load_m(name);
    REQUIRE(core::check_morphism(m) == MorphClass::DirectedCover);
    auto paths = gis::enumerate_paths(m.cod, 5);
    for (const auto& p : paths)
      for (int v = 0; v < m.dom.n_vertices(); ++v) {
        if (m.vmap[v] != core::path_source(m.cod, p)) continue;
        DirectedPath lift = core::lift_path(m, p, v);
        REQUIRE(lift.edges.size() == p.edges.size());
        for (size_t i = 0; i < lift.edges.size(); ++i) CHECK(m.emap[lift.edges[i]] == p.edges[i]);
      }
  }
}

TEST_CASE("circle immersion classification") {
  auto l2 = load_fixture("fix_l2.graph");
  auto cl = core::classify_circle_immersion(l2);
  CHECK(cl.kind == core::CircleImmersion::Kind::TreeWithSink);
  CHECK(l2.vertex_id(cl.sink) == "w0");
  CHECK(cl.max_depth == 2);
  auto c3cl = core::classify_circle_immersion(load_fixture("fix_c3.graph"));
  CHECK(c3cl.kind == core::CircleImmersion::Kind::UniqueCycleCover);
  CHECK(c3cl.cycle_length == 3);
  auto b2cl = core::classify_circle_immersion(load_fixture("b2.graph"));
  CHECK(b2cl.kind == core::CircleImmersion::Kind::NotImmersible);
  Graph two = core::load_graph("vertex a\nvertex b\n");
  CHECK_THROWS_AS(core::classify_circle_immersion(two), core::precondition_error);
}

TEST_CASE("classification agrees with an explicit map to the one-petal bouquet") {
  Graph b1 = core::load_graph("vertex v\nedge a v v\n");
  for (auto name : {"fix_l2.graph", "fix_c3.graph", "edge.graph", "b1.graph"}) {
    Graph g = load_fixture(name);
    bool alldeg1 = true;
    for (int v = 0; v < g.n_vertices(); ++v) alldeg1 &= core::out_degree(g, v) <= 1;
    REQUIRE(alldeg1);
    GraphMorphism m;
    m.dom = g;
    m.cod = b1;
    m.vmap.assign(g.n_vertices(), 0);
    m.emap.assign(g.n_edges(), 0);
    auto mc = core::check_morphism(m);
    auto cl = core::classify_circle_immersion(g);
    if (cl.kind == core::CircleImmersion::Kind::UniqueCycleCover)
      CHECK(mc == MorphClass::DirectedCover);
    else
      CHECK(mc == MorphClass::DirectedImmersion);
  }
}

TEST_CASE("morphism file loading errors") {
  CHECK_THROWS_AS(core::load_morphism("graph b1.graph\n", PATHSEMI_FIXTURE_DIR),
                  core::parse_error);
  CHECK_THROWS_AS(
      core::load_morphism("graph b1.graph\ngraph b1.graph\nmap-vertex v v\nmap-edge a missing\n",
                          PATHSEMI_FIXTURE_DIR),
      core::parse_error);
  // Partial maps are rejected.
  CHECK_THROWS_AS(core::load_morphism("graph b2.graph\ngraph b1.graph\nmap-vertex v v\nmap-edge a a\n",
                                      PATHSEMI_FIXTURE_DIR),
                  core::parse_error);
}
