#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "pathsemi/graph.hpp"
#include "test_util.hpp"

using namespace pathsemi;
using core::Graph;
using testutil::load_fixture;

namespace {
std::vector<std::string> class_ids(const Graph& g, const std::vector<std::vector<int>>& classes) {
  std::vector<std::string> out;
  for (const auto& cls : classes) {
    std::string s;
    for (int v : cls) s += (s.empty() ? "" : ",") + g.vertex_id(v);
    out.push_back(s);
  }
  return out;
}
}  // namespace

TEST_CASE("graph loading and validation") {
  Graph b1 = core::load_graph("vertex v\nedge a v v\n");
  CHECK(b1.n_vertices() == 1);
  CHECK(b1.n_edges() == 1);
  Graph b2 = core::load_graph("vertex v\nedge a v v\nedge b v v\n");
  CHECK(b2.n_vertices() == 1);
  CHECK(b2.n_edges() == 2);
  CHECK_THROWS_AS(core::load_graph("edge a v w\n"), core::parse_error);
  CHECK_THROWS_AS(core::load_graph("vertex v\nvertex v\n"), core::parse_error);
  CHECK_THROWS_AS(core::load_graph("vertex v\nedge a v v\nedge a v v\n"), core::parse_error);
  CHECK_THROWS_AS(core::load_graph("vertex v!\n"), core::parse_error);
  CHECK_THROWS_AS(core::load_graph("# only a comment\n"), core::parse_error);
  Graph with_comment = core::load_graph("# two vertices\nvertex a\nvertex b\nedge e a b\n");
  CHECK(with_comment.n_edges() == 1);
}

TEST_CASE("out-degree") {
  Graph b2 = core::load_graph("vertex v\nedge a v v\nedge b v v\n");
  CHECK(core::out_degree(b2, 0) == 2);
  Graph g72 = load_fixture("fix_g72.graph");
  CHECK(core::out_degree(g72, *g72.find_vertex("v1")) == 1);
  Graph l2 = load_fixture("fix_l2.graph");
  CHECK(core::out_degree(l2, *l2.find_vertex("w0")) == 0);
}

TEST_CASE("similarity classes") {
  Graph g72 = load_fixture("fix_g72.graph");
  auto cls = class_ids(g72, core::sim_classes(g72));
  REQUIRE(cls == std::vector<std::string>{"v1,v2,v3", "v4,v5,v6"});
  Graph b2 = core::load_graph("vertex v\nedge a v v\nedge b v v\n");
  CHECK(core::sim_classes(b2).size() == 1);
  Graph g61 = load_fixture("fix_g61.graph");
  CHECK(class_ids(g61, core::sim_classes(g61)) == std::vector<std::string>{"m1", "m2"});
}

TEST_CASE("similarity classes match brute-force closure on random graphs") {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    Graph g = testutil::random_graph(seed);
    // Brute-force: smallest equivalence containing (s(e), r(e)) for
    // out-degree-1 sources.
    int n = g.n_vertices();
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = i;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e = 0; e < g.n_edges(); ++e) {
        if (core::out_degree(g, g.src(e)) != 1) continue;
        int a = cls[g.src(e)], b = cls[g.rng(e)];
        if (a == b) continue;
        for (int& c : cls)
          if (c == std::max(a, b)) c = std::min(a, b);
        changed = true;
      }
    }
    auto got = core::sim_class_index(g);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        CHECK((cls[u] == cls[v]) == (got[u] == got[v]));
  }
}

TEST_CASE("class subgraph") {
  Graph g72 = load_fixture("fix_g72.graph");
  Graph left = core::class_subgraph(g72, *g72.find_vertex("v1"));
  CHECK(left.n_vertices() == 3);
  REQUIRE(left.n_edges() == 3);
  CHECK(left.find_edge("e1").has_value());
  CHECK(left.find_edge("e2").has_value());
  CHECK(left.find_edge("e_C1").has_value());
  Graph g61 = load_fixture("fix_g61.graph");
  Graph m1g = core::class_subgraph(g61, *g61.find_vertex("m1"));
  CHECK(m1g.n_vertices() == 1);
  CHECK(m1g.n_edges() == 1);
  CHECK(m1g.find_edge("l1").has_value());
}

TEST_CASE("reachable subgraph") {
  Graph g72 = load_fixture("fix_g72.graph");
  Graph right = core::reachable_subgraph(g72, *g72.find_vertex("v4"));
  CHECK(right.n_vertices() == 3);
  CHECK(right.find_vertex("v4").has_value());
  CHECK(right.find_vertex("v5").has_value());
  CHECK(right.find_vertex("v6").has_value());
  Graph all = core::reachable_subgraph(g72, *g72.find_vertex("v1"));
  CHECK(all.n_vertices() == 6);
  CHECK(all.n_edges() == 7);
  Graph l2 = load_fixture("fix_l2.graph");
  Graph w0 = core::reachable_subgraph(l2, *l2.find_vertex("w0"));
  CHECK(w0.n_vertices() == 1);
  CHECK(w0.n_edges() == 0);
}

TEST_CASE("directed spanning tree") {
  Graph c3 = load_fixture("fix_c3.graph");
  auto t = core::directed_spanning_tree(c3, *c3.find_vertex("x1"));
  std::set<std::string> ids;
  for (int e : t) ids.insert(c3.edge_id(e));
  CHECK(ids == std::set<std::string>{"c1", "c2"});
  Graph b2 = core::load_graph("vertex v\nedge a v v\nedge b v v\n");
  CHECK(core::directed_spanning_tree(b2, 0).empty());
  Graph g72 = load_fixture("fix_g72.graph");
  auto t4 = core::directed_spanning_tree(g72, *g72.find_vertex("v4"));
  std::set<std::string> ids4;
  for (int e : t4) ids4.insert(g72.edge_id(e));
  CHECK(ids4 == std::set<std::string>{"e3", "e_C2"});
}

TEST_CASE("spanning tree spans the reachable subgraph with directed geodesics") {
  for (unsigned seed = 1; seed <= 30; ++seed) {
    Graph g = testutil::random_graph(seed);
    for (int v = 0; v < g.n_vertices(); ++v) {
      Graph h = core::reachable_subgraph(g, v);
      auto tree = core::directed_spanning_tree(g, v);
      CHECK(static_cast<int>(tree.size()) == h.n_vertices() - 1);
      // Every reachable vertex is hit by following tree edges from v.
      std::set<int> seen{v};
      bool grow = true;
      while (grow) {
        grow = false;
        for (int e : tree)
          if (seen.count(g.src(e)) && !seen.count(g.rng(e))) {
            seen.insert(g.rng(e));
            grow = true;
          }
      }
      CHECK(static_cast<int>(seen.size()) == h.n_vertices());
    }
  }
}

TEST_CASE("strongly connected components") {
  Graph c3 = load_fixture("fix_c3.graph");
  CHECK(core::strongly_connected_components(c3).size() == 1);
  Graph l2 = load_fixture("fix_l2.graph");
  CHECK(core::strongly_connected_components(l2).size() == 3);
  Graph g72 = load_fixture("fix_g72.graph");
  auto scc = class_ids(g72, core::strongly_connected_components(g72));
  CHECK(scc == std::vector<std::string>{"v1,v2,v3", "v4,v5,v6"});
}

TEST_CASE("cycles up to conjugacy") {
  Graph c3 = load_fixture("fix_c3.graph");
  auto cycles = core::cycles_up_to_conjugacy(c3);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].edges == std::vector<int>{0, 1, 2});
  Graph g72 = load_fixture("fix_g72.graph");
  auto cy72 = core::cycles_up_to_conjugacy(g72);
  REQUIRE(cy72.size() == 2);
  std::vector<std::string> first, second;
  for (int e : cy72[0].edges) first.push_back(g72.edge_id(e));
  for (int e : cy72[1].edges) second.push_back(g72.edge_id(e));
  CHECK(first == std::vector<std::string>{"e1", "e2", "e_C1"});
  CHECK(second == std::vector<std::string>{"e_C2", "e4", "e3"});
  Graph l2 = load_fixture("fix_l2.graph");
  CHECK(core::cycles_up_to_conjugacy(l2).empty());
  Graph b2 = core::load_graph("vertex v\nedge a v v\nedge b v v\n");
  CHECK(core::cycles_up_to_conjugacy(b2).size() == 2);
}

TEST_CASE("at most one vertex of out-degree != 1 per class") {
  std::vector<Graph> graphs;
  for (auto name : {"fix_c3.graph", "fix_l2.graph", "fix_g72.graph", "fix_d72.graph",
                    "fix_g61.graph", "fix_g62.graph", "fix_cov2.graph", "b1.graph", "b2.graph"})
    graphs.push_back(load_fixture(name));
  for (unsigned seed = 1; seed <= 30; ++seed) graphs.push_back(testutil::random_graph(seed));
  for (const auto& g : graphs) {
    for (const auto& cls : core::sim_classes(g)) {
      int special = 0;
      for (int v : cls)
        if (core::out_degree(g, v) != 1) ++special;
      CHECK(special <= 1);
    }
  }
}

TEST_CASE("acyclicity and connectivity") {
  CHECK(core::is_acyclic(load_fixture("fix_l2.graph")));
  CHECK_FALSE(core::is_acyclic(load_fixture("fix_c3.graph")));
  CHECK(core::is_connected(load_fixture("fix_g72.graph")));
  Graph two = core::load_graph("vertex a\nvertex b\n");
  CHECK_FALSE(core::is_connected(two));
}
