#pragma once

// NE spanning forests, contracted graphs, connector elements, the chi maps
// between LI(G) and LI of the contraction, the LI-isomorphism decision with a
// constructive witness, and the induced element-level isomorphism.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pathsemi/leavitt.hpp"

namespace pathsemi::contract {

using core::Cycle;
using core::DirectedPath;
using core::Graph;
using gis::GisElement;
using li::LiElement;

// Per ~-class, a spanning tree of NE edges; obtained from the class's NE edges
// by dropping one chosen edge per NE cycle (exit cycles lose their unique
// out-degree->=2 edge automatically because that edge is not NE).
struct NeSpanningForest {
  std::vector<std::vector<int>> classes;  // sim_classes(g)
  std::vector<int> class_of;              // vertex -> class index
  std::vector<char> in_forest;            // per edge
  std::vector<int> tree_out;              // vertex -> its forest out-edge, or -1
  std::vector<int> excluded;              // chosen NE-cycle edges left out, ascending
};

inline NeSpanningForest ne_spanning_forest(
    const Graph& g, const std::optional<std::map<Cycle, int>>& choice = std::nullopt) {
  NeSpanningForest f;
  f.classes = core::sim_classes(g);
  f.class_of = core::sim_class_index(g);
  f.in_forest.assign(g.n_edges(), 0);
  f.tree_out.assign(g.n_vertices(), -1);

  // The free NE cycles: one per class whose vertices all have out-degree 1.
  std::map<Cycle, int> free_cycle_default;  // canonical cycle -> default excluded edge
  for (const auto& cls : f.classes) {
    std::vector<int> ne_edges;
    for (int v : cls)
      if (core::out_degree(g, v) == 1) ne_edges.push_back(g.out_edges(v)[0]);
    if (ne_edges.size() == cls.size()) {
      // Every vertex has out-degree 1: the class's NE edges close one cycle.
      std::vector<int> step_of(g.n_vertices(), -1);
      int cur = cls[0], step = 0;
      while (step_of[cur] == -1) {
        step_of[cur] = step++;
        cur = g.rng(g.out_edges(cur)[0]);
      }
      std::vector<int> cyc;
      int v = cur;
      do {
        int e = g.out_edges(v)[0];
        cyc.push_back(e);
        v = g.rng(e);
      } while (v != cur);
      Cycle canon = core::canonical_rotation(cyc);
      free_cycle_default[canon] = *std::min_element(cyc.begin(), cyc.end());
    } else if (ne_edges.size() + 1 != cls.size()) {
      throw core::precondition_error("class structure violated (internal)");
    }
    for (int e : ne_edges) f.in_forest[e] = 1;
  }
  if (choice) {
    for (auto& [cyc, e] : *choice) {
      auto it = free_cycle_default.find(cyc);
      if (it == free_cycle_default.end())
        throw core::precondition_error("invalid choice: not a free NE cycle");
      if (std::find(cyc.edges.begin(), cyc.edges.end(), e) == cyc.edges.end())
        throw core::precondition_error("invalid choice: edge not in cycle");
      it->second = e;
    }
  }
  for (auto& [cyc, e] : free_cycle_default) {
    f.in_forest[e] = 0;
    f.excluded.push_back(e);
  }
  std::sort(f.excluded.begin(), f.excluded.end());
  for (int e = 0; e < g.n_edges(); ++e)
    if (f.in_forest[e]) f.tree_out[g.src(e)] = e;
  return f;
}

// Tree edges of the class of v, ascending.
inline std::vector<int> tree_edges_of_class(const Graph& g, const NeSpanningForest& f, int v) {
  std::vector<int> out;
  for (int e = 0; e < g.n_edges(); ++e)
    if (f.in_forest[e] && f.class_of[g.src(e)] == f.class_of[v]) out.push_back(e);
  return out;
}

// The connector p[v1, v2]: p q* for the unique shortest directed tree paths
// from v1 and v2 to a common range vertex. Already LI-canonical.
inline GisElement connector(const Graph& g, const NeSpanningForest& f, int v1, int v2) {
  if (f.class_of.at(v1) != f.class_of.at(v2))
    throw core::precondition_error("connector endpoints are not ~-related");
  std::vector<int> walk{v1};
  std::map<int, int> pos{{v1, 0}};
  int cur = v1;
  while (f.tree_out[cur] != -1) {
    cur = g.rng(f.tree_out[cur]);
    if (pos.count(cur)) break;  // defensive; forest walks terminate at the root
    pos[cur] = static_cast<int>(walk.size());
    walk.push_back(cur);
  }
  cur = v2;
  DirectedPath q = core::empty_path(v2);
  while (!pos.count(cur)) {
    int e = f.tree_out[cur];
    if (e == -1) throw core::precondition_error("connector walk failed (internal)");
    q.edges.push_back(e);
    cur = g.rng(e);
  }
  DirectedPath p = core::empty_path(v1);
  for (int i = 0; i < pos[cur]; ++i) {
    p.edges.push_back(f.tree_out[walk[i]]);
  }
  return GisElement{false, p, q};
}

struct ContractedGraph {
  Graph original;
  NeSpanningForest forest;
  Graph graph;                  // the contraction
  std::vector<int> chi_vertex;  // original vertex -> contracted vertex
  std::vector<int> chi_edge;    // original edge -> contracted edge, or -1 (forest edge)
  std::vector<int> orig_edge;   // contracted edge -> original edge
  std::vector<int> class_size;  // per contracted vertex
  std::vector<int> rep;         // contracted vertex -> earliest original vertex
};

// Contracted vertices are the ~-classes (named by their earliest member);
// contracted edges are the non-forest edges with endpoints renamed.
inline ContractedGraph contract(const Graph& g, const NeSpanningForest& forest) {
  ContractedGraph cg;
  cg.original = g;
  cg.forest = forest;
  cg.chi_vertex = forest.class_of;
  cg.chi_edge.assign(g.n_edges(), -1);
  for (const auto& cls : forest.classes) {
    cg.rep.push_back(cls[0]);
    cg.class_size.push_back(static_cast<int>(cls.size()));
    cg.graph.add_vertex(g.vertex_id(cls[0]));
  }
  for (int e = 0; e < g.n_edges(); ++e) {
    if (forest.in_forest[e]) continue;
    cg.chi_edge[e] = cg.graph.add_edge(g.edge_id(e), cg.graph.vertex_id(forest.class_of[g.src(e)]),
                                       cg.graph.vertex_id(forest.class_of[g.rng(e)]));
    cg.orig_edge.push_back(e);
  }
  return cg;
}

// chi applied edgewise: forest edges collapse, other edges rename; vertices go
// to their classes. The image may be LI-reducible over the contraction.
inline GisElement chi_tilde(const ContractedGraph& cg, const GisElement& x) {
  if (x.zero) return x;
  auto map_path = [&](const DirectedPath& p) {
    DirectedPath out = core::empty_path(cg.chi_vertex.at(p.base));
    for (int e : p.edges)
      if (cg.chi_edge[e] != -1) out.edges.push_back(cg.chi_edge[e]);
    return out;
  };
  return gis::make_element(cg.graph, map_path(x.p), map_path(x.q));
}

namespace detail {
inline GisElement edge_element(const Graph& g, int e) {
  return GisElement{false, DirectedPath{g.src(e), {e}}, core::empty_path(g.rng(e))};
}

// chi_hat on a single contracted path: interleave connectors with the
// original edges, multiplied out in LI(original).
inline GisElement chi_hat_path(const ContractedGraph& cg, const std::vector<int>& base,
                               const DirectedPath& pbar) {
  const Graph& g = cg.original;
  int cur = base.at(pbar.base);
  GisElement acc = GisElement::make_vertex(cur);
  for (int ebar : pbar.edges) {
    int e = cg.orig_edge.at(ebar);
    acc = li::li_multiply(g, acc, connector(g, cg.forest, cur, g.src(e)));
    acc = li::li_multiply(g, acc, edge_element(g, e));
    cur = g.rng(e);
  }
  acc = li::li_multiply(g, acc, connector(g, cg.forest, cur, base.at(core::path_range(cg.graph, pbar))));
  if (acc.zero) throw core::precondition_error("chi_hat vanished (internal)");
  return acc;
}
}  // namespace detail

// Section of chi_tilde determined by a base vertex per class.
inline GisElement chi_hat(const ContractedGraph& cg, const std::vector<int>& base,
                          const GisElement& xbar) {
  if (static_cast<int>(base.size()) != cg.graph.n_vertices())
    throw core::precondition_error("base must pick one vertex per class");
  for (int c = 0; c < cg.graph.n_vertices(); ++c)
    if (c >= static_cast<int>(cg.forest.class_of.size()) || base[c] < 0 ||
        base[c] >= cg.original.n_vertices() || cg.forest.class_of[base[c]] != c)
      throw core::precondition_error("base vertex outside its class");
  if (xbar.zero) return xbar;
  core::validate_path(cg.graph, xbar.p);
  core::validate_path(cg.graph, xbar.q);
  GisElement a = detail::chi_hat_path(cg, base, xbar.p);
  GisElement b = detail::chi_hat_path(cg, base, xbar.q);
  GisElement out = li::li_multiply(cg.original, a, gis::gis_inverse(b));
  if (out.zero) throw core::precondition_error("chi_hat vanished (internal)");
  return out;
}

// Constructive witness for LI(G) ~ LI(D): a class-size-preserving isomorphism
// of the contracted graphs plus a per-class vertex bijection and base choices.
struct IsoWitness {
  ContractedGraph cg_dom, cg_cod;
  std::vector<int> psi;        // dom vertex -> cod vertex
  std::vector<int> phibar_v;   // dom contracted vertex -> cod contracted vertex
  std::vector<int> phibar_e;   // dom contracted edge -> cod contracted edge
  std::vector<int> base_dom, base_cod;  // chi_hat bases per contracted vertex
};

// Structural validity: bijections, incidence preservation, class sizes, the
// commuting square, and in-class bases.
inline bool validate_witness(const IsoWitness& w) {
  const Graph& gb = w.cg_dom.graph;
  const Graph& db = w.cg_cod.graph;
  if (gb.n_vertices() != db.n_vertices() || gb.n_edges() != db.n_edges()) return false;
  if (static_cast<int>(w.phibar_v.size()) != gb.n_vertices()) return false;
  if (static_cast<int>(w.phibar_e.size()) != gb.n_edges()) return false;
  std::vector<char> vseen(db.n_vertices(), 0), eseen(db.n_edges(), 0);
  for (int v : w.phibar_v) {
    if (v < 0 || v >= db.n_vertices() || vseen[v]) return false;
    vseen[v] = 1;
  }
  for (int e : w.phibar_e) {
    if (e < 0 || e >= db.n_edges() || eseen[e]) return false;
    eseen[e] = 1;
  }
  for (int e = 0; e < gb.n_edges(); ++e) {
    if (db.src(w.phibar_e[e]) != w.phibar_v[gb.src(e)]) return false;
    if (db.rng(w.phibar_e[e]) != w.phibar_v[gb.rng(e)]) return false;
  }
  for (int c = 0; c < gb.n_vertices(); ++c)
    if (w.cg_dom.class_size[c] != w.cg_cod.class_size[w.phibar_v[c]]) return false;
  const Graph& g = w.cg_dom.original;
  const Graph& d = w.cg_cod.original;
  if (static_cast<int>(w.psi.size()) != g.n_vertices() || g.n_vertices() != d.n_vertices())
    return false;
  std::vector<char> pseen(d.n_vertices(), 0);
  for (int v : w.psi) {
    if (v < 0 || v >= d.n_vertices() || pseen[v]) return false;
    pseen[v] = 1;
  }
  for (int v = 0; v < g.n_vertices(); ++v)
    if (w.phibar_v[w.cg_dom.chi_vertex[v]] != w.cg_cod.chi_vertex[w.psi[v]]) return false;
  if (static_cast<int>(w.base_dom.size()) != gb.n_vertices() ||
      static_cast<int>(w.base_cod.size()) != db.n_vertices())
    return false;
  for (int c = 0; c < gb.n_vertices(); ++c)
    if (w.cg_dom.forest.class_of[w.base_dom[c]] != c) return false;
  for (int c = 0; c < db.n_vertices(); ++c)
    if (w.cg_cod.forest.class_of[w.base_cod[c]] != c) return false;
  return true;
}

namespace detail {
// Backtracking graph-isomorphism search with class-size, degree and loop-count
// labels; vertices assigned in declaration order, candidates tried in
// declaration order, so the result is deterministic.
inline bool find_contracted_iso(const ContractedGraph& a, const ContractedGraph& b,
                                std::vector<int>& vmap, std::vector<int>& emap) {
  const Graph& ga = a.graph;
  const Graph& gb = b.graph;
  int n = ga.n_vertices();
  if (n != gb.n_vertices() || ga.n_edges() != gb.n_edges()) return false;
  auto loops = [](const Graph& g, int v) {
    int k = 0;
    for (int e : g.out_edges(v))
      if (g.rng(e) == v) ++k;
    return k;
  };
  vmap.assign(n, -1);
  std::vector<char> used(n, 0);
  // Count parallel edges between an ordered vertex pair.
  auto edge_lists = [](const Graph& g) {
    std::map<std::pair<int, int>, std::vector<int>> m;
    for (int e = 0; e < g.n_edges(); ++e) m[{g.src(e), g.rng(e)}].push_back(e);
    return m;
  };
  auto ea = edge_lists(ga);
  auto eb = edge_lists(gb);
  auto consistent = [&](int v, int w) {
    if (a.class_size[v] != b.class_size[w]) return false;
    if (ga.out_edges(v).size() != gb.out_edges(w).size()) return false;
    if (ga.in_edges(v).size() != gb.in_edges(w).size()) return false;
    if (loops(ga, v) != loops(gb, w)) return false;
    // Edge multiplicities against already-assigned vertices.
    for (int u = 0; u < n; ++u) {
      if (vmap[u] == -1 && u != v) continue;
      int mu = (u == v) ? w : vmap[u];
      auto cnt = [](auto& m, int s, int r) {
        auto it = m.find({s, r});
        return it == m.end() ? 0 : static_cast<int>(it->second.size());
      };
      if (cnt(ea, v, u) != cnt(eb, w, mu)) return false;
      if (cnt(ea, u, v) != cnt(eb, mu, w)) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w = 0; w < n; ++w) {
      if (used[w] || !consistent(v, w)) continue;
      vmap[v] = w;
      used[w] = 1;
      if (self(self, v + 1)) return true;
      vmap[v] = -1;
      used[w] = 0;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return false;
  // Pair parallel edges in declaration order.
  emap.assign(ga.n_edges(), -1);
  for (auto& [key, list] : ea) {
    auto& target = eb[{vmap[key.first], vmap[key.second]}];
    for (size_t i = 0; i < list.size(); ++i) emap[list[i]] = target[i];
  }
  return true;
}
}  // namespace detail

// Decides LI(G) isomorphic to LI(D) by searching for a class-size-preserving
// isomorphism of the default contractions; assembles psi per class in
// declaration order and default (earliest-vertex) bases.
inline std::optional<IsoWitness> li_isomorphic(const Graph& g, const Graph& d) {
  IsoWitness w;
  w.cg_dom = contract(g, ne_spanning_forest(g));
  w.cg_cod = contract(d, ne_spanning_forest(d));
  if (!detail::find_contracted_iso(w.cg_dom, w.cg_cod, w.phibar_v, w.phibar_e))
    return std::nullopt;
  w.psi.assign(g.n_vertices(), -1);
  for (int c = 0; c < w.cg_dom.graph.n_vertices(); ++c) {
    const auto& from = w.cg_dom.forest.classes[c];
    const auto& to = w.cg_cod.forest.classes[w.phibar_v[c]];
    for (size_t i = 0; i < from.size(); ++i) w.psi[from[i]] = to[i];
  }
  w.base_dom = w.cg_dom.rep;
  w.base_cod = w.cg_cod.rep;
  return w;
}

// The induced element map: x -> connector . chi_hat(renamed chi_tilde(x)) .
// connector, reduced in LI(D). Base choices cancel by connector telescoping.
inline LiElement apply_witness(const IsoWitness& w, const GisElement& x) {
  const Graph& g = w.cg_dom.original;
  const Graph& d = w.cg_cod.original;
  if (x.zero) return x;
  core::validate_path(g, x.p);
  core::validate_path(g, x.q);
  GisElement bar = chi_tilde(w.cg_dom, x);
  auto rename_path = [&](const DirectedPath& p) {
    DirectedPath out = core::empty_path(w.phibar_v.at(p.base));
    for (int e : p.edges) out.edges.push_back(w.phibar_e.at(e));
    return out;
  };
  GisElement renamed = gis::make_element(w.cg_cod.graph, rename_path(bar.p), rename_path(bar.q));
  GisElement mid = chi_hat(w.cg_cod, w.base_cod, renamed);
  GisElement left = connector(d, w.cg_cod.forest, w.psi.at(x.p.base), mid.p.base);
  GisElement right = connector(d, w.cg_cod.forest, mid.q.base, w.psi.at(x.q.base));
  GisElement out = li::li_multiply(d, li::li_multiply(d, left, mid), right);
  if (out.zero) throw core::precondition_error("apply_witness vanished (internal)");
  return out;
}

}  // namespace pathsemi::contract
