#pragma once

// Graph morphisms, directed covers/immersions, path lifting, and the
// classification of connected graphs immersing into the one-loop bouquet.

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathsemi/graph.hpp"

namespace pathsemi::core {

// Total vertex/edge maps between two graphs, stored by value so a morphism is
// self-contained.
struct GraphMorphism {
  Graph dom;
  Graph cod;
  std::vector<int> vmap;  // dom vertex -> cod vertex
  std::vector<int> emap;  // dom edge -> cod edge
};

enum class MorphClass { NotMorphism, Morphism, DirectedImmersion, DirectedCover };

inline std::string to_string(MorphClass c) {
  switch (c) {
    case MorphClass::NotMorphism: return "NotMorphism";
    case MorphClass::Morphism: return "Morphism";
    case MorphClass::DirectedImmersion: return "DirectedImmersion";
    case MorphClass::DirectedCover: return "DirectedCover";
  }
  return "?";
}

// Strongest applicable label. A morphism must commute with src/rng; it is an
// immersion (cover) when every induced out-star map is injective (bijective).
inline MorphClass check_morphism(const GraphMorphism& m) {
  if (static_cast<int>(m.vmap.size()) != m.dom.n_vertices() ||
      static_cast<int>(m.emap.size()) != m.dom.n_edges())
    return MorphClass::NotMorphism;
  for (int v : m.vmap)
    if (v < 0 || v >= m.cod.n_vertices()) return MorphClass::NotMorphism;
  for (int e : m.emap)
    if (e < 0 || e >= m.cod.n_edges()) return MorphClass::NotMorphism;
  for (int e = 0; e < m.dom.n_edges(); ++e) {
    if (m.vmap[m.dom.src(e)] != m.cod.src(m.emap[e])) return MorphClass::NotMorphism;
    if (m.vmap[m.dom.rng(e)] != m.cod.rng(m.emap[e])) return MorphClass::NotMorphism;
  }
  bool immersion = true, cover = true;
  for (int v = 0; v < m.dom.n_vertices(); ++v) {
    std::map<int, int> hits;  // cod edge -> multiplicity
    for (int e : m.dom.out_edges(v)) ++hits[m.emap[e]];
    for (auto& [ce, k] : hits)
      if (k > 1) immersion = cover = false;
    if (hits.size() != m.cod.out_edges(m.vmap[v]).size()) cover = false;
  }
  if (cover && immersion) return MorphClass::DirectedCover;
  if (immersion) return MorphClass::DirectedImmersion;
  return MorphClass::Morphism;
}

namespace detail {
// The unique out-edge of v mapping to cod edge ce, if any.
inline std::optional<int> lift_edge(const GraphMorphism& m, int v, int ce) {
  for (int e : m.dom.out_edges(v))
    if (m.emap[e] == ce) return e;
  return std::nullopt;
}
}  // namespace detail

// Unique lift of a codomain path at a fiber vertex (directed covers).
inline DirectedPath lift_path(const GraphMorphism& m, const DirectedPath& p, int v_tilde) {
  if (check_morphism(m) != MorphClass::DirectedCover)
    throw precondition_error("lift_path requires a directed cover");
  validate_path(m.cod, p);
  if (m.vmap.at(v_tilde) != p.base)
    throw precondition_error("fiber vertex does not lie over the path source");
  DirectedPath lift = empty_path(v_tilde);
  int cur = v_tilde;
  for (int ce : p.edges) {
    auto e = detail::lift_edge(m, cur, ce);
    if (!e) throw precondition_error("cover lift failed (inconsistent morphism)");
    lift.edges.push_back(*e);
    cur = m.dom.rng(*e);
  }
  return lift;
}

// Longest liftable prefix of p at v_tilde together with its unique lift
// (directed immersions).
inline std::pair<DirectedPath, DirectedPath> lift_max_prefix(const GraphMorphism& m,
                                                             const DirectedPath& p,
                                                             int v_tilde) {
  MorphClass c = check_morphism(m);
  if (c != MorphClass::DirectedImmersion && c != MorphClass::DirectedCover)
    throw precondition_error("lift_max_prefix requires a directed immersion");
  validate_path(m.cod, p);
  if (m.vmap.at(v_tilde) != p.base)
    throw precondition_error("fiber vertex does not lie over the path source");
  DirectedPath prefix = empty_path(p.base);
  DirectedPath lift = empty_path(v_tilde);
  int cur = v_tilde;
  for (int ce : p.edges) {
    auto e = detail::lift_edge(m, cur, ce);
    if (!e) break;
    prefix.edges.push_back(ce);
    lift.edges.push_back(*e);
    cur = m.dom.rng(*e);
  }
  return {prefix, lift};
}

struct CircuitPowerLift {
  int entry_vertex;      // vertex at which the walk first revisits
  int period;            // number of successive lifts forming the circuit
  DirectedPath circuit;  // lift of p^period at entry_vertex
};

// Successively lifts the circuit p from the earliest-declared fiber vertex
// until a vertex repeats; the repeat closes a lifted circuit for p^period.
// The period is the one found by this walk, not a global minimum.
inline CircuitPowerLift lift_circuit_power(const GraphMorphism& m, const DirectedPath& p) {
  if (check_morphism(m) != MorphClass::DirectedCover)
    throw precondition_error("lift_circuit_power requires a directed cover");
  validate_path(m.cod, p);
  if (p.edges.empty() || path_range(m.cod, p) != p.base)
    throw precondition_error("p must be a nonempty directed circuit");
  int start = -1;
  for (int v = 0; v < m.dom.n_vertices(); ++v)
    if (m.vmap[v] == p.base) {
      start = v;
      break;
    }
  if (start < 0) throw precondition_error("empty fiber over the circuit base");
  std::vector<int> order{start};
  std::map<int, int> position{{start, 0}};
  std::vector<DirectedPath> lifts;
  int cur = start;
  while (true) {
    DirectedPath l = lift_path(m, p, cur);
    lifts.push_back(l);
    cur = path_range(m.dom, l);
    auto it = position.find(cur);
    if (it != position.end()) {
      int i = it->second;
      int period = static_cast<int>(lifts.size()) - i;
      DirectedPath circuit = empty_path(order[i]);
      for (size_t k = i; k < lifts.size(); ++k)
        circuit = concat(m.dom, circuit, lifts[k]);
      return {order[i], period, circuit};
    }
    position.emplace(cur, static_cast<int>(order.size()));
    order.push_back(cur);
  }
}

// Classification of connected graphs by immersibility into the one-loop
// bouquet. TreeNoSinkCover is part of the interface but unreachable here: a
// finite connected graph with all out-degrees <= 1 has a sink iff it is
// acyclic, and otherwise carries a unique cycle.
struct CircleImmersion {
  enum class Kind { NotImmersible, TreeWithSink, TreeNoSinkCover, UniqueCycleCover };
  Kind kind = Kind::NotImmersible;
  int sink = -1;          // TreeWithSink
  int max_depth = -1;     // TreeWithSink: longest directed path into the sink
  int cycle_length = -1;  // UniqueCycleCover
};

inline CircleImmersion classify_circle_immersion(const Graph& g) {
  if (!is_connected(g)) throw precondition_error("classify_circle_immersion needs a connected graph");
  if (g.n_vertices() == 0) throw precondition_error("empty graph");
  for (int v = 0; v < g.n_vertices(); ++v)
    if (out_degree(g, v) >= 2) return {CircleImmersion::Kind::NotImmersible, -1, -1, -1};
  int sink = -1;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (out_degree(g, v) == 0) {
      sink = v;
      break;
    }
  if (sink >= 0) {
    // All walks end at the unique sink; depth(v) = walk length from v.
    int max_depth = 0;
    for (int v = 0; v < g.n_vertices(); ++v) {
      int steps = 0, cur = v;
      while (out_degree(g, cur) == 1) {
        cur = g.rng(g.out_edges(cur)[0]);
        ++steps;
      }
      max_depth = std::max(max_depth, steps);
    }
    return {CircleImmersion::Kind::TreeWithSink, sink, max_depth, -1};
  }
  // Every vertex has out-degree exactly 1: exactly one cycle.
  std::vector<int> visit_step(g.n_vertices(), -1);
  int cur = 0, step = 0;
  while (visit_step[cur] == -1) {
    visit_step[cur] = step++;
    cur = g.rng(g.out_edges(cur)[0]);
  }
  return {CircleImmersion::Kind::UniqueCycleCover, -1, -1, step - visit_step[cur]};
}

// Morphism file: two 'graph <path>' lines (resolved relative to base_dir),
// then 'map-vertex <domId> <codId>' / 'map-edge <domId> <codId>' lines.
inline GraphMorphism load_morphism(const std::string& text, const std::string& base_dir) {
  auto read_file = [&](const std::string& rel) {
    std::string path = rel;
    if (!rel.empty() && rel[0] != '/' && !base_dir.empty()) path = base_dir + "/" + rel;
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open graph file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<Graph> graphs;
  std::map<int, int> vmap_partial, emap_partial;
  std::vector<std::pair<std::string, std::string>> vlines, elines;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw parse_error("line " + std::to_string(line_no) + ": " + msg);
    };
    if (tok[0] == "graph") {
      if (tok.size() != 2) fail("expected 'graph <path>'");
      if (graphs.size() == 2) fail("more than two graph lines");
      graphs.push_back(load_graph(read_file(tok[1])));
    } else if (tok[0] == "map-vertex" || tok[0] == "map-edge") {
      if (tok.size() != 3) fail("expected '" + tok[0] + " <domId> <codId>'");
      if (graphs.size() != 2) fail("map line before both graph lines");
      (tok[0] == "map-vertex" ? vlines : elines).emplace_back(tok[1], tok[2]);
    } else {
      fail("unknown directive '" + tok[0] + "'");
    }
  }
  if (graphs.size() != 2) throw parse_error("morphism file needs two graph lines");
  GraphMorphism m{graphs[0], graphs[1], {}, {}};
  m.vmap.assign(m.dom.n_vertices(), -1);
  m.emap.assign(m.dom.n_edges(), -1);
  for (auto& [d, c] : vlines) m.vmap.at(m.dom.vertex(d)) = m.cod.vertex(c);
  for (auto& [d, c] : elines) m.emap.at(m.dom.edge(d)) = m.cod.edge(c);
  for (int v = 0; v < m.dom.n_vertices(); ++v)
    if (m.vmap[v] < 0) throw parse_error("vertex '" + m.dom.vertex_id(v) + "' unmapped");
  for (int e = 0; e < m.dom.n_edges(); ++e)
    if (m.emap[e] < 0) throw parse_error("edge '" + m.dom.edge_id(e) + "' unmapped");
  return m;
}

inline GraphMorphism load_morphism_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open morphism file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string dir = ".";
  auto slash = path.find_last_of('/');
  if (slash != std::string::npos) dir = path.substr(0, slash);
  return load_morphism(ss.str(), dir);
}

}  // namespace pathsemi::core
