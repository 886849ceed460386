#pragma once

// Finite directed multigraphs with string identifiers.
//
// Identifiers are ordered by declaration position in the source file; every
// deterministic tie-break in the library (BFS order, canonical cycle rotation,
// default spanning-forest choices, witness assembly) uses that order.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathsemi::core {

// Input-text problems (malformed files, unknown ids); messages carry line numbers.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Violated operation preconditions (range mismatches, invalid choices, ...).
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

class Graph {
 public:
  int add_vertex(const std::string& id) {
    if (!valid_identifier(id)) throw parse_error("invalid vertex id '" + id + "'");
    if (vertex_by_id_.count(id)) throw parse_error("duplicate vertex id '" + id + "'");
    int v = static_cast<int>(vertex_ids_.size());
    vertex_ids_.push_back(id);
    vertex_by_id_.emplace(id, v);
    out_edges_.emplace_back();
    in_edges_.emplace_back();
    return v;
  }

  int add_edge(const std::string& id, const std::string& src, const std::string& rng) {
    if (!valid_identifier(id)) throw parse_error("invalid edge id '" + id + "'");
    if (edge_by_id_.count(id)) throw parse_error("duplicate edge id '" + id + "'");
    auto s = vertex_by_id_.find(src);
    auto r = vertex_by_id_.find(rng);
    if (s == vertex_by_id_.end()) throw parse_error("unknown source vertex '" + src + "'");
    if (r == vertex_by_id_.end()) throw parse_error("unknown range vertex '" + rng + "'");
    int e = static_cast<int>(edge_ids_.size());
    edge_ids_.push_back(id);
    edge_by_id_.emplace(id, e);
    edge_src_.push_back(s->second);
    edge_rng_.push_back(r->second);
    out_edges_[s->second].push_back(e);
    in_edges_[r->second].push_back(e);
    return e;
  }

  int n_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int n_edges() const { return static_cast<int>(edge_ids_.size()); }

  const std::string& vertex_id(int v) const { return vertex_ids_.at(v); }
  const std::string& edge_id(int e) const { return edge_ids_.at(e); }
  int src(int e) const { return edge_src_.at(e); }
  int rng(int e) const { return edge_rng_.at(e); }

  // Out-/in-edges in declaration order.
  const std::vector<int>& out_edges(int v) const { return out_edges_.at(v); }
  const std::vector<int>& in_edges(int v) const { return in_edges_.at(v); }

  std::optional<int> find_vertex(const std::string& id) const {
    auto it = vertex_by_id_.find(id);
    if (it == vertex_by_id_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<int> find_edge(const std::string& id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) return std::nullopt;
    return it->second;
  }
  int vertex(const std::string& id) const {
    auto v = find_vertex(id);
    if (!v) throw parse_error("unknown vertex '" + id + "'");
    return *v;
  }
  int edge(const std::string& id) const {
    auto e = find_edge(id);
    if (!e) throw parse_error("unknown edge '" + id + "'");
    return *e;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_ids_ == b.vertex_ids_ && a.edge_ids_ == b.edge_ids_ &&
           a.edge_src_ == b.edge_src_ && a.edge_rng_ == b.edge_rng_;
  }

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<int> edge_src_;
  std::vector<int> edge_rng_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
  std::map<std::string, int> vertex_by_id_;
  std::map<std::string, int> edge_by_id_;
};

inline int out_degree(const Graph& g, int v) {
  return static_cast<int>(g.out_edges(v).size());
}

// Line-oriented format: '# comment', 'vertex <id>', 'edge <id> <src> <rng>'.
inline Graph load_graph(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool any_directive = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty()) continue;
    any_directive = true;
    try {
      if (tok[0] == "vertex") {
        if (tok.size() != 2) throw parse_error("expected 'vertex <id>'");
        g.add_vertex(tok[1]);
      } else if (tok[0] == "edge") {
        if (tok.size() != 4) throw parse_error("expected 'edge <id> <src> <rng>'");
        g.add_edge(tok[1], tok[2], tok[3]);
      } else {
        throw parse_error("unknown directive '" + tok[0] + "'");
      }
    } catch (const parse_error& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!any_directive) throw parse_error("empty graph file");
  return g;
}

// A directed path: base vertex plus a (possibly empty) edge sequence in which
// consecutive edges are incident.
struct DirectedPath {
  int base = -1;
  std::vector<int> edges;

  friend bool operator==(const DirectedPath&, const DirectedPath&) = default;
  friend auto operator<=>(const DirectedPath&, const DirectedPath&) = default;

  int length() const { return static_cast<int>(edges.size()); }
};

inline void validate_path(const Graph& g, const DirectedPath& p) {
  if (p.base < 0 || p.base >= g.n_vertices()) throw precondition_error("path base out of range");
  int cur = p.base;
  for (int e : p.edges) {
    if (e < 0 || e >= g.n_edges()) throw precondition_error("path edge out of range");
    if (g.src(e) != cur)
      throw precondition_error("path not contiguous at edge '" + g.edge_id(e) + "'");
    cur = g.rng(e);
  }
}

inline int path_source(const Graph&, const DirectedPath& p) { return p.base; }

inline int path_range(const Graph& g, const DirectedPath& p) {
  return p.edges.empty() ? p.base : g.rng(p.edges.back());
}

inline DirectedPath empty_path(int v) { return DirectedPath{v, {}}; }

inline DirectedPath make_path(const Graph& g, const std::vector<int>& edges) {
  if (edges.empty()) throw precondition_error("make_path needs at least one edge");
  DirectedPath p{g.src(edges.front()), edges};
  validate_path(g, p);
  return p;
}

inline DirectedPath concat(const Graph& g, const DirectedPath& a, const DirectedPath& b) {
  if (path_range(g, a) != b.base) throw precondition_error("paths not composable");
  DirectedPath r = a;
  r.edges.insert(r.edges.end(), b.edges.begin(), b.edges.end());
  return r;
}

namespace detail {
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Keeps the smaller index as representative.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};
}  // namespace detail

// ~ is the vertex equivalence generated by {(src(e), rng(e)) : out_degree(src(e)) = 1}.
// Returns the partition as lists of vertex indices; classes ordered by smallest
// member, members ascending.
inline std::vector<std::vector<int>> sim_classes(const Graph& g) {
  detail::UnionFind uf(g.n_vertices());
  for (int e = 0; e < g.n_edges(); ++e) {
    if (out_degree(g, g.src(e)) == 1) uf.unite(g.src(e), g.rng(e));
  }
  std::map<int, std::vector<int>> by_rep;
  for (int v = 0; v < g.n_vertices(); ++v) by_rep[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(by_rep.size());
  for (auto& [rep, members] : by_rep) out.push_back(std::move(members));
  return out;
}

// Vertex -> index of its class within sim_classes(g).
inline std::vector<int> sim_class_index(const Graph& g) {
  auto classes = sim_classes(g);
  std::vector<int> idx(g.n_vertices(), -1);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (int v : classes[c]) idx[v] = c;
  return idx;
}

namespace detail {
// Induced subgraph on a vertex subset, preserving declaration order and ids.
inline Graph induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  Graph h;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (keep[v]) h.add_vertex(g.vertex_id(v));
  for (int e = 0; e < g.n_edges(); ++e)
    if (keep[g.src(e)] && keep[g.rng(e)])
      h.add_edge(g.edge_id(e), g.vertex_id(g.src(e)), g.vertex_id(g.rng(e)));
  return h;
}
}  // namespace detail

// Induced subgraph on the ~-class of v.
inline Graph class_subgraph(const Graph& g, int v) {
  auto idx = sim_class_index(g);
  std::vector<char> keep(g.n_vertices(), 0);
  for (int w = 0; w < g.n_vertices(); ++w) keep[w] = (idx[w] == idx[v]);
  return detail::induced_subgraph(g, keep);
}

inline std::vector<char> reachable_set(const Graph& g, int v) {
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<int> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(cur)) {
      if (!seen[g.rng(e)]) {
        seen[g.rng(e)] = 1;
        stack.push_back(g.rng(e));
      }
    }
  }
  return seen;
}

// Induced subgraph on all vertices reachable from v by directed paths.
inline Graph reachable_subgraph(const Graph& g, int v) {
  return detail::induced_subgraph(g, reachable_set(g, v));
}

// BFS spanning tree (edge indices, ascending) of the subgraph reachable from v;
// BFS explores out-edges in declaration order.
inline std::vector<int> directed_spanning_tree(const Graph& g, int v) {
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<int> queue{v}, tree;
  seen[v] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int cur = queue[qi];
    for (int e : g.out_edges(cur)) {
      if (!seen[g.rng(e)]) {
        seen[g.rng(e)] = 1;
        tree.push_back(e);
        queue.push_back(g.rng(e));
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

// Strongly connected components; ordered by smallest vertex, members ascending.
inline std::vector<std::vector<int>> strongly_connected_components(const Graph& g) {
  // Iterative Tarjan.
  int n = g.n_vertices();
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    int v;
    size_t ei;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.ei < g.out_edges(f.v).size()) {
        int w = g.rng(g.out_edges(f.v)[f.ei]);
        ++f.ei;
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        int finished = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[finished]);
      }
    }
  }
  std::vector<std::vector<int>> comps(next_comp);
  for (int v = 0; v < n; ++v) comps[comp[v]].push_back(v);
  std::sort(comps.begin(), comps.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return comps;
}

inline std::vector<int> scc_index(const Graph& g) {
  auto comps = strongly_connected_components(g);
  std::vector<int> idx(g.n_vertices(), -1);
  for (int c = 0; c < static_cast<int>(comps.size()); ++c)
    for (int v : comps[c]) idx[v] = c;
  return idx;
}

// Undirected connectivity.
inline bool is_connected(const Graph& g) {
  if (g.n_vertices() == 0) return true;
  std::vector<char> seen(g.n_vertices(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    auto visit = [&](int w) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    };
    for (int e : g.out_edges(cur)) visit(g.rng(e));
    for (int e : g.in_edges(cur)) visit(g.src(e));
  }
  return count == g.n_vertices();
}

// A cycle: nonempty edge sequence forming a closed directed path with pairwise
// distinct vertices, stored in the canonical rotation that starts with the
// earliest-declared edge.
struct Cycle {
  std::vector<int> edges;

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;

  int length() const { return static_cast<int>(edges.size()); }
};

inline Cycle canonical_rotation(std::vector<int> edges) {
  auto min_it = std::min_element(edges.begin(), edges.end());
  std::rotate(edges.begin(), min_it, edges.end());
  return Cycle{std::move(edges)};
}

// All simple cycles, one per conjugacy (rotation) class, sorted by
// (length, canonical edge sequence). Exhaustive search; inputs are capped to
// keep it so.
inline std::vector<Cycle> cycles_up_to_conjugacy(const Graph& g, int vertex_cap = 64) {
  if (g.n_vertices() > vertex_cap)
    throw precondition_error("graph exceeds the cycle-enumeration cap");
  std::vector<Cycle> out;
  int n = g.n_vertices();
  std::vector<char> blocked(n, 0);
  std::vector<int> path_edges;
  // Enumerate each cycle once: rooted at its smallest vertex.
  for (int root = 0; root < n; ++root) {
    auto dfs = [&](auto&& self, int cur) -> void {
      for (int e : g.out_edges(cur)) {
        int w = g.rng(e);
        if (w < root) continue;
        if (w == root) {
          path_edges.push_back(e);
          out.push_back(canonical_rotation(path_edges));
          path_edges.pop_back();
        } else if (!blocked[w]) {
          blocked[w] = 1;
          path_edges.push_back(e);
          self(self, w);
          path_edges.pop_back();
          blocked[w] = 0;
        }
      }
    };
    blocked[root] = 1;
    dfs(dfs, root);
    blocked[root] = 0;
  }
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.edges < b.edges;
  });
  return out;
}

// True if every edge source on the cycle has out-degree 1 ("no exits").
inline bool is_ne_cycle(const Graph& g, const Cycle& c) {
  for (int e : c.edges)
    if (out_degree(g, g.src(e)) != 1) return false;
  return true;
}

inline bool is_ne_path(const Graph& g, const DirectedPath& p) {
  for (int e : p.edges)
    if (out_degree(g, g.src(e)) != 1) return false;
  return true;
}

inline bool is_acyclic(const Graph& g) {
  // A graph is acyclic iff no SCC has a cycle: check for any edge inside an SCC
  // (covers loops) — equivalently every SCC is a singleton without a loop.
  auto idx = scc_index(g);
  for (int e = 0; e < g.n_edges(); ++e)
    if (idx[g.src(e)] == idx[g.rng(e)]) return false;
  return true;
}

}  // namespace pathsemi::core
