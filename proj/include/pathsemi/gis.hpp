#pragma once

// The graph inverse semigroup I(G) of a finite directed graph G: canonical
// nonzero elements p q* for directed paths p, q with a common range vertex,
// plus a zero. Multiplication, inversion, the natural partial order, the
// 0-morphism tau onto the free group on the edge set (with zero marker), and
// rank computations for universal groups.

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pathsemi/graph.hpp"

namespace pathsemi::gis {

using core::DirectedPath;
using core::Graph;

// Zero, or the element p q*. Total order: zero first, then by
// (|p|+|q|, p.edges, q.edges, p.base, q.base) — the enumeration order.
struct GisElement {
  bool zero = true;
  DirectedPath p{};
  DirectedPath q{};

  static GisElement make_zero() { return GisElement{}; }
  static GisElement make_vertex(int v) {
    return GisElement{false, core::empty_path(v), core::empty_path(v)};
  }

  int length() const { return zero ? 0 : p.length() + q.length(); }

  friend bool operator==(const GisElement& a, const GisElement& b) {
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.p == b.p && a.q == b.q;
  }
  friend bool operator<(const GisElement& a, const GisElement& b) {
    if (a.zero != b.zero) return a.zero;
    if (a.zero) return false;
    return std::make_tuple(a.length(), std::cref(a.p.edges), std::cref(a.q.edges), a.p.base,
                           a.q.base) < std::make_tuple(b.length(), std::cref(b.p.edges),
                                                       std::cref(b.q.edges), b.p.base, b.q.base);
  }
};

// Validates both paths and the common-range requirement.
inline GisElement make_element(const Graph& g, const DirectedPath& p, const DirectedPath& q) {
  core::validate_path(g, p);
  core::validate_path(g, q);
  if (core::path_range(g, p) != core::path_range(g, q))
    throw core::precondition_error("p and q must share their range vertex");
  return GisElement{false, p, q};
}

inline GisElement gis_inverse(const GisElement& x) {
  if (x.zero) return x;
  return GisElement{false, x.q, x.p};
}

namespace detail {
inline bool is_prefix(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}
}  // namespace detail

// (p q*)(r s*) is nonzero iff q and r start at the same vertex and one is a
// prefix of the other: q t = r gives (p t) s*, and q = r t gives p (s t)*.
inline GisElement gis_multiply(const GisElement& x, const GisElement& y) {
  if (x.zero || y.zero) return GisElement::make_zero();
  const DirectedPath& q = x.q;
  const DirectedPath& r = y.p;
  if (q.base != r.base) return GisElement::make_zero();
  if (detail::is_prefix(q.edges, r.edges)) {
    DirectedPath p = x.p;
    p.edges.insert(p.edges.end(), r.edges.begin() + q.edges.size(), r.edges.end());
    return GisElement{false, p, y.q};
  }
  if (detail::is_prefix(r.edges, q.edges)) {
    DirectedPath s = y.q;
    s.edges.insert(s.edges.end(), q.edges.begin() + r.edges.size(), q.edges.end());
    return GisElement{false, x.p, s};
  }
  return GisElement::make_zero();
}

// Natural partial order of the inverse semigroup: x <= y iff x = (x x^-1) y.
inline bool gis_leq(const GisElement& x, const GisElement& y) {
  return x == gis_multiply(gis_multiply(x, gis_inverse(x)), y);
}

inline bool is_idempotent(const GisElement& x) { return x.zero || x.p == x.q; }

// A word in the free group on the edge set: (edge, +1/-1) pairs, freely reduced.
using FreeWord = std::vector<std::pair<int, int>>;

// tau(p q*) is the reduced word p q^-1; tau(0) is the zero marker (nullopt).
inline std::optional<FreeWord> tau(const GisElement& x) {
  if (x.zero) return std::nullopt;
  FreeWord w;
  auto push = [&w](int edge, int sign) {
    if (!w.empty() && w.back().first == edge && w.back().second == -sign)
      w.pop_back();
    else
      w.emplace_back(edge, sign);
  };
  for (int e : x.p.edges) push(e, +1);
  for (auto it = x.q.edges.rbegin(); it != x.q.edges.rend(); ++it) push(*it, -1);
  return w;
}

// Product in the free group: concatenation with free reduction.
inline FreeWord free_multiply(const FreeWord& a, const FreeWord& b) {
  FreeWord w = a;
  for (const auto& [edge, sign] : b) {
    if (!w.empty() && w.back().first == edge && w.back().second == -sign)
      w.pop_back();
    else
      w.emplace_back(edge, sign);
  }
  return w;
}

// The universal group of I(G) is free of rank |G^1|.
inline int universal_rank(const Graph& g) { return g.n_edges(); }

// Rank of the universal group of the local submonoid at a vertex: with H the
// subgraph reachable from v, the rank is |H^1| - |H^0| + 1.
inline int local_universal_rank(const Graph& g, int v) {
  Graph h = core::reachable_subgraph(g, v);
  return h.n_edges() - h.n_vertices() + 1;
}

// Local rank at a nonzero idempotent p p*: equals the local rank at r(p).
inline int local_rank_at_idempotent(const Graph& g, const GisElement& e) {
  if (e.zero || !is_idempotent(e)) throw core::precondition_error("expected a nonzero idempotent");
  return local_universal_rank(g, core::path_range(g, e.p));
}

// All directed paths of length <= max_len, in enumeration order.
inline std::vector<DirectedPath> enumerate_paths(const Graph& g, int max_len) {
  std::vector<DirectedPath> all, frontier;
  for (int v = 0; v < g.n_vertices(); ++v) frontier.push_back(core::empty_path(v));
  all = frontier;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<DirectedPath> next;
    for (const auto& p : frontier)
      for (int e : g.out_edges(core::path_range(g, p))) {
        DirectedPath q = p;
        q.edges.push_back(e);
        next.push_back(q);
      }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return all;
}

// Zero plus every canonical p q* with |p|+|q| <= max_len, sorted ascending.
inline std::vector<GisElement> enumerate_elements(const Graph& g, int max_len) {
  auto paths = enumerate_paths(g, max_len);
  std::vector<std::vector<DirectedPath>> by_range(g.n_vertices());
  for (const auto& p : paths) by_range[core::path_range(g, p)].push_back(p);
  std::vector<GisElement> out;
  out.push_back(GisElement::make_zero());
  for (int v = 0; v < g.n_vertices(); ++v)
    for (const auto& p : by_range[v])
      for (const auto& q : by_range[v])
        if (p.length() + q.length() <= max_len) out.push_back(GisElement{false, p, q});
  std::sort(out.begin(), out.end());
  return out;
}

// --- element text syntax -----------------------------------------------------
//
// '0' is zero; '@v' is the vertex element at v; 'p|q' is p q* where each side
// is either '@v' (empty path) or a dot-separated edge sequence.

inline DirectedPath parse_path_side(const Graph& g, const std::string& s) {
  if (s.empty()) throw core::parse_error("empty path component");
  if (s[0] == '@') {
    std::string id = s.substr(1);
    return core::empty_path(g.vertex(id));
  }
  std::vector<int> edges;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t dot = s.find('.', pos);
    std::string id = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (id.empty()) throw core::parse_error("malformed path '" + s + "'");
    edges.push_back(g.edge(id));
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  DirectedPath p{g.src(edges.front()), edges};
  try {
    core::validate_path(g, p);
  } catch (const core::precondition_error& e) {
    throw core::parse_error(std::string("not a directed path: ") + e.what());
  }
  return p;
}

inline GisElement parse_element(const Graph& g, const std::string& s) {
  if (s == "0") return GisElement::make_zero();
  auto bar = s.find('|');
  if (bar == std::string::npos) {
    if (!s.empty() && s[0] == '@') {
      DirectedPath v = parse_path_side(g, s);
      return GisElement{false, v, v};
    }
    throw core::parse_error("expected '0', '@vertex', or 'p|q': '" + s + "'");
  }
  DirectedPath p = parse_path_side(g, s.substr(0, bar));
  DirectedPath q = parse_path_side(g, s.substr(bar + 1));
  if (core::path_range(g, p) != core::path_range(g, q))
    throw core::parse_error("sides of '" + s + "' do not share a range vertex");
  return GisElement{false, p, q};
}

inline std::string format_path_side(const Graph& g, const DirectedPath& p) {
  if (p.edges.empty()) return "@" + g.vertex_id(p.base);
  std::string s;
  for (size_t i = 0; i < p.edges.size(); ++i) {
    if (i) s += '.';
    s += g.edge_id(p.edges[i]);
  }
  return s;
}

inline std::string format_element(const Graph& g, const GisElement& x) {
  if (x.zero) return "0";
  if (x.p.edges.empty() && x.q.edges.empty()) return "@" + g.vertex_id(x.p.base);
  return format_path_side(g, x.p) + "|" + format_path_side(g, x.q);
}

}  // namespace pathsemi::gis
