#pragma once

// The Leavitt inverse semigroup LI(G): the quotient of I(G) by e_v e_v* = v at
// each out-degree-1 vertex v, realized by a canonical normal form (LiElement),
// plus Green's relations, maximal subgroups, Brandt classification for
// circle-immersible graphs, polycyclic submonoid witnesses for covers of
// bouquets, and a bounded order-theoretic oracle for the quotient congruence.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pathsemi/gis.hpp"
#include "pathsemi/morphism.hpp"

namespace pathsemi::li {

using core::DirectedPath;
using core::Graph;
using gis::GisElement;

// Canonical representative: no trailing common edge whose source has
// out-degree 1. Same representation as GisElement; canonicality is an
// invariant maintained by li_reduce.
using LiElement = GisElement;

inline LiElement li_reduce(const Graph& g, GisElement x) {
  if (x.zero) return x;
  while (!x.p.edges.empty() && !x.q.edges.empty() && x.p.edges.back() == x.q.edges.back() &&
         core::out_degree(g, g.src(x.p.edges.back())) == 1) {
    x.p.edges.pop_back();
    x.q.edges.pop_back();
  }
  return x;
}

inline LiElement li_multiply(const Graph& g, const LiElement& x, const LiElement& y) {
  return li_reduce(g, gis::gis_multiply(x, y));
}

inline bool li_equal(const Graph& g, const GisElement& x, const GisElement& y) {
  return li_reduce(g, x) == li_reduce(g, y);
}

// Maximal idempotents apart from the vertices are exactly p e e* p* with p an
// NE path and out_degree(src(e)) >= 2.
inline bool is_maximal_nonvertex_idempotent(const Graph& g, const LiElement& x) {
  if (x.zero || !gis::is_idempotent(x)) throw core::precondition_error("expected a nonzero idempotent");
  LiElement c = li_reduce(g, x);
  if (c.p.edges.empty()) return false;  // vertex
  int last = c.p.edges.back();
  if (core::out_degree(g, g.src(last)) < 2) return false;
  DirectedPath prefix{c.p.base, {c.p.edges.begin(), c.p.edges.end() - 1}};
  return core::is_ne_path(g, prefix);
}

enum class GreenRel { R, L, D, J, H };

// Green's relations on LI(G) for canonical nonzero p q* and x y*:
//   R: p p* = x x*,  L: q q* = y y*,  H: R and L,
//   D: r(p) ~ r(x),  J: some u ~ r(p) and w ~ r(x) lie in one SCC.
// Zero is related only to zero.
inline bool green_relation(const Graph& g, GreenRel rel, const LiElement& x, const LiElement& y) {
  if (x.zero || y.zero) return x.zero && y.zero;
  LiElement a = li_reduce(g, x), b = li_reduce(g, y);
  auto idem = [](const DirectedPath& p) { return GisElement{false, p, p}; };
  switch (rel) {
    case GreenRel::R:
      return li_equal(g, idem(a.p), idem(b.p));
    case GreenRel::L:
      return li_equal(g, idem(a.q), idem(b.q));
    case GreenRel::H:
      return green_relation(g, GreenRel::R, a, b) && green_relation(g, GreenRel::L, a, b);
    case GreenRel::D: {
      auto cls = core::sim_class_index(g);
      return cls[core::path_range(g, a.p)] == cls[core::path_range(g, b.p)];
    }
    case GreenRel::J: {
      auto cls = core::sim_class_index(g);
      auto scc = core::scc_index(g);
      int ca = cls[core::path_range(g, a.p)], cb = cls[core::path_range(g, b.p)];
      for (int u = 0; u < g.n_vertices(); ++u) {
        if (cls[u] != ca) continue;
        for (int w = 0; w < g.n_vertices(); ++w)
          if (cls[w] == cb && scc[u] == scc[w]) return true;
      }
      return false;
    }
  }
  return false;
}

enum class MaxSubgroup { Trivial, IntegersZ };

// The maximal subgroup at a nonzero idempotent p p* is Z iff some NE path from
// r(p) reaches a nontrivial NE cycle; NE steps are forced (out-degree 1), so
// this is a deterministic walk with revisit detection.
inline MaxSubgroup max_subgroup(const Graph& g, const LiElement& e) {
  if (e.zero || !gis::is_idempotent(e)) throw core::precondition_error("expected a nonzero idempotent");
  int cur = core::path_range(g, li_reduce(g, e).p);
  std::set<int> seen{cur};
  while (core::out_degree(g, cur) == 1) {
    cur = g.rng(g.out_edges(cur)[0]);
    if (!seen.insert(cur).second) return MaxSubgroup::IntegersZ;
  }
  return MaxSubgroup::Trivial;
}

// LI(G) is combinatorial (all subgroups trivial) iff G has no NE cycles.
inline bool is_combinatorial(const Graph& g) {
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (core::out_degree(g, v) != 1) continue;
    int cur = v;
    for (int steps = 0; steps <= g.n_vertices(); ++steps) {
      if (core::out_degree(g, cur) != 1) break;
      cur = g.rng(g.out_edges(cur)[0]);
      if (cur == v) return false;
    }
  }
  return true;
}

struct BrandtDescriptor {
  int index_size = 0;
  MaxSubgroup group = MaxSubgroup::Trivial;
  friend bool operator==(const BrandtDescriptor&, const BrandtDescriptor&) = default;
};

// For connected graphs with all out-degrees <= 1, LI(G) is the |G^0| x |G^0|
// Brandt semigroup over the trivial group (acyclic case) or over Z (unique
// cycle case). nullopt means not circle-immersible (some out-degree >= 2).
inline std::optional<BrandtDescriptor> classify_brandt(const Graph& g) {
  auto c = core::classify_circle_immersion(g);
  using K = core::CircleImmersion::Kind;
  switch (c.kind) {
    case K::NotImmersible: return std::nullopt;
    case K::TreeWithSink: return BrandtDescriptor{g.n_vertices(), MaxSubgroup::Trivial};
    case K::UniqueCycleCover: return BrandtDescriptor{g.n_vertices(), MaxSubgroup::IntegersZ};
    case K::TreeNoSinkCover: break;  // finite inputs never reach this
  }
  throw core::precondition_error("unexpected classification");
}

struct PolycyclicWitness {
  DirectedPath p_tilde;           // path from the chosen vertex into V_n
  std::map<int, GisElement> r;    // codomain loop (letter) -> r_a = p q_a p*
};

// For a finite directed cover m of a bouquet, builds at v_tilde the standard
// polycyclic (|A| >= 2) or bicyclic (|A| = 1) generators: a path p into the
// set V_n of vertices lying, for every letter a, on a cycle whose first edge
// maps to the a-loop, and per letter a cycle q_a at the walk's end whose first
// edge maps to a. Verifies r_a* r_a = p p* and r_a* r_b = 0 before returning.
inline PolycyclicWitness polycyclic_witness(const core::GraphMorphism& m, int v_tilde) {
  if (check_morphism(m) != core::MorphClass::DirectedCover)
    throw core::precondition_error("polycyclic_witness requires a directed cover");
  if (m.cod.n_vertices() != 1) throw core::precondition_error("codomain must be a bouquet");
  if (m.cod.n_edges() < 1) throw core::precondition_error("bouquet needs at least one loop");
  if (v_tilde < 0 || v_tilde >= m.dom.n_vertices())
    throw core::precondition_error("unknown vertex");
  const Graph& g = m.dom;
  int n = g.n_vertices();

  // Letter successor: the unique out-edge over each codomain loop.
  auto step = [&](int v, int letter) {
    for (int e : g.out_edges(v))
      if (m.emap[e] == letter) return std::pair<int, int>{e, g.rng(e)};
    throw core::precondition_error("cover lift failed");
  };

  // v is in V_a iff v is reachable from its a-successor.
  std::vector<char> in_vn(n, 1);
  for (int letter = 0; letter < m.cod.n_edges(); ++letter) {
    for (int v = 0; v < n; ++v) {
      auto [e, w] = step(v, letter);
      auto reach = core::reachable_set(g, w);
      if (!reach[v]) in_vn[v] = 0;
    }
  }

  // BFS (declaration order) from v_tilde to the nearest V_n vertex.
  std::vector<int> parent_edge(n, -1);
  std::vector<char> seen(n, 0);
  std::vector<int> queue{v_tilde};
  seen[v_tilde] = 1;
  int target = in_vn[v_tilde] ? v_tilde : -1;
  for (size_t qi = 0; qi < queue.size() && target < 0; ++qi) {
    for (int e : g.out_edges(queue[qi])) {
      int w = g.rng(e);
      if (seen[w]) continue;
      seen[w] = 1;
      parent_edge[w] = e;
      if (in_vn[w]) {
        target = w;
        break;
      }
      queue.push_back(w);
    }
  }
  if (target < 0) throw core::precondition_error("no vertex of V_n is reachable");
  std::vector<int> rev;
  for (int cur = target; parent_edge[cur] != -1; cur = g.src(parent_edge[cur]))
    rev.push_back(parent_edge[cur]);
  DirectedPath p{v_tilde, {rev.rbegin(), rev.rend()}};

  // Per letter: cycle at target starting with the letter edge (first edge plus
  // a BFS-shortest return path).
  PolycyclicWitness wit{p, {}};
  for (int letter = 0; letter < m.cod.n_edges(); ++letter) {
    auto [e0, w0] = step(target, letter);
    DirectedPath cycle{target, {e0}};
    if (w0 != target) {
      std::vector<int> pe(n, -1);
      std::vector<char> sn(n, 0);
      std::vector<int> bq{w0};
      sn[w0] = 1;
      bool found = false;
      for (size_t qi = 0; qi < bq.size() && !found; ++qi) {
        for (int e : g.out_edges(bq[qi])) {
          int w = g.rng(e);
          if (sn[w]) continue;
          sn[w] = 1;
          pe[w] = e;
          if (w == target) {
            found = true;
            break;
          }
          bq.push_back(w);
        }
      }
      if (!found) throw core::precondition_error("V_n computation failed");
      std::vector<int> back;
      for (int cur = target; pe[cur] != -1; cur = g.src(pe[cur])) back.push_back(pe[cur]);
      cycle.edges.insert(cycle.edges.end(), back.rbegin(), back.rend());
    }
    DirectedPath pq = core::concat(g, p, cycle);
    wit.r.emplace(letter, gis::make_element(g, pq, p));
  }

  // The defining relations, checked in I(G) arithmetic.
  GisElement pp{false, p, p};
  for (auto& [a, ra] : wit.r) {
    if (!(gis::gis_multiply(gis::gis_inverse(ra), ra) == pp))
      throw core::precondition_error("polycyclic relations failed (internal)");
    for (auto& [b, rb] : wit.r)
      if (a != b && !gis::gis_multiply(gis::gis_inverse(ra), rb).zero)
        throw core::precondition_error("polycyclic relations failed (internal)");
  }
  return wit;
}

namespace detail {
// Two nonzero elements of I(G) have a nonzero common lower bound iff they are
// comparable: any common lower bound (a u, b u) = (c w, d w) forces one pair
// to extend the other by a common tail.
inline bool comparable(const GisElement& x, const GisElement& y) {
  return gis::gis_leq(x, y) || gis::gis_leq(y, x);
}

inline bool arrow_bounded(const Graph& g, const GisElement& x, const GisElement& y, int depth) {
  // For all extensions t (|t| <= depth) of x's down-set, (p t, q t) must meet
  // y's down-set in a nonzero element.
  std::vector<DirectedPath> frontier{core::empty_path(core::path_range(g, x.p))};
  for (int len = 0; len <= depth; ++len) {
    std::vector<DirectedPath> next;
    for (const auto& t : frontier) {
      GisElement z{false, x.p, x.q};
      z.p.edges.insert(z.p.edges.end(), t.edges.begin(), t.edges.end());
      z.q.edges.insert(z.q.edges.end(), t.edges.begin(), t.edges.end());
      if (!comparable(z, y)) return false;
      if (len < depth)
        for (int e : g.out_edges(core::path_range(g, t))) {
          DirectedPath u = t;
          u.edges.push_back(e);
          next.push_back(u);
        }
    }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return true;
}
}  // namespace detail

// Bounded semi-decision of the congruence generated by mutual down-set
// intersection: x <-> y iff every nonzero lower bound of either meets the
// other's down-set. Used as a testing oracle for li_equal.
inline bool lenz_oracle(const Graph& g, const GisElement& x, const GisElement& y, int depth) {
  if (x.zero || y.zero) throw core::precondition_error("lenz_oracle needs nonzero elements");
  return detail::arrow_bounded(g, x, y, depth) && detail::arrow_bounded(g, y, x, depth);
}

}  // namespace pathsemi::li
