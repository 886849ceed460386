#pragma once

// Leavitt path algebra over the rationals: the natural basis, normal forms,
// exact linear algebra on finitely supported combinations, dimension in the
// acyclic case, the induced algebra-isomorphism check for contraction
// witnesses, one-edge NE contraction retractions, and the bouquet criterion.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

#include "pathsemi/contraction.hpp"

namespace pathsemi::lpa {

using core::DirectedPath;
using core::Graph;
using gis::GisElement;

using Rational = boost::rational<long long>;

// One chosen out-edge per non-sink vertex (-1 at sinks).
using SpecialEdgeChoice = std::vector<int>;

inline SpecialEdgeChoice default_gamma(const Graph& g) {
  SpecialEdgeChoice gamma(g.n_vertices(), -1);
  for (int v = 0; v < g.n_vertices(); ++v)
    if (!g.out_edges(v).empty()) gamma[v] = g.out_edges(v)[0];
  return gamma;
}

inline void validate_gamma(const Graph& g, const SpecialEdgeChoice& gamma) {
  if (static_cast<int>(gamma.size()) != g.n_vertices())
    throw core::precondition_error("gamma must choose per vertex");
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (g.out_edges(v).empty()) {
      if (gamma[v] != -1) throw core::precondition_error("gamma set at a sink");
    } else if (gamma[v] < 0 || gamma[v] >= g.n_edges() || g.src(gamma[v]) != v) {
      throw core::precondition_error("gamma edge not an out-edge of its vertex");
    }
  }
}

// Finitely supported rational combination of nonzero semigroup elements,
// keyed by basis elements once normalised.
using AlgebraElement = std::map<GisElement, Rational>;

inline bool is_basis_element(const Graph& g, const SpecialEdgeChoice& gamma, const GisElement& x) {
  if (x.zero) return false;
  if (x.p.edges.empty() || x.q.edges.empty()) return true;
  int e = x.p.edges.back();
  int f = x.q.edges.back();
  if (e != f) return true;
  return core::out_degree(g, g.src(e)) >= 2 && e != gamma[g.src(e)];
}

namespace detail {
inline void add_term(AlgebraElement& a, const GisElement& x, const Rational& c) {
  if (x.zero || c == Rational(0)) return;
  auto it = a.find(x);
  if (it == a.end()) {
    a.emplace(x, c);
  } else {
    it->second += c;
    if (it->second == Rational(0)) a.erase(it);
  }
}
}  // namespace detail

// Rewrites a semigroup element into the basis: first the LI normal form, then
// repeated expansion of a shared special last edge e = gamma(s(e)) via
// p' e e* q'* = p' q'*  -  sum over the other out-edges g of  p' g g* q'*.
inline AlgebraElement to_basis(const Graph& g, const SpecialEdgeChoice& gamma,
                               const GisElement& x0) {
  AlgebraElement out;
  std::vector<std::pair<GisElement, Rational>> work{{li::li_reduce(g, x0), Rational(1)}};
  while (!work.empty()) {
    auto [x, c] = work.back();
    work.pop_back();
    if (x.zero) continue;
    if (is_basis_element(g, gamma, x)) {
      detail::add_term(out, x, c);
      continue;
    }
    // Shared last edge e with out-degree 1 cannot appear after li_reduce, and
    // e != gamma only happens at out-degree >= 2, so here e == gamma(s(e)).
    int e = x.p.edges.back();
    int v = g.src(e);
    GisElement trunk{false, DirectedPath{x.p.base, {x.p.edges.begin(), x.p.edges.end() - 1}},
                     DirectedPath{x.q.base, {x.q.edges.begin(), x.q.edges.end() - 1}}};
    work.push_back({li::li_reduce(g, trunk), c});
    for (int other : g.out_edges(v)) {
      if (other == e) continue;
      GisElement branch = trunk;
      branch.p.edges.push_back(other);
      branch.q.edges.push_back(other);
      detail::add_term(out, branch, -c);  // basis immediately: shared non-special last edge
    }
  }
  return out;
}

inline AlgebraElement to_algebra(const Graph& g, const SpecialEdgeChoice& gamma,
                                 const GisElement& x) {
  return to_basis(g, gamma, x);
}

inline AlgebraElement alg_add(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out = a;
  for (auto& [x, c] : b) detail::add_term(out, x, c);
  return out;
}

inline AlgebraElement alg_scale(const Rational& c, const AlgebraElement& a) {
  AlgebraElement out;
  if (c == Rational(0)) return out;
  for (auto& [x, k] : a) out.emplace(x, c * k);
  return out;
}

inline AlgebraElement alg_neg(const AlgebraElement& a) { return alg_scale(Rational(-1), a); }

inline AlgebraElement alg_multiply(const Graph& g, const SpecialEdgeChoice& gamma,
                                   const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (auto& [x, c] : a)
    for (auto& [y, k] : b) {
      GisElement prod = gis::gis_multiply(x, y);
      if (prod.zero) continue;
      for (auto& [z, m] : to_basis(g, gamma, prod)) detail::add_term(out, z, c * k * m);
    }
  return out;
}

inline bool alg_equal(const AlgebraElement& a, const AlgebraElement& b) { return a == b; }

// Number of basis elements; defined only for acyclic graphs.
inline long long dimension_if_acyclic(const Graph& g) {
  if (!core::is_acyclic(g)) throw core::precondition_error("graph has a directed cycle");
  SpecialEdgeChoice gamma = default_gamma(g);
  long long n = 0;
  auto paths = gis::enumerate_paths(g, g.n_vertices());  // acyclic: paths shorter than |V|
  for (const auto& p : paths)
    for (const auto& q : paths) {
      if (core::path_range(g, p) != core::path_range(g, q)) continue;
      if (is_basis_element(g, gamma, GisElement{false, p, q})) ++n;
    }
  return n;
}

// Checks that the witness-induced linear extension is an algebra isomorphism:
// structural witness validity, the defining sum relation at every out-degree
// >= 2 vertex, and multiplicativity on semigroup basis pairs up to max_len.
// Returns false (never throws) on any failure.
inline bool induced_algebra_iso_check(const contract::IsoWitness& w, int max_len,
                                      std::optional<SpecialEdgeChoice> gamma = std::nullopt) {
  try {
    if (!contract::validate_witness(w)) return false;
    const Graph& g = w.cg_dom.original;
    const Graph& d = w.cg_cod.original;
    SpecialEdgeChoice gamma_d = gamma ? *gamma : default_gamma(d);
    validate_gamma(d, gamma_d);
    auto phi = [&](const GisElement& x) { return contract::apply_witness(w, x); };
    // Sum relation: for each vertex v with out-degree >= 2, the images of the
    // out-edge idempotents must add up to the image of v. The comparison is
    // done against the matching vertex u (the out-degree >= 2 member of the
    // image class) conjugated back along the connector.
    for (int v = 0; v < g.n_vertices(); ++v) {
      if (core::out_degree(g, v) < 2) continue;
      AlgebraElement lhs;
      for (int e : g.out_edges(v)) {
        GisElement ee{false, DirectedPath{v, {e}}, DirectedPath{v, {e}}};
        lhs = alg_add(lhs, to_basis(d, gamma_d, phi(ee)));
      }
      lhs = alg_add(lhs, alg_neg(to_basis(d, gamma_d, phi(GisElement::make_vertex(v)))));
      int u = -1;
      for (int cand : w.cg_cod.forest.classes[w.cg_cod.forest.class_of[w.psi[v]]])
        if (core::out_degree(d, cand) != 1) u = cand;
      if (u == -1) return false;  // image class has no out-degree >= 2 vertex
      GisElement conn = contract::connector(d, w.cg_cod.forest, w.psi[v], u);
      AlgebraElement rhs;
      for (int e : d.out_edges(u)) {
        GisElement ee{false, DirectedPath{u, {e}}, DirectedPath{u, {e}}};
        GisElement conj = li::li_multiply(d, li::li_multiply(d, conn, ee), gis::gis_inverse(conn));
        rhs = alg_add(rhs, to_basis(d, gamma_d, conj));
      }
      GisElement uu = li::li_multiply(d, li::li_multiply(d, conn, GisElement::make_vertex(u)),
                                      gis::gis_inverse(conn));
      rhs = alg_add(rhs, alg_neg(to_basis(d, gamma_d, uu)));
      if (!alg_equal(lhs, rhs)) return false;
    }
    // Multiplicativity on the finite window.
    auto elems = gis::enumerate_elements(g, max_len);
    std::vector<GisElement> nz;
    for (auto& x : elems)
      if (!x.zero) nz.push_back(x);
    std::map<GisElement, AlgebraElement> image;
    for (auto& x : nz) image[x] = to_basis(d, gamma_d, phi(x));
    for (auto& x : nz)
      for (auto& y : nz) {
        GisElement xy = gis::gis_multiply(x, y);
        AlgebraElement lhs =
            xy.zero ? AlgebraElement{} : to_basis(d, gamma_d, phi(xy));
        AlgebraElement rhs = alg_multiply(d, gamma_d, image[x], image[y]);
        if (!alg_equal(lhs, rhs)) return false;
      }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// The graph after removing a source vertex of out-degree 1 together with its
// unique out-edge e.
inline Graph ne_contracted_graph(const Graph& g, int e) {
  int v = g.src(e);
  if (core::out_degree(g, v) != 1 || !g.in_edges(v).empty())
    throw core::precondition_error("edge source must be an out-degree-1 source vertex");
  Graph out;
  for (int u = 0; u < g.n_vertices(); ++u)
    if (u != v) out.add_vertex(g.vertex_id(u));
  for (int f = 0; f < g.n_edges(); ++f)
    if (f != e) out.add_edge(g.edge_id(f), g.vertex_id(g.src(f)), g.vertex_id(g.rng(f)));
  return out;
}

// The retraction onto the contracted algebra: per side, a leading e is
// deleted and the bare vertex s(e) is sent to r(e); everything else is
// untouched. Linear, non-injective, the identity on the retract.
inline AlgebraElement ne_contraction_retraction(const Graph& g, int e, const AlgebraElement& a) {
  Graph h = ne_contracted_graph(g, e);
  int v = g.src(e);
  auto translate = [&](const DirectedPath& p) {
    DirectedPath out;
    size_t first = 0;
    if (p.base == v) {
      out.base = *h.find_vertex(g.vertex_id(g.rng(e)));
      if (!p.edges.empty()) first = 1;  // paths from v necessarily start with e
    } else {
      out.base = *h.find_vertex(g.vertex_id(p.base));
    }
    for (size_t i = first; i < p.edges.size(); ++i)
      out.edges.push_back(*h.find_edge(g.edge_id(p.edges[i])));
    return out;
  };
  SpecialEdgeChoice gamma_g = default_gamma(g);
  AlgebraElement out;
  for (auto& [x0, c] : a) {
    for (auto& [x, m] : to_basis(g, gamma_g, x0)) {
      // Images of basis elements stay in the basis (defaults align on the
      // untouched vertices), so they accumulate directly.
      detail::add_term(out, GisElement{false, translate(x.p), translate(x.q)}, c * m);
    }
  }
  return out;
}

// Bouquet criterion: for n >= 2 petals the algebras for k1 and k2 extra
// petals agree exactly when gcd(k1, n-1) == gcd(k2, n-1); n == 2 always
// agrees; n < 2 is out of scope.
inline bool bouquet_lpa_iso(int n, int k1, int k2) {
  if (n < 2) throw core::precondition_error("bouquet criterion requires n >= 2");
  if (k1 < 0 || k2 < 0) throw core::precondition_error("petal counts must be nonnegative");
  if (n == 2) return true;
  return std::gcd(k1, n - 1) == std::gcd(k2, n - 1);
}

}  // namespace pathsemi::lpa
