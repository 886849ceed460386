#pragma once

// Hereditary vertex sets and Rees quotients of I(G); congruence pairs (W, f)
// classifying the 0-restricted congruences; the quotient-equality decision by
// normal form; the test for quotients that are again graph inverse semigroups,
// with the associated retraction; plus a brute-force bounded congruence-closure
// oracle used to audit all of the above.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pathsemi/gis.hpp"
#include "pathsemi/leavitt.hpp"

namespace pathsemi::cong {

using core::Cycle;
using core::DirectedPath;
using core::Graph;
using gis::GisElement;

// --- hereditary sets and Rees quotients --------------------------------------

inline bool is_hereditary(const Graph& g, const std::set<int>& h) {
  for (int v : h)
    for (int e : g.out_edges(v))
      if (!h.count(g.rng(e))) return false;
  return true;
}

// Smallest out-edge-closed superset of seed.
inline std::set<int> hereditary_closure(const Graph& g, const std::set<int>& seed) {
  std::set<int> h;
  std::vector<int> stack;
  for (int v : seed) {
    if (v < 0 || v >= g.n_vertices()) throw core::precondition_error("unknown vertex in seed");
    if (h.insert(v).second) stack.push_back(v);
  }
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e : g.out_edges(v))
      if (h.insert(g.rng(e)).second) stack.push_back(g.rng(e));
  }
  return h;
}

// Graph of the Rees quotient by the ideal with vertex trace h: keep vertices
// outside h and edges whose range (hence source) is outside h.
inline Graph rees_quotient_graph(const Graph& g, const std::set<int>& h) {
  if (!is_hereditary(g, h)) throw core::precondition_error("vertex set is not hereditary");
  Graph d;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (!h.count(v)) d.add_vertex(g.vertex_id(v));
  for (int e = 0; e < g.n_edges(); ++e)
    if (!h.count(g.rng(e)))
      d.add_edge(g.edge_id(e), g.vertex_id(g.src(e)), g.vertex_id(g.rng(e)));
  return d;
}

// --- congruence pairs ---------------------------------------------------------

// Value of the cycle function: a positive integer or the infinity symbol.
struct FValue {
  bool infinite = true;
  unsigned value = 0;  // meaningful iff !infinite; >= 1

  static FValue inf() { return FValue{true, 0}; }
  static FValue finite(unsigned k) { return FValue{false, k}; }
  friend bool operator==(const FValue&, const FValue&) = default;
};

// (W, f): W a set of out-degree-1 vertices; f assigns an FValue to every cycle
// whose vertices all lie in W, keyed by the canonical rotation and constant on
// conjugates by construction.
struct CongruencePair {
  std::set<int> W;
  std::map<Cycle, FValue> f;
};

// The cycles all of whose vertices (= edge sources) lie in W.
inline std::vector<Cycle> cycles_within(const Graph& g, const std::set<int>& W) {
  std::vector<Cycle> out;
  for (const Cycle& c : core::cycles_up_to_conjugacy(g)) {
    bool inside = true;
    for (int e : c.edges)
      if (!W.count(g.src(e))) inside = false;
    if (inside) out.push_back(c);
  }
  return out;
}

inline bool validate_pair(const Graph& g, const CongruencePair& pair) {
  for (int v : pair.W) {
    if (v < 0 || v >= g.n_vertices()) return false;
    if (core::out_degree(g, v) != 1) return false;
  }
  auto cw = cycles_within(g, pair.W);
  if (pair.f.size() != cw.size()) return false;
  for (const Cycle& c : cw) {
    auto it = pair.f.find(c);
    if (it == pair.f.end()) return false;
    if (!it->second.infinite && it->second.value < 1) return false;
  }
  return true;
}

namespace detail {
// A C(W)-cycle has no exits (each of its sources has out-degree 1), so a path
// meets a given such cycle only in a contiguous terminal run arriving at the
// path's endpoint. Splits off that maximal run.
struct CycleSuffix {
  DirectedPath stem;
  int run = 0;
};

inline CycleSuffix split_cycle_suffix(const Graph& g, const Cycle& c, const DirectedPath& p) {
  std::map<int, int> arrival;  // cycle vertex -> the unique cycle edge into it
  for (int e : c.edges) arrival[g.rng(e)] = e;
  CycleSuffix out{p, 0};
  int cur = core::path_range(g, p);
  while (!out.stem.edges.empty()) {
    int last = out.stem.edges.back();
    auto it = arrival.find(cur);
    if (it == arrival.end() || it->second != last) break;
    out.stem.edges.pop_back();
    cur = g.src(last);
    ++out.run;
  }
  return out;
}
}  // namespace detail

// Decides the 0-restricted congruence of (W, f). Normal form: when the shared
// range vertex lies on a finite-f cycle c, the relations c^f ~ source and
// ww* ~ w (w in W, along the cycle) make the terminal cycle runs of p and q
// interchangeable across sides — q's run of length t converts to a forward run
// of f|c| - t on the p side. Both runs therefore combine into one forward walk
// of length (s - t) mod f|c| attached to p. Afterwards strip the maximal
// common suffix of edges whose sources lie in W. Zero relates only to zero.
inline bool quotient_equal(const Graph& g, const CongruencePair& pair, const GisElement& x,
                           const GisElement& y) {
  if (!validate_pair(g, pair)) throw core::precondition_error("invalid congruence pair");
  if (x.zero || y.zero) return x.zero == y.zero;
  auto normal = [&](GisElement z) {
    int w = core::path_range(g, z.p);
    for (const auto& [c, fv] : pair.f) {
      if (fv.infinite) continue;
      bool on = false;
      for (int e : c.edges) on = on || g.src(e) == w;
      if (!on) continue;
      auto ps = detail::split_cycle_suffix(g, c, z.p);
      auto qs = detail::split_cycle_suffix(g, c, z.q);
      long long m = static_cast<long long>(fv.value) * c.length();
      long long j = ((ps.run - qs.run) % m + m) % m;
      z.p = ps.stem;
      z.q = qs.stem;
      int v = core::path_range(g, z.p);
      for (long long k = 0; k < j; ++k) {
        int e = g.out_edges(v)[0];
        z.p.edges.push_back(e);
        v = g.rng(e);
      }
      break;  // cycles within W are vertex-disjoint: at most one contains w
    }
    while (!z.p.edges.empty() && !z.q.edges.empty() && z.p.edges.back() == z.q.edges.back() &&
           pair.W.count(g.src(z.p.edges.back()))) {
      z.p.edges.pop_back();
      z.q.edges.pop_back();
    }
    return z;
  };
  return normal(x) == normal(y);
}

// The quotient by (W, f) is again a graph inverse semigroup iff each v in W
// has its unique out-edge a loop at v and f is 1 on that loop.
inline bool preserves_gis(const Graph& g, const CongruencePair& pair) {
  if (!validate_pair(g, pair)) throw core::precondition_error("invalid congruence pair");
  for (int v : pair.W) {
    int e = g.out_edges(v)[0];
    if (g.rng(e) != v) return false;
    auto fv = pair.f.find(core::canonical_rotation({e}));
    if (fv == pair.f.end() || fv->second != FValue::finite(1)) return false;
  }
  return true;
}

// Deletes the W-loops; the quotient is I of the result.
inline Graph quotient_graph_if_gis(const Graph& g, const CongruencePair& pair) {
  if (!preserves_gis(g, pair)) throw core::precondition_error("pair does not preserve the class");
  Graph d;
  for (int v = 0; v < g.n_vertices(); ++v) d.add_vertex(g.vertex_id(v));
  for (int e = 0; e < g.n_edges(); ++e)
    if (!(pair.W.count(g.src(e)) && g.rng(e) == g.src(e)))
      d.add_edge(g.edge_id(e), g.vertex_id(g.src(e)), g.vertex_id(g.rng(e)));
  return d;
}

// Retraction onto the quotient graph: p e_v^k (e_v*)^t q* -> p q*. Since a
// W-loop vertex traps every path that reaches it, deleting trailing W-loop
// edges from each side is exactly the proof formula.
inline GisElement retraction(const Graph& g, const CongruencePair& pair, const GisElement& x) {
  Graph d = quotient_graph_if_gis(g, pair);  // also validates
  if (x.zero) return x;
  auto strip = [&](DirectedPath p) {
    while (!p.edges.empty()) {
      int e = p.edges.back();
      if (pair.W.count(g.src(e)) && g.rng(e) == g.src(e))
        p.edges.pop_back();
      else
        break;
    }
    return p;
  };
  DirectedPath p = strip(x.p), q = strip(x.q);
  // Translate to the quotient graph's indices.
  auto translate = [&](const DirectedPath& a) {
    DirectedPath b{d.vertex(g.vertex_id(a.base)), {}};
    for (int e : a.edges) b.edges.push_back(d.edge(g.edge_id(e)));
    return b;
  };
  return gis::make_element(d, translate(p), translate(q));
}

// All pairs with W over subsets of out-degree-1 vertices and f over functions
// into {1..max_f, infinity}; deterministic order (W by bitmask over vertex
// order, f values counting up with infinity last).
inline std::vector<CongruencePair> enumerate_pairs(const Graph& g, unsigned max_f) {
  std::vector<int> deg1;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (core::out_degree(g, v) == 1) deg1.push_back(v);
  std::vector<CongruencePair> out;
  for (unsigned long mask = 0; mask < (1ul << deg1.size()); ++mask) {
    CongruencePair pair;
    for (size_t i = 0; i < deg1.size(); ++i)
      if (mask & (1ul << i)) pair.W.insert(deg1[i]);
    auto cw = cycles_within(g, pair.W);
    std::vector<unsigned> choice(cw.size(), 0);  // 0..max_f-1 finite, max_f = infinity
    while (true) {
      pair.f.clear();
      for (size_t i = 0; i < cw.size(); ++i)
        pair.f[cw[i]] = (choice[i] == max_f) ? FValue::inf() : FValue::finite(choice[i] + 1);
      out.push_back(pair);
      size_t i = 0;
      while (i < cw.size() && choice[i] == max_f) choice[i++] = 0;
      if (i == cw.size()) break;
      ++choice[i];
    }
  }
  return out;
}

// Generating relation of the congruence of (W, f): (e_v e_v*, v) for v in W
// and (c^f(c), s(c)) for finite f(c).
inline std::vector<std::pair<GisElement, GisElement>> pair_generators(const Graph& g,
                                                                      const CongruencePair& pair) {
  std::vector<std::pair<GisElement, GisElement>> gens;
  for (int v : pair.W) {
    DirectedPath e{v, {g.out_edges(v)[0]}};
    gens.emplace_back(GisElement{false, e, e}, GisElement::make_vertex(v));
  }
  for (auto& [c, fv] : pair.f) {
    if (fv.infinite) continue;
    int base = g.src(c.edges[0]);
    DirectedPath power{base, {}};
    for (unsigned k = 0; k < fv.value; ++k)
      power.edges.insert(power.edges.end(), c.edges.begin(), c.edges.end());
    gens.emplace_back(GisElement{false, power, core::empty_path(base)},
                      GisElement::make_vertex(base));
  }
  return gens;
}

// Equivalence relation on a bounded element set, as class indices.
struct BoundedEquivalence {
  std::vector<GisElement> elements;       // enumerate_elements(g, max_len)
  std::map<GisElement, int> class_of;     // element -> class id

  bool related(const GisElement& x, const GisElement& y) const {
    auto a = class_of.find(x), b = class_of.find(y);
    if (a == class_of.end() || b == class_of.end())
      throw core::precondition_error("element outside the bounded set");
    return a->second == b->second;
  }
};

// Smallest equivalence on enumerate_elements(g, max_len) containing the
// generators and closed under left/right multiplication by elements of the
// set, whenever both products stay inside the set.
inline BoundedEquivalence closure_oracle(const Graph& g,
                                         const std::vector<std::pair<GisElement, GisElement>>& gens,
                                         int max_len) {
  BoundedEquivalence eq;
  eq.elements = gis::enumerate_elements(g, max_len);
  int n = static_cast<int>(eq.elements.size());
  std::map<GisElement, int> index;
  for (int i = 0; i < n; ++i) index[eq.elements[i]] = i;
  core::detail::UnionFind uf(n);
  bool changed = false;
  auto unite = [&](int a, int b) {
    if (uf.find(a) != uf.find(b)) {
      uf.unite(a, b);
      changed = true;
    }
  };
  for (auto& [x, y] : gens) {
    auto a = index.find(x), b = index.find(y);
    if (a == index.end() || b == index.end())
      throw core::precondition_error("generator outside the bounded set");
    unite(a->second, b->second);
  }
  // Fixpoint: whenever x and y are related and both t-products stay in the
  // set, the products are related; applied class-wise (all in-set products of
  // one class by one multiplier get united) until stable.
  do {
    changed = false;
    std::map<int, std::vector<int>> classes;
    for (int i = 0; i < n; ++i) classes[uf.find(i)].push_back(i);
    for (auto& [rep, members] : classes) {
      if (members.size() < 2) continue;
      for (const GisElement& t : eq.elements) {
        int first_left = -1, first_right = -1;
        for (int i : members) {
          auto il = index.find(gis::gis_multiply(t, eq.elements[i]));
          if (il != index.end()) {
            if (first_left < 0)
              first_left = il->second;
            else
              unite(first_left, il->second);
          }
          auto ir = index.find(gis::gis_multiply(eq.elements[i], t));
          if (ir != index.end()) {
            if (first_right < 0)
              first_right = ir->second;
            else
              unite(first_right, ir->second);
          }
        }
      }
    }
  } while (changed);
  std::map<int, int> rename;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    auto it = rename.find(r);
    if (it == rename.end()) it = rename.emplace(r, static_cast<int>(rename.size())).first;
    eq.class_of[eq.elements[i]] = it->second;
  }
  return eq;
}

}  // namespace pathsemi::cong
