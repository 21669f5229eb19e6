#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace toric {

namespace {

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<size_t>(i)] < n - k + i) {
      ++c[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        c[static_cast<size_t>(j)] = c[static_cast<size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int k) {
  std::vector<int> c(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<size_t>(i)] = i;
  return c;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

std::vector<FacetInequality> enumerate_facets(Index n,
                                              const std::vector<IntVector>& pts) {
  // Brute force over n-subsets spanning candidate hyperplanes, with exact
  // side tests.  A candidate that keeps every point on one side touches n
  // affinely independent points, so it is a facet.
  const int v = static_cast<int>(pts.size());
  std::set<std::pair<std::vector<Int>, Int>> seen;
  std::vector<FacetInequality> out;
  auto add = [&](const IntVector& normal, const Int& bound) {
    std::vector<Int> key(normal.data(), normal.data() + normal.size());
    if (seen.insert({key, bound}).second)
      out.push_back(FacetInequality{normal, bound});
  };
  std::vector<int> subset = first_combination(static_cast<int>(n));
  do {
    IntMatrix rows(n - 1, n);
    const IntVector& base = pts[static_cast<size_t>(subset[0])];
    for (Index i = 0; i + 1 < n; ++i)
      rows.row(i) =
          (pts[static_cast<size_t>(subset[static_cast<size_t>(i + 1)])] - base)
              .transpose();
    IntVector y = kernel_cross(rows);
    if (y.isZero()) continue;
    y = primitive(y);
    Int b = pairing(y, base);
    bool above = false, below = false;
    for (const auto& pt : pts) {
      Int s = pairing(y, pt) - b;
      if (s > 0) above = true;
      if (s < 0) below = true;
      if (above && below) break;
    }
    if (!above) add(y, b);
    if (!below) add(IntVector(-y), Int(-b));
  } while (next_combination(subset, v));
  std::sort(out.begin(), out.end(),
            [](const FacetInequality& a, const FacetInequality& b) {
              if (a.normal != b.normal) return lex_less(a.normal, b.normal);
              return a.bound < b.bound;
            });
  return out;
}

// x lies in the vertex cone cut out by the given outer normals.
bool in_cone(const std::vector<IntVector>& outer_normals, const IntVector& x) {
  for (const auto& nrm : outer_normals)
    if (pairing(nrm, x) > 0) return false;
  return true;
}

// Decides membership of `target` in the semigroup generated by `gens`
// (nonzero elements of the pointed vertex cone) by depth-first search.
// Every partial remainder must stay in the cone; that both prunes and
// bounds the search, since the sum of the inner normals is strictly
// positive on the cone minus the origin.
class SemigroupMembership {
 public:
  SemigroupMembership(std::vector<IntVector> gens,
                      std::vector<IntVector> outer_normals)
      : gens_(std::move(gens)), normals_(std::move(outer_normals)) {}

  bool contains(const IntVector& target) {
    if (target.isZero()) return true;
    if (!in_cone(normals_, target)) return false;
    return search(target, 0);
  }

 private:
  bool search(const IntVector& rem, size_t i) {
    if (rem.isZero()) return true;
    if (i == gens_.size()) return false;
    std::vector<Int> key(rem.data(), rem.data() + rem.size());
    auto memo = failed_.find({key, i});
    if (memo != failed_.end()) return false;
    IntVector cur = rem;
    for (;;) {
      if (search(cur, i + 1)) return true;
      cur -= gens_[i];
      if (!in_cone(normals_, cur)) break;
    }
    failed_.insert({std::move(key), i});
    return false;
  }

  std::vector<IntVector> gens_;
  std::vector<IntVector> normals_;
  std::set<std::pair<std::vector<Int>, size_t>> failed_;
};

}  // namespace

LatticePolytope::LatticePolytope(Index dim, std::vector<IntVector> vertices)
    : dim_(dim), vertices_(std::move(vertices)) {
  if (dim_ < 1) throw InvalidPolytope("polytope dimension must be at least 1");
  const int v = static_cast<int>(vertices_.size());
  for (int i = 0; i < v; ++i) {
    if (vertices_[static_cast<size_t>(i)].size() != dim_)
      throw InvalidPolytope("vertex " + std::to_string(i) +
                            " has wrong dimension");
    for (int j = 0; j < i; ++j)
      if (vertices_[static_cast<size_t>(j)] == vertices_[static_cast<size_t>(i)])
        throw InvalidPolytope("vertex " + std::to_string(i) +
                              " duplicates vertex " + std::to_string(j));
  }
  if (v < static_cast<int>(dim_) + 1)
    throw NotFullDimensional("fewer than dim+1 vertices");
  IntMatrix diffs(v - 1, dim_);
  for (int i = 1; i < v; ++i)
    diffs.row(i - 1) =
        (vertices_[static_cast<size_t>(i)] - vertices_[0]).transpose();
  if (rank(diffs) != dim_)
    throw NotFullDimensional("vertices span a proper affine subspace");

  facets_ = enumerate_facets(dim_, vertices_);

  // Every listed point must be a vertex: the normals of its tight facets
  // must span.
  for (int i = 0; i < v; ++i) {
    std::vector<int> act = active_facets(vertices_[static_cast<size_t>(i)]);
    IntMatrix normals(static_cast<Index>(act.size()), dim_);
    for (size_t k = 0; k < act.size(); ++k)
      normals.row(static_cast<Index>(k)) =
          facets_[static_cast<size_t>(act[k])].normal.transpose();
    if (rank(normals) != dim_)
      throw InvalidPolytope("point " + std::to_string(i) +
                            " is not a vertex of the convex hull");
  }
}

std::vector<int> LatticePolytope::active_facets(const IntVector& v) const {
  std::vector<int> out;
  for (size_t f = 0; f < facets_.size(); ++f)
    if (pairing(facets_[f].normal, v) == facets_[f].bound)
      out.push_back(static_cast<int>(f));
  return out;
}

std::vector<IntVector> lattice_points(const LatticePolytope& p) {
  const Index n = p.dim();
  IntVector lo = p.vertices().front(), hi = lo;
  for (const auto& v : p.vertices()) {
    for (Index c = 0; c < n; ++c) {
      if (v(c) < lo(c)) lo(c) = v(c);
      if (v(c) > hi(c)) hi(c) = v(c);
    }
  }
  std::vector<IntVector> out;
  IntVector x = lo;
  for (;;) {
    bool inside = true;
    for (const auto& f : p.facets()) {
      if (pairing(f.normal, x) > f.bound) {
        inside = false;
        break;
      }
    }
    if (inside) out.push_back(x);
    Index c = n - 1;
    while (c >= 0) {
      if (x(c) < hi(c)) {
        ++x(c);
        for (Index c2 = c + 1; c2 < n; ++c2) x(c2) = lo(c2);
        break;
      }
      --c;
    }
    if (c < 0) break;
  }
  return out;  // lexicographic by construction
}

std::vector<IntVector> vertex_edges(const LatticePolytope& p,
                                    const IntVector& v) {
  const auto& verts = p.vertices();
  if (std::find(verts.begin(), verts.end(), v) == verts.end())
    throw NotAVertex("vertex_edges: point is not a vertex of the polytope");
  std::vector<int> act_v = p.active_facets(v);
  std::vector<IntVector> out;
  for (const auto& w : verts) {
    if (w == v) continue;
    std::vector<int> act_w = p.active_facets(w);
    std::vector<int> common;
    std::set_intersection(act_v.begin(), act_v.end(), act_w.begin(),
                          act_w.end(), std::back_inserter(common));
    IntMatrix normals(static_cast<Index>(common.size()), p.dim());
    for (size_t k = 0; k < common.size(); ++k)
      normals.row(static_cast<Index>(k)) =
          p.facets()[static_cast<size_t>(common[k])].normal.transpose();
    if (rank(normals) == p.dim() - 1)
      out.push_back(primitive(w - v));
  }
  // Descending lex puts (1,0,..) before (0,1,..): edge-basis coordinates at
  // an axis-aligned vertex then agree with the ambient axes.
  std::sort(out.begin(), out.end(),
            [](const IntVector& a, const IntVector& b) { return lex_less(b, a); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<RectangleWitness> is_inscribed_in_rectangle(
    const LatticePolytope& p) {
  const Index n = p.dim();
  for (const auto& v0 : p.vertices()) {
    std::vector<IntVector> edges = vertex_edges(p, v0);
    if (static_cast<Index>(edges.size()) != n) continue;
    if (!is_lattice_basis(edges)) continue;
    bool ok = true;
    for (const auto& f : p.facets()) {
      if (pairing(f.normal, v0) == f.bound) continue;  // passes through v0
      for (const auto& e : edges) {
        if (pairing(f.normal, e) < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return RectangleWitness{v0, edges};
  }
  return std::nullopt;
}

VertexSemigroup vertex_semigroup(const LatticePolytope& p, const IntVector& v) {
  const auto& verts = p.vertices();
  if (std::find(verts.begin(), verts.end(), v) == verts.end())
    throw NotAVertex("vertex_semigroup: point is not a vertex");
  VertexSemigroup out{v, {}};
  for (const auto& m : lattice_points(p)) out.generators.push_back(m - v);
  return out;
}

bool is_very_ample(const LatticePolytope& p) {
  const Index n = p.dim();
  for (const auto& m : p.vertices()) {
    std::vector<IntVector> edges = vertex_edges(p, m);
    if (static_cast<Index>(edges.size()) == n && is_lattice_basis(edges))
      continue;  // unimodular vertex cone: semigroup is all of cone cap M

    std::vector<IntVector> outer;
    for (int f : p.active_facets(m))
      outer.push_back(p.facets()[static_cast<size_t>(f)].normal);
    std::vector<IntVector> gens;
    for (const auto& g : vertex_semigroup(p, m).generators)
      if (!g.isZero()) gens.push_back(g);

    // Saturated iff every lattice point of the half-open zonotope of the
    // edge directions belongs to the semigroup: any cone point splits into
    // an integer part (already in the semigroup) plus a zonotope point.
    // Scanning the whole zonotope box inside the cone is a superset and
    // equally conclusive, since any cone point outside the semigroup
    // disproves saturation.
    IntVector lo = IntVector::Zero(n), hi = IntVector::Zero(n);
    for (const auto& e : edges) {
      for (Index c = 0; c < n; ++c) {
        if (e(c) < 0) lo(c) += e(c);
        if (e(c) > 0) hi(c) += e(c);
      }
    }
    SemigroupMembership membership(gens, outer);
    IntVector z = lo;
    for (;;) {
      if (!z.isZero() && in_cone(outer, z) && !membership.contains(z))
        return false;
      Index c = n - 1;
      while (c >= 0) {
        if (z(c) < hi(c)) {
          ++z(c);
          for (Index c2 = c + 1; c2 < n; ++c2) z(c2) = lo(c2);
          break;
        }
        --c;
      }
      if (c < 0) break;
    }
  }
  return true;
}

Fan normal_fan(const LatticePolytope& p) {
  FanData data;
  data.dim = p.dim();
  for (const auto& f : p.facets()) data.rays.push_back(-f.normal);
  for (const auto& v : p.vertices()) data.max_cones.push_back(p.active_facets(v));
  data.asserted_complete = true;  // normal fans of full-dimensional polytopes
  return Fan(std::move(data));
}

}  // namespace toric
