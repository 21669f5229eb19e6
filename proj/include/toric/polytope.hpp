#pragma once

#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"

// Full-dimensional lattice polytopes in M: facets, lattice points,
// very-ampleness of the vertex semigroups, the inscribed-in-a-rectangle
// criterion, and the normal fan.

namespace toric {

// <normal, x> <= bound, with primitive outer normal; equality holds on an
// (n-1)-dimensional face.
struct FacetInequality {
  IntVector normal;
  Int bound;

  friend bool operator==(const FacetInequality&, const FacetInequality&) = default;
};

// A vertex v0 whose primitive edge directions form a lattice basis such
// that every facet not through v0 pairs nonnegatively with each of them.
struct RectangleWitness {
  IntVector v0;
  std::vector<IntVector> edge_basis;
};

// The semigroup datum at a vertex: generators are (P cap M) - vertex.
struct VertexSemigroup {
  IntVector vertex;
  std::vector<IntVector> generators;
};

class LatticePolytope {
 public:
  // Validates that the points are pairwise distinct, span affinely, and
  // are each a vertex of the convex hull.
  LatticePolytope(Index dim, std::vector<IntVector> vertices);

  Index dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }

  // Complete irredundant facet description, ordered lexicographically by
  // (normal, bound).
  const std::vector<FacetInequality>& facets() const { return facets_; }

  // Indices into facets() of the inequalities tight at the given vertex.
  std::vector<int> active_facets(const IntVector& v) const;

 private:
  Index dim_;
  std::vector<IntVector> vertices_;
  std::vector<FacetInequality> facets_;
};

// Free-function facet access, mirroring the other per-polytope operations.
inline const std::vector<FacetInequality>& facets(const LatticePolytope& p) {
  return p.facets();
}

// All lattice points of the polytope in lexicographic order.
std::vector<IntVector> lattice_points(const LatticePolytope& p);

// Primitive directions of the edges incident to the vertex v, ordered
// lexicographically.
std::vector<IntVector> vertex_edges(const LatticePolytope& p, const IntVector& v);

// The first vertex (in input order) satisfying the inscribed-in-a-rectangle
// conditions, with its edge basis; nullopt if none.
std::optional<RectangleWitness> is_inscribed_in_rectangle(const LatticePolytope& p);

// The semigroup datum at a vertex of p.
VertexSemigroup vertex_semigroup(const LatticePolytope& p, const IntVector& v);

// True iff the vertex semigroup S_{P,m} is saturated at every vertex m,
// i.e. equals (vertex cone) cap M.  Decided finitely: it suffices to test
// the lattice points of the box of the edge-direction zonotope at m.
bool is_very_ample(const LatticePolytope& p);

// The complete fan of primitive inner facet normals; the maximal cone at a
// vertex consists of the rays of the facets through it.
Fan normal_fan(const LatticePolytope& p);

}  // namespace toric
