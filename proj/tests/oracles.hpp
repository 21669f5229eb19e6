#pragma once

#include <random>
#include <vector>

#include "toric/fan.hpp"
#include "toric/polytope.hpp"

// Brute-force oracles and golden data for the test suites.  Each oracle is
// an independent implementation of the property it checks; none of them
// share a code path with the operation under test.

namespace oracles {

// All Demazure roots of a 2D fan, found by walking each solution line
// <p, e> = -1 inside a provably sufficient box (an extended-gcd
// parametrization; the library solves rational vertex systems instead).
std::vector<toric::DemazureRoot> demazure_roots_2d(const toric::Fan& f);

// 2D completeness by probing one interior direction of every angular gap
// and testing exact cone membership.
bool fan_complete_2d(const std::vector<toric::IntVector>& rays,
                     const std::vector<std::vector<int>>& max_cones);

// Strictly convex hull of integer points, counterclockwise (monotone chain).
std::vector<toric::IntVector> convex_hull_2d(std::vector<toric::IntVector> pts);

// Random lattice polygon with coordinates in [0, coord_max]; at least 3
// vertices, counterclockwise.
toric::LatticePolytope random_polygon(std::mt19937& rng, int coord_max = 6);

// All lattice points of the box satisfying the facet inequalities (direct
// scan; no reuse of the library's enumeration order logic).
std::vector<toric::IntVector> box_points_satisfying(
    const std::vector<toric::FacetInequality>& facets, const toric::IntVector& lo,
    const toric::IntVector& hi);

// Saturation at one vertex by dynamic programming over a box: reachable
// sums of generators vs. cone membership, boxes up to twice the largest
// coordinate.  Returns false iff some cone point in the box is unreachable.
bool vertex_semigroup_saturated_boxed(const toric::LatticePolytope& p,
                                      const toric::IntVector& vertex);

// Golden fans.
toric::Fan p1_fan();
toric::Fan p2_fan();
toric::Fan p1xp1_fan();
toric::Fan hirzebruch_fan(long long s);
toric::Fan blowup_p1p1_fan();
toric::Fan five_ray_additive_fan();

// Golden polytopes.
toric::LatticePolytope unit_square();
toric::LatticePolytope unit_cube();
toric::LatticePolytope segment(long long a, long long b);
toric::LatticePolytope standard_triangle(long long scale);
toric::LatticePolytope inscribed_pentagon();
toric::LatticePolytope uninscribed_pentagon();
toric::LatticePolytope nonsaturated_simplex_3d();

}  // namespace oracles
