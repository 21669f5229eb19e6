#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "toric/classgroup.hpp"
#include "toric/polytope.hpp"

// The top layer: monomial fundamental forms and symbol systems, the
// scalar one-parameter action at a distinguished vertex, Euler
// classification of torus orbits, and the Euler-symmetry decision.

namespace toric {

// The exponent set D(F) of a monomial fundamental form, graded by total
// degree.  Exponents are kept in lexicographic order.
struct MonomialSymbolSystem {
  Index n = 0;
  std::vector<IntVector> exponents;
  std::map<long long, std::vector<IntVector>> grading;
};

// Builds the graded structure from a raw exponent set (no validity check).
MonomialSymbolSystem make_symbol_system(Index n, std::vector<IntVector> exponents);

// D(F) = (P cap M) - v0 in edge-basis coordinates.  The witness is
// re-validated; a stale or foreign witness throws InvalidWitness.
MonomialSymbolSystem fundamental_form(const LatticePolytope& p,
                                      const RectangleWitness& w);

// Checks the symbol-system axioms for a monomial exponent set: 0 and all
// unit vectors present, closure under every coordinate decrement (the
// monomial form of contraction-closedness), finiteness, consistent grading.
bool is_symbol_system(const MonomialSymbolSystem& s);

// The one-parameter subgroup that fixes the distinguished vertex isolatedly
// and acts by scalars on the tangent space: lambda is the sum of the dual
// basis of the edge basis, and each lattice point of P gets weight
// <lambda, m - v0> = its total degree in D(F).
struct EulerAction {
  IntVector lambda;
  std::vector<Int> ambient_weights;  // one per lattice point, in lex order
};

EulerAction euler_action(const LatticePolytope& p, const RectangleWitness& w);

// Per-orbit classification record.  `euler` is set only for smooth cones;
// a true flag carries the smooth maximal cone and automorphism witness that
// move the orbit onto a torus-fixed point.
struct OrbitRecord {
  Cone cone;
  bool smooth = false;
  std::optional<bool> euler;
  std::optional<std::pair<Cone, OrbitEquivalenceWitness>> witness;
};

struct EulerOrbitReport {
  std::vector<OrbitRecord> records;
};

// Classifies every torus orbit: an orbit with smooth closure datum is Euler
// iff some automorphism of Cl(X) moves it onto a smooth torus-fixed point.
EulerOrbitReport classify_euler_orbits(const Fan& f,
                                       const MonoidSearchOptions& opts = {});

// A complete toric variety is Euler-symmetric iff it admits an additive
// action; a very ample polytope is Euler-symmetric iff it is inscribed in a
// rectangle.  The two routes agree on (P, normal_fan(P)) pairs.
bool is_euler_symmetric(const Fan& f);
bool is_euler_symmetric(const LatticePolytope& p);

}  // namespace toric
