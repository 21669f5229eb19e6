#pragma once

#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"

// The divisor class group Cl(X) as the cokernel of the ray-evaluation map
// M -> Z^r, the monoids Gamma(tau) generated by classes of rays outside a
// cone, and the orbit-equivalence test on Cl(X) automorphisms induced by
// ray permutations.

namespace toric {

// An element of Cl(X) in the Smith presentation: a free part in Z^k and one
// residue in [0, d_j) per torsion factor.
struct ClassElement {
  IntVector free_part;
  std::vector<Int> torsion_part;

  bool is_zero() const;
  friend bool operator==(const ClassElement&, const ClassElement&) = default;
};

// Strict total order (free part, then residues, lexicographically).
bool class_less(const ClassElement& a, const ClassElement& b);

class ClassGroup {
 public:
  explicit ClassGroup(const Fan& f);

  Index free_rank() const { return free_rank_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  int num_rays() const { return static_cast<int>(divisor_classes_.size()); }
  const ClassElement& divisor_class(int i) const {
    return divisor_classes_[static_cast<size_t>(i)];
  }

  // Image of x in Cl(X) = Z^r / image(M).
  ClassElement project(const IntVector& x) const;

  ClassElement zero() const;
  ClassElement add(const ClassElement& a, const ClassElement& b) const;
  ClassElement subtract(const ClassElement& a, const ClassElement& b) const;
  ClassElement scale(const Int& k, const ClassElement& a) const;

  // Order of the element in Cl(X); nullopt when infinite.
  std::optional<Int> element_order(const ClassElement& a) const;

  // Row transform of the Smith decomposition of the ray matrix; the class
  // coordinates are rows of U applied to Z^r.
  const IntMatrix& snf_row_transform() const { return snf_u_; }
  const IntMatrix& ray_matrix() const { return ray_matrix_; }

 private:
  IntMatrix ray_matrix_;  // r x n, rows are the primitive generators
  IntMatrix snf_u_;       // r x r
  Index free_rank_;
  std::vector<Int> torsion_;        // invariant factors >= 2
  std::vector<Index> torsion_rows_; // rows of U giving torsion coordinates
  std::vector<Index> free_rows_;    // rows of U giving free coordinates
  std::vector<ClassElement> divisor_classes_;
};

inline ClassGroup class_group(const Fan& f) { return ClassGroup(f); }

// The monoid Gamma(tau), generated by the classes of the rays outside tau.
// Generators are canonicalized (sorted, duplicates collapsed).
struct ClassMonoid {
  std::vector<ClassElement> generators;
  std::vector<Int> torsion;      // moduli of the ambient class group
  Cone origin;                   // the cone tau
  std::vector<int> complement_rays;
};

ClassMonoid gamma_monoid(const Fan& f, const Cone& tau, const ClassGroup& cg);

// Builds a standalone monoid from explicit generators (used for images of
// monoids under ray permutations and in tests).
ClassMonoid make_monoid(std::vector<ClassElement> generators,
                        std::vector<Int> torsion);

struct MonoidSearchOptions {
  // Cap on the total coefficient sum when the generator cone is not
  // pointed; membership in a pointed cone terminates unconditionally and
  // ignores the bound.
  std::optional<long long> bound;
};

// True iff x is a nonnegative integer combination of the generators,
// torsion residues matched modulo the invariant factors.  Throws
// Inconclusive when the free-part cone is not pointed and either no bound
// is supplied or it runs out.
bool monoid_contains(const ClassMonoid& m, const ClassElement& x,
                     const MonoidSearchOptions& opts = {});

// Mutual containment of generators.
bool monoids_equal(const ClassMonoid& a, const ClassMonoid& b,
                   const MonoidSearchOptions& opts = {});

// The set Upsilon(Delta) of monoids Gamma(tau) over all cones, grouped into
// equality classes.  Classes are ordered by their lexicographically least
// generator set; `assignment[i]` is the class of `cones[i]`.
struct Upsilon {
  std::vector<Cone> cones;
  std::vector<int> assignment;
  std::vector<ClassMonoid> representatives;
};

Upsilon upsilon(const Fan& f, const ClassGroup& cg,
                const MonoidSearchOptions& opts = {});

// A certificate that two torus orbits lie in the same Aut(X)-orbit: a ray
// permutation whose action on Z^r preserves the image lattice of M, so it
// descends to an automorphism of Cl(X).  The matrix acts on the Smith
// coordinates (rows of U).
struct OrbitEquivalenceWitness {
  std::vector<int> ray_permutation;
  IntMatrix automorphism;
};

// All ray permutations whose action on Z^r preserves the image lattice of
// M (so they induce automorphisms of Cl(X)) and which permute
// Upsilon(Delta).  These conditions do not depend on the cone pair being
// compared, so the list is computed once per fan and shared across
// equivalence queries.  Lexicographic order.
std::vector<std::vector<int>> admissible_ray_permutations(
    const Fan& f, const ClassGroup& cg, const Upsilon& ups,
    const MonoidSearchOptions& opts = {});

// Searches ray permutations for an automorphism phi of Cl(X) with
// phi(Gamma(sigma)) = Gamma(sigma2), phi permuting Upsilon(Delta), and
// phi([D_i]) = [D_{f(i)}].  Returns the first witness in lexicographic
// permutation order, or nullopt.
std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const MonoidSearchOptions& opts = {});

// Same search with a precomputed Upsilon (avoids recomputing it per call).
std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const Upsilon& ups, const MonoidSearchOptions& opts = {});

// Same search over a precomputed admissible-permutation list.
std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const Upsilon& ups, const std::vector<std::vector<int>>& admissible,
    const MonoidSearchOptions& opts = {});

}  // namespace toric
