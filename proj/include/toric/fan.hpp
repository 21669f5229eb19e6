#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

// Fans of rational polyhedral cones and the additive-action criterion:
// Demazure roots, complete collections, smooth cones, face enumeration.

namespace toric {

// A ray of the fan; the generator is the primitive lattice vector on it.
struct Ray {
  IntVector generator;
};

// A cone, stored as the sorted, duplicate-free indices of its rays in the
// owning fan.  The empty index set is the trivial cone.
struct Cone {
  std::vector<int> ray_indices;

  bool contains(int i) const;
  friend bool operator==(const Cone& a, const Cone& b) = default;
  friend auto operator<=>(const Cone& a, const Cone& b) = default;
};

// Human-readable label following the sigma_{ij} convention (1-based).
std::string cone_label(const Cone& c);

enum class Completeness {
  verified,  // completeness checked exactly (dim <= 2)
  asserted,  // necessary conditions checked; completeness taken on faith
};

// Raw fan data as read from a file, before validation.
struct FanData {
  Index dim = 0;
  std::vector<IntVector> rays;
  std::vector<std::vector<int>> max_cones;
  bool asserted_complete = false;
};

struct FanIssue {
  enum class Kind {
    invalid_ray,
    invalid_cone,
    overlapping_cones,
    not_positively_spanning,
    not_complete,
  };
  Kind kind;
  std::string message;
};

struct FanDiagnostics {
  bool ok = false;
  Completeness completeness = Completeness::asserted;
  std::vector<FanIssue> issues;
};

// Checks every Ray/Cone/Fan invariant.  In dim <= 2 completeness is decided
// exactly (the 2-ray sectors must tile the plane without overlap); in
// dim >= 3 only the necessary positive-spanning condition is checked and
// completeness is recorded as asserted.
FanDiagnostics validate_fan(const FanData& data);

// A complete fan.  Construction validates; an invalid or (provably)
// incomplete fan does not construct.
class Fan {
 public:
  explicit Fan(FanData data);
  Fan(Index dim, std::vector<IntVector> rays,
      std::vector<std::vector<int>> max_cones, bool asserted_complete = false);

  Index dim() const { return dim_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const std::vector<Ray>& rays() const { return rays_; }
  const IntVector& ray(int i) const { return rays_[static_cast<size_t>(i)].generator; }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  Completeness completeness() const { return completeness_; }

  // r x n matrix whose rows are the primitive ray generators.
  IntMatrix ray_matrix() const;

 private:
  Index dim_;
  std::vector<Ray> rays_;
  std::vector<Cone> max_cones_;
  Completeness completeness_;
};

// True iff the ray generators positively span N_Q, i.e. the only y with
// <p, y> >= 0 for every ray generator p is y = 0.  Decided exactly by
// enumerating candidate extreme rays of the dual cone.
bool positively_spans(const std::vector<IntVector>& rays, Index dim);

// A Demazure root: <p_distinguished, e> = -1 and <p', e> >= 0 for every
// other ray generator p'.
struct DemazureRoot {
  IntVector e;
  int distinguished;

  friend bool operator==(const DemazureRoot&, const DemazureRoot&) = default;
};

// n roots pairing as -identity against n rays whose generators form a
// lattice basis; its existence characterizes additive actions.
struct CompleteCollection {
  std::vector<int> basis_rays;         // ascending ray indices
  std::vector<DemazureRoot> roots;     // roots[j] distinguished at basis_rays[j]
};

// All Demazure roots of the fan, each with its (unique) distinguished ray.
// Finite because the generators positively span.  Ordered by distinguished
// ray, then lexicographically by root vector.
std::vector<DemazureRoot> demazure_roots(const Fan& f);

// All complete collections: n-subsets of rays forming a lattice basis with
// every remaining ray in the closed negative octant of that basis.  Emitted
// in lexicographic order of basis_rays.
std::vector<CompleteCollection> complete_collections(const Fan& f);

// Engaged with the first complete collection iff the variety admits an
// additive action.
std::optional<CompleteCollection> admits_additive_action(const Fan& f);

// Maximal cones with exactly n rays whose generators form a lattice basis.
std::vector<Cone> smooth_max_cones(const Fan& f);

// True iff the cone's ray generators extend to a basis of N (all Smith
// invariants equal 1).  The trivial cone is smooth.
bool is_smooth_cone(const Fan& f, const Cone& c);

// All faces of all maximal cones, including the trivial cone and the rays,
// deduplicated and ordered by (size, lex).  Requires simplicial maximal
// cones in dim >= 3.
std::vector<Cone> all_cones(const Fan& f);

}  // namespace toric
