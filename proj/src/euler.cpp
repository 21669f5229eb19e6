#include "toric/euler.hpp"

#include <algorithm>
#include <set>

namespace toric {

namespace {

bool lex_less(const IntVector& a, const IntVector& b) {
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

long long degree_of(const IntVector& a) {
  Int s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i);
  return s.convert_to<long long>();
}

void validate_witness(const LatticePolytope& p, const RectangleWitness& w) {
  const auto& verts = p.vertices();
  if (std::find(verts.begin(), verts.end(), w.v0) == verts.end())
    throw InvalidWitness("witness vertex is not a vertex of the polytope");
  std::vector<IntVector> edges = vertex_edges(p, w.v0);
  if (w.edge_basis.size() != edges.size() ||
      w.edge_basis.size() != static_cast<size_t>(p.dim()))
    throw InvalidWitness("witness edge basis does not list the vertex edges");
  for (const auto& e : w.edge_basis)
    if (std::find(edges.begin(), edges.end(), e) == edges.end())
      throw InvalidWitness("witness edge basis does not list the vertex edges");
  if (!is_lattice_basis(w.edge_basis))
    throw InvalidWitness("witness edge directions are not a lattice basis");
  for (const auto& f : p.facets()) {
    if (pairing(f.normal, w.v0) == f.bound) continue;
    for (const auto& e : w.edge_basis)
      if (pairing(f.normal, e) < 0)
        throw InvalidWitness(
            "a facet away from the witness vertex pairs negatively with an "
            "edge direction");
  }
}

}  // namespace

MonomialSymbolSystem make_symbol_system(Index n,
                                        std::vector<IntVector> exponents) {
  std::sort(exponents.begin(), exponents.end(), lex_less);
  exponents.erase(std::unique(exponents.begin(), exponents.end()),
                  exponents.end());
  MonomialSymbolSystem out;
  out.n = n;
  out.exponents = std::move(exponents);
  for (const auto& a : out.exponents) out.grading[degree_of(a)].push_back(a);
  return out;
}

MonomialSymbolSystem fundamental_form(const LatticePolytope& p,
                                      const RectangleWitness& w) {
  validate_witness(p, w);
  std::vector<IntVector> exps;
  for (const auto& m : lattice_points(p))
    exps.push_back(coords_in_basis(w.edge_basis, IntVector(m - w.v0)));
  return make_symbol_system(p.dim(), std::move(exps));
}

bool is_symbol_system(const MonomialSymbolSystem& s) {
  if (s.n < 1 || s.exponents.empty()) return false;
  std::set<std::vector<Int>> have;
  for (const auto& a : s.exponents) {
    if (a.size() != s.n) return false;
    for (Index i = 0; i < s.n; ++i)
      if (a(i) < 0) return false;
    have.insert({a.data(), a.data() + a.size()});
  }
  auto contains = [&](const IntVector& a) {
    return have.count({a.data(), a.data() + a.size()}) > 0;
  };
  // W^0 = C and W^1 = V^*: the origin and every unit vector.
  if (!contains(IntVector::Zero(s.n))) return false;
  for (Index i = 0; i < s.n; ++i) {
    IntVector unit = IntVector::Zero(s.n);
    unit(i) = 1;
    if (!contains(unit)) return false;
  }
  // Contraction-closed: every coordinate decrement stays inside.
  for (const auto& a : s.exponents) {
    for (Index i = 0; i < s.n; ++i) {
      if (a(i) > 0) {
        IntVector down = a;
        down(i) -= 1;
        if (!contains(down)) return false;
      }
    }
  }
  // Grading is by total degree and covers the set exactly.
  size_t graded = 0;
  for (const auto& [deg, members] : s.grading) {
    for (const auto& a : members) {
      if (degree_of(a) != deg || !contains(a)) return false;
      ++graded;
    }
  }
  return graded == s.exponents.size();
}

EulerAction euler_action(const LatticePolytope& p, const RectangleWitness& w) {
  validate_witness(p, w);
  std::vector<IntVector> duals = dual_basis(w.edge_basis);
  EulerAction out;
  out.lambda = IntVector::Zero(p.dim());
  for (const auto& d : duals) out.lambda += d;
  for (const auto& m : lattice_points(p))
    out.ambient_weights.push_back(pairing(out.lambda, IntVector(m - w.v0)));
  return out;
}

EulerOrbitReport classify_euler_orbits(const Fan& f,
                                       const MonoidSearchOptions& opts) {
  ClassGroup cg(f);
  Upsilon ups = upsilon(f, cg, opts);
  auto admissible = admissible_ray_permutations(f, cg, ups, opts);
  std::vector<Cone> fixed_points = smooth_max_cones(f);
  EulerOrbitReport report;
  for (const Cone& tau : ups.cones) {
    OrbitRecord rec;
    rec.cone = tau;
    rec.smooth = is_smooth_cone(f, tau);
    if (rec.smooth) {
      // Automorphisms preserve smoothness, so only smooth torus-fixed
      // points are candidate targets.
      rec.euler = false;
      for (const Cone& sigma : fixed_points) {
        if (auto w = bazhov_equivalent(f, tau, sigma, cg, ups, admissible, opts)) {
          rec.euler = true;
          rec.witness = std::make_pair(sigma, *w);
          break;
        }
      }
    }
    report.records.push_back(std::move(rec));
  }
  return report;
}

bool is_euler_symmetric(const Fan& f) {
  return admits_additive_action(f).has_value();
}

bool is_euler_symmetric(const LatticePolytope& p) {
  if (!is_very_ample(p))
    throw NotVeryAmple(
        "is_euler_symmetric: the polytope is not very ample, it does not "
        "define a projectively normal embedding");
  return is_inscribed_in_rectangle(p).has_value();
}

}  // namespace toric
