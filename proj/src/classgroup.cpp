#include "toric/classgroup.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace toric {

namespace {

Int mod_pos(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return a / gcd_int(a, b) * b;
}

std::vector<Int> vec_key(const IntVector& v) {
  return {v.data(), v.data() + v.size()};
}

bool generators_less(const std::vector<ClassElement>& a,
                     const std::vector<ClassElement>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      class_less);
}

// Integer coordinates of v in the row lattice spanned by the rows of the
// Hermite form h (echelon, positive pivots); nullopt if v is outside.
std::optional<IntVector> coords_in_row_lattice(const IntMatrix& h, Index nrows,
                                               const IntVector& v) {
  IntVector cur = v;
  IntVector coeffs = IntVector::Zero(nrows);
  for (Index i = 0; i < nrows; ++i) {
    Index p = 0;
    while (p < h.cols() && h(i, p) == 0) ++p;
    if (p == h.cols()) break;
    if (cur(p) % h(i, p) != 0) return std::nullopt;
    Int c = cur(p) / h(i, p);
    coeffs(i) = c;
    if (c != 0) cur -= (c * h.row(i).transpose()).eval();
  }
  if (!cur.isZero()) return std::nullopt;
  return coeffs;
}

// A linear functional strictly positive on every one of the given nonzero
// vectors, when their cone is pointed; nullopt otherwise.  Works inside the
// span: candidates are the extreme rays of the dual cone, found on
// (d-1)-subsets of tight constraints; their sum is interior iff the cone is
// pointed.
std::optional<IntVector> strict_functional(const std::vector<IntVector>& vs) {
  const Index d = vs.front().size();
  std::set<std::vector<Int>> candidates;
  if (d == 1) {
    candidates.insert({Int(1)});
    candidates.insert({Int(-1)});
  } else {
    std::vector<int> subset(static_cast<size_t>(d - 1));
    for (Index i = 0; i < d - 1; ++i) subset[static_cast<size_t>(i)] = static_cast<int>(i);
    const int m = static_cast<int>(vs.size());
    auto next = [&]() {
      const int k = static_cast<int>(subset.size());
      for (int i = k - 1; i >= 0; --i) {
        if (subset[static_cast<size_t>(i)] < m - k + i) {
          ++subset[static_cast<size_t>(i)];
          for (int j = i + 1; j < k; ++j)
            subset[static_cast<size_t>(j)] = subset[static_cast<size_t>(j - 1)] + 1;
          return true;
        }
      }
      return false;
    };
    if (m < static_cast<int>(d) - 1) return std::nullopt;
    do {
      IntMatrix rows(d - 1, d);
      for (Index i = 0; i < d - 1; ++i)
        rows.row(i) = vs[static_cast<size_t>(subset[static_cast<size_t>(i)])]
                          .transpose();
      IntVector y = kernel_cross(rows);
      if (y.isZero()) continue;
      y = primitive(y);
      for (int sign = 0; sign < 2; ++sign) {
        IntVector cand = sign == 0 ? y : IntVector(-y);
        bool feasible = true;
        for (const auto& v : vs)
          if (pairing(cand, v) < 0) {
            feasible = false;
            break;
          }
        if (feasible) candidates.insert(vec_key(cand));
      }
    } while (next());
  }
  IntVector w = IntVector::Zero(d);
  for (const auto& key : candidates) {
    bool feasible = true;
    IntVector cand(d);
    for (Index i = 0; i < d; ++i) cand(i) = key[static_cast<size_t>(i)];
    for (const auto& v : vs)
      if (pairing(cand, v) < 0) {
        feasible = false;
        break;
      }
    if (feasible) w += cand;
  }
  for (const auto& v : vs)
    if (pairing(w, v) <= 0) return std::nullopt;
  return w;
}

}  // namespace

bool ClassElement::is_zero() const {
  if (!free_part.isZero()) return false;
  for (const auto& t : torsion_part)
    if (t != 0) return false;
  return true;
}

bool class_less(const ClassElement& a, const ClassElement& b) {
  for (Index i = 0; i < a.free_part.size(); ++i) {
    if (a.free_part(i) != b.free_part(i))
      return a.free_part(i) < b.free_part(i);
  }
  return a.torsion_part < b.torsion_part;
}

ClassGroup::ClassGroup(const Fan& f) : ray_matrix_(f.ray_matrix()) {
  const Index n = f.dim();
  const Index r = ray_matrix_.rows();
  if (rank(ray_matrix_) < n)
    throw RaysDoNotSpan("class_group: ray generators do not span N_Q");
  SmithDecomposition d = snf(ray_matrix_);
  snf_u_ = d.U;
  const Index k = static_cast<Index>(d.invariants.size());  // = n here
  for (Index i = 0; i < k; ++i) {
    if (d.invariants[static_cast<size_t>(i)] >= 2) {
      torsion_.push_back(d.invariants[static_cast<size_t>(i)]);
      torsion_rows_.push_back(i);
    }
  }
  for (Index i = k; i < r; ++i) free_rows_.push_back(i);
  free_rank_ = r - k;
  for (Index i = 0; i < r; ++i) {
    IntVector e = IntVector::Zero(r);
    e(i) = 1;
    divisor_classes_.push_back(project(e));
  }
}

ClassElement ClassGroup::project(const IntVector& x) const {
  if (x.size() != ray_matrix_.rows())
    throw DimMismatch("project: expected a vector of length r");
  IntVector y = snf_u_ * x;
  ClassElement out;
  out.free_part.resize(free_rank_);
  for (Index i = 0; i < free_rank_; ++i)
    out.free_part(i) = y(free_rows_[static_cast<size_t>(i)]);
  out.torsion_part.reserve(torsion_.size());
  for (size_t j = 0; j < torsion_.size(); ++j)
    out.torsion_part.push_back(
        mod_pos(y(torsion_rows_[j]), torsion_[j]));
  return out;
}

ClassElement ClassGroup::zero() const {
  ClassElement out;
  out.free_part = IntVector::Zero(free_rank_);
  out.torsion_part.assign(torsion_.size(), 0);
  return out;
}

ClassElement ClassGroup::add(const ClassElement& a, const ClassElement& b) const {
  ClassElement out;
  out.free_part = a.free_part + b.free_part;
  out.torsion_part.reserve(torsion_.size());
  for (size_t j = 0; j < torsion_.size(); ++j)
    out.torsion_part.push_back(
        mod_pos(a.torsion_part[j] + b.torsion_part[j], torsion_[j]));
  return out;
}

ClassElement ClassGroup::subtract(const ClassElement& a,
                                  const ClassElement& b) const {
  ClassElement out;
  out.free_part = a.free_part - b.free_part;
  out.torsion_part.reserve(torsion_.size());
  for (size_t j = 0; j < torsion_.size(); ++j)
    out.torsion_part.push_back(
        mod_pos(a.torsion_part[j] - b.torsion_part[j], torsion_[j]));
  return out;
}

ClassElement ClassGroup::scale(const Int& k, const ClassElement& a) const {
  ClassElement out;
  out.free_part = k * a.free_part;
  out.torsion_part.reserve(torsion_.size());
  for (size_t j = 0; j < torsion_.size(); ++j)
    out.torsion_part.push_back(mod_pos(k * a.torsion_part[j], torsion_[j]));
  return out;
}

std::optional<Int> ClassGroup::element_order(const ClassElement& a) const {
  if (!a.free_part.isZero()) return std::nullopt;
  Int order = 1;
  for (size_t j = 0; j < torsion_.size(); ++j) {
    Int d = torsion_[j] / gcd_int(torsion_[j], a.torsion_part[j]);
    order = lcm_int(order, d);
  }
  return order;
}

ClassMonoid make_monoid(std::vector<ClassElement> generators,
                        std::vector<Int> torsion) {
  std::sort(generators.begin(), generators.end(), class_less);
  generators.erase(std::unique(generators.begin(), generators.end()),
                   generators.end());
  ClassMonoid out;
  out.generators = std::move(generators);
  out.torsion = std::move(torsion);
  return out;
}

ClassMonoid gamma_monoid(const Fan& f, const Cone& tau, const ClassGroup& cg) {
  auto cones = all_cones(f);
  if (std::find(cones.begin(), cones.end(), tau) == cones.end())
    throw ConeNotInFan("gamma_monoid: " + cone_label(tau) +
                       " is not a cone of the fan");
  std::vector<ClassElement> gens;
  std::vector<int> complement;
  for (int i = 0; i < f.num_rays(); ++i) {
    if (!tau.contains(i)) {
      complement.push_back(i);
      gens.push_back(cg.divisor_class(i));
    }
  }
  ClassMonoid out = make_monoid(std::move(gens), cg.torsion());
  out.origin = tau;
  out.complement_rays = std::move(complement);
  return out;
}

namespace {

// Depth-first membership search over the generators with nonzero free part,
// working in integer coordinates of the span of those free parts.  Either a
// strict functional bounds the search (pointed cone), or a total
// coefficient budget does.
class MembershipSearch {
 public:
  MembershipSearch(const std::vector<IntVector>& free_gens_span,
                   const std::vector<std::vector<Int>>& gen_torsion,
                   const std::set<std::vector<Int>>& torsion_closure,
                   const std::vector<Int>& moduli,
                   std::optional<IntVector> functional,
                   std::optional<long long> budget)
      : gens_(free_gens_span),
        gen_torsion_(gen_torsion),
        closure_(torsion_closure),
        moduli_(moduli),
        w_(std::move(functional)),
        budget_(budget) {}

  bool decide(const IntVector& target_free, const std::vector<Int>& target_tor,
              bool* out_exhausted) {
    exhausted_ = false;
    bool found = search(target_free, target_tor, 0,
                        budget_ ? *budget_ : 0);
    *out_exhausted = exhausted_ && !found;
    return found;
  }

 private:
  bool torsion_reachable(const std::vector<Int>& t) const {
    return closure_.count(t) > 0;
  }

  bool search(const IntVector& rem_free, const std::vector<Int>& rem_tor,
              size_t i, long long budget_left) {
    if (i == gens_.size())
      return rem_free.isZero() && torsion_reachable(rem_tor);
    if (w_ && pairing(*w_, rem_free) < 0) return false;
    std::pair<std::vector<Int>, size_t> memo_key{vec_key(rem_free), i};
    // The torsion remainder is folded into the key as well.
    memo_key.first.insert(memo_key.first.end(), rem_tor.begin(),
                          rem_tor.end());
    if (failed_.count(memo_key)) return false;
    const bool exhausted_before = exhausted_;
    IntVector cur = rem_free;
    std::vector<Int> cur_tor = rem_tor;
    long long used = 0;
    for (;;) {
      if (search(cur, cur_tor, i + 1, budget_left - used)) return true;
      if (w_) {
        if (pairing(*w_, cur) < pairing(*w_, gens_[i])) break;
      } else {
        if (used >= budget_left) {
          exhausted_ = true;
          break;
        }
      }
      cur -= gens_[i];
      for (size_t j = 0; j < moduli_.size(); ++j)
        cur_tor[j] = mod_pos(cur_tor[j] - gen_torsion_[i][j], moduli_[j]);
      ++used;
    }
    // A failure is only definitive (and cacheable) if no branch below ran
    // out of budget.
    if (exhausted_ == exhausted_before) failed_.insert(std::move(memo_key));
    return false;
  }

  const std::vector<IntVector>& gens_;
  const std::vector<std::vector<Int>>& gen_torsion_;
  const std::set<std::vector<Int>>& closure_;
  const std::vector<Int>& moduli_;
  std::optional<IntVector> w_;
  std::optional<long long> budget_;
  bool exhausted_ = false;
  std::set<std::pair<std::vector<Int>, size_t>> failed_;
};

}  // namespace

bool monoid_contains(const ClassMonoid& m, const ClassElement& x,
                     const MonoidSearchOptions& opts) {
  if (x.is_zero()) return true;

  std::vector<IntVector> free_gens;
  std::vector<std::vector<Int>> free_gen_torsion;
  std::vector<std::vector<Int>> pure_torsion;
  for (const auto& g : m.generators) {
    if (g.is_zero()) continue;
    if (g.free_part.isZero()) {
      pure_torsion.push_back(g.torsion_part);
    } else {
      free_gens.push_back(g.free_part);
      free_gen_torsion.push_back(g.torsion_part);
    }
  }

  // The pure-torsion generators generate a subgroup of the torsion part
  // (every element of a finite group generated as a monoid has its inverse
  // as a power); close it off once by breadth-first search.
  std::set<std::vector<Int>> closure;
  {
    std::vector<Int> zero(m.torsion.size(), 0);
    closure.insert(zero);
    std::vector<std::vector<Int>> frontier{zero};
    while (!frontier.empty()) {
      auto cur = frontier.back();
      frontier.pop_back();
      for (const auto& t : pure_torsion) {
        std::vector<Int> nxt(cur.size());
        for (size_t j = 0; j < cur.size(); ++j)
          nxt[j] = mod_pos(cur[j] + t[j], m.torsion[j]);
        if (closure.insert(nxt).second) frontier.push_back(nxt);
      }
    }
  }

  if (free_gens.empty()) {
    if (!x.free_part.isZero()) return false;
    return closure.count(x.torsion_part) > 0;
  }

  // Work in coordinates of the lattice spanned by the free parts.
  IntMatrix stacked = rows_to_matrix(free_gens);
  HermiteForm h = hnf(stacked);
  Index span_rank = 0;
  for (Index i = 0; i < h.H.rows(); ++i)
    if (!h.H.row(i).isZero()) ++span_rank;
  std::vector<IntVector> gens_span;
  for (const auto& g : free_gens) {
    auto c = coords_in_row_lattice(h.H, span_rank, g);
    gens_span.push_back(c->head(span_rank));
  }
  auto target_coords = coords_in_row_lattice(h.H, span_rank, x.free_part);
  if (!target_coords.has_value()) return false;  // not even in the lattice
  IntVector target_span = target_coords->head(span_rank);

  std::optional<IntVector> w = strict_functional(gens_span);
  if (!w.has_value() && !opts.bound.has_value())
    throw Inconclusive(
        "monoid_contains: generator cone is not pointed and no search bound "
        "was supplied");
  if (w.has_value() && pairing(*w, target_span) < 0) return false;

  MembershipSearch search(gens_span, free_gen_torsion, closure, m.torsion, w,
                          w.has_value() ? std::nullopt : opts.bound);
  bool exhausted = false;
  bool found = search.decide(target_span, x.torsion_part, &exhausted);
  if (!found && exhausted)
    throw Inconclusive("monoid_contains: search bound exhausted");
  return found;
}

bool monoids_equal(const ClassMonoid& a, const ClassMonoid& b,
                   const MonoidSearchOptions& opts) {
  if (a.generators == b.generators) return true;
  for (const auto& g : a.generators)
    if (!monoid_contains(b, g, opts)) return false;
  for (const auto& g : b.generators)
    if (!monoid_contains(a, g, opts)) return false;
  return true;
}

Upsilon upsilon(const Fan& f, const ClassGroup& cg,
                const MonoidSearchOptions& opts) {
  Upsilon out;
  out.cones = all_cones(f);
  std::vector<ClassMonoid> monoids;
  monoids.reserve(out.cones.size());
  for (const auto& tau : out.cones) monoids.push_back(gamma_monoid(f, tau, cg));

  std::vector<std::vector<size_t>> classes;  // member indices
  std::vector<int> assignment(monoids.size(), -1);
  for (size_t i = 0; i < monoids.size(); ++i) {
    for (size_t c = 0; c < classes.size(); ++c) {
      if (monoids_equal(monoids[classes[c].front()], monoids[i], opts)) {
        assignment[i] = static_cast<int>(c);
        classes[c].push_back(i);
        break;
      }
    }
    if (assignment[i] < 0) {
      assignment[i] = static_cast<int>(classes.size());
      classes.push_back({i});
    }
  }

  // Representative: the member with the lexicographically least generator
  // set.  Classes are then ordered by their representatives.
  std::vector<size_t> rep_of_class(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) {
    size_t best = classes[c].front();
    for (size_t m : classes[c])
      if (generators_less(monoids[m].generators, monoids[best].generators))
        best = m;
    rep_of_class[c] = best;
  }
  std::vector<int> order(classes.size());
  for (size_t c = 0; c < classes.size(); ++c) order[c] = static_cast<int>(c);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return generators_less(monoids[rep_of_class[static_cast<size_t>(a)]].generators,
                           monoids[rep_of_class[static_cast<size_t>(b)]].generators);
  });
  std::vector<int> new_id(classes.size());
  for (size_t pos = 0; pos < order.size(); ++pos)
    new_id[static_cast<size_t>(order[pos])] = static_cast<int>(pos);

  out.assignment.resize(monoids.size());
  for (size_t i = 0; i < monoids.size(); ++i)
    out.assignment[i] = new_id[static_cast<size_t>(assignment[i])];
  out.representatives.resize(classes.size(),
                             ClassMonoid{{}, cg.torsion(), Cone{}, {}});
  for (size_t c = 0; c < classes.size(); ++c)
    out.representatives[static_cast<size_t>(new_id[c])] =
        monoids[rep_of_class[c]];
  return out;
}

std::vector<std::vector<int>> admissible_ray_permutations(
    const Fan& f, const ClassGroup& cg, const Upsilon& ups,
    const MonoidSearchOptions& opts) {
  const int r = f.num_rays();

  // Canonical form of the image lattice of M inside Z^r (spanned by the
  // columns of the ray matrix).
  IntMatrix basis = cg.ray_matrix().transpose();  // n x r rows span the lattice
  IntMatrix lattice_canon = hnf(basis).H;

  // Pattern of equal divisor classes; lattice preservation implies the
  // pattern is respected, so this is a cheap pre-filter.
  std::vector<int> cls(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) {
    cls[static_cast<size_t>(i)] = i;
    for (int j = 0; j < i; ++j)
      if (cg.divisor_class(j) == cg.divisor_class(i)) {
        cls[static_cast<size_t>(i)] = j;
        break;
      }
  }

  std::vector<std::vector<int>> out;
  std::vector<int> perm(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) perm[static_cast<size_t>(i)] = i;
  do {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      int ci = cls[static_cast<size_t>(i)];
      if (ci != i &&
          cg.divisor_class(perm[static_cast<size_t>(ci)]) !=
              cg.divisor_class(perm[static_cast<size_t>(i)]))
        ok = false;
      if (ok && cg.element_order(cg.divisor_class(i)) !=
                    cg.element_order(cg.divisor_class(perm[static_cast<size_t>(i)])))
        ok = false;
    }
    if (!ok) continue;

    // The permutation action on Z^r must preserve the image lattice of M.
    IntMatrix permuted(basis.rows(), basis.cols());
    for (int i = 0; i < r; ++i)
      permuted.col(perm[static_cast<size_t>(i)]) = basis.col(i);
    if (hnf(permuted).H != lattice_canon) continue;

    // phi must permute Upsilon(Delta): the image of every representative
    // monoid must again be one of the representatives.
    bool permutes = true;
    for (const auto& rep : ups.representatives) {
      std::vector<ClassElement> img;
      for (int i : rep.complement_rays)
        img.push_back(cg.divisor_class(perm[static_cast<size_t>(i)]));
      ClassMonoid image = make_monoid(std::move(img), cg.torsion());
      bool hit = false;
      for (const auto& other : ups.representatives) {
        if (monoids_equal(image, other, opts)) {
          hit = true;
          break;
        }
      }
      if (!hit) {
        permutes = false;
        break;
      }
    }
    if (permutes) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const Upsilon& ups, const std::vector<std::vector<int>>& admissible,
    const MonoidSearchOptions& opts) {
  const auto& cones = ups.cones;
  if (std::find(cones.begin(), cones.end(), sigma) == cones.end())
    throw ConeNotInFan("bazhov_equivalent: " + cone_label(sigma));
  if (std::find(cones.begin(), cones.end(), sigma2) == cones.end())
    throw ConeNotInFan("bazhov_equivalent: " + cone_label(sigma2));
  const int r = f.num_rays();
  ClassMonoid target = gamma_monoid(f, sigma2, cg);

  for (const auto& perm : admissible) {
    // phi(Gamma(sigma)) = Gamma(sigma2).
    std::vector<ClassElement> image_gens;
    for (int i = 0; i < r; ++i)
      if (!sigma.contains(i))
        image_gens.push_back(cg.divisor_class(perm[static_cast<size_t>(i)]));
    if (!monoids_equal(make_monoid(std::move(image_gens), cg.torsion()),
                       target, opts))
      continue;

    OrbitEquivalenceWitness w;
    w.ray_permutation = perm;
    IntMatrix p = IntMatrix::Zero(r, r);
    for (int i = 0; i < r; ++i) p(perm[static_cast<size_t>(i)], i) = 1;
    w.automorphism =
        cg.snf_row_transform() * p * unimodular_inverse(cg.snf_row_transform());
    return w;
  }
  return std::nullopt;
}

std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const Upsilon& ups, const MonoidSearchOptions& opts) {
  return bazhov_equivalent(f, sigma, sigma2, cg, ups,
                           admissible_ray_permutations(f, cg, ups, opts), opts);
}

std::optional<OrbitEquivalenceWitness> bazhov_equivalent(
    const Fan& f, const Cone& sigma, const Cone& sigma2, const ClassGroup& cg,
    const MonoidSearchOptions& opts) {
  return bazhov_equivalent(f, sigma, sigma2, cg, upsilon(f, cg, opts), opts);
}

}  // namespace toric
