#include "toric/fan.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace toric {

namespace {

// Lexicographic enumeration of k-subsets of {0..n-1}.
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

Int cross2(const IntVector& a, const IntVector& b) {
  return a(0) * b(1) - a(1) * b(0);
}

// Angular order on primitive 2D vectors, counterclockwise from (1, 0).
bool angular_less(const IntVector& a, const IntVector& b) {
  auto half = [](const IntVector& v) {
    return (v(1) > 0 || (v(1) == 0 && v(0) > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

Rat rat_dot(const IntVector& p, const RatVector& x) {
  Rat s = 0;
  for (Index i = 0; i < p.size(); ++i) s += Rat(p(i)) * x(i);
  return s;
}

[[noreturn]] void throw_issue(const FanIssue& issue) {
  switch (issue.kind) {
    case FanIssue::Kind::invalid_ray:
      throw InvalidRay(issue.message);
    case FanIssue::Kind::invalid_cone:
      throw InvalidCone(issue.message);
    case FanIssue::Kind::overlapping_cones:
      throw OverlappingCones(issue.message);
    case FanIssue::Kind::not_positively_spanning:
      throw NotPositivelySpanning(issue.message);
    case FanIssue::Kind::not_complete:
      throw NotComplete(issue.message);
  }
  throw Error(issue.message);
}

FanData canonicalized(FanData data) {
  for (auto& c : data.max_cones) std::sort(c.begin(), c.end());
  std::sort(data.max_cones.begin(), data.max_cones.end());
  return data;
}

}  // namespace

bool Cone::contains(int i) const {
  return std::binary_search(ray_indices.begin(), ray_indices.end(), i);
}

std::string cone_label(const Cone& c) {
  std::ostringstream out;
  out << "sigma_";
  if (c.ray_indices.empty()) {
    out << "0";
    return out.str();
  }
  bool wide = false;
  for (int i : c.ray_indices)
    if (i >= 9) wide = true;
  if (!wide) {
    for (int i : c.ray_indices) out << (i + 1);
  } else {
    out << "{";
    for (size_t k = 0; k < c.ray_indices.size(); ++k) {
      if (k > 0) out << ",";
      out << (c.ray_indices[k] + 1);
    }
    out << "}";
  }
  return out.str();
}

bool positively_spans(const std::vector<IntVector>& rays, Index dim) {
  IntMatrix r = rows_to_matrix(rays);
  if (r.rows() == 0 || r.cols() != dim) return false;
  if (rank(r) < dim) return false;
  // The dual cone {y : <p, y> >= 0 for all p} must be {0}.  It has no line
  // (the rays span), so if nonzero it has an extreme ray cut out by n-1
  // linearly independent tight constraints.
  const int n = static_cast<int>(dim);
  const int m = static_cast<int>(rays.size());
  std::vector<int> subset = first_combination(n - 1);
  do {
    IntMatrix sub(n - 1, n);
    for (int i = 0; i < n - 1; ++i)
      sub.row(i) = rays[static_cast<size_t>(subset[static_cast<size_t>(i)])].transpose();
    IntVector y = kernel_cross(sub);
    if (y.isZero()) continue;
    for (int sign = 0; sign < 2; ++sign) {
      IntVector cand = sign == 0 ? y : IntVector(-y);
      bool feasible = true;
      for (const auto& p : rays) {
        if (pairing(p, cand) < 0) {
          feasible = false;
          break;
        }
      }
      if (feasible) return false;
    }
  } while (next_combination(subset, m));
  return true;
}

FanDiagnostics validate_fan(const FanData& raw) {
  FanData data = canonicalized(raw);
  FanDiagnostics diag;
  auto issue = [&diag](FanIssue::Kind kind, const std::string& msg) {
    diag.issues.push_back({kind, msg});
  };

  const Index n = data.dim;
  const int r = static_cast<int>(data.rays.size());
  if (n < 1) {
    issue(FanIssue::Kind::invalid_ray, "fan dimension must be at least 1");
    return diag;
  }

  for (int i = 0; i < r; ++i) {
    const IntVector& p = data.rays[static_cast<size_t>(i)];
    std::string name = "ray " + std::to_string(i);
    if (p.size() != n) {
      issue(FanIssue::Kind::invalid_ray, name + " has wrong dimension");
      return diag;
    }
    if (p.isZero()) {
      issue(FanIssue::Kind::invalid_ray, name + " is the zero vector");
      return diag;
    }
    if (content(p) != 1)
      issue(FanIssue::Kind::invalid_ray, name + " is not primitive");
    for (int j = 0; j < i; ++j)
      if (data.rays[static_cast<size_t>(j)] == p)
        issue(FanIssue::Kind::invalid_ray,
              name + " duplicates ray " + std::to_string(j));
  }

  std::vector<bool> used(static_cast<size_t>(r), false);
  for (size_t ci = 0; ci < data.max_cones.size(); ++ci) {
    const auto& c = data.max_cones[ci];
    std::string name = "maximal cone " + std::to_string(ci);
    for (size_t k = 0; k < c.size(); ++k) {
      int idx = c[k];
      if (idx < 0 || idx >= r) {
        issue(FanIssue::Kind::invalid_cone,
              name + " has out-of-range ray index " + std::to_string(idx));
        return diag;
      }
      if (k > 0 && c[k - 1] == idx)
        issue(FanIssue::Kind::invalid_cone, name + " repeats a ray index");
      used[static_cast<size_t>(idx)] = true;
    }
    if (c.empty())
      issue(FanIssue::Kind::invalid_cone, name + " is empty");
  }
  for (int i = 0; i < r; ++i)
    if (!used[static_cast<size_t>(i)])
      issue(FanIssue::Kind::invalid_cone,
            "ray " + std::to_string(i) + " occurs in no maximal cone");
  for (size_t a = 0; a < data.max_cones.size(); ++a)
    for (size_t b = 0; b < data.max_cones.size(); ++b) {
      if (a == b) continue;
      if (std::includes(data.max_cones[b].begin(), data.max_cones[b].end(),
                        data.max_cones[a].begin(), data.max_cones[a].end()))
        issue(FanIssue::Kind::invalid_cone,
              "maximal cones " + std::to_string(a) + " and " +
                  std::to_string(b) + " are comparable under inclusion");
    }
  if (!diag.issues.empty()) return diag;

  if (!positively_spans(data.rays, n)) {
    issue(FanIssue::Kind::not_positively_spanning,
          "ray generators do not positively span N");
    return diag;
  }

  if (n == 1) {
    // Complete iff the rays are exactly +1 and -1, each its own cone.
    bool ok = r == 2 && data.max_cones.size() == 2;
    if (ok)
      for (const auto& c : data.max_cones) ok = ok && c.size() == 1;
    if (!ok)
      issue(FanIssue::Kind::not_complete,
            "a complete 1-dimensional fan has the two rays +1 and -1");
    diag.completeness = Completeness::verified;
  } else if (n == 2) {
    // The maximal cones must be the sectors between angularly consecutive
    // rays, each spanning less than a half-plane.
    std::vector<int> order(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) order[static_cast<size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return angular_less(data.rays[static_cast<size_t>(a)],
                          data.rays[static_cast<size_t>(b)]);
    });
    std::set<std::vector<int>> adjacent;
    for (int k = 0; k < r; ++k) {
      int u = order[static_cast<size_t>(k)];
      int v = order[static_cast<size_t>((k + 1) % r)];
      std::vector<int> key{std::min(u, v), std::max(u, v)};
      if (cross2(data.rays[static_cast<size_t>(u)],
                 data.rays[static_cast<size_t>(v)]) > 0)
        adjacent.insert(key);
      else
        issue(FanIssue::Kind::not_complete,
              "rays " + std::to_string(u) + " and " + std::to_string(v) +
                  " bound a sector of at least a half-plane");
    }
    for (size_t ci = 0; ci < data.max_cones.size(); ++ci) {
      const auto& c = data.max_cones[ci];
      if (c.size() != 2) {
        issue(FanIssue::Kind::not_complete,
              "maximal cone " + std::to_string(ci) +
                  " is not two-dimensional");
        continue;
      }
      if (cross2(data.rays[static_cast<size_t>(c[0])],
                 data.rays[static_cast<size_t>(c[1])]) == 0) {
        issue(FanIssue::Kind::invalid_cone,
              "maximal cone " + std::to_string(ci) +
                  " spans a line, not a strongly convex cone");
        continue;
      }
      if (adjacent.count(c) == 0)
        issue(FanIssue::Kind::overlapping_cones,
              "maximal cone " + std::to_string(ci) +
                  " contains another ray in its interior");
    }
    for (const auto& pair : adjacent)
      if (std::find(data.max_cones.begin(), data.max_cones.end(), pair) ==
          data.max_cones.end())
        issue(FanIssue::Kind::not_complete,
              "sector between rays " + std::to_string(pair[0]) + " and " +
                  std::to_string(pair[1]) + " is not covered");
    diag.completeness = Completeness::verified;
  } else {
    diag.completeness = Completeness::asserted;
  }

  diag.ok = diag.issues.empty();
  return diag;
}

Fan::Fan(FanData data) {
  data = canonicalized(std::move(data));
  FanDiagnostics diag = validate_fan(data);
  if (!diag.ok) throw_issue(diag.issues.front());
  dim_ = data.dim;
  rays_.reserve(data.rays.size());
  for (auto& p : data.rays) rays_.push_back(Ray{std::move(p)});
  max_cones_.reserve(data.max_cones.size());
  for (auto& c : data.max_cones) max_cones_.push_back(Cone{std::move(c)});
  completeness_ = diag.completeness;
}

Fan::Fan(Index dim, std::vector<IntVector> rays,
         std::vector<std::vector<int>> max_cones, bool asserted_complete)
    : Fan(FanData{dim, std::move(rays), std::move(max_cones),
                  asserted_complete}) {}

IntMatrix Fan::ray_matrix() const {
  IntMatrix m(num_rays(), dim_);
  for (int i = 0; i < num_rays(); ++i) m.row(i) = ray(i).transpose();
  return m;
}

std::vector<DemazureRoot> demazure_roots(const Fan& f) {
  const Index n = f.dim();
  const int r = f.num_rays();
  std::vector<IntVector> gens;
  gens.reserve(static_cast<size_t>(r));
  for (int i = 0; i < r; ++i) gens.push_back(f.ray(i));
  if (!positively_spans(gens, n))
    throw NotComplete(
        "demazure_roots: ray generators do not positively span, the root "
        "regions are unbounded");

  std::vector<DemazureRoot> roots;
  for (int d = 0; d < r; ++d) {
    // Vertices of {e : <p_d, e> = -1, <p_j, e> >= 0 for j != d}: brute
    // force over choices of n-1 further active constraints.
    std::vector<RatVector> vertices;
    std::vector<int> others;
    for (int j = 0; j < r; ++j)
      if (j != d) others.push_back(j);
    const int k = static_cast<int>(n) - 1;
    std::vector<int> subset = first_combination(k);
    bool more = static_cast<int>(others.size()) >= k;
    while (more) {
      RatMatrix a(n, n);
      RatVector b = RatVector::Zero(n);
      for (Index c = 0; c < n; ++c) a(0, c) = Rat(f.ray(d)(c));
      b(0) = Rat(-1);
      for (int i = 0; i < k; ++i) {
        const IntVector& p =
            f.ray(others[static_cast<size_t>(subset[static_cast<size_t>(i)])]);
        for (Index c = 0; c < n; ++c) a(i + 1, c) = Rat(p(c));
      }
      if (auto x = solve_square_rational(a, b)) {
        bool feasible = true;
        for (int j = 0; j < r && feasible; ++j) {
          if (j == d) continue;
          if (rat_dot(f.ray(j), *x) < 0) feasible = false;
        }
        if (feasible) vertices.push_back(*x);
      }
      more = k > 0 && next_combination(subset, static_cast<int>(others.size()));
      if (k == 0) break;
    }
    if (vertices.empty()) continue;

    IntVector lo(n), hi(n);
    bool empty_box = false;
    for (Index c = 0; c < n; ++c) {
      Rat mn = vertices.front()(c), mx = mn;
      for (const auto& v : vertices) {
        if (v(c) < mn) mn = v(c);
        if (v(c) > mx) mx = v(c);
      }
      lo(c) = ceil_rat(mn);
      hi(c) = floor_rat(mx);
      if (lo(c) > hi(c)) empty_box = true;
    }
    if (empty_box) continue;

    IntVector e = lo;
    while (true) {
      if (pairing(f.ray(d), e) == -1) {
        bool ok = true;
        for (int j = 0; j < r && ok; ++j) {
          if (j == d) continue;
          if (pairing(f.ray(j), e) < 0) ok = false;
        }
        if (ok) roots.push_back(DemazureRoot{e, d});
      }
      Index c = n - 1;
      while (c >= 0) {
        if (e(c) < hi(c)) {
          ++e(c);
          for (Index c2 = c + 1; c2 < n; ++c2) e(c2) = lo(c2);
          break;
        }
        --c;
      }
      if (c < 0) break;
    }
  }
  return roots;
}

std::vector<CompleteCollection> complete_collections(const Fan& f) {
  const Index n = f.dim();
  const int r = f.num_rays();
  std::vector<CompleteCollection> out;
  if (r < static_cast<int>(n)) return out;
  std::vector<int> subset = first_combination(static_cast<int>(n));
  do {
    std::vector<IntVector> basis;
    basis.reserve(static_cast<size_t>(n));
    for (int idx : subset) basis.push_back(f.ray(idx));
    if (!is_lattice_basis(basis)) continue;
    std::vector<IntVector> duals = dual_basis(basis);
    bool ok = true;
    for (int j = 0; j < r && ok; ++j) {
      if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
      for (const auto& m : duals) {
        if (pairing(f.ray(j), m) > 0) {  // coordinate of ray j along m
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    CompleteCollection cc;
    cc.basis_rays = subset;
    for (size_t k = 0; k < duals.size(); ++k)
      cc.roots.push_back(DemazureRoot{IntVector(-duals[k]),
                                      subset[k]});
    out.push_back(std::move(cc));
  } while (next_combination(subset, r));
  return out;
}

std::optional<CompleteCollection> admits_additive_action(const Fan& f) {
  auto all = complete_collections(f);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool is_smooth_cone(const Fan& f, const Cone& c) {
  const size_t k = c.ray_indices.size();
  if (k == 0) return true;
  IntMatrix m(static_cast<Index>(k), f.dim());
  for (size_t i = 0; i < k; ++i)
    m.row(static_cast<Index>(i)) = f.ray(c.ray_indices[i]).transpose();
  auto d = snf(m);
  if (d.invariants.size() != k) return false;  // generators dependent
  for (const Int& inv : d.invariants)
    if (inv != 1) return false;
  return true;
}

std::vector<Cone> smooth_max_cones(const Fan& f) {
  std::vector<Cone> out;
  for (const Cone& c : f.max_cones()) {
    if (static_cast<Index>(c.ray_indices.size()) != f.dim()) continue;
    std::vector<IntVector> gens;
    for (int i : c.ray_indices) gens.push_back(f.ray(i));
    if (is_lattice_basis(gens)) out.push_back(c);
  }
  return out;
}

std::vector<Cone> all_cones(const Fan& f) {
  std::set<std::vector<int>> faces;
  for (const Cone& c : f.max_cones()) {
    const size_t k = c.ray_indices.size();
    if (f.dim() >= 3) {
      IntMatrix m(static_cast<Index>(k), f.dim());
      for (size_t i = 0; i < k; ++i)
        m.row(static_cast<Index>(i)) = f.ray(c.ray_indices[i]).transpose();
      if (rank(m) != static_cast<Index>(k))
        throw NonSimplicialCone("all_cones: maximal cone " + cone_label(c) +
                                " is not simplicial");
    }
    // Every subset of a simplicial cone's rays spans a face.
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
      std::vector<int> face;
      for (size_t i = 0; i < k; ++i)
        if (mask & (size_t{1} << i)) face.push_back(c.ray_indices[i]);
      faces.insert(std::move(face));
    }
  }
  std::vector<Cone> out;
  out.reserve(faces.size());
  for (const auto& face : faces) out.push_back(Cone{face});
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) {
    if (a.ray_indices.size() != b.ray_indices.size())
      return a.ray_indices.size() < b.ray_indices.size();
    return a.ray_indices < b.ray_indices;
  });
  return out;
}

}  // namespace toric
