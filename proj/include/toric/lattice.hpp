#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <initializer_list>
#include <optional>
#include <vector>

#include "toric/errors.hpp"

// Exact arbitrary-precision integer linear algebra on Eigen dense types:
// Hermite and Smith normal forms, determinants, lattice-basis tests and
// dual bases.  All kernels stay in exact arithmetic; no machine-word
// shortcuts, since intermediate entries of the normal-form reductions can
// exceed word size even for small inputs.

namespace toric {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using Index = Eigen::Index;

using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntRowVector = Eigen::Matrix<Int, 1, Eigen::Dynamic>;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using RatVector = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMatrix = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

// ---------------------------------------------------------------------------
// Scalar helpers

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

// Extended gcd: returns g = gcd(a, b) >= 0 with a*x + b*y = g.
inline Int xgcd(const Int& a, const Int& b, Int& x, Int& y) {
  Int old_r = a, r = b;
  Int old_x = 1, cur_x = 0;
  Int old_y = 0, cur_y = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int t = old_r - q * r; old_r = r; r = t;
    t = old_x - q * cur_x; old_x = cur_x; cur_x = t;
    t = old_y - q * cur_y; old_y = cur_y; cur_y = t;
  }
  if (old_r < 0) { old_r = -old_r; old_x = -old_x; old_y = -old_y; }
  x = old_x;
  y = old_y;
  return old_r;
}

// Floor division (mpz_int '/' truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& r) {
  return floor_div(Int(boost::multiprecision::numerator(r)),
                   Int(boost::multiprecision::denominator(r)));
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

// ---------------------------------------------------------------------------
// Construction helpers

inline IntVector int_vector(std::initializer_list<long long> coords) {
  IntVector v(static_cast<Index>(coords.size()));
  Index i = 0;
  for (long long c : coords) v(i++) = c;
  return v;
}

inline IntMatrix int_matrix(Index rows, Index cols,
                            std::initializer_list<long long> row_major) {
  if (static_cast<Index>(row_major.size()) != rows * cols)
    throw DimMismatch("int_matrix: entry count does not match shape");
  IntMatrix m(rows, cols);
  Index i = 0;
  for (long long e : row_major) {
    m(i / cols, i % cols) = e;
    ++i;
  }
  return m;
}

// Stacks vectors as the rows of a matrix.
inline IntMatrix rows_to_matrix(const std::vector<IntVector>& vs) {
  if (vs.empty()) return IntMatrix(0, 0);
  const Index n = vs.front().size();
  IntMatrix m(static_cast<Index>(vs.size()), n);
  for (Index i = 0; i < m.rows(); ++i) {
    if (vs[static_cast<size_t>(i)].size() != n)
      throw DimMismatch("rows_to_matrix: vectors of unequal dimension");
    m.row(i) = vs[static_cast<size_t>(i)].transpose();
  }
  return m;
}

// ---------------------------------------------------------------------------
// Elementwise lattice operations

// gcd of the entries, >= 0; zero vector has content 0.
inline Int content(const IntVector& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd_int(g, v(i));
  return g;
}

// v divided by the gcd of its entries; the unique primitive vector that is
// a positive multiple of v.
inline IntVector primitive(const IntVector& v) {
  Int g = content(v);
  if (g == 0) throw ZeroVector("primitive: zero vector has no direction");
  IntVector out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = v(i) / g;
  return out;
}

// The pairing <p, m> between N and M (standard dot product).
inline Int pairing(const IntVector& p, const IntVector& m) {
  if (p.size() != m.size())
    throw DimMismatch("pairing: vectors of unequal dimension");
  Int s = 0;
  for (Index i = 0; i < p.size(); ++i) s += p(i) * m(i);
  return s;
}

// ---------------------------------------------------------------------------
// Determinant, rank, adjugate

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimMismatch("det: matrix not square");
  const Index n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Int sign = 1, prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      m.row(k).swap(m.row(r));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Adjugate via cofactors; adjugate(a) * a = det(a) * I.
inline IntMatrix adjugate(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimMismatch("adjugate: matrix not square");
  const Index n = a.rows();
  IntMatrix adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  IntMatrix minor(n - 1, n - 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc) = a(r, c);
          ++mc;
        }
        ++mr;
      }
      Int cof = det(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      adj(j, i) = cof;
    }
  }
  return adj;
}

// Inverse of a matrix with det = +-1 (integer inverse).
inline IntMatrix unimodular_inverse(const IntMatrix& a) {
  Int d = det(a);
  if (d != 1 && d != -1)
    throw NotABasis("unimodular_inverse: determinant is not +-1");
  IntMatrix inv = adjugate(a);
  if (d == -1) inv = -inv;
  return inv;
}

// ---------------------------------------------------------------------------
// Hermite normal form

// U * A = H with U unimodular and H in row-style Hermite normal form:
// row echelon, positive pivots, entries above each pivot reduced into
// [0, pivot).  This convention is fixed once and used everywhere.
struct HermiteForm {
  IntMatrix H;
  IntMatrix U;
};

inline HermiteForm hnf(const IntMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  HermiteForm out{a, IntMatrix::Identity(m, m)};
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  Index pivot_row = 0;
  for (Index col = 0; col < n && pivot_row < m; ++col) {
    // Pick the row with the smallest nonzero entry to limit growth.
    Index best = -1;
    for (Index r = pivot_row; r < m; ++r) {
      if (H(r, col) == 0) continue;
      if (best < 0 || abs(H(r, col)) < abs(H(best, col))) best = r;
    }
    if (best < 0) continue;
    if (best != pivot_row) {
      H.row(pivot_row).swap(H.row(best));
      U.row(pivot_row).swap(U.row(best));
    }
    for (Index r = pivot_row + 1; r < m; ++r) {
      if (H(r, col) == 0) continue;
      Int x, y;
      Int g = xgcd(H(pivot_row, col), H(r, col), x, y);
      Int ap = H(pivot_row, col) / g;
      Int br = H(r, col) / g;
      // [[x, y], [-br, ap]] has determinant 1.
      IntRowVector hp = (x * H.row(pivot_row) + y * H.row(r)).eval();
      IntRowVector hr = (-br * H.row(pivot_row) + ap * H.row(r)).eval();
      H.row(pivot_row) = hp;
      H.row(r) = hr;
      IntRowVector up = (x * U.row(pivot_row) + y * U.row(r)).eval();
      IntRowVector ur = (-br * U.row(pivot_row) + ap * U.row(r)).eval();
      U.row(pivot_row) = up;
      U.row(r) = ur;
    }
    if (H(pivot_row, col) < 0) {
      H.row(pivot_row) *= -1;
      U.row(pivot_row) *= -1;
    }
    for (Index r = 0; r < pivot_row; ++r) {
      Int q = floor_div(H(r, col), H(pivot_row, col));
      if (q != 0) {
        H.row(r) -= (q * H.row(pivot_row)).eval();
        U.row(r) -= (q * U.row(pivot_row)).eval();
      }
    }
    ++pivot_row;
  }
  return out;
}

inline Index rank(const IntMatrix& a) {
  IntMatrix h = hnf(a).H;
  Index r = 0;
  for (Index i = 0; i < h.rows(); ++i)
    if (!h.row(i).isZero()) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// Smith normal form

// U * A * V = S with U, V unimodular and S diagonal, each diagonal entry
// dividing the next, zeros trailing.  `invariants` lists the nonzero
// diagonal entries d_1 | d_2 | ... (all positive); they are unique.
struct SmithDecomposition {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  std::vector<Int> invariants;
};

namespace detail {

inline bool snf_is_lone(const IntMatrix& s, Index i) {
  for (Index r = i + 1; r < s.rows(); ++r)
    if (s(r, i) != 0) return false;
  for (Index c = i + 1; c < s.cols(); ++c)
    if (s(i, c) != 0) return false;
  return true;
}

inline bool snf_find_min(const IntMatrix& s, Index i, Index& br, Index& bc) {
  bool found = false;
  Int best = 0;
  for (Index r = i; r < s.rows(); ++r) {
    for (Index c = i; c < s.cols(); ++c) {
      if (s(r, c) == 0) continue;
      Int v = abs(s(r, c));
      if (!found || v < best) {
        found = true;
        best = v;
        br = r;
        bc = c;
      }
    }
  }
  return found;
}

}  // namespace detail

inline SmithDecomposition snf(const IntMatrix& a) {
  const Index m = a.rows(), n = a.cols();
  SmithDecomposition out{a, IntMatrix::Identity(m, m), IntMatrix::Identity(n, n), {}};
  IntMatrix& S = out.S;
  IntMatrix& U = out.U;
  IntMatrix& V = out.V;
  const Index k = std::min(m, n);
  for (Index i = 0; i < k; ++i) {
    Index br = i, bc = i;
    if (!detail::snf_find_min(S, i, br, bc)) break;  // rest of S is zero
    for (;;) {
      if (br != i) { S.row(i).swap(S.row(br)); U.row(i).swap(U.row(br)); }
      if (bc != i) { S.col(i).swap(S.col(bc)); V.col(i).swap(V.col(bc)); }
      bool clean = true;
      for (Index r = i + 1; r < m; ++r) {
        if (S(r, i) == 0) continue;
        Int q = S(r, i) / S(i, i);
        if (q != 0) {
          S.row(r) -= (q * S.row(i)).eval();
          U.row(r) -= (q * U.row(i)).eval();
        }
        if (S(r, i) != 0) clean = false;
      }
      for (Index c = i + 1; c < n; ++c) {
        if (S(i, c) == 0) continue;
        Int q = S(i, c) / S(i, i);
        if (q != 0) {
          S.col(c) -= (q * S.col(i)).eval();
          V.col(c) -= (q * V.col(i)).eval();
        }
        if (S(i, c) != 0) clean = false;
      }
      if (clean && detail::snf_is_lone(S, i)) {
        // Fix the divisibility chain: S(i, i) must divide everything below.
        Index jr = -1;
        for (Index r = i + 1; r < m && jr < 0; ++r)
          for (Index c = i + 1; c < n; ++c)
            if (S(r, c) % S(i, i) != 0) { jr = r; break; }
        if (jr < 0) break;
        S.row(i) += S.row(jr).eval();
        U.row(i) += U.row(jr).eval();
      }
      detail::snf_find_min(S, i, br, bc);
    }
    if (S(i, i) < 0) {
      S.row(i) *= -1;
      U.row(i) *= -1;
    }
  }
  for (Index i = 0; i < k; ++i)
    if (S(i, i) != 0) out.invariants.push_back(S(i, i));
  return out;
}

// ---------------------------------------------------------------------------
// Bases of the lattice

// True iff the vectors are n vectors of dimension n with |det| = 1.
inline bool is_lattice_basis(const std::vector<IntVector>& vs) {
  if (vs.empty()) return false;
  const Index n = vs.front().size();
  if (static_cast<Index>(vs.size()) != n) return false;
  for (const auto& v : vs)
    if (v.size() != n) return false;
  Int d = det(rows_to_matrix(vs));
  return d == 1 || d == -1;
}

// Integer coordinates c with sum c_i * basis_i = v.
inline IntVector coords_in_basis(const std::vector<IntVector>& basis,
                                 const IntVector& v) {
  if (!is_lattice_basis(basis))
    throw NotABasis("coords_in_basis: vectors do not form a lattice basis");
  if (v.size() != basis.front().size())
    throw DimMismatch("coords_in_basis: vector dimension mismatch");
  IntMatrix b(v.size(), v.size());
  for (Index j = 0; j < b.cols(); ++j)
    b.col(j) = basis[static_cast<size_t>(j)];
  return unimodular_inverse(b) * v;
}

// Dual basis m_1..m_n with <basis_i, m_j> = delta_i^j.
inline std::vector<IntVector> dual_basis(const std::vector<IntVector>& basis) {
  if (!is_lattice_basis(basis))
    throw NotABasis("dual_basis: vectors do not form a lattice basis");
  IntMatrix p = rows_to_matrix(basis);
  IntMatrix pinv = unimodular_inverse(p);
  std::vector<IntVector> out;
  out.reserve(basis.size());
  for (Index j = 0; j < pinv.cols(); ++j) out.push_back(pinv.col(j));
  return out;
}

// ---------------------------------------------------------------------------
// Small solvers

// Generalized cross product: for an (n-1) x n matrix of rows r_i, returns y
// with r_i . y = 0 for all i; y is nonzero iff the rows have rank n-1.
// y_k = (-1)^k det(matrix with column k removed).
inline IntVector kernel_cross(const IntMatrix& rows) {
  const Index n = rows.cols();
  if (rows.rows() != n - 1)
    throw DimMismatch("kernel_cross: expected (n-1) x n matrix");
  IntVector y(n);
  IntMatrix minor(n - 1, n - 1);
  for (Index k = 0; k < n; ++k) {
    for (Index c = 0, mc = 0; c < n; ++c) {
      if (c == k) continue;
      minor.col(mc++) = rows.col(c);
    }
    y(k) = (k % 2 == 0) ? det(minor) : -det(minor);
  }
  return y;
}

// Exact solution of a square rational system; nullopt if singular.
inline std::optional<RatVector> solve_square_rational(RatMatrix a, RatVector b) {
  const Index n = a.rows();
  if (a.cols() != n || b.size() != n)
    throw DimMismatch("solve_square_rational: shape mismatch");
  for (Index k = 0; k < n; ++k) {
    Index p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      a.row(k).swap(a.row(p));
      std::swap(b(k), b(p));
    }
    for (Index r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      Rat f = a(r, k) / a(k, k);
      a.row(r) -= (f * a.row(k)).eval();
      b(r) -= f * b(k);
    }
  }
  RatVector x(n);
  for (Index k = n - 1; k >= 0; --k) {
    Rat s = b(k);
    for (Index c = k + 1; c < n; ++c) s -= a(k, c) * x(c);
    x(k) = s / a(k, k);
  }
  return x;
}

}  // namespace toric
