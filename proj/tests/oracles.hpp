// Brute-force reference implementations used only by the tests. Nothing here
// touches the LDL factorization or the pruned enumerator.

#ifndef ESCALATOR_TESTS_ORACLES_HPP
#define ESCALATOR_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

#include "escalator/forms.hpp"

namespace oracle {

using escalator::BinaryForm;
using escalator::GramLattice;
using escalator::Int;
using escalator::Vec;

using Matrix = std::vector<std::vector<Int>>;

inline Matrix to_matrix(const GramLattice& l) {
  Matrix m(l.rank(), std::vector<Int>(l.rank()));
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < l.rank(); ++j) m[i][j] = l.at(i, j);
  return m;
}

/// Determinant as the signed sum over permutations, built row by row with a
/// table over the set of columns used so far (2^n n steps).
inline Int det(const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<Int> dp(std::size_t{1} << n, 0);
  dp[0] = 1;
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (dp[mask] == 0) continue;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask));
    for (std::size_t c = 0; c < n; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      // Columns already used to the right of c each add one inversion.
      const bool odd = __builtin_popcountll(mask >> (c + 1)) % 2 == 1;
      const Int term = dp[mask] * m[row][c];
      dp[mask | (std::size_t{1} << c)] += odd ? -term : term;
    }
  }
  return dp.back();
}

inline Matrix delete_row_col(const Matrix& m, std::size_t i) {
  Matrix out;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (r == i) continue;
    std::vector<Int> row;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (c != i) row.push_back(m[r][c]);
    out.push_back(row);
  }
  return out;
}

/// Sylvester's criterion with cofactor determinants.
inline bool positive_definite(const Matrix& m) {
  for (std::size_t k = 1; k <= m.size(); ++k) {
    Matrix lead(k, std::vector<Int>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = m[i][j];
    if (det(lead) <= 0) return false;
  }
  return true;
}

inline Int quad(const Matrix& m, const Vec& x) {
  Int s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) s += m[i][j] * x[i] * x[j];
  return s;
}

inline Int bilinear(const Matrix& m, const Vec& x, const Vec& y) {
  Int s = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) s += m[i][j] * x[i] * y[j];
  return s;
}

/// Box radius per coordinate: Q(x) <= bound forces x_i^2 <= bound (G^-1)_ii
/// and (G^-1)_ii = det(G without row/col i) / det(G).
inline std::vector<Int> box_radii(const Matrix& m, Int bound) {
  const Int d = det(m);
  std::vector<Int> r;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Int cof = det(delete_row_col(m, i));
    Int k = 0;
    while ((k + 1) * (k + 1) * d <= bound * cof) ++k;
    r.push_back(k);
  }
  return r;
}

struct Found {
  Vec coords;
  Int norm;
  bool operator<(const Found& o) const { return norm != o.norm ? norm < o.norm : coords < o.coords; }
  bool operator==(const Found& o) const { return norm == o.norm && coords == o.coords; }
};

inline bool first_nonzero_positive(const Vec& x) {
  for (Int v : x)
    if (v != 0) return v > 0;
  return false;
}

/// Every nonzero vector in the box with Q(x) <= bound, one per +-pair
/// (first nonzero coordinate positive), sorted by (norm, coordinates).
inline std::vector<Found> box_vectors(const Matrix& m, Int bound, bool canonical_only = true) {
  const std::size_t n = m.size();
  std::vector<Found> out;
  if (n == 0) return out;
  const auto r = box_radii(m, bound);
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -r[i];
  for (;;) {
    bool nonzero = std::any_of(x.begin(), x.end(), [](Int v) { return v != 0; });
    if (nonzero && (!canonical_only || first_nonzero_positive(x))) {
      Int q = quad(m, x);
      if (q <= bound) out.push_back({x, q});
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++x[k] <= r[k]) break;
      x[k] = -r[k];
      if (k == 0) {
        std::sort(out.begin(), out.end());
        return out;
      }
    }
  }
}

/// Does some pair (x, y) in the box realize the Gram [[a,b],[b,c]] up to the
/// sign of b?
inline bool represents_binary(const Matrix& m, const BinaryForm& f) {
  if (m.size() < 2) return false;
  const Int big = std::max(f.a, f.c);
  auto all = box_vectors(m, big, false);
  for (const auto& x : all) {
    if (x.norm != f.a) continue;
    for (const auto& y : all)
      if (y.norm == f.c && std::abs(bilinear(m, x.coords, y.coords)) == std::abs(f.b)) return true;
  }
  return false;
}

inline bool represents_integer(const Matrix& m, Int k) {
  for (const auto& v : box_vectors(m, k))
    if (v.norm == k) return true;
  return false;
}

/// Integers in [1, n] represented by ax^2 + 2bxy + cy^2, by exhaustion.
inline std::set<Int> represented_integers(const BinaryForm& f, Int n) {
  std::set<Int> out;
  Matrix m{{f.a, f.b}, {f.b, f.c}};
  for (const auto& v : box_vectors(m, n)) out.insert(v.norm);
  return out;
}

/// Random symmetric positive-definite matrix, rank in [1, max_rank], entries
/// in [-spread, spread] off the diagonal and [1, spread] on it.
inline Matrix random_definite(std::mt19937& rng, std::size_t max_rank, Int spread) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, max_rank);
  std::uniform_int_distribution<Int> diag(1, spread);
  std::uniform_int_distribution<Int> off(-spread, spread);
  for (;;) {
    const std::size_t n = rank_dist(rng);
    Matrix m(n, std::vector<Int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = diag(rng);
      for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i] = off(rng);
    }
    if (positive_definite(m)) return m;
  }
}

inline GramLattice to_lattice(const Matrix& m) { return GramLattice::from_rows(m); }

}  // namespace oracle

#endif  // ESCALATOR_TESTS_ORACLES_HPP
