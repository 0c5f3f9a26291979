// Binary forms, Gram lattices and the form sets built from them.

#ifndef ESCALATOR_FORMS_HPP
#define ESCALATOR_FORMS_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "escalator/arith.hpp"

namespace escalator {

using Vec = std::vector<Int>;

class NonPositiveEntry : public Error {
 public:
  NonPositiveEntry() : Error("diagonal entries must be positive") {}
};

/// The rank-2 form ax^2 + 2bxy + cy^2, Gram matrix [[a,b],[b,c]].
///
/// Coefficients are stored as given; use reduce_binary() for the
/// Minkowski-reduced representative.
struct BinaryForm {
  Int a = 0;
  Int b = 0;
  Int c = 0;

  [[nodiscard]] Int det() const {
    return detail::narrow(detail::checked_sub(static_cast<Wide>(a) * c, static_cast<Wide>(b) * b));
  }
  [[nodiscard]] bool positive_definite() const { return a > 0 && det() > 0; }
  [[nodiscard]] bool is_reduced() const { return 0 <= 2 * b && 2 * b <= a && a <= c; }
  [[nodiscard]] bool is_diagonal() const { return b == 0; }

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;
};

inline BinaryForm diag_form(Int a, Int c) { return {a, 0, c}; }

/// Minkowski (Gauss) reduction to the unique form with 0 <= 2b <= a <= c.
inline BinaryForm reduce_binary(BinaryForm f) {
  if (!f.positive_definite()) throw NotPositiveDefinite();
  Wide a = f.a, b = f.b, c = f.c;
  for (;;) {
    // x -> x - k y moves b into [-a/2, a/2).
    Wide k = detail::floor_div(detail::checked_add(2 * b, a), 2 * a);
    if (k != 0) {
      Wide nb = detail::checked_sub(b, detail::checked_mul(k, a));
      c = detail::checked_add(detail::checked_sub(c, detail::checked_mul(2 * k, b)),
                              detail::checked_mul(detail::checked_mul(k, k), a));
      b = nb;
    }
    if (a > c) {
      std::swap(a, c);
      continue;
    }
    break;
  }
  if (b < 0) b = -b;
  return {detail::narrow(a), detail::narrow(b), detail::narrow(c)};
}

namespace detail {

/// Leading principal minors of an n x n row-major matrix via fraction-free
/// Gaussian elimination without pivoting. Stops (returning the prefix) at the
/// first non-positive minor.
inline std::vector<Wide> leading_minors(std::span<const Int> m, std::size_t n) {
  std::vector<Wide> work(m.begin(), m.end());
  std::vector<Wide> minors;
  minors.reserve(n);
  Wide prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    Wide pivot = work[k * n + k];
    minors.push_back(pivot);
    if (pivot <= 0) return minors;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Wide v = checked_sub(checked_mul(work[i * n + j], pivot),
                             checked_mul(work[i * n + k], work[k * n + j]));
        work[i * n + j] = v / prev;
      }
    }
    prev = pivot;
  }
  return minors;
}

}  // namespace detail

/// True when the symmetric n x n row-major matrix is positive definite.
inline bool is_positive_definite(std::span<const Int> m, std::size_t n) {
  auto minors = detail::leading_minors(m, n);
  return minors.size() == n && (n == 0 || minors.back() > 0);
}

/// A positive-definite integral lattice given by its Gram matrix.
///
/// Rank 0 is the empty lattice. Construction validates symmetry and
/// positive definiteness; every GramLattice value is therefore valid.
class GramLattice {
 public:
  GramLattice() = default;

  GramLattice(std::size_t rank, std::vector<Int> entries) : rank_(rank), g_(std::move(entries)) {
    if (g_.size() != rank_ * rank_) throw Error("Gram matrix has wrong number of entries");
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (at(i, j) != at(j, i)) throw Error("Gram matrix is not symmetric");
    if (!is_positive_definite(g_, rank_)) throw NotPositiveDefinite();
  }

  static GramLattice from_rows(const std::vector<std::vector<Int>>& rows) {
    std::vector<Int> flat;
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw Error("Gram matrix is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return {rows.size(), std::move(flat)};
  }

  static GramLattice from_binary(const BinaryForm& f) { return {2, {f.a, f.b, f.b, f.c}}; }

  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] bool empty() const { return rank_ == 0; }
  [[nodiscard]] Int at(std::size_t i, std::size_t j) const { return g_[i * rank_ + j]; }
  [[nodiscard]] std::span<const Int> entries() const { return g_; }

  [[nodiscard]] Int det() const {
    if (rank_ == 0) return 1;
    return detail::narrow(detail::leading_minors(g_, rank_).back());
  }

  [[nodiscard]] Int trace() const {
    Int t = 0;
    for (std::size_t i = 0; i < rank_; ++i) t += at(i, i);
    return t;
  }

  /// B(x, y) = x^T G y.
  [[nodiscard]] Int inner(std::span<const Int> x, std::span<const Int> y) const {
    Wide s = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (x[i] == 0) continue;
      Wide row = 0;
      for (std::size_t j = 0; j < rank_; ++j)
        row = detail::checked_add(row, detail::checked_mul(at(i, j), y[j]));
      s = detail::checked_add(s, detail::checked_mul(x[i], row));
    }
    return detail::narrow(s);
  }

  /// Q(x) = x^T G x.
  [[nodiscard]] Int norm(std::span<const Int> x) const { return inner(x, x); }

  /// Upper-left k x k block.
  [[nodiscard]] GramLattice leading_block(std::size_t k) const {
    std::vector<Int> e;
    e.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) e.push_back(at(i, j));
    return {k, std::move(e)};
  }

  [[nodiscard]] bool is_diagonal() const {
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j)
        if (i != j && at(i, j) != 0) return false;
    return true;
  }

  friend bool operator==(const GramLattice&, const GramLattice&) = default;

 private:
  std::size_t rank_ = 0;
  std::vector<Int> g_;
};

inline GramLattice diagonal(std::span<const Int> entries) {
  const std::size_t n = entries.size();
  std::vector<Int> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (entries[i] <= 0) throw NonPositiveEntry();
    g[i * n + i] = entries[i];
  }
  return {n, std::move(g)};
}

inline GramLattice diagonal(std::initializer_list<Int> entries) {
  return diagonal(std::span<const Int>(entries.begin(), entries.size()));
}

/// Block-diagonal join L1 ⊥ L2.
inline GramLattice orthogonal_sum(const GramLattice& l1, const GramLattice& l2) {
  const std::size_t n1 = l1.rank(), n2 = l2.rank(), n = n1 + n2;
  std::vector<Int> g(n * n, 0);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) g[i * n + j] = l1.at(i, j);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) g[(n1 + i) * n + n1 + j] = l2.at(i, j);
  return {n, std::move(g)};
}

inline GramLattice orthogonal_sum(std::initializer_list<GramLattice> parts) {
  GramLattice acc;
  for (const auto& p : parts) acc = orthogonal_sum(acc, p);
  return acc;
}

/// Finite ordered set of binary forms, stored reduced and deduplicated.
class FormSet {
 public:
  FormSet() = default;
  FormSet(std::initializer_list<BinaryForm> forms) {
    for (const auto& f : forms) insert(f);
  }
  explicit FormSet(std::span<const BinaryForm> forms) {
    for (const auto& f : forms) insert(f);
  }

  /// Inserts reduce_binary(f) unless already present. Returns true if added.
  bool insert(const BinaryForm& f) {
    BinaryForm r = reduce_binary(f);
    if (contains(r)) return false;
    members_.push_back(r);
    return true;
  }

  /// Membership up to equivalence.
  [[nodiscard]] bool contains(const BinaryForm& f) const {
    BinaryForm r = reduce_binary(f);
    return std::find(members_.begin(), members_.end(), r) != members_.end();
  }

  [[nodiscard]] FormSet without(const BinaryForm& f) const {
    BinaryForm r = reduce_binary(f);
    FormSet out;
    for (const auto& m : members_)
      if (m != r) out.members_.push_back(m);
    return out;
  }

  [[nodiscard]] const std::vector<BinaryForm>& members() const { return members_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] bool empty() const { return members_.empty(); }
  [[nodiscard]] auto begin() const { return members_.begin(); }
  [[nodiscard]] auto end() const { return members_.end(); }

  friend bool operator==(const FormSet&, const FormSet&) = default;

 private:
  std::vector<BinaryForm> members_;
};

}  // namespace escalator

#endif  // ESCALATOR_FORMS_HPP
