// Exact short-vector enumeration.
//
// The Gram matrix is factored as G = U^T D U over the rationals (U unit upper
// triangular) so that
//
//   Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2.
//
// Enumeration fixes coordinates from the last one down, keeping the exact
// remaining budget. Integer bounds for each coordinate come from a long double
// estimate that is then corrected by exact tests, so no vector is ever missed
// or invented.

#ifndef ESCALATOR_ENUMERATION_HPP
#define ESCALATOR_ENUMERATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "escalator/arith.hpp"
#include "escalator/forms.hpp"

namespace escalator {

/// G = lower * diag(diag) * lower^T with lower unit lower-triangular.
struct LdlFactorization {
  std::vector<Rational> diag;
  /// Row-major n x n; entries on and above the diagonal are unused (zero).
  std::vector<Rational> lower;
  std::size_t rank = 0;

  [[nodiscard]] const Rational& l(std::size_t i, std::size_t j) const { return lower[i * rank + j]; }

  /// Entry (i, j) of lower * diag * lower^T, with the unit diagonal restored.
  [[nodiscard]] Rational recompose(std::size_t i, std::size_t j) const {
    Rational s = 0;
    for (std::size_t k = 0; k <= std::min(i, j); ++k) {
      Rational li = (k == i) ? Rational(1) : l(i, k);
      Rational lj = (k == j) ? Rational(1) : l(j, k);
      s += li * diag[k] * lj;
    }
    return s;
  }
};

inline LdlFactorization ldl(const GramLattice& lat) {
  const std::size_t n = lat.rank();
  if (n == 0) throw Error("ldl requires rank >= 1");
  LdlFactorization f;
  f.rank = n;
  f.diag.assign(n, Rational(0));
  f.lower.assign(n * n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj = lat.at(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.diag[k];
    if (dj.sign() <= 0) throw NotPositiveDefinite();
    f.diag[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = lat.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= f.l(i, k) * f.l(j, k) * f.diag[k];
      f.lower[i * n + j] = s / dj;
    }
  }
  return f;
}

/// A nonzero lattice vector in sign-canonical form (first nonzero coordinate
/// positive).
struct ShortVector {
  Vec coords;
  Int norm = 0;

  friend bool operator==(const ShortVector&, const ShortVector&) = default;
};

inline bool canonical_less(const ShortVector& a, const ShortVector& b) {
  if (a.norm != b.norm) return a.norm < b.norm;
  return a.coords < b.coords;
}

/// Negates v in place if its first nonzero coordinate is negative.
inline void canonicalize_sign(Vec& v) {
  for (Int x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (Int& y : v) y = -y;
    return;
  }
}

/// Arithmetic used by the enumerator. Auto takes the scaled integer path
/// whenever it has enough headroom.
enum class EnumerationPath { Auto, Rational };

namespace detail {

// Enumeration state. With M the least common denominator of the LDL factors,
// scaled_diag[i] = M d_i and scaled_lower[j][i] = M l_ji are integers, and
//
//   M^3 Q(x) = sum_i (M d_i) (M x_i + sum_{j>i} M l_ji x_j)^2,
//
// so the whole search runs in checked 128-bit integer arithmetic. When M^3 is
// too large for that, the rational factors are used directly.
class Enumerator {
 public:
  using Visitor = std::function<bool(const Vec&, Int)>;

  Enumerator(const GramLattice& lat, Int bound, Visitor visit, EnumerationPath path)
      : lat_(lat), f_(ldl(lat)), n_(lat.rank()), bound_(bound), visit_(std::move(visit)), x_(n_, 0) {
    scaled_ = path == EnumerationPath::Auto && try_scale();
  }

  /// Visits every nonzero x with Q(x) <= bound whose last nonzero coordinate
  /// is positive (one of each +-x pair). Stops early if the visitor returns
  /// false.
  void run() {
    if (scaled_)
      descend_scaled(n_ - 1, detail::checked_mul(bound_, m3_), true);
    else
      descend(n_ - 1, Rational(bound_), true);
  }

 private:
  bool try_scale() {
    Wide m = 1;
    auto fold = [&m](const Rational& r) {
      Wide g = wide_gcd(m, r.den());
      m = checked_mul(m / g, r.den());
    };
    try {
      for (const auto& d : f_.diag) fold(d);
      for (const auto& l : f_.lower) fold(l);
      Wide m3 = checked_mul(checked_mul(m, m), m);
      // Keep ample headroom for the squared offsets.
      if (m3 > (static_cast<Wide>(1) << 90) / std::max<Int>(bound_, 1)) return false;
      m_ = m;
      m3_ = m3;
      sdiag_.resize(n_);
      slower_.assign(n_ * n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        sdiag_[i] = f_.diag[i].num() * (m / f_.diag[i].den());
        for (std::size_t j = 0; j < i; ++j) {
          const Rational& l = f_.l(i, j);
          slower_[i * n_ + j] = l.num() * (m / l.den());
        }
      }
    } catch (const OverflowError&) {
      return false;
    }
    return true;
  }

  bool visit_leaf() {
    Int q = lat_.norm(x_);
    return visit_(x_, q);
  }

  // Scaled integer path. Budget and offsets are multiplied by M^3 and M.
  bool fits_scaled(Int x, Wide center, Wide budget, std::size_t i) const {
    Wide t = checked_sub(checked_mul(m_, x), center);
    return checked_mul(sdiag_[i], checked_mul(t, t)) <= budget;
  }

  bool descend_scaled(std::size_t i, Wide budget, bool all_zero_above) {
    // center = M * c_i = -sum_{j>i} (M l_ji) x_j
    Wide center = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0) center = checked_sub(center, checked_mul(slower_[j * n_ + i], x_[j]));

    const long double mc = static_cast<long double>(center) / static_cast<long double>(m_);
    const long double r =
        std::sqrt(std::max<long double>(0, static_cast<long double>(budget) / static_cast<long double>(sdiag_[i]))) /
        static_cast<long double>(m_);
    Int hi = static_cast<Int>(std::floor(mc + r));
    Int lo = static_cast<Int>(std::ceil(mc - r));
    const Int cfloor = static_cast<Int>(floor_div(center, m_));
    const Int cceil = static_cast<Int>(-floor_div(-center, m_));
    while (fits_scaled(hi + 1, center, budget, i)) ++hi;
    while (hi >= cceil && !fits_scaled(hi, center, budget, i)) --hi;
    while (fits_scaled(lo - 1, center, budget, i)) --lo;
    while (lo <= cfloor && !fits_scaled(lo, center, budget, i)) ++lo;
    if (all_zero_above) lo = std::max<Int>(lo, 0);

    for (Int v = lo; v <= hi; ++v) {
      Wide t = checked_sub(checked_mul(m_, v), center);
      Wide used = checked_mul(sdiag_[i], checked_mul(t, t));
      if (used > budget) continue;
      x_[i] = v;
      const bool zero = all_zero_above && v == 0;
      bool go_on = true;
      if (i == 0) {
        if (!zero) go_on = visit_leaf();
      } else {
        go_on = descend_scaled(i - 1, budget - used, zero);
      }
      if (!go_on) {
        x_[i] = 0;
        return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  // Rational path.
  bool fits(Int x, const Rational& center, const Rational& budget, std::size_t i) const {
    Rational t = Rational(x) - center;
    return f_.diag[i] * t * t <= budget;
  }

  bool descend(std::size_t i, const Rational& budget, bool all_zero_above) {
    Rational center = 0;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (x_[j] != 0) center -= f_.l(j, i) * Rational(x_[j]);

    const long double c = center.approx();
    const long double r = std::sqrt(std::max<long double>(0, (budget / f_.diag[i]).approx()));
    Int hi = static_cast<Int>(std::floor(c + r));
    Int lo = static_cast<Int>(std::ceil(c - r));
    const Int cfloor = static_cast<Int>(center.floor());
    const Int cceil = static_cast<Int>(center.ceil());
    while (fits(hi + 1, center, budget, i)) ++hi;
    while (hi >= cceil && !fits(hi, center, budget, i)) --hi;
    while (fits(lo - 1, center, budget, i)) --lo;
    while (lo <= cfloor && !fits(lo, center, budget, i)) ++lo;
    if (all_zero_above) lo = std::max<Int>(lo, 0);

    for (Int v = lo; v <= hi; ++v) {
      if (!fits(v, center, budget, i)) continue;
      x_[i] = v;
      Rational t = Rational(v) - center;
      Rational rest = budget - f_.diag[i] * t * t;
      const bool zero = all_zero_above && v == 0;
      bool go_on = true;
      if (i == 0) {
        if (!zero) go_on = visit_leaf();
      } else {
        go_on = descend(i - 1, rest, zero);
      }
      if (!go_on) {
        x_[i] = 0;
        return false;
      }
    }
    x_[i] = 0;
    return true;
  }

  const GramLattice& lat_;
  LdlFactorization f_;
  std::size_t n_;
  Int bound_;
  Visitor visit_;
  Vec x_;
  bool scaled_ = false;
  Wide m_ = 1;
  Wide m3_ = 1;
  std::vector<Wide> sdiag_;
  std::vector<Wide> slower_;
};

}  // namespace detail

/// Calls visit(x, Q(x)) for one vector of each +-pair of nonzero vectors with
/// Q(x) <= bound, in unspecified order and sign. Returning false from visit
/// stops the enumeration. Returns false if stopped early.
inline bool for_each_short_vector(const GramLattice& lat, Int bound,
                                  const std::function<bool(const Vec&, Int)>& visit,
                                  EnumerationPath path = EnumerationPath::Auto) {
  if (lat.rank() == 0 || bound <= 0) return true;
  bool completed = true;
  detail::Enumerator e(lat, bound, [&](const Vec& x, Int q) {
    if (!visit(x, q)) {
      completed = false;
      return false;
    }
    return true;
  }, path);
  e.run();
  return completed;
}

/// All sign-canonical nonzero vectors with Q(x) <= bound, sorted by
/// (norm, coordinates).
inline std::vector<ShortVector> vectors_up_to(const GramLattice& lat, Int bound,
                                              EnumerationPath path = EnumerationPath::Auto) {
  std::vector<ShortVector> out;
  for_each_short_vector(
      lat, bound,
      [&](const Vec& x, Int q) {
        Vec v = x;
        canonicalize_sign(v);
        out.push_back({std::move(v), q});
        return true;
      },
      path);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

inline std::vector<ShortVector> vectors_with_norm(const GramLattice& lat, Int k) {
  std::vector<ShortVector> out;
  for_each_short_vector(lat, k, [&](const Vec& x, Int q) {
    if (q == k) {
      Vec v = x;
      canonicalize_sign(v);
      out.push_back({std::move(v), q});
    }
    return true;
  });
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// First minimum: the smallest norm of a nonzero vector.
inline Int minimum(const GramLattice& lat) {
  if (lat.rank() == 0) throw Error("the empty lattice has no minimum");
  Int best = lat.at(0, 0);
  for (std::size_t i = 1; i < lat.rank(); ++i) best = std::min(best, lat.at(i, i));
  for_each_short_vector(lat, best, [&](const Vec&, Int q) {
    best = std::min(best, q);
    return true;
  });
  return best;
}

}  // namespace escalator

#endif  // ESCALATOR_ENUMERATION_HPP
