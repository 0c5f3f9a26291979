// Representation of integers and binary forms by a lattice, with explicit
// embeddings as certificates. A negative answer is always the result of a
// complete enumeration.

#ifndef ESCALATOR_REPRESENTATION_HPP
#define ESCALATOR_REPRESENTATION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "escalator/enumeration.hpp"
#include "escalator/forms.hpp"

namespace escalator {

/// Coordinates of the image of a basis of the represented form: one vector
/// for an integer target, two for a binary form.
struct Embedding {
  std::vector<Vec> vectors;

  friend bool operator==(const Embedding&, const Embedding&) = default;
};

/// True if `e` is a valid certificate that `lat` represents k.
inline bool certifies(const GramLattice& lat, const Embedding& e, Int k) {
  return e.vectors.size() == 1 && e.vectors[0].size() == lat.rank() && lat.norm(e.vectors[0]) == k;
}

/// True if `e` maps a basis with Gram [[a,b],[b,c]] of reduce_binary(f) into
/// `lat`, up to the sign of b.
inline bool certifies(const GramLattice& lat, const Embedding& e, const BinaryForm& f) {
  if (e.vectors.size() != 2) return false;
  const auto& x = e.vectors[0];
  const auto& y = e.vectors[1];
  if (x.size() != lat.rank() || y.size() != lat.rank()) return false;
  BinaryForm r = reduce_binary(f);
  Int bxy = lat.inner(x, y);
  return lat.norm(x) == r.a && lat.norm(y) == r.c && (bxy == r.b || bxy == -r.b);
}

inline std::optional<Embedding> represents_integer(const GramLattice& lat, Int k) {
  if (k < 1) throw std::invalid_argument("represents_integer requires k >= 1");
  std::optional<Embedding> found;
  for_each_short_vector(lat, k, [&](const Vec& x, Int q) {
    if (q != k) return true;
    Vec v = x;
    canonicalize_sign(v);
    found = Embedding{{std::move(v)}};
    return false;
  });
  if (found && !certifies(lat, *found, k)) throw std::logic_error("unsound integer certificate");
  return found;
}

/// Searches x of norm a, then y of norm c with |B(x, y)| = b, where [a,b,c] is
/// the reduced form of f. The returned pair has B(x, y) = b exactly.
inline std::optional<Embedding> represents_binary(const GramLattice& lat, const BinaryForm& f) {
  const BinaryForm r = reduce_binary(f);
  if (lat.rank() < 2) return std::nullopt;
  const auto xs = vectors_with_norm(lat, r.a);
  if (xs.empty()) return std::nullopt;
  const auto ys = (r.c == r.a) ? xs : vectors_with_norm(lat, r.c);
  const std::size_t n = lat.rank();
  std::vector<Wide> gx(n);
  for (const auto& x : xs) {
    for (std::size_t i = 0; i < n; ++i) {
      Wide s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<Wide>(lat.at(i, j)) * x.coords[j];
      gx[i] = s;
    }
    for (const auto& y : ys) {
      Wide bxy = 0;
      for (std::size_t i = 0; i < n; ++i) bxy += gx[i] * y.coords[i];
      if (bxy != r.b && bxy != -r.b) continue;
      Vec yv = y.coords;
      if (bxy != r.b)
        for (Int& v : yv) v = -v;
      Embedding e{{x.coords, std::move(yv)}};
      if (!certifies(lat, e, r)) throw std::logic_error("unsound binary certificate");
      return e;
    }
  }
  return std::nullopt;
}

struct MemberVerdict {
  BinaryForm form;
  std::optional<Embedding> embedding;

  [[nodiscard]] bool present() const { return embedding.has_value(); }

  friend bool operator==(const MemberVerdict&, const MemberVerdict&) = default;
};

struct RepresentationReport {
  std::vector<MemberVerdict> verdicts;
  bool all_present = true;
};

/// Per-member verdicts, in set order. With stop_at_first_failure the report
/// ends at the first absent member.
inline RepresentationReport represents_all(const GramLattice& lat, const FormSet& set,
                                           bool stop_at_first_failure = false) {
  RepresentationReport rep;
  for (const auto& f : set) {
    MemberVerdict v{f, represents_binary(lat, f)};
    rep.all_present = rep.all_present && v.present();
    rep.verdicts.push_back(std::move(v));
    if (stop_at_first_failure && !rep.all_present) break;
  }
  return rep;
}

/// Every reduced positive-definite binary form with determinant <= det_cap,
/// ordered by (determinant, a, b).
inline std::vector<BinaryForm> reduced_forms_up_to(Int det_cap) {
  std::vector<BinaryForm> out;
  // ac - b^2 >= a^2 - a^2/4 = 3a^2/4, so a^2 <= 4 det_cap / 3.
  for (Int a = 1; 3 * a * a <= 4 * det_cap; ++a)
    for (Int b = 0; 2 * b <= a; ++b)
      for (Int c = a; a * c - b * b <= det_cap; ++c) out.push_back({a, b, c});
  std::sort(out.begin(), out.end(), [](const BinaryForm& x, const BinaryForm& y) {
    return std::make_tuple(x.det(), x.a, x.b) < std::make_tuple(y.det(), y.a, y.b);
  });
  return out;
}

inline std::vector<MemberVerdict> represented_binaries_up_to(const GramLattice& lat, Int det_cap) {
  if (det_cap < 1) throw std::invalid_argument("det_cap must be >= 1");
  std::vector<MemberVerdict> out;
  for (const auto& f : reduced_forms_up_to(det_cap)) out.push_back({f, represents_binary(lat, f)});
  return out;
}

}  // namespace escalator

#endif  // ESCALATOR_REPRESENTATION_HPP
