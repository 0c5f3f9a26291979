// Truants, escalations and escalation trees.
//
// An escalation of L by a truant t adjoins one new basis vector (integer
// truant) or up to two (binary truant) so that the result represents t. The
// new Gram entries are bounded by Cauchy-Schwarz against the diagonal, which
// makes every escalation list finite; results are deduplicated up to
// isometry.

#ifndef ESCALATOR_ESCALATION_HPP
#define ESCALATOR_ESCALATION_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "escalator/enumeration.hpp"
#include "escalator/forms.hpp"
#include "escalator/representation.hpp"

namespace escalator {

class NotATruant : public Error {
 public:
  NotATruant() : Error("the lattice already represents the proposed truant") {}
};

/// Total order on reduced binary forms used to pick "the" truant.
struct FormOrdering {
  std::string name;
  std::function<bool(const BinaryForm&, const BinaryForm&)> less;
};

/// Ascending (determinant, a, b).
inline FormOrdering default_ordering() {
  return {"det,a,b", [](const BinaryForm& x, const BinaryForm& y) {
            return std::make_tuple(x.det(), x.a, x.b) < std::make_tuple(y.det(), y.a, y.b);
          }};
}

/// The nine critical integers of the Fifteen Theorem.
inline const std::vector<Int>& critical_integers() {
  static const std::vector<Int> s1 = {1, 2, 3, 5, 6, 7, 10, 14, 15};
  return s1;
}

// ---------------------------------------------------------------------------
// Truants

/// Smallest k in [1, cap] not represented by lat; nullopt means every integer
/// up to cap is represented (exhausted).
inline std::optional<Int> integer_truant(const GramLattice& lat, Int cap) {
  if (cap < 1) throw std::invalid_argument("truant cap must be >= 1");
  std::vector<bool> seen(static_cast<std::size_t>(cap) + 1, false);
  for_each_short_vector(lat, cap, [&](const Vec&, Int q) {
    seen[static_cast<std::size_t>(q)] = true;
    return true;
  });
  for (Int k = 1; k <= cap; ++k)
    if (!seen[static_cast<std::size_t>(k)]) return k;
  return std::nullopt;
}

/// The ord-least reduced form of determinant <= det_cap that lat does not
/// represent; nullopt when all of them are represented.
inline std::optional<BinaryForm> binary_truant(const GramLattice& lat, const FormOrdering& ord,
                                               Int det_cap) {
  if (det_cap < 1) throw std::invalid_argument("det cap must be >= 1");
  auto forms = reduced_forms_up_to(det_cap);
  std::stable_sort(forms.begin(), forms.end(), ord.less);
  for (const auto& f : forms)
    if (!represents_binary(lat, f)) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Isometry

/// Isometry invariant: determinant and the number of +-pairs of vectors of
/// each norm up to a bound.
struct Fingerprint {
  std::size_t rank = 0;
  Int det = 0;
  std::vector<std::size_t> counts;

  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
};

inline Int max_diagonal(const GramLattice& lat) {
  Int m = 0;
  for (std::size_t i = 0; i < lat.rank(); ++i) m = std::max(m, lat.at(i, i));
  return m;
}

inline Fingerprint fingerprint(const GramLattice& lat, Int bound) {
  Fingerprint fp{lat.rank(), lat.det(), std::vector<std::size_t>(static_cast<std::size_t>(bound) + 1, 0)};
  for_each_short_vector(lat, bound, [&](const Vec&, Int q) {
    ++fp.counts[static_cast<std::size_t>(q)];
    return true;
  });
  return fp;
}

namespace detail {

// Assigns images to basis vectors 0..n-1 of `from` inside `to`, matching all
// inner products. Equal Gram matrices plus equal determinants force the
// images to be a basis.
class IsometrySearch {
 public:
  IsometrySearch(const GramLattice& from, const GramLattice& to) : from_(from), to_(to) {
    const std::size_t n = from.rank();
    candidates_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Int k = from.at(i, i);
      auto it = by_norm_.find(k);
      if (it == by_norm_.end()) {
        std::vector<Vec> all;
        for (auto& sv : vectors_with_norm(to, k)) {
          Vec neg = sv.coords;
          for (Int& v : neg) v = -v;
          all.push_back(sv.coords);
          all.push_back(std::move(neg));
        }
        it = by_norm_.emplace(k, std::move(all)).first;
      }
      candidates_[i] = &it->second;
    }
    images_.resize(n);
  }

  bool run() { return assign(0); }

 private:
  bool assign(std::size_t i) {
    if (i == from_.rank()) return true;
    const auto& cands = *candidates_[i];
    // The first image may be taken up to sign.
    const std::size_t step = (i == 0) ? 2 : 1;
    for (std::size_t k = 0; k < cands.size(); k += step) {
      const Vec& v = cands[k];
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = to_.inner(v, *images_[j]) == from_.at(i, j);
      if (!ok) continue;
      images_[i] = &v;
      if (assign(i + 1)) return true;
    }
    return false;
  }

  const GramLattice& from_;
  const GramLattice& to_;
  std::map<Int, std::vector<Vec>> by_norm_;
  std::vector<const std::vector<Vec>*> candidates_;
  std::vector<const Vec*> images_;
};

}  // namespace detail

/// True iff some unimodular change of basis carries Gram(l1) to Gram(l2).
inline bool isometric(const GramLattice& l1, const GramLattice& l2) {
  if (l1.rank() != l2.rank()) return false;
  if (l1.rank() == 0) return true;
  if (l1 == l2) return true;
  if (l1.det() != l2.det()) return false;
  Int bound = std::max(max_diagonal(l1), max_diagonal(l2));
  if (fingerprint(l1, bound) != fingerprint(l2, bound)) return false;
  return detail::IsometrySearch(l1, l2).run();
}

/// Collects lattices, keeping the first member of each isometry class.
class IsometryClasses {
 public:
  explicit IsometryClasses(Int fingerprint_bound) : bound_(fingerprint_bound) {}

  /// Returns true if `lat` starts a new class.
  bool add(const GramLattice& lat) {
    auto& bucket = buckets_[fingerprint(lat, bound_)];
    for (std::size_t idx : bucket)
      if (detail::IsometrySearch(lat, reps_[idx]).run()) return false;
    bucket.push_back(reps_.size());
    reps_.push_back(lat);
    return true;
  }

  [[nodiscard]] const std::vector<GramLattice>& representatives() const { return reps_; }

 private:
  Int bound_;
  std::map<Fingerprint, std::vector<std::size_t>> buckets_;
  std::vector<GramLattice> reps_;
};

/// First representative of each isometry class, in input order.
inline std::vector<GramLattice> dedup_isometry(const std::vector<GramLattice>& lats) {
  Int bound = 0;
  for (const auto& l : lats) bound = std::max(bound, max_diagonal(l));
  IsometryClasses classes(bound);
  for (const auto& l : lats) classes.add(l);
  return classes.representatives();
}

// ---------------------------------------------------------------------------
// Escalations

namespace detail {

/// 0, 1, -1, 2, -2, ..., bound, -bound.
inline std::vector<Int> signed_range(Int bound) {
  std::vector<Int> out{0};
  for (Int k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

/// Calls visit(cross) for every cross vector with cross[i] in
/// signed_range(bounds[i]), lexicographically with the first coordinate most
/// significant.
inline void for_each_cross(const std::vector<Int>& bounds, const std::function<void(const Vec&)>& visit) {
  const std::size_t n = bounds.size();
  std::vector<std::vector<Int>> ranges;
  for (Int b : bounds) ranges.push_back(signed_range(b));
  std::vector<std::size_t> idx(n, 0);
  Vec cross(n, 0);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) cross[i] = ranges[i][idx[i]];
    visit(cross);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++idx[k] < ranges[k].size()) break;
      idx[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

/// Gram matrix of L with new basis vectors appended. `cross[m][i]` is
/// B(new_m, e_i); `tail` is the Gram matrix of the new vectors.
inline std::optional<GramLattice> extend(const GramLattice& lat, const std::vector<Vec>& cross,
                                         const std::vector<std::vector<Int>>& tail) {
  const std::size_t n = lat.rank(), m = cross.size(), r = n + m;
  std::vector<Int> g(r * r, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i * r + j] = lat.at(i, j);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      g[(n + k) * r + i] = cross[k][i];
      g[i * r + n + k] = cross[k][i];
    }
    for (std::size_t l = 0; l < m; ++l) g[(n + k) * r + n + l] = tail[k][l];
  }
  if (!is_positive_definite(g, r)) return std::nullopt;
  return GramLattice(r, std::move(g));
}

inline std::vector<Int> cauchy_schwarz_bounds(const GramLattice& lat, Int norm) {
  std::vector<Int> b;
  for (std::size_t i = 0; i < lat.rank(); ++i) b.push_back(isqrt(lat.at(i, i) * norm));
  return b;
}

}  // namespace detail

/// All escalations of lat by the integer truant t, up to isometry. Each
/// returned Gram matrix has lat as its upper-left block.
inline std::vector<GramLattice> escalations_by_integer(const GramLattice& lat, Int t) {
  if (represents_integer(lat, t)) throw NotATruant();
  std::vector<GramLattice> cands;
  detail::for_each_cross(detail::cauchy_schwarz_bounds(lat, t), [&](const Vec& cross) {
    if (auto ext = detail::extend(lat, {cross}, {{t}})) cands.push_back(std::move(*ext));
  });
  return dedup_isometry(cands);
}

/// All escalations of lat by the binary truant f: extensions by one vector of
/// norm a or c that represent f, followed by extensions by a pair with Gram
/// exactly reduce_binary(f). Deduplicated up to isometry.
inline std::vector<GramLattice> escalations_by_binary(const GramLattice& lat, const BinaryForm& f) {
  const BinaryForm r = reduce_binary(f);
  if (represents_binary(lat, r)) throw NotATruant();
  std::vector<GramLattice> cands;
  std::vector<Int> norms{r.a};
  if (r.c != r.a) norms.push_back(r.c);
  for (Int t : norms) {
    detail::for_each_cross(detail::cauchy_schwarz_bounds(lat, t), [&](const Vec& cross) {
      auto ext = detail::extend(lat, {cross}, {{t}});
      if (ext && represents_binary(*ext, r)) cands.push_back(std::move(*ext));
    });
  }
  const auto bx = detail::cauchy_schwarz_bounds(lat, r.a);
  const auto by = detail::cauchy_schwarz_bounds(lat, r.c);
  std::vector<Int> bounds = bx;
  bounds.insert(bounds.end(), by.begin(), by.end());
  const std::size_t n = lat.rank();
  detail::for_each_cross(bounds, [&](const Vec& both) {
    Vec cx(both.begin(), both.begin() + static_cast<std::ptrdiff_t>(n));
    Vec cy(both.begin() + static_cast<std::ptrdiff_t>(n), both.end());
    if (auto ext = detail::extend(lat, {cx, cy}, {{r.a, r.b}, {r.b, r.c}})) cands.push_back(std::move(*ext));
  });
  return dedup_isometry(cands);
}

// ---------------------------------------------------------------------------
// Escalation trees

enum class UniversalityMode { Integer, Binary };

using Truant = std::variant<Int, BinaryForm>;

struct TreeCaps {
  Int truant_cap = 15;  ///< integer mode: scan 1..truant_cap
  Int det_cap = 16;     ///< binary mode: scan reduced forms of det <= det_cap
  int depth = 5;
};

struct EscalationNode {
  GramLattice lattice;
  std::optional<Truant> truant;
  std::vector<EscalationNode> children;
  int depth = 0;
  bool truncated = false;   ///< has a truant but sits at the depth cap
  bool exhausted = false;   ///< fails the universality test yet no truant within the cap
};

/// The six forms whose representation certifies 2-universality.
inline const FormSet& criterion_s2() {
  static const FormSet s2{diag_form(1, 1), diag_form(2, 3), diag_form(3, 3),
                          {2, 1, 2},       {2, 1, 3},       {2, 1, 4}};
  return s2;
}

/// Integer mode: represents every critical integer.
inline bool represents_critical_integers(const GramLattice& lat) {
  const auto& s1 = critical_integers();
  std::vector<bool> seen(static_cast<std::size_t>(s1.back()) + 1, false);
  for_each_short_vector(lat, s1.back(), [&](const Vec&, Int q) {
    seen[static_cast<std::size_t>(q)] = true;
    return true;
  });
  return std::all_of(s1.begin(), s1.end(), [&](Int k) { return seen[static_cast<std::size_t>(k)]; });
}

inline bool passes_universality_test(const GramLattice& lat, UniversalityMode mode) {
  if (mode == UniversalityMode::Integer) return represents_critical_integers(lat);
  return represents_all(lat, criterion_s2(), true).all_present;
}

/// Breadth-first escalation tree rooted at `root`.
inline EscalationNode escalation_tree(const GramLattice& root, UniversalityMode mode, const TreeCaps& caps) {
  if (caps.truant_cap < 1 || caps.det_cap < 1 || caps.depth < 0)
    throw std::invalid_argument("escalation caps must be positive");
  EscalationNode top{root, std::nullopt, {}, 0, false, false};
  std::deque<EscalationNode*> queue{&top};
  const FormOrdering ord = default_ordering();
  while (!queue.empty()) {
    EscalationNode* node = queue.front();
    queue.pop_front();
    if (passes_universality_test(node->lattice, mode)) continue;
    if (mode == UniversalityMode::Integer) {
      if (auto t = integer_truant(node->lattice, caps.truant_cap)) node->truant = *t;
    } else {
      if (auto t = binary_truant(node->lattice, ord, caps.det_cap)) node->truant = *t;
    }
    if (!node->truant) {
      node->exhausted = true;
      continue;
    }
    if (node->depth >= caps.depth) {
      node->truncated = true;
      continue;
    }
    std::vector<GramLattice> kids =
        mode == UniversalityMode::Integer
            ? escalations_by_integer(node->lattice, std::get<Int>(*node->truant))
            : escalations_by_binary(node->lattice, std::get<BinaryForm>(*node->truant));
    node->children.reserve(kids.size());
    for (auto& k : kids) node->children.push_back({std::move(k), std::nullopt, {}, node->depth + 1, false, false});
    for (auto& c : node->children) queue.push_back(&c);
  }
  return top;
}

/// Pre-order traversal.
inline void visit_tree(const EscalationNode& node, const std::function<void(const EscalationNode&)>& f) {
  f(node);
  for (const auto& c : node.children) visit_tree(c, f);
}

}  // namespace escalator

#endif  // ESCALATOR_ESCALATION_HPP
