// The six-form criterion for 2-universality and the witness lattices showing
// that none of the six can be dropped.
//
// For a set T of binary forms missing some l in the criterion set, a witness
// is a lattice representing every member of T but not l. build_witness()
// assembles the witness from orthogonal blocks chosen by sorting the reduced
// members of T into buckets; witness_search() scans small Gram matrices for
// one instead. Either way the verdict is always recomputed by
// verify_witness(), never assumed.

#ifndef ESCALATOR_CRITERION_HPP
#define ESCALATOR_CRITERION_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "escalator/escalation.hpp"
#include "escalator/forms.hpp"
#include "escalator/representation.hpp"

namespace escalator {

class TargetInT : public Error {
 public:
  TargetInT() : Error("the excluded form is a member of the set") {}
};

class TargetNotInS2 : public Error {
 public:
  TargetNotInS2() : Error("the excluded form is not a member of the 2-universality criterion set") {}
};

struct CriterionReport {
  bool universal = false;
  RepresentationReport evidence;
};

inline CriterionReport is_2_universal(const GramLattice& lat) {
  auto rep = represents_all(lat, criterion_s2());
  return {rep.all_present, std::move(rep)};
}

enum class Recipe {
  DropOneOne,          ///< l = <1,1>
  DropTwoThree,        ///< l = <2,3>
  DropThreeThreeMirror,///< l = <3,3>, same buckets and shape as <2,3> (interpretation)
  DropTwoOneE,         ///< l = [2,1,e*], e* in {2,3,4}
  External,            ///< candidate supplied by the caller
  Search,              ///< found by witness_search
};

inline std::string recipe_name(Recipe r) {
  switch (r) {
    case Recipe::DropOneOne: return "truant <1,1>";
    case Recipe::DropTwoThree: return "truant <2,3>";
    case Recipe::DropThreeThreeMirror: return "truant <3,3> (mirror of <2,3>, interpretation)";
    case Recipe::DropTwoOneE: return "truant [2,1,e*]";
    case Recipe::External: return "external";
    case Recipe::Search: return "search";
  }
  return "unknown";
}

struct WitnessReport {
  GramLattice witness;
  BinaryForm target;
  FormSet members;
  std::vector<MemberVerdict> member_verdicts;
  /// True when the witness does not represent the target.
  bool truancy_verdict = false;
  /// Embedding of the target when truancy fails.
  std::optional<Embedding> target_embedding;
  Recipe recipe = Recipe::External;
  bool pass = false;

  [[nodiscard]] bool recompute_pass() const {
    for (const auto& v : member_verdicts)
      if (!v.present()) return false;
    return member_verdicts.size() == members.size() && truancy_verdict;
  }

  friend bool operator==(const WitnessReport&, const WitnessReport&) = default;
};

inline WitnessReport verify_witness(const GramLattice& w, const FormSet& t, const BinaryForm& target,
                                    Recipe recipe = Recipe::External) {
  WitnessReport rep;
  rep.witness = w;
  rep.target = reduce_binary(target);
  rep.members = t;
  rep.member_verdicts = represents_all(w, t).verdicts;
  rep.target_embedding = represents_binary(w, rep.target);
  rep.truancy_verdict = !rep.target_embedding.has_value();
  rep.recipe = recipe;
  rep.pass = rep.recompute_pass();
  return rep;
}

/// Builds the witness for excluding `target` from `t` and verifies it.
inline WitnessReport build_witness(const FormSet& t, const BinaryForm& target) {
  const BinaryForm ell = reduce_binary(target);
  if (!criterion_s2().contains(ell)) throw TargetNotInS2();
  if (t.contains(ell)) throw TargetInT();

  std::vector<Int> diag_entries;
  std::vector<GramLattice> blocks;
  Recipe recipe;

  if (ell == diag_form(1, 1)) {
    // <1, c_1, ..., c_k> for members <1,c>; every other member has minimum > 1.
    recipe = Recipe::DropOneOne;
    diag_entries.push_back(1);
    for (const auto& f : t) {
      if (f.a == 1)
        diag_entries.push_back(f.c);
      else
        blocks.push_back(GramLattice::from_binary(f));
    }
  } else if (ell == diag_form(2, 3) || ell == diag_form(3, 3)) {
    // <1, 1, c_i> for <a,c>, a in {1,2,3}, c > 3;
    // [2,1,e_i] for [d,1,e], d in {2,3}, e > 4;
    // [p,q,r] itself for 3 < p.
    recipe = (ell == diag_form(2, 3)) ? Recipe::DropTwoThree : Recipe::DropThreeThreeMirror;
    diag_entries = {1, 1};
    std::vector<GramLattice> twos, large;
    for (const auto& f : t) {
      if (f.b == 0 && f.a >= 1 && f.a <= 3 && f.c > 3)
        diag_entries.push_back(f.c);
      else if (f.b == 1 && (f.a == 2 || f.a == 3) && f.c > 4)
        twos.push_back(GramLattice::from_binary({2, 1, f.c}));
      else if (f.a > 3)
        large.push_back(GramLattice::from_binary(f));
    }
    blocks = std::move(twos);
    blocks.insert(blocks.end(), large.begin(), large.end());
  } else {
    // <1,...,1> (e* times) with <a_i, c_i> for a >= 2, c > e*, [d,1,e] for
    // d >= 2, e > e*, and [p,q,r] for 3 < p. A member matching several
    // buckets is placed once, in the first.
    recipe = Recipe::DropTwoOneE;
    const Int e_star = ell.c;
    diag_entries.assign(static_cast<std::size_t>(e_star), 1);
    std::vector<GramLattice> binaries, large;
    for (const auto& f : t) {
      if (f.b == 0 && f.a >= 2 && f.c > e_star) {
        diag_entries.push_back(f.a);
        diag_entries.push_back(f.c);
      } else if (f.b == 1 && f.a >= 2 && f.c > e_star) {
        binaries.push_back(GramLattice::from_binary(f));
      } else if (f.a > 3) {
        large.push_back(GramLattice::from_binary(f));
      }
    }
    blocks = std::move(binaries);
    blocks.insert(blocks.end(), large.begin(), large.end());
  }

  GramLattice w = diagonal(diag_entries);
  for (const auto& b : blocks) w = orthogonal_sum(w, b);
  return verify_witness(w, t, ell, recipe);
}

struct SearchCaps {
  std::size_t rank_cap = 4;
  Int entry_cap = 6;
};

struct SearchOutcome {
  std::optional<WitnessReport> found;
  SearchCaps caps;
  /// Positive-definite Gram matrices generated before stopping.
  std::size_t candidates = 0;
  /// Isometry classes among them that were verified.
  std::size_t classes = 0;
};

namespace detail {

// Cheap rejection used inside the scan: truancy first, then members, stopping
// at the first failure.
inline bool quick_witness_check(const GramLattice& w, const FormSet& t, const BinaryForm& target) {
  if (represents_binary(w, target)) return false;
  return represents_all(w, t, true).all_present;
}

struct GramScan {
  std::size_t rank;
  Int entry_cap;
  const std::function<bool(const GramLattice&)>& visit;  // returns false to stop
  std::vector<Int> g;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  bool stopped = false;

  void run() {
    g.assign(rank * rank, 0);
    // Column by column, so the leading j x j block is complete after column j.
    for (std::size_t j = 1; j < rank; ++j)
      for (std::size_t i = 0; i < j; ++i) slots.emplace_back(i, j);
    diag(0, 1);
  }

  void diag(std::size_t i, Int lo) {
    if (i == rank) {
      off(0);
      return;
    }
    for (Int d = lo; d <= entry_cap && !stopped; ++d) {
      g[i * rank + i] = d;
      diag(i + 1, d);
    }
  }

  void off(std::size_t s) {
    if (stopped) return;
    if (s == slots.size()) {
      if (!visit(GramLattice(rank, g))) stopped = true;
      return;
    }
    const auto [i, j] = slots[s];
    const Int bound = g[i * rank + i] / 2;
    for (Int v = -bound; v <= bound && !stopped; ++v) {
      g[i * rank + j] = v;
      g[j * rank + i] = v;
      if (i + 1 == j && !leading_block_definite(j + 1)) continue;
      off(s + 1);
    }
    g[i * rank + j] = 0;
    g[j * rank + i] = 0;
  }

  [[nodiscard]] bool leading_block_definite(std::size_t k) const {
    std::vector<Int> block(k * k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) block[r * k + c] = g[r * rank + c];
    return is_positive_definite(block, k);
  }
};

}  // namespace detail

/// Scans Gram matrices of rank <= rank_cap with diagonal entries <= entry_cap
/// for a witness lattice, returning the first verified one in scan order.
///
/// Only matrices with nondecreasing diagonal and |2 g_ij| <= g_ii are
/// generated. Every isometry class that has some basis with all diagonal
/// entries <= entry_cap also has such a basis (its Minkowski-reduced one),
/// so nothing reachable within the caps is skipped.
inline SearchOutcome witness_search(const FormSet& t, const BinaryForm& target, const SearchCaps& caps = {}) {
  if (caps.rank_cap < 1 || caps.entry_cap < 1) throw std::invalid_argument("search caps must be positive");
  const BinaryForm ell = reduce_binary(target);
  SearchOutcome out;
  out.caps = caps;
  if (t.contains(ell)) return out;
  for (std::size_t rank = 1; rank <= caps.rank_cap && !out.found; ++rank) {
    IsometryClasses classes(caps.entry_cap);
    std::function<bool(const GramLattice&)> visit = [&](const GramLattice& w) {
      ++out.candidates;
      if (!classes.add(w)) return true;
      ++out.classes;
      if (!detail::quick_witness_check(w, t, ell)) return true;
      out.found = verify_witness(w, t, ell, Recipe::Search);
      return false;
    };
    detail::GramScan scan{rank, caps.entry_cap, visit, {}, {}};
    scan.run();
  }
  return out;
}

struct DemoEntry {
  BinaryForm excluded;
  WitnessReport recipe_report;
  /// Present when the recipe witness failed verification.
  std::optional<SearchOutcome> search;

  /// The report that settles this case: the recipe's if it passed, otherwise
  /// the search result if any.
  [[nodiscard]] const WitnessReport* settled() const {
    if (recipe_report.pass) return &recipe_report;
    if (search && search->found) return &*search->found;
    return nullptr;
  }
};

/// For every l in the criterion set, builds and verifies a witness for
/// T = S2 \ {l}, falling back to a bounded search when the recipe fails.
inline std::vector<DemoEntry> uniqueness_demo(const SearchCaps& caps = {}) {
  std::vector<DemoEntry> out;
  for (const auto& ell : criterion_s2()) {
    FormSet t = criterion_s2().without(ell);
    DemoEntry e{ell, build_witness(t, ell), std::nullopt};
    if (!e.recipe_report.pass) e.search = witness_search(t, ell, caps);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace escalator

#endif  // ESCALATOR_CRITERION_HPP
