#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "locdom/detection.hpp"
#include "locdom/graph.hpp"
#include "locdom/rational.hpp"

namespace locdom {

// Detector pattern on the infinite king's grid, defined by residues inside a
// rectangular fundamental domain. The plane density of the generated set
// equals the in-tile density, which is what makes these useful certificates.
class PeriodicPattern {
 public:
  PeriodicPattern(int period_rows, int period_cols);
  static PeriodicPattern from_residues(int period_rows, int period_cols,
                                       const std::vector<std::pair<int, int>>& cells);

  // Rows of 'X' (detector) and '.' (non-detector), one line per period row.
  static PeriodicPattern parse_ascii(const std::string& text);
  std::string to_ascii() const;

  int period_rows() const { return rows_; }
  int period_cols() const { return cols_; }
  int area() const { return rows_ * cols_; }
  int detector_count() const { return count_; }
  Rational density() const { return Rational(count_, area()); }

  bool detector_at_residue(int r, int c) const { return cells_[r * cols_ + c] != 0; }
  void set_residue(int r, int c, bool detector);

  // Membership for an absolute grid position (any integers).
  bool is_detector(long long r, long long c) const;

  PeriodicPattern translated(int dr, int dc) const;

  // Pattern expanded to a super-period grid (dimensions must be multiples of
  // the periods), then minimized over all translations and, for square
  // grids, the 8 dihedral transforms. Two patterns generate equivalent plane
  // sets (up to king-grid automorphisms) iff their canonical forms on a
  // common square super-period agree.
  std::vector<std::uint8_t> canonical_form(int rows, int cols) const;
  bool equivalent_to(const PeriodicPattern& other) const;

  friend bool operator==(const PeriodicPattern& a, const PeriodicPattern& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.cells_ == b.cells_;
  }

 private:
  int rows_;
  int cols_;
  int count_ = 0;
  std::vector<std::uint8_t> cells_;  // row-major
};

struct InfiniteVerdict {
  enum class Status { Valid, UnderDominated, Indistinguishable };
  Status status = Status::Valid;
  int required = 0;
  std::pair<int, int> vertex{};  // residue representative (under-domination)
  std::pair<int, int> pair_a{};  // absolute positions (indistinguishable pair)
  std::pair<int, int> pair_b{};
  int dom = 0;
  int diff = 0;

  bool valid() const { return status == Status::Valid; }
  std::string describe() const;
};

// Decides the infinite-grid redundancy property exactly. Domination is
// checked on one representative per residue class; the distinguishing check
// only needs vertex pairs at Chebyshev distance <= 2 because detection
// regions of vertices at distance >= 3 are disjoint (for both kinds), making
// their code difference dom(u) + dom(v) >= 2(redundancy+1) automatically.
// The 9x9-window test suite validates that disjointness exhaustively.
InfiniteVerdict verify_infinite(const PeriodicPattern& p, DetectionKind kind, int redundancy);

// Torus with copies_r x copies_c copies of the fundamental rectangle.
// Throws NonFaithfulError below 5 cells in either dimension, where the wrap
// stops agreeing with the infinite grid.
Graph make_lift_torus(const PeriodicPattern& p, int copies_r, int copies_c);

// Detector set induced by the pattern on a torus whose dimensions are
// multiples of the periods. verify() on the lift agrees with
// verify_infinite for faithful tori.
DetectorSet lift_to_torus(const PeriodicPattern& p, DetectionKind kind, const Graph& torus);

struct NamedPattern {
  std::string name;
  std::string description;
  PeriodicPattern pattern;
};

// The built-in constructions: the two density-1/3 patterns that are
// simultaneously RED:OLD and RED:IC, and the density-1/3 RED:IC-only
// pattern discovered by pattern_search.
const std::vector<NamedPattern>& builtin_patterns();
const PeriodicPattern* find_builtin(const std::string& name);

struct PatternSearchOptions {
  int max_detectors = -1;     // required: cap on residues used
  int area_budget = 36;       // throw BudgetError above this
  int workers = 1;            // subtree parallelism; output independent of it
  bool minimum_only = false;  // keep only minimum-cardinality results
};

// All residue sets within the detector cap whose generated pattern passes
// verify_infinite, sorted by (detector count, row-major cells). Exhaustive
// via depth-first assignment with monotone domination/distinguishing
// pruning.
std::vector<PeriodicPattern> pattern_search(int period_rows, int period_cols,
                                            DetectionKind kind, int redundancy,
                                            const PatternSearchOptions& options);

}  // namespace locdom
