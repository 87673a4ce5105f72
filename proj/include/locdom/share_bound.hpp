#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "locdom/graph.hpp"
#include "locdom/rational.hpp"

namespace locdom {

// Parameters of the closed-form partial-share bound: |A| vertices whose
// locating codes all contain a fixed detector set D of size |D|, in a
// k-distinguishing system.
struct LemmaBoundQuery {
  int a = 1;  // |A| >= 1
  int d = 1;  // |D| >= 1
  int k = 0;  // distinguishing level >= 0
};

// max share over A given the query:
//   a*d*(k-1) >= (d+1)*k  ->  a/(d+1)
//   otherwise             ->  1/d + (a-1)/(d+k)
Rational lemma_bound(const LemmaBoundQuery& q);

// Fully assigned 5x5 king-grid window whose center cell (2,2) is a detector.
// The 3x3 core around the center has its complete detection regions inside
// the window, so core domination counts and core pairwise code differences
// are exact for any extension of the patch to the full grid.
struct Patch {
  static constexpr int kSide = 5;
  static constexpr int kCells = 25;
  static constexpr int kCenter = 12;  // row-major (2,2)
  static constexpr std::uint32_t kCenterBit = 1u << kCenter;

  std::uint32_t mask = kCenterBit;  // bit i = cell i (row-major) is a detector

  bool detector(int r, int c) const { return (mask >> (r * kSide + c)) & 1; }
  std::string to_ascii() const;
  static Patch from_ascii(const std::string& text);

  // Minimum mask over the 8 dihedral images.
  std::uint32_t canonical() const;

  friend bool operator==(const Patch& a, const Patch& b) { return a.mask == b.mask; }
  friend bool operator<(const Patch& a, const Patch& b) { return a.mask < b.mask; }
};

// The 8 cells adjacent to the center, row-major:
// bit 0..7 = (1,1), (1,2), (1,3), (2,1), (2,3), (3,1), (3,2), (3,3).
std::uint8_t center_ring_mask(const Patch& p);

// Constraint on the center's 8-neighborhood: bits listed in `care` must
// match `required`. Parsed from three 3-character rows of 'X', '.', '?'
// (center row has the center in the middle, which must be 'X' or '?').
struct RingConstraint {
  std::uint8_t required = 0;
  std::uint8_t care = 0;

  bool admits(std::uint8_t ring) const {
    return static_cast<std::uint8_t>((ring ^ required) & care) == 0;
  }
};
RingConstraint parse_ring_constraint(const std::string& spec);
std::string ring_constraint_to_string(const RingConstraint& rc);

// Shares are accumulated as integers scaled by lcm(1..9).
constexpr std::int64_t kShareScale = 2520;

struct HighSharePatch {
  Patch patch;
  Rational share;
};

// Result of one full enumeration over the 2^24 assignments of the
// non-center cells (redundancy fixed at 1).
struct ShareSummary {
  DetectionKind kind = DetectionKind::Open;
  std::uint64_t feasible_count = 0;
  std::optional<Rational> max_share;          // nullopt when nothing is feasible
  std::vector<Patch> argmax;                  // canonical representatives, sorted
  std::uint64_t argmax_total = 0;             // feasible patches attaining the max
  Rational threshold;                         // share threshold used below
  std::vector<HighSharePatch> above_threshold;  // enumeration (counter) order
  // Max share per exact center-ring detector configuration; -1 = no
  // feasible patch has that configuration. Scaled by kShareScale.
  std::array<std::int64_t, 256> ring_class_max_scaled{};

  Rational implied_density_bound() const;  // 1 / max_share
};

struct EnumerationOptions {
  Rational threshold = Rational(10, 3);
  std::optional<RingConstraint> constraint;
  int workers = 1;  // report is byte-identical for any worker count
};

// Enumerates every locally feasible patch: all nine core cells exactly
// >=2-dominated and all core pairs exactly >=2-distinguished within the
// window. Ring-cell pairs are left unconstrained (their regions leave the
// window), so the feasible set over-approximates the windows of real
// 1-redundant sets and the resulting maxima are sound upper bounds.
ShareSummary enumerate_share_summary(DetectionKind kind, const EnumerationOptions& options);

// Streaming access for tests: calls fn(mask, scaled_share) for every
// feasible patch in counter order.
void for_each_feasible_patch(DetectionKind kind,
                             const std::function<void(std::uint32_t, std::int64_t)>& fn);

// Cached unconstrained enumeration (threshold 10/3).
const ShareSummary& certified_max_share(DetectionKind kind);

struct NeighborClassInfo {
  int cell = -1;                          // ring-1 cell index of the detector
  std::uint8_t ring = 0;                  // its exact 8-neighbor configuration
  std::optional<Rational> class_max;      // max share of that configuration class
  bool within_13_4 = false;               // class max <= 13/4 (empty class: vacuous)
};

struct HighShareReport {
  DetectionKind kind = DetectionKind::Open;
  Rational threshold;
  struct Entry {
    Patch patch;
    Rational share;
    std::vector<NeighborClassInfo> adjacent_detectors;
    int low_share_neighbor_count = 0;  // adjacent detectors with class max <= 13/4
  };
  std::vector<Entry> entries;  // enumeration order
};

// For every feasible patch with share above the threshold, reports the
// detectors adjacent to the center together with the certified maximum of
// their exact neighbor-configuration class. This is the machine check that
// every such patch has enough low-share neighbors to average against.
HighShareReport classify_high_share(DetectionKind kind, const Rational& threshold);

}  // namespace locdom
