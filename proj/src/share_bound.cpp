#include "locdom/share_bound.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>

#include "locdom/errors.hpp"

namespace locdom {

Rational lemma_bound(const LemmaBoundQuery& q) {
  if (q.a < 1 || q.d < 1 || q.k < 0) {
    throw Error("lemma_bound requires a >= 1, d >= 1, k >= 0");
  }
  std::int64_t lhs = static_cast<std::int64_t>(q.a) * q.d * (q.k - 1);
  std::int64_t rhs = static_cast<std::int64_t>(q.d + 1) * q.k;
  if (lhs >= rhs) return Rational(q.a, q.d + 1);
  return Rational(1, q.d) + Rational(q.a - 1, q.d + q.k);
}

std::string Patch::to_ascii() const {
  std::string out;
  out.reserve(30);
  for (int r = 0; r < kSide; ++r) {
    for (int c = 0; c < kSide; ++c) out.push_back(detector(r, c) ? 'X' : '.');
    out.push_back('\n');
  }
  return out;
}

Patch Patch::from_ascii(const std::string& text) {
  Patch p;
  p.mask = 0;
  int cell = 0;
  for (char ch : text) {
    if (ch == '\n' || ch == '\r' || ch == ' ') continue;
    if (cell >= kCells) throw FormatError("patch has more than 25 cells");
    if (ch == 'X') {
      p.mask |= 1u << cell;
    } else if (ch != '.') {
      throw FormatError(std::string("patch cell must be 'X' or '.', got '") + ch + "'");
    }
    ++cell;
  }
  if (cell != kCells) throw FormatError("patch needs exactly 25 cells");
  if (!(p.mask & kCenterBit)) throw FormatError("patch center must be a detector");
  return p;
}

namespace {

// to[t][i] = image of cell i under the t-th dihedral transform.
struct DihedralTables {
  int to[8][Patch::kCells];
  DihedralTables() {
    auto idx = [](int r, int c) { return r * Patch::kSide + c; };
    for (int r = 0; r < Patch::kSide; ++r) {
      for (int c = 0; c < Patch::kSide; ++c) {
        int i = idx(r, c);
        to[0][i] = idx(r, c);
        to[1][i] = idx(r, 4 - c);
        to[2][i] = idx(4 - r, c);
        to[3][i] = idx(4 - r, 4 - c);
        to[4][i] = idx(c, r);
        to[5][i] = idx(c, 4 - r);
        to[6][i] = idx(4 - c, r);
        to[7][i] = idx(4 - c, 4 - r);
      }
    }
  }
};

const DihedralTables& dihedral() {
  static const DihedralTables tables;
  return tables;
}

std::uint32_t transform_mask(std::uint32_t mask, int t) {
  const auto& d = dihedral();
  std::uint32_t out = 0;
  while (mask) {
    int i = std::countr_zero(mask);
    out |= 1u << d.to[t][i];
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

std::uint32_t Patch::canonical() const {
  std::uint32_t best = mask;
  for (int t = 1; t < 8; ++t) best = std::min(best, transform_mask(mask, t));
  return best;
}

namespace {

// Ring-1 cells (the center's neighbors), row-major, and the matching
// relative offsets used to read any ring-1 detector's own neighborhood.
constexpr int kRingCells[8] = {6, 7, 8, 11, 13, 16, 17, 18};
constexpr int kRingOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                    {0, 1},   {1, -1}, {1, 0},  {1, 1}};
constexpr int kCoreCells[9] = {6, 7, 8, 11, 12, 13, 16, 17, 18};

}  // namespace

std::uint8_t center_ring_mask(const Patch& p) {
  std::uint8_t ring = 0;
  for (int b = 0; b < 8; ++b) {
    if (p.mask & (1u << kRingCells[b])) ring |= std::uint8_t(1) << b;
  }
  return ring;
}

RingConstraint parse_ring_constraint(const std::string& spec) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : spec) {
    if (ch == '\n' || ch == '/') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r' && ch != ' ') {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  if (lines.size() != 3 || lines[0].size() != 3 || lines[1].size() != 3 ||
      lines[2].size() != 3) {
    throw FormatError("ring constraint needs three rows of three cells, e.g. \".XX/.X./...\"");
  }
  char center = lines[1][1];
  if (center != 'X' && center != '?') {
    throw FormatError("the constraint center is always a detector; use 'X' or '?'");
  }
  RingConstraint rc;
  int bit = 0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r == 1 && c == 1) continue;
      char ch = lines[r][c];
      if (ch == 'X') {
        rc.required |= std::uint8_t(1) << bit;
        rc.care |= std::uint8_t(1) << bit;
      } else if (ch == '.') {
        rc.care |= std::uint8_t(1) << bit;
      } else if (ch != '?') {
        throw FormatError(std::string("constraint cell must be 'X', '.' or '?', got '") + ch +
                          "'");
      }
      ++bit;
    }
  }
  return rc;
}

std::string ring_constraint_to_string(const RingConstraint& rc) {
  std::string out;
  int bit = 0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r == 1 && c == 1) {
        out.push_back('X');
        continue;
      }
      if (!(rc.care >> bit & 1)) {
        out.push_back('?');
      } else {
        out.push_back((rc.required >> bit & 1) ? 'X' : '.');
      }
      ++bit;
    }
    if (r != 2) out.push_back('/');
  }
  return out;
}

namespace {

struct EnumTables {
  std::uint32_t region[Patch::kCells];  // in-window detection region per cell
  // Core pairs ordered by ascending |region(u) △ region(v)| so that the
  // tightest distinguishing constraints are tested first.
  struct CorePair {
    std::uint32_t diff;
  };
  CorePair pairs[36];
  int npairs = 0;
  std::uint32_t scatter_hi[256];   // counter bits 23..16
  std::uint32_t scatter_mid[256];  // counter bits 15..8
  std::uint32_t scatter_lo[256];   // counter bits 7..0
  std::int64_t inv[10];            // kShareScale / d
  int share_cells[9];              // core indices contributing to the center share
  int n_share_cells = 0;
};

EnumTables build_tables(DetectionKind kind) {
  EnumTables t{};
  auto idx = [](int r, int c) { return r * Patch::kSide + c; };
  for (int r = 0; r < Patch::kSide; ++r) {
    for (int c = 0; c < Patch::kSide; ++c) {
      std::uint32_t m = 0;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
          int nr = r + dr;
          int nc = c + dc;
          if (nr < 0 || nr >= Patch::kSide || nc < 0 || nc >= Patch::kSide) continue;
          m |= 1u << idx(nr, nc);
        }
      }
      t.region[idx(r, c)] = m;
    }
  }
  for (int i = 0; i < 9; ++i) {
    for (int j = i + 1; j < 9; ++j) {
      t.pairs[t.npairs++] = {t.region[kCoreCells[i]] ^ t.region[kCoreCells[j]]};
    }
  }
  std::sort(t.pairs, t.pairs + t.npairs, [](const EnumTables::CorePair& a,
                                            const EnumTables::CorePair& b) {
    return std::popcount(a.diff) < std::popcount(b.diff);
  });

  // Counter bit 23 - j drives the j-th non-center cell in row-major order.
  auto cell_of = [](int j) { return j < 12 ? j : j + 1; };
  for (int b = 0; b < 256; ++b) {
    std::uint32_t hi = 0;
    std::uint32_t mid = 0;
    std::uint32_t lo = 0;
    for (int bit = 0; bit < 8; ++bit) {
      if (!((b >> bit) & 1)) continue;
      hi |= 1u << cell_of(0 + (7 - bit));
      mid |= 1u << cell_of(8 + (7 - bit));
      lo |= 1u << cell_of(16 + (7 - bit));
    }
    t.scatter_hi[b] = hi;
    t.scatter_mid[b] = mid;
    t.scatter_lo[b] = lo;
  }

  t.inv[0] = 0;
  for (int d = 1; d <= 9; ++d) t.inv[d] = kShareScale / d;

  // Center share: the center's detection region is exactly the core ring
  // (plus the center itself for closed regions), all of which have exact
  // domination counts.
  for (int i = 0; i < 9; ++i) {
    if (kCoreCells[i] == Patch::kCenter && kind == DetectionKind::Open) continue;
    t.share_cells[t.n_share_cells++] = i;
  }
  return t;
}

const EnumTables& tables_for(DetectionKind kind) {
  static const EnumTables open_tables = build_tables(DetectionKind::Open);
  static const EnumTables closed_tables = build_tables(DetectionKind::Closed);
  return kind == DetectionKind::Open ? open_tables : closed_tables;
}

struct ChunkResult {
  std::uint64_t feasible = 0;
  std::int64_t max_scaled = -1;
  std::vector<std::uint32_t> argmax_masks;
  std::uint64_t argmax_count = 0;
  std::vector<std::pair<std::uint32_t, std::int64_t>> above;
  std::array<std::int64_t, 256> class_max;

  ChunkResult() { class_max.fill(-1); }
};

// Enumerates one contiguous counter range. Monotone early exits only: a
// core cell short of domination or a core pair short of distinguishing
// rejects the assignment outright.
void scan_range(const EnumTables& t, std::uint32_t begin, std::uint32_t end,
                std::int64_t threshold_scaled, const RingConstraint* constraint,
                ChunkResult& out) {
  for (std::uint32_t counter = begin; counter != end; ++counter) {
    std::uint32_t mask = t.scatter_hi[(counter >> 16) & 255] |
                         t.scatter_mid[(counter >> 8) & 255] | t.scatter_lo[counter & 255] |
                         Patch::kCenterBit;
    if (constraint) {
      std::uint8_t ring = 0;
      for (int b = 0; b < 8; ++b) ring |= std::uint8_t((mask >> kRingCells[b]) & 1) << b;
      if (!constraint->admits(ring)) continue;
    }
    int dom[9];
    bool ok = true;
    for (int i = 0; i < 9; ++i) {
      dom[i] = std::popcount(t.region[kCoreCells[i]] & mask);
      if (dom[i] < 2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int i = 0; i < t.npairs; ++i) {
      if (std::popcount(t.pairs[i].diff & mask) < 2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    std::int64_t share = 0;
    for (int i = 0; i < t.n_share_cells; ++i) share += t.inv[dom[t.share_cells[i]]];

    ++out.feasible;
    if (share > out.max_scaled) {
      out.max_scaled = share;
      out.argmax_masks.clear();
      out.argmax_masks.push_back(mask);
      out.argmax_count = 1;
    } else if (share == out.max_scaled) {
      out.argmax_masks.push_back(mask);
      ++out.argmax_count;
    }
    std::uint8_t ring = 0;
    for (int b = 0; b < 8; ++b) ring |= std::uint8_t((mask >> kRingCells[b]) & 1) << b;
    if (share > out.class_max[ring]) out.class_max[ring] = share;
    if (share > threshold_scaled) out.above.push_back({mask, share});
  }
}

}  // namespace

Rational ShareSummary::implied_density_bound() const {
  if (!max_share) throw Error("no feasible patch; no density bound implied");
  return max_share->reciprocal();
}

ShareSummary enumerate_share_summary(DetectionKind kind, const EnumerationOptions& options) {
  const EnumTables& t = tables_for(kind);
  // threshold_scaled: strict comparison share > threshold on the common
  // denominator; threshold must divide evenly into the scale.
  Rational scaled = options.threshold * Rational(kShareScale);
  if (!scaled.is_integer()) {
    throw Error("threshold denominator must divide " + std::to_string(kShareScale));
  }
  std::int64_t threshold_scaled = scaled.num();
  const RingConstraint* constraint = options.constraint ? &*options.constraint : nullptr;

  constexpr int kChunks = 256;
  constexpr std::uint32_t kChunkSize = (1u << 24) / kChunks;
  std::vector<ChunkResult> chunks(kChunks);

  int workers = std::max(1, options.workers);
  if (workers == 1) {
    for (int i = 0; i < kChunks; ++i) {
      scan_range(t, i * kChunkSize, (i + 1) * kChunkSize, threshold_scaled, constraint,
                 chunks[i]);
    }
  } else {
    std::atomic<int> next{0};
    auto run = [&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= kChunks) break;
        scan_range(t, i * kChunkSize, (i + 1) * kChunkSize, threshold_scaled, constraint,
                   chunks[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  ShareSummary summary;
  summary.kind = kind;
  summary.threshold = options.threshold;
  summary.ring_class_max_scaled.fill(-1);

  std::int64_t max_scaled = -1;
  for (const auto& chunk : chunks) {
    summary.feasible_count += chunk.feasible;
    max_scaled = std::max(max_scaled, chunk.max_scaled);
  }
  if (max_scaled >= 0) {
    summary.max_share = Rational(max_scaled, kShareScale);
    std::vector<std::uint32_t> canon;
    for (const auto& chunk : chunks) {
      if (chunk.max_scaled != max_scaled) continue;
      summary.argmax_total += chunk.argmax_count;
      for (std::uint32_t mask : chunk.argmax_masks) {
        canon.push_back(Patch{mask}.canonical());
      }
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    for (std::uint32_t mask : canon) summary.argmax.push_back(Patch{mask});
  }
  for (const auto& chunk : chunks) {
    for (int ring = 0; ring < 256; ++ring) {
      summary.ring_class_max_scaled[ring] =
          std::max(summary.ring_class_max_scaled[ring], chunk.class_max[ring]);
    }
    for (const auto& [mask, share] : chunk.above) {
      summary.above_threshold.push_back({Patch{mask}, Rational(share, kShareScale)});
    }
  }
  return summary;
}

void for_each_feasible_patch(DetectionKind kind,
                             const std::function<void(std::uint32_t, std::int64_t)>& fn) {
  const EnumTables& t = tables_for(kind);
  for (std::uint64_t counter = 0; counter < (1u << 24); ++counter) {
    std::uint32_t c = static_cast<std::uint32_t>(counter);
    std::uint32_t mask = t.scatter_hi[(c >> 16) & 255] | t.scatter_mid[(c >> 8) & 255] |
                         t.scatter_lo[c & 255] | Patch::kCenterBit;
    int dom[9];
    bool ok = true;
    for (int i = 0; i < 9; ++i) {
      dom[i] = std::popcount(t.region[kCoreCells[i]] & mask);
      if (dom[i] < 2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int i = 0; i < t.npairs && ok; ++i) {
      ok = std::popcount(t.pairs[i].diff & mask) >= 2;
    }
    if (!ok) continue;
    std::int64_t share = 0;
    for (int i = 0; i < t.n_share_cells; ++i) share += t.inv[dom[t.share_cells[i]]];
    fn(mask, share);
  }
}

const ShareSummary& certified_max_share(DetectionKind kind) {
  static ShareSummary cached[2];
  static std::once_flag flags[2];
  int slot = kind == DetectionKind::Open ? 0 : 1;
  std::call_once(flags[slot], [&] {
    EnumerationOptions options;
    options.workers = static_cast<int>(std::thread::hardware_concurrency());
    if (options.workers < 1) options.workers = 1;
    cached[slot] = enumerate_share_summary(kind, options);
  });
  return cached[slot];
}

HighShareReport classify_high_share(DetectionKind kind, const Rational& threshold) {
  EnumerationOptions options;
  options.threshold = threshold;
  options.workers = static_cast<int>(std::thread::hardware_concurrency());
  if (options.workers < 1) options.workers = 1;
  ShareSummary summary = enumerate_share_summary(kind, options);

  const Rational bound(13, 4);
  HighShareReport report;
  report.kind = kind;
  report.threshold = threshold;
  for (const auto& high : summary.above_threshold) {
    HighShareReport::Entry entry;
    entry.patch = high.patch;
    entry.share = high.share;
    for (int b = 0; b < 8; ++b) {
      int cell = kRingCells[b];
      if (!(high.patch.mask & (1u << cell))) continue;
      NeighborClassInfo info;
      info.cell = cell;
      int r = cell / Patch::kSide;
      int c = cell % Patch::kSide;
      // The 8 neighbors of a ring-1 cell all lie inside the window, so its
      // exact detector-neighbor configuration is known from the patch.
      std::uint8_t ring = 0;
      for (int nb = 0; nb < 8; ++nb) {
        int nr = r + kRingOffsets[nb][0];
        int nc = c + kRingOffsets[nb][1];
        if (high.patch.detector(nr, nc)) ring |= std::uint8_t(1) << nb;
      }
      info.ring = ring;
      std::int64_t class_max = summary.ring_class_max_scaled[ring];
      if (class_max >= 0) {
        info.class_max = Rational(class_max, kShareScale);
        info.within_13_4 = *info.class_max <= bound;
      } else {
        // No feasible patch has this configuration at all, so no extension
        // of the current patch exists either; vacuously low-share.
        info.within_13_4 = true;
      }
      if (info.within_13_4) ++entry.low_share_neighbor_count;
      entry.adjacent_detectors.push_back(info);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace locdom
