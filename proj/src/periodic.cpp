#include "locdom/periodic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "locdom/errors.hpp"

namespace locdom {

PeriodicPattern::PeriodicPattern(int period_rows, int period_cols)
    : rows_(period_rows), cols_(period_cols) {
  if (rows_ < 1 || cols_ < 1) throw DimensionError("pattern periods must be positive");
  cells_.assign(static_cast<std::size_t>(rows_) * cols_, 0);
}

PeriodicPattern PeriodicPattern::from_residues(int period_rows, int period_cols,
                                               const std::vector<std::pair<int, int>>& cells) {
  PeriodicPattern p(period_rows, period_cols);
  for (const auto& [r, c] : cells) {
    if (r < 0 || r >= period_rows || c < 0 || c >= period_cols) {
      throw FormatError("residue (" + std::to_string(r) + ", " + std::to_string(c) +
                        ") outside the fundamental rectangle");
    }
    p.set_residue(r, c, true);
  }
  return p;
}

void PeriodicPattern::set_residue(int r, int c, bool detector) {
  std::uint8_t& cell = cells_[static_cast<std::size_t>(r) * cols_ + c];
  count_ += (detector ? 1 : 0) - (cell ? 1 : 0);
  cell = detector ? 1 : 0;
}

bool PeriodicPattern::is_detector(long long r, long long c) const {
  int rr = static_cast<int>(((r % rows_) + rows_) % rows_);
  int cc = static_cast<int>(((c % cols_) + cols_) % cols_);
  return cells_[static_cast<std::size_t>(rr) * cols_ + cc] != 0;
}

PeriodicPattern PeriodicPattern::parse_ascii(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (ch != '\r') {
      current.push_back(ch);
    }
  }
  if (!current.empty()) lines.push_back(current);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw FormatError("empty pattern");
  std::size_t width = lines[0].size();
  for (const auto& line : lines) {
    if (line.size() != width || width == 0) throw FormatError("ragged pattern rows");
  }
  PeriodicPattern p(static_cast<int>(lines.size()), static_cast<int>(width));
  for (int r = 0; r < p.rows_; ++r) {
    for (int c = 0; c < p.cols_; ++c) {
      char ch = lines[r][c];
      if (ch == 'X') {
        p.set_residue(r, c, true);
      } else if (ch != '.') {
        throw FormatError(std::string("pattern cell must be 'X' or '.', got '") + ch + "'");
      }
    }
  }
  return p;
}

std::string PeriodicPattern::to_ascii() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(rows_) * (cols_ + 1));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.push_back(detector_at_residue(r, c) ? 'X' : '.');
    out.push_back('\n');
  }
  return out;
}

PeriodicPattern PeriodicPattern::translated(int dr, int dc) const {
  PeriodicPattern out(rows_, cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) {
      if (is_detector(static_cast<long long>(r) - dr, static_cast<long long>(c) - dc)) {
        out.set_residue(r, c, true);
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> PeriodicPattern::canonical_form(int rows, int cols) const {
  if (rows % rows_ != 0 || cols % cols_ != 0) {
    throw Error("canonical_form dimensions must be multiples of the periods");
  }
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) grid[r * cols + c] = is_detector(r, c) ? 1 : 0;

  // Dihedral images; 90-degree family only when the grid is square.
  std::vector<std::vector<std::uint8_t>> images;
  auto make_image = [&](auto&& coord) {
    std::vector<std::uint8_t> img(grid.size());
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        auto [sr, sc] = coord(r, c);
        img[r * cols + c] = grid[sr * cols + sc];
      }
    return img;
  };
  images.push_back(grid);
  images.push_back(make_image([&](int r, int c) { return std::pair(rows - 1 - r, cols - 1 - c); }));
  images.push_back(make_image([&](int r, int c) { return std::pair(r, cols - 1 - c); }));
  images.push_back(make_image([&](int r, int c) { return std::pair(rows - 1 - r, c); }));
  if (rows == cols) {
    images.push_back(make_image([&](int r, int c) { return std::pair(c, r); }));
    images.push_back(make_image([&](int r, int c) { return std::pair(cols - 1 - c, rows - 1 - r); }));
    images.push_back(make_image([&](int r, int c) { return std::pair(c, rows - 1 - r); }));
    images.push_back(make_image([&](int r, int c) { return std::pair(cols - 1 - c, r); }));
  }

  std::vector<std::uint8_t> best;
  std::vector<std::uint8_t> candidate(grid.size());
  for (const auto& img : images) {
    for (int dr = 0; dr < rows; ++dr) {
      for (int dc = 0; dc < cols; ++dc) {
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c < cols; ++c)
            candidate[r * cols + c] = img[((r + dr) % rows) * cols + (c + dc) % cols];
        if (best.empty() || candidate < best) best = candidate;
      }
    }
  }
  return best;
}

bool PeriodicPattern::equivalent_to(const PeriodicPattern& other) const {
  int side = std::lcm(std::lcm(rows_, cols_), std::lcm(other.rows_, other.cols_));
  return canonical_form(side, side) == other.canonical_form(side, side);
}

namespace {

int dom_at(const PeriodicPattern& p, DetectionKind kind, long long r, long long c) {
  int dom = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
      dom += p.is_detector(r + dr, c + dc) ? 1 : 0;
    }
  }
  return dom;
}

bool in_region(long long pr, long long pc, long long vr, long long vc, DetectionKind kind) {
  long long dr = pr - vr;
  long long dc = pc - vc;
  if (dr > 1 || dr < -1 || dc > 1 || dc < -1) return false;
  if (kind == DetectionKind::Open && dr == 0 && dc == 0) return false;
  return true;
}

// |code(a) △ code(b)| for absolute positions a, b: detectors covered by
// exactly one of the two regions.
int code_diff(const PeriodicPattern& p, DetectionKind kind, long long ar, long long ac,
              long long br, long long bc) {
  int diff = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
      long long pr = ar + dr;
      long long pc = ac + dc;
      if (!in_region(pr, pc, br, bc, kind) && p.is_detector(pr, pc)) ++diff;
    }
  }
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
      long long pr = br + dr;
      long long pc = bc + dc;
      if (!in_region(pr, pc, ar, ac, kind) && p.is_detector(pr, pc)) ++diff;
    }
  }
  return diff;
}

}  // namespace

std::string InfiniteVerdict::describe() const {
  switch (status) {
    case Status::Valid:
      return "valid";
    case Status::UnderDominated:
      return "invalid: cell (" + std::to_string(vertex.first) + ", " +
             std::to_string(vertex.second) + ") is " + std::to_string(dom) +
             "-dominated, needs " + std::to_string(required);
    case Status::Indistinguishable:
      return "invalid: cells (" + std::to_string(pair_a.first) + ", " +
             std::to_string(pair_a.second) + ") and (" + std::to_string(pair_b.first) +
             ", " + std::to_string(pair_b.second) + ") have code difference " +
             std::to_string(diff) + ", needs " + std::to_string(required);
  }
  return "?";
}

InfiniteVerdict verify_infinite(const PeriodicPattern& p, DetectionKind kind, int redundancy) {
  if (redundancy < 0 || redundancy > 1) {
    throw Error("verify_infinite supports redundancy 0 or 1");
  }
  const int need = redundancy + 1;
  InfiniteVerdict out;
  out.required = need;
  for (int r = 0; r < p.period_rows(); ++r) {
    for (int c = 0; c < p.period_cols(); ++c) {
      int dom = dom_at(p, kind, r, c);
      if (dom < need) {
        out.status = InfiniteVerdict::Status::UnderDominated;
        out.vertex = {r, c};
        out.dom = dom;
        return out;
      }
    }
  }
  // One endpoint per residue class; the other within Chebyshev distance 2.
  for (int r = 0; r < p.period_rows(); ++r) {
    for (int c = 0; c < p.period_cols(); ++c) {
      for (int dr = -2; dr <= 2; ++dr) {
        for (int dc = -2; dc <= 2; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int diff = code_diff(p, kind, r, c, r + dr, c + dc);
          if (diff < need) {
            out.status = InfiniteVerdict::Status::Indistinguishable;
            out.pair_a = {r, c};
            out.pair_b = {r + dr, c + dc};
            out.diff = diff;
            return out;
          }
        }
      }
    }
  }
  out.status = InfiniteVerdict::Status::Valid;
  return out;
}

Graph make_lift_torus(const PeriodicPattern& p, int copies_r, int copies_c) {
  if (copies_r < 1 || copies_c < 1) throw DimensionError("lift copies must be positive");
  long long rows = static_cast<long long>(copies_r) * p.period_rows();
  long long cols = static_cast<long long>(copies_c) * p.period_cols();
  if (rows < 5 || cols < 5) {
    throw NonFaithfulError("torus " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " wraps non-faithfully; need at least 5 in each dimension");
  }
  return Graph::king_torus(static_cast<int>(rows), static_cast<int>(cols));
}

DetectorSet lift_to_torus(const PeriodicPattern& p, DetectionKind kind, const Graph& torus) {
  const auto& shape = torus.torus();
  if (!shape) throw Error("lift target is not a torus graph");
  if (shape->rows % p.period_rows() != 0 || shape->cols % p.period_cols() != 0) {
    throw Error("torus dimensions are not multiples of the pattern periods");
  }
  DetectorSet ds(torus, kind);
  for (int r = 0; r < shape->rows; ++r) {
    for (int c = 0; c < shape->cols; ++c) {
      if (p.is_detector(r, c)) ds.members.add(r * shape->cols + c);
    }
  }
  return ds;
}

// ---------------------------------------------------------------------------
// Exhaustive pattern search.

namespace {

struct CellUpdate {
  int target;  // vertex index or pair-slot index
  int mult;
};

struct SearchSpace {
  int rows = 0;
  int cols = 0;
  int area = 0;
  int need = 0;
  DetectionKind kind = DetectionKind::Open;

  // Per cell: how many domination slots / pair-difference slots it feeds.
  std::vector<std::vector<CellUpdate>> dom_updates;
  std::vector<std::vector<CellUpdate>> pair_updates;
  std::vector<int> dom_pot_init;
  std::vector<int> pair_pot_init;
  int pair_slot_count = 0;
};

// The 12 lexicographically positive offsets with Chebyshev norm <= 2; the
// negative half is covered by the slot anchored at the other endpoint.
constexpr int kPairOffsets[12][2] = {{0, 1}, {0, 2},  {1, -2}, {1, -1}, {1, 0},  {1, 1},
                                     {1, 2}, {2, -2}, {2, -1}, {2, 0},  {2, 1},  {2, 2}};

SearchSpace build_search_space(int rows, int cols, DetectionKind kind, int need) {
  SearchSpace s;
  s.rows = rows;
  s.cols = cols;
  s.area = rows * cols;
  s.need = need;
  s.kind = kind;
  s.dom_updates.assign(s.area, {});
  s.pair_updates.assign(s.area, {});
  s.dom_pot_init.assign(s.area, 0);

  auto residue = [&](long long r, long long c) {
    int rr = static_cast<int>(((r % rows) + rows) % rows);
    int cc = static_cast<int>(((c % cols) + cols) % cols);
    return rr * cols + cc;
  };

  auto add_update = [](std::vector<CellUpdate>& list, int target, int mult) {
    for (auto& u : list) {
      if (u.target == target) {
        u.mult += mult;
        return;
      }
    }
    list.push_back({target, mult});
  };

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
          add_update(s.dom_updates[residue(r + dr, c + dc)], v, 1);
          s.dom_pot_init[v] += 1;
        }
      }
    }
  }

  s.pair_slot_count = s.area * 12;
  s.pair_pot_init.assign(s.pair_slot_count, 0);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      for (int o = 0; o < 12; ++o) {
        int slot = v * 12 + o;
        long long br = r + kPairOffsets[o][0];
        long long bc = c + kPairOffsets[o][1];
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if (kind == DetectionKind::Open && dr == 0 && dc == 0) continue;
            long long pr = r + dr;
            long long pc = c + dc;
            if (!in_region(pr, pc, br, bc, kind)) {
              add_update(s.pair_updates[residue(pr, pc)], slot, 1);
              s.pair_pot_init[slot] += 1;
            }
            pr = br + dr;
            pc = bc + dc;
            if (!in_region(pr, pc, r, c, kind)) {
              add_update(s.pair_updates[residue(pr, pc)], slot, 1);
              s.pair_pot_init[slot] += 1;
            }
          }
        }
      }
    }
  }
  return s;
}

struct SearchState {
  const SearchSpace* space;
  std::vector<int> dom_pot;
  std::vector<int> pair_pot;
  std::vector<std::uint8_t> assignment;  // 0 = non-detector, 1 = detector
  int det_count = 0;

  explicit SearchState(const SearchSpace& s)
      : space(&s),
        dom_pot(s.dom_pot_init),
        pair_pot(s.pair_pot_init),
        assignment(s.area, 0) {}

  // Applying a non-detector reduces every potential the cell feeds; a
  // potential below `need` can never recover along this branch.
  bool apply(int cell, bool detector) {
    assignment[cell] = detector ? 1 : 0;
    if (detector) {
      ++det_count;
      return true;
    }
    bool ok = true;
    for (const auto& u : space->dom_updates[cell]) {
      dom_pot[u.target] -= u.mult;
      if (dom_pot[u.target] < space->need) ok = false;
    }
    for (const auto& u : space->pair_updates[cell]) {
      pair_pot[u.target] -= u.mult;
      if (pair_pot[u.target] < space->need) ok = false;
    }
    return ok;
  }

  void undo(int cell, bool detector) {
    if (detector) {
      --det_count;
      return;
    }
    for (const auto& u : space->dom_updates[cell]) dom_pot[u.target] += u.mult;
    for (const auto& u : space->pair_updates[cell]) pair_pot[u.target] += u.mult;
  }
};

void search_dfs(SearchState& st, int cell, int max_detectors,
                std::vector<std::vector<std::uint8_t>>& out) {
  if (cell == st.space->area) {
    out.push_back(st.assignment);
    return;
  }
  bool ok = st.apply(cell, false);
  if (ok) search_dfs(st, cell + 1, max_detectors, out);
  st.undo(cell, false);
  if (st.det_count < max_detectors) {
    st.apply(cell, true);
    search_dfs(st, cell + 1, max_detectors, out);
    st.undo(cell, true);
  }
}

}  // namespace

std::vector<PeriodicPattern> pattern_search(int period_rows, int period_cols,
                                            DetectionKind kind, int redundancy,
                                            const PatternSearchOptions& options) {
  if (period_rows < 1 || period_cols < 1) throw DimensionError("periods must be positive");
  if (redundancy < 0 || redundancy > 1) throw Error("pattern_search supports redundancy 0 or 1");
  int area = period_rows * period_cols;
  if (area > options.area_budget) {
    throw BudgetError("period area " + std::to_string(area) + " exceeds budget " +
                      std::to_string(options.area_budget));
  }
  int max_det = options.max_detectors < 0 ? area : std::min(options.max_detectors, area);

  SearchSpace space = build_search_space(period_rows, period_cols, kind, redundancy + 1);
  std::vector<std::vector<std::uint8_t>> found;

  int workers = std::max(1, options.workers);
  if (workers == 1 || area <= 4) {
    SearchState st(space);
    search_dfs(st, 0, max_det, found);
  } else {
    // Fan out over all assignments of a fixed prefix of cells; task order
    // (not completion order) determines the merge, and a final sort makes
    // the result independent of scheduling anyway.
    int prefix = std::min(area, 10);
    int tasks = 1 << prefix;
    std::vector<std::vector<std::vector<std::uint8_t>>> task_out(tasks);
    std::atomic<int> next{0};
    auto run = [&]() {
      SearchState st(space);
      for (;;) {
        int t = next.fetch_add(1);
        if (t >= tasks) break;
        bool ok = true;
        int applied = 0;
        for (int j = 0; j < prefix; ++j) {
          bool det = (t >> (prefix - 1 - j)) & 1;
          if (det && st.det_count >= max_det) {
            ok = false;
            break;
          }
          bool fine = st.apply(j, det);
          ++applied;
          if (!fine) {
            ok = false;
            break;
          }
        }
        if (ok) search_dfs(st, prefix, max_det, task_out[t]);
        for (int j = applied - 1; j >= 0; --j) st.undo(j, (t >> (prefix - 1 - j)) & 1);
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(run);
    for (auto& th : pool) th.join();
    for (auto& chunk : task_out) {
      for (auto& a : chunk) found.push_back(std::move(a));
    }
  }

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    int ca = 0;
    int cb = 0;
    for (auto x : a) ca += x;
    for (auto x : b) cb += x;
    if (ca != cb) return ca < cb;
    return a < b;
  });

  std::vector<PeriodicPattern> out;
  out.reserve(found.size());
  for (const auto& cells : found) {
    PeriodicPattern p(period_rows, period_cols);
    for (int r = 0; r < period_rows; ++r)
      for (int c = 0; c < period_cols; ++c)
        if (cells[r * period_cols + c]) p.set_residue(r, c, true);
    if (!verify_infinite(p, kind, redundancy).valid()) {
      throw std::logic_error("pattern_search produced an invalid pattern");
    }
    out.push_back(std::move(p));
  }
  if (options.minimum_only && !out.empty()) {
    int best = out.front().detector_count();
    std::size_t keep = 0;
    while (keep < out.size() && out[keep].detector_count() == best) ++keep;
    out.erase(out.begin() + keep, out.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in constructions.

namespace {

std::vector<NamedPattern> make_builtins() {
  std::vector<NamedPattern> out;
  out.push_back({"pattern-a", "single diagonal, period 3; RED:OLD and RED:IC, density 1/3",
                 PeriodicPattern::parse_ascii("X..\n.X.\n..X\n")});
  // Two detector diagonals separated by one empty diagonal, then three
  // empty diagonals: residues with (r + c) mod 6 in {0, 2}.
  {
    PeriodicPattern b(6, 6);
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) {
        int s = (r + c) % 6;
        if (s == 0 || s == 2) b.set_residue(r, c, true);
      }
    }
    out.push_back({"pattern-b", "double diagonal, period 6; RED:OLD and RED:IC, density 1/3",
                   std::move(b)});
  }
  // First pattern in pattern_search(6, 6, Closed, 1, max 12) order that is
  // not also a RED:OLD set: some cells have a single open-neighborhood
  // dominator. No RED:IC-only pattern of density 1/3 exists with a smaller
  // fundamental rectangle.
  out.push_back({"pattern-c", "diagonal detector pairs, period 6; RED:IC only, density 1/3",
                 PeriodicPattern::parse_ascii(
                     "....XX\n"
                     "..X.X.\n"
                     "X..X..\n"
                     ".XX...\n"
                     ".X...X\n"
                     "X..X..\n")});
  return out;
}

}  // namespace

const std::vector<NamedPattern>& builtin_patterns() {
  static const std::vector<NamedPattern> patterns = make_builtins();
  return patterns;
}

const PeriodicPattern* find_builtin(const std::string& name) {
  for (const auto& entry : builtin_patterns()) {
    if (entry.name == name) return &entry.pattern;
  }
  return nullptr;
}

}  // namespace locdom
