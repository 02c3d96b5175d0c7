#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "irrnet/numeration.hpp"

namespace irrnet {

// One cell of the level-m partition of [0,1). Cells are indexed left to
// right; cell l spans [value(n_l)/gamma^m, value(n_(l+1))/gamma^m) where n_l
// walks the admissible m-digit words. Types follow the trailing digit pair:
// last digit d0 with the digit d1 above it not equal to p gives type d0 (a
// prime cell, short exactly when d0 = p), and d1 = p gives type p+1, the one
// cell already present one level up. The analysis only covers q = 1.
struct AxisInterval {
  int level = 0;
  int64_t index = 0;
  int64_t anchor = 0;
  int itype = 0;
  bool prime = true;
  bool short_cell = false;
  bool right_is_one = true;
  DigitWord numerator;  // integer word, level digits, left endpoint numerator
  double left = 0.0;
  double right = 1.0;

  // share of this axis in the size |I| of a product interval
  int contribution() const { return level + (short_cell ? 1 : 0); }
};

inline void require_unit_q(const BaseSpec& base) {
  if (base.q != 1)
    throw std::domain_error("interval analysis requires a base with q = 1");
}

inline AxisInterval make_cell(const BaseSpec& base, int level, int64_t index,
                              const GCounts& c) {
  require_unit_q(base);
  if (level < 0) throw std::domain_error("negative level");
  AxisInterval cell;
  cell.level = level;
  cell.index = index;
  cell.numerator = unrank_word(base, index, level, Side::right, c);
  int d0 = level >= 1 ? cell.numerator.digits[0] : 0;
  int d1 = level >= 2 ? cell.numerator.digits[1] : 0;
  if (d1 != base.p) {
    cell.itype = d0;
    cell.prime = true;
    cell.short_cell = (d0 == base.p);
  } else {  // q = 1 forces d0 = 0 under the digit condition
    cell.itype = base.p + 1;
    cell.prime = false;
    cell.short_cell = false;
  }
  cell.anchor = index - cell.itype;
  cell.right_is_one = (index + 1 == c.g[level]);
  double scale = std::pow(base.gamma, -level);
  cell.left = value(base, cell.numerator) * scale;
  cell.right = cell.right_is_one
                   ? 1.0
                   : value(base, unrank_word(base, index + 1, level, Side::right, c)) *
                         scale;
  return cell;
}

inline std::vector<AxisInterval> partition_1d(const BaseSpec& base, int level) {
  GCounts c = g_counts(base, level);
  std::vector<AxisInterval> cells;
  cells.reserve(size_t(c.g[level]));
  for (int64_t l = 0; l < c.g[level]; ++l) cells.push_back(make_cell(base, level, l, c));
  return cells;
}

// Exact membership: finite admissible expansions never reach the right
// endpoint, so the containing cell is read off the first `level` digits.
inline bool cell_contains(const BaseSpec& base, const AxisInterval& cell,
                          const DigitWord& x, const GCounts& c) {
  return prefix_cell_rank(base, x, cell.level, c) == cell.index;
}

// Children one level down. Partitions nest, so these are the consecutive
// cells spanning [left, right).
inline std::vector<AxisInterval> refine(const BaseSpec& base, const AxisInterval& cell) {
  GCounts c = g_counts(base, cell.level + 1);
  int64_t lo = rank_word(base, shift(cell.numerator, 1), Side::right, c);
  int64_t hi = c.g[cell.level + 1];
  if (!cell.right_is_one) {
    DigitWord succ =
        unrank_word(base, cell.index + 1, cell.level, Side::right, c);
    hi = rank_word(base, shift(succ, 1), Side::right, c);
  }
  std::vector<AxisInterval> kids;
  kids.reserve(size_t(hi - lo));
  for (int64_t l = lo; l < hi; ++l) kids.push_back(make_cell(base, cell.level + 1, l, c));
  return kids;
}

// Axis-aligned product of partition cells.
struct ElemInterval {
  std::vector<AxisInterval> axes;

  int size() const {
    int s = 0;
    for (const AxisInterval& a : axes) s += a.contribution();
    return s;
  }
  bool prime() const {
    for (const AxisInterval& a : axes)
      if (!a.prime) return false;
    return true;
  }
  double volume(const BaseSpec& base) const { return std::pow(base.gamma, -size()); }

  std::string describe() const {
    std::string s;
    char buf[96];
    for (size_t j = 0; j < axes.size(); ++j) {
      if (j) s += "x";
      std::snprintf(buf, sizeof buf, "[%.6f,%.6f)", axes[j].left, axes[j].right);
      s += buf;
    }
    return s;
  }
};

// All prime product intervals with the given per-axis levels.
inline std::vector<ElemInterval> prime_intervals(const BaseSpec& base,
                                                 const std::vector<int>& kvec) {
  std::vector<std::vector<AxisInterval>> prime_axes;
  for (int k : kvec) {
    std::vector<AxisInterval> cells = partition_1d(base, k);
    std::vector<AxisInterval> keep;
    for (AxisInterval& cell : cells)
      if (cell.prime) keep.push_back(std::move(cell));
    prime_axes.push_back(std::move(keep));
  }
  std::vector<ElemInterval> out;
  std::vector<size_t> odo(kvec.size(), 0);
  while (true) {
    ElemInterval e;
    for (size_t j = 0; j < odo.size(); ++j) e.axes.push_back(prime_axes[j][odo[j]]);
    out.push_back(std::move(e));
    size_t j = 0;
    while (j < odo.size() && ++odo[j] == prime_axes[j].size()) odo[j++] = 0;
    if (j == odo.size()) break;
  }
  return out;
}

inline std::string intervals_to_csv(const std::vector<AxisInterval>& cells) {
  std::string out = "level,anchor_index,type,left_float,right_float,prime\n";
  char buf[160];
  for (const AxisInterval& cell : cells) {
    std::snprintf(buf, sizeof buf, "%d,%lld,%d,%.17g,%.17g,%d\n", cell.level,
                  (long long)cell.anchor, cell.itype, cell.left, cell.right,
                  cell.prime ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace irrnet
