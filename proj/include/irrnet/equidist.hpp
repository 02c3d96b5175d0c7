#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irrnet/intervals.hpp"
#include "irrnet/pointset.hpp"

namespace irrnet {

// rho adds one to every active axis: the finest cells of a (k_1,...,k_s)
// partition have size sum(k_j) + #nonzero, reached when every axis cell is
// the short kind.
inline int rho(const std::vector<int>& kvec) {
  int r = 0;
  for (int k : kvec) {
    if (k < 0) throw std::domain_error("negative partition level");
    r += k + (k > 0 ? 1 : 0);
  }
  return r;
}

struct CellFailure {
  std::string interval;
  int64_t expected = 0;
  int64_t actual = 0;
};

struct EquidReport {
  std::vector<int> kvec;
  bool prime_only = true;
  bool passed = true;
  std::vector<CellFailure> failures;
};

namespace detail {

struct AxisIndexing {
  std::vector<AxisInterval> cells;
  std::vector<int64_t> point_cell;
};

inline AxisIndexing index_axis(const PointSet& ps, int axis, int level,
                               const GCounts& c) {
  AxisIndexing ix;
  ix.cells = partition_1d(ps.base, level);
  ix.point_cell.reserve(ps.size());
  for (size_t i = 0; i < ps.size(); ++i)
    ix.point_cell.push_back(prefix_cell_rank(ps.base, ps.words[i][size_t(axis)], level, c));
  return ix;
}

}  // namespace detail

// Count points cell by cell for the product partition at levels kvec and
// compare with the demanded counts. prime_only restricts the comparison to
// products of prime cells (the net criterion); otherwise every cell is
// checked and the demands must add up to the whole set.
inline EquidReport check_cells(const PointSet& ps, const std::vector<int>& kvec,
                               bool prime_only) {
  if (int(kvec.size()) != ps.s) throw std::domain_error("kvec dimension mismatch");
  if (!ps.has_words())
    throw std::domain_error("digit expansions required; call ensure_words first");
  int k_top = ps.m;
  for (int k : kvec) k_top = std::max(k_top, k);
  GCounts c = g_counts(ps.base, k_top + 1);
  if (int64_t(ps.size()) != c.g[size_t(ps.m)])
    throw std::domain_error("point count does not match the digit parameter");

  std::vector<detail::AxisIndexing> ax;
  for (int j = 0; j < ps.s; ++j)
    ax.push_back(detail::index_axis(ps, j, kvec[size_t(j)], c));
  int64_t ncells = 1;
  for (const auto& a : ax) ncells = detail::mul_ck(ncells, int64_t(a.cells.size()));
  if (ncells > (int64_t(1) << 26)) throw std::domain_error("partition too large");

  std::vector<int32_t> counts(size_t(ncells), 0);
  for (size_t i = 0; i < ps.size(); ++i) {
    int64_t flat = 0;
    for (int j = 0; j < ps.s; ++j)
      flat = flat * int64_t(ax[size_t(j)].cells.size()) + ax[size_t(j)].point_cell[i];
    ++counts[size_t(flat)];
  }

  EquidReport rep;
  rep.kvec = kvec;
  rep.prime_only = prime_only;
  std::vector<int64_t> odo(size_t(ps.s), 0);
  int64_t flat = 0, demanded_total = 0;
  while (true) {
    bool prime = true;
    int isize = 0;
    for (int j = 0; j < ps.s; ++j) {
      const AxisInterval& cell = ax[size_t(j)].cells[size_t(odo[size_t(j)])];
      prime = prime && cell.prime;
      isize += cell.contribution();
    }
    if (!prime_only || prime) {
      int64_t expected = required_count(ps.base, c, ps.m - isize);
      int64_t actual = counts[size_t(flat)];
      demanded_total += prime_only ? 0 : expected;
      if (expected != actual) {
        rep.passed = false;
        ElemInterval e;
        for (int j = 0; j < ps.s; ++j)
          e.axes.push_back(ax[size_t(j)].cells[size_t(odo[size_t(j)])]);
        rep.failures.push_back({e.describe(), expected, actual});
      }
    }
    int j = ps.s - 1;
    ++flat;
    while (j >= 0 && ++odo[size_t(j)] == int64_t(ax[size_t(j)].cells.size()))
      odo[size_t(j--)] = 0;
    if (j < 0) break;
  }
  if (!prime_only && demanded_total != int64_t(ps.size()))
    throw std::domain_error("demanded counts do not tile the set at this depth");
  return rep;
}

inline EquidReport check_equidist(const PointSet& ps, const std::vector<int>& kvec) {
  return check_cells(ps, kvec, true);
}

// strong form: every cell, prime or not, holds its demanded count
inline EquidReport check_strong(const PointSet& ps, const std::vector<int>& kvec) {
  return check_cells(ps, kvec, false);
}

namespace detail {

template <class F>
void walk_kvecs(std::vector<int>& kvec, size_t axis, int budget, bool strict, F&& f) {
  if (axis == kvec.size()) {
    f(kvec);
    return;
  }
  for (int k = 0;; ++k) {
    int cost = strict ? k : (k + (k > 0 ? 1 : 0));
    if (cost > budget) break;
    kvec[axis] = k;
    walk_kvecs(kvec, axis + 1, budget - cost, strict, f);
  }
  kvec[axis] = 0;
}

}  // namespace detail

// Partition budget for a t-quality net: rho(kvec) <= m + 2 - t in the golden
// ratio base, rho(kvec) <= m - t otherwise. strict_rho swaps the rho bound
// for a bound on sum(kvec), which admits more partitions.
inline int net_budget(const BaseSpec& base, int m, int t) {
  return base.is_phi() ? m + 2 - t : m - t;
}

struct NetReport {
  int m = 0;
  int s = 0;
  int t_min = 0;
  std::optional<EquidReport> worst;  // the failure that forces t_min, when any
  std::vector<EquidReport> checks;
};

inline NetReport net_scan(const PointSet& ps, int t, bool strict_rho, bool stop_early) {
  NetReport rep;
  rep.m = ps.m;
  rep.s = ps.s;
  int budget = net_budget(ps.base, ps.m, t);
  int top = net_budget(ps.base, ps.m, 0);
  std::vector<int> kvec(size_t(ps.s), 0);
  bool stop = false;
  detail::walk_kvecs(kvec, 0, budget, strict_rho, [&](const std::vector<int>& kv) {
    if (stop) return;
    EquidReport r = check_equidist(ps, kv);
    if (!r.passed) {
      int cost = 0;
      if (strict_rho)
        for (int k : kv) cost += k;
      else
        cost = rho(kv);
      // a failure at this cost rules out every t with budget >= cost
      int forced = std::max(top + 1 - cost, 0);
      if (forced > rep.t_min || !rep.worst) {
        rep.t_min = std::max(rep.t_min, forced);
        rep.worst = r;
      }
      if (stop_early) stop = true;
    }
    rep.checks.push_back(std::move(r));
  });
  return rep;
}

inline bool is_net(const PointSet& ps, int t, bool strict_rho = false) {
  NetReport rep = net_scan(ps, t, strict_rho, true);
  for (const EquidReport& r : rep.checks)
    if (!r.passed) return false;
  return true;
}

// Smallest t the set can claim: scan at t = 0 and take the worst failure.
inline NetReport net_t(const PointSet& ps, bool strict_rho = false) {
  return net_scan(ps, 0, strict_rho, false);
}

struct WindowResult {
  int m = 0;
  int64_t k = 0;
  int64_t start = 0;
  bool passed = true;
  std::vector<std::vector<int>> failed_kvecs;
};

struct SequenceReport {
  bool passed = true;
  std::vector<WindowResult> windows;
};

// Verify the defining windows of a digital sequence: for every m <= m_max and
// k <= k_max the fib(m) consecutive terms starting where k's word lands after
// an upward shift must form a net of quality t. The shift is m+1 places by
// default; shift_by_m checks the tighter m-place windows instead.
template <class Gen>
SequenceReport verify_sequence(const BaseSpec& base, Gen&& gen, int t, int m_max,
                               int64_t k_max, bool shift_by_m = false) {
  if (!base.is_phi())
    throw std::domain_error("window verification is defined for the golden base");
  SequenceReport rep;
  for (int m = 0; m <= m_max; ++m) {
    for (int64_t k = 0; k <= k_max; ++k) {
      int shift_exp = m + (shift_by_m ? 0 : 1);
      int64_t start = 0;
      if (k > 0) {
        DigitWord kw = unrank_word(base, k, min_width(base, k), Side::right);
        start = rank_word(base, shift(kw, shift_exp), Side::right);
      }
      PointSet ps;
      ps.base = base;
      ps.s = 1;
      ps.m = m;
      for (int64_t i = start; i < start + fib(m); ++i) {
        DigitWord w = gen(i);
        ps.coords.push_back({value(base, w)});
        ps.words.push_back({std::move(w)});
      }
      WindowResult wr;
      wr.m = m;
      wr.k = k;
      wr.start = start;
      NetReport nr = net_scan(ps, t, false, false);
      for (const EquidReport& r : nr.checks)
        if (!r.passed) wr.failed_kvecs.push_back(r.kvec);
      wr.passed = nr.t_min <= t;
      rep.passed = rep.passed && wr.passed;
      rep.windows.push_back(std::move(wr));
    }
  }
  return rep;
}

// Prefix verification for two-dimensional sequences: the first fib(m) points
// must form a net of quality t for every m <= m_max.
template <class Gen>
SequenceReport verify_weak(const BaseSpec& base, Gen&& gen, int t, int m_max) {
  if (!base.is_phi())
    throw std::domain_error("prefix verification is defined for the golden base");
  SequenceReport rep;
  for (int m = 0; m <= m_max; ++m) {
    PointSet ps;
    ps.base = base;
    ps.s = 2;
    ps.m = m;
    for (int64_t i = 0; i < fib(m); ++i) {
      std::vector<DigitWord> pt = gen(i);
      if (pt.size() != 2) throw std::domain_error("generator must yield point pairs");
      ps.coords.push_back({value(base, pt[0]), value(base, pt[1])});
      ps.words.push_back(std::move(pt));
    }
    WindowResult wr;
    wr.m = m;
    NetReport nr = net_scan(ps, t, false, false);
    for (const EquidReport& r : nr.checks)
      if (!r.passed) wr.failed_kvecs.push_back(r.kvec);
    wr.passed = nr.t_min <= t;
    rep.passed = rep.passed && wr.passed;
    rep.windows.push_back(std::move(wr));
  }
  return rep;
}

}  // namespace irrnet
