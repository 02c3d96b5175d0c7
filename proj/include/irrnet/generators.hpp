#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irrnet/equidist.hpp"

namespace irrnet {

// i-th term of the van der Corput sequence: digit reversal of the i-th
// integer word satisfying the left digit condition. Reversal turns the left
// condition into the right one, so the result is right-admissible and its
// value stays below 1.
inline DigitWord vdc(const BaseSpec& base, int64_t i) {
  DigitWord w = unrank_word(base, i, min_width(base, i), Side::left);
  w.role = Role::fractional;
  return w;
}

inline PointSet vdc_prefix(const BaseSpec& base, int64_t n) {
  if (n < 1) throw std::domain_error("need at least one point");
  PointSet ps;
  ps.base = base;
  ps.s = 1;
  ps.m = n >= 2 ? min_width(base, n - 1) : 0;
  for (int64_t i = 0; i < n; ++i) {
    DigitWord w = vdc(base, i);
    ps.coords.push_back({value(base, w)});
    ps.words.push_back({std::move(w)});
  }
  return ps;
}

namespace detail {

// n-bar over gamma^m: the integer word reread backwards as a fraction.
// Zeros that end up trailing carry no value and are dropped.
inline DigitWord over_gamma_m(const DigitWord& n_word) {
  DigitWord w;
  w.role = Role::fractional;
  w.digits.assign(n_word.digits.rbegin(), n_word.digits.rend());
  while (!w.digits.empty() && w.digits.back() == 0) w.digits.pop_back();
  return w;
}

}  // namespace detail

// G_m points (x_i, y_i): x_i the i-th van der Corput term, y_i built from the
// i-th integer word under the right digit condition. The two enumerations
// agree only for p = q, so both are materialized independently.
inline PointSet hammersley(const BaseSpec& base, int m) {
  GCounts c = g_counts(base, m);
  PointSet ps;
  ps.base = base;
  ps.s = 2;
  ps.m = m;
  for (int64_t i = 0; i < c.g[size_t(m)]; ++i) {
    DigitWord x = vdc(base, i);
    DigitWord y = detail::over_gamma_m(unrank_word(base, i, m, Side::right, c));
    ps.coords.push_back({value(base, x), value(base, y)});
    ps.words.push_back({std::move(x), std::move(y)});
  }
  return ps;
}

// Classical base-2 comparator: (i/2^m, bit-reversal of i / 2^m).
inline PointSet hammersley_dyadic(int m) {
  if (m < 0 || m > 40) throw std::domain_error("dyadic m out of range");
  PointSet ps;
  ps.dyadic = true;
  ps.s = 2;
  ps.m = m;
  int64_t n = int64_t(1) << m;
  for (int64_t i = 0; i < n; ++i) {
    int64_t rev = 0;
    for (int b = 0; b < m; ++b) rev |= ((i >> b) & 1) << (m - 1 - b);
    ps.coords.push_back({double(i) / double(n), double(rev) / double(n)});
  }
  return ps;
}

// Prepend the net coordinate: point n of the result is (n-bar / gamma^m,
// seq point n), turning the first fib(m) terms of a sequence into an
// (s+1)-dimensional point set of the same quality.
inline PointSet lift_to_net(const PointSet& seq, int m) {
  if (!seq.base.is_phi()) throw std::domain_error("lift is defined for the golden base");
  if (int64_t(seq.size()) != fib(m))
    throw std::domain_error("lift needs the first fib(m) terms");
  PointSet in = seq;
  ensure_words(in);
  GCounts c = g_counts(in.base, m);
  PointSet ps;
  ps.base = in.base;
  ps.s = in.s + 1;
  ps.m = m;
  for (int64_t i = 0; i < int64_t(in.size()); ++i) {
    DigitWord w = detail::over_gamma_m(unrank_word(in.base, i, m, Side::right, c));
    std::vector<double> row{value(in.base, w)};
    std::vector<DigitWord> wrow{std::move(w)};
    for (int j = 0; j < in.s; ++j) {
      row.push_back(in.coords[size_t(i)][size_t(j)]);
      wrow.push_back(in.words[size_t(i)][size_t(j)]);
    }
    ps.coords.push_back(std::move(row));
    ps.words.push_back(std::move(wrow));
  }
  return ps;
}

// A digit assignment left some cell over- or under-filled, or the input does
// not satisfy the extension hypotheses.
struct ExtendError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline PointSet weak_union(const PointSet& S, const std::vector<DigitWord>& xs,
                           const std::vector<DigitWord>& ys, int m_next) {
  PointSet u = S;
  u.m = m_next;
  for (size_t t = 0; t < xs.size(); ++t) {
    u.coords.push_back({value(S.base, xs[t]), value(S.base, ys[t])});
    u.words.push_back({xs[t], ys[t]});
  }
  return u;
}

}  // namespace detail

// One extension step: add fib(m-1) points to a fib(m)-point set so that the
// union keeps the prefix net property one level up. New x's are the left
// endpoints of the short cells of the next finer partition (the one family
// of prime cells the input leaves empty). New y's are decided one digit per
// level; each stage must leave the union strongly equidistributed on its
// grid, and any imbalance aborts the construction.
inline PointSet extend_weak12(const PointSet& S_in) {
  if (!S_in.base.is_phi() || S_in.s != 2)
    throw std::domain_error("extension is defined for two-dimensional golden base sets");
  PointSet S = S_in;
  ensure_words(S);
  const BaseSpec base = S.base;
  const int m = S.m;
  GCounts c = g_counts(base, m + 3);
  if (int64_t(S.size()) != fib(m))
    throw ExtendError("input size " + std::to_string(S.size()) +
                      " is not the level count fib(" + std::to_string(m) + ")");
  if (!check_strong(S, {m + 1, 0}).passed)
    throw ExtendError("input is not strongly equidistributed across x slabs");
  if (!check_strong(S, {0, m + 1}).passed)
    throw ExtendError("input is not strongly equidistributed across y slabs");
  if (!is_net(S, 1)) throw ExtendError("input is not a quality-1 net");

  std::vector<AxisInterval> fine = partition_1d(base, m + 1);
  std::vector<DigitWord> xs, ys;
  for (const AxisInterval& cell : fine)
    if (cell.itype == base.p) {
      xs.push_back(detail::over_gamma_m(cell.numerator));
      ys.push_back(DigitWord{{}, Role::fractional});
    }
  if (int64_t(xs.size()) != fib(m - 1))
    throw ExtendError("short cell count is off at level " + std::to_string(m + 1));

  for (int k = 1; k <= m - 1; ++k) {
    std::vector<AxisInterval> xcells = partition_1d(base, m - k);
    std::vector<AxisInterval> ychildren = partition_1d(base, k);
    std::vector<AxisInterval> yparents = partition_1d(base, k - 1);
    std::map<std::pair<int64_t, int64_t>, int64_t> occ;
    for (size_t i = 0; i < S.size(); ++i)
      ++occ[{prefix_cell_rank(base, S.words[i][0], m - k, c),
             prefix_cell_rank(base, S.words[i][1], k, c)}];
    std::map<std::pair<int64_t, int64_t>, std::vector<size_t>> buckets;
    for (size_t t = 0; t < xs.size(); ++t) {
      int64_t ypar = prefix_cell_rank(base, ys[t], k - 1, c);
      if (yparents[size_t(ypar)].itype == base.p) {
        // the short parent has a single child; only the zero digit extends
        ys[t].digits.push_back(0);
        continue;
      }
      buckets[{prefix_cell_rank(base, xs[t], m - k, c), ypar}].push_back(t);
    }
    for (auto& [key, idxs] : buckets) {
      DigitWord probe = ys[idxs[0]];
      probe.digits.push_back(0);
      int64_t cell0 = prefix_cell_rank(base, probe, k, c);
      probe.digits.back() = 1;
      int64_t cell1 = prefix_cell_rank(base, probe, k, c);
      const AxisInterval& xc = xcells[size_t(key.first)];
      auto req = [&](int64_t ycell) {
        return required_count(
            base, c, m + 1 - xc.contribution() - ychildren[size_t(ycell)].contribution());
      };
      int64_t movers = req(cell1) - occ[{key.first, cell1}];
      int64_t stayers = req(cell0) - occ[{key.first, cell0}];
      if (movers < 0 || stayers < 0 || movers + stayers != int64_t(idxs.size()))
        throw ExtendError("digit " + std::to_string(k) + " does not balance near x=" +
                          std::to_string(xc.left));
      std::sort(idxs.begin(), idxs.end(), [&](size_t a, size_t b) {
        return std::is_lt(compare(base, xs[a], xs[b]));
      });
      for (size_t r = 0; r < idxs.size(); ++r)
        ys[idxs[r]].digits.push_back(r < size_t(movers) ? 1 : 0);
    }
    PointSet u = detail::weak_union(S, xs, ys, m + 1);
    EquidReport stage = check_strong(u, {m - k, k});
    if (!stage.passed)
      throw ExtendError("digit " + std::to_string(k) + " left cell " +
                        stage.failures[0].interval + " at " +
                        std::to_string(stage.failures[0].actual) + " of " +
                        std::to_string(stage.failures[0].expected));
  }

  // closing digits: park every new point just past its decided prefix, then
  // mark it with the trailing one that separates it from the old points
  for (DigitWord& y : ys) {
    if (m >= 1) y.digits.push_back(0);
    y.digits.push_back(1);
  }

  PointSet u = detail::weak_union(S, xs, ys, m + 1);
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j)
      if (u.words[i] == u.words[j]) throw ExtendError("duplicate point after extension");
  if (!check_strong(u, {m + 2, 0}).passed)
    throw ExtendError("union lost x slab equidistribution");
  if (!check_strong(u, {0, m + 2}).passed)
    throw ExtendError("union lost y slab equidistribution");
  if (!is_net(u, 1)) throw ExtendError("union is not a quality-1 net");
  return u;
}

// First fib(m_target) terms of the weak sequence grown from a seed in the
// corner cell [0, 1/gamma)^2. Every prefix of size fib(j) is a quality-1 net.
inline PointSet weak12(int m_target, double seed_x = 0.0, double seed_y = 0.0) {
  if (m_target < 0) throw std::domain_error("negative level");
  PointSet s;
  s.base = BaseSpec::phi();
  s.s = 2;
  s.m = 0;
  s.coords.push_back({seed_x, seed_y});
  ensure_words(s);
  for (int m = 0; m < m_target; ++m) s = extend_weak12(s);
  return s;
}

}  // namespace irrnet
