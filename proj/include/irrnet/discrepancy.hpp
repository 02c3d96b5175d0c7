#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrnet/parallel.hpp"
#include "irrnet/pointset.hpp"

namespace irrnet {

enum class BoxKind { closed, open };

// Exact scans stop at this size; beyond it star_2d reports a certified lower
// bound from the closed-count scan alone.
inline constexpr int64_t star_exact_limit = 30000;

struct DiscResult {
  int64_t n = 0;
  double value = 0.0;
  // value * N / log10(N); stays NaN for a single point
  double normalized = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> witness;  // box corner, empty for the L2 norm
  BoxKind kind = BoxKind::closed;
  bool lower_bound = false;
};

inline double normalize(double value, int64_t n) {
  if (n < 2) throw std::domain_error("normalization needs at least two points");
  return value * double(n) / std::log10(double(n));
}

namespace detail {

inline void require_unit(double v) {
  if (!(v >= 0.0 && v < 1.0)) throw InputError("coordinate outside [0,1)");
}

inline void fill_normalized(DiscResult& r) {
  if (r.n >= 2) r.normalized = normalize(r.value, r.n);
}

// Maximum with a total order on ties: any corner beats the sentinel, equal
// values prefer the smaller corner, then closed over open. Makes the result
// independent of scan and merge order.
struct BestBox {
  double value = -std::numeric_limits<double>::infinity();
  double x = 2.0, y = 2.0;
  BoxKind kind = BoxKind::open;

  void offer(double v, double cx, double cy, BoxKind k) {
    if (v < value) return;
    if (v > value) {
      value = v;
      x = cx;
      y = cy;
      kind = k;
      return;
    }
    bool smaller = cx < x || (cx == x && (cy < y || (cy == y && k == BoxKind::closed &&
                                                     kind == BoxKind::open)));
    if (smaller) {
      x = cx;
      y = cy;
      kind = k;
    }
  }
  void merge(const BestBox& o) {
    if (o.value > -std::numeric_limits<double>::infinity()) offer(o.value, o.x, o.y, o.kind);
  }
};

}  // namespace detail

inline DiscResult star_1d(std::vector<double> xs) {
  if (xs.empty()) throw InputError("empty point list");
  for (double x : xs) detail::require_unit(x);
  std::sort(xs.begin(), xs.end());
  int64_t n = int64_t(xs.size());
  detail::BestBox best;
  for (int64_t i = 1; i <= n; ++i) {
    double x = xs[size_t(i - 1)];
    best.offer(double(i) / double(n) - x, x, 1.0, BoxKind::closed);
    best.offer(x - double(i - 1) / double(n), x, 1.0, BoxKind::open);
  }
  DiscResult r;
  r.n = n;
  r.value = best.value;
  r.witness = {best.x};
  r.kind = best.kind;
  detail::fill_normalized(r);
  return r;
}

// Local term at one grid corner; also used to re-evaluate witnesses.
inline double star_term(const std::vector<std::array<double, 2>>& pts, double x,
                        double y, BoxKind kind) {
  int64_t cnt = 0;
  for (const auto& p : pts)
    if (kind == BoxKind::closed ? (p[0] <= x && p[1] <= y) : (p[0] < x && p[1] < y))
      ++cnt;
  double term = double(cnt) / double(pts.size());
  return kind == BoxKind::closed ? term - x * y : x * y - term;
}

// Exact sup over anchored boxes: every corner on the grid of coordinate
// values plus 1, closed and open counts both. Column sweep with per-thread
// histograms over y ranks; O(N^2) time, O(N) space per worker.
inline DiscResult star_2d_scan(const std::vector<std::array<double, 2>>& pts,
                               bool closed_only) {
  if (pts.empty()) throw InputError("empty point list");
  for (const auto& p : pts) {
    detail::require_unit(p[0]);
    detail::require_unit(p[1]);
  }
  int64_t n = int64_t(pts.size());
  std::vector<double> ux, uy;
  ux.reserve(pts.size() + 1);
  uy.reserve(pts.size() + 1);
  for (const auto& p : pts) {
    ux.push_back(p[0]);
    uy.push_back(p[1]);
  }
  std::sort(ux.begin(), ux.end());
  ux.erase(std::unique(ux.begin(), ux.end()), ux.end());
  ux.push_back(1.0);
  std::sort(uy.begin(), uy.end());
  uy.erase(std::unique(uy.begin(), uy.end()), uy.end());
  uy.push_back(1.0);
  int64_t ny = int64_t(uy.size());

  std::vector<int32_t> yrank(pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    yrank[i] = int32_t(std::lower_bound(uy.begin(), uy.end(), pts[i][1]) - uy.begin());
  std::vector<int32_t> order(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) order[i] = int32_t(i);
  std::sort(order.begin(), order.end(),
            [&](int32_t a, int32_t b) { return pts[size_t(a)][0] < pts[size_t(b)][0]; });

  ChunkPlan pl = plan_chunks(int64_t(ux.size()));
  std::vector<detail::BestBox> bests(size_t(std::max<int64_t>(pl.chunks, 1)));
  parallel_chunks(int64_t(ux.size()), [&](int64_t chunk, int64_t cb, int64_t ce) {
    detail::BestBox local;
    std::vector<int64_t> le(size_t(ny), 0), lt(size_t(ny), 0);
    size_t pi_le = 0, pi_lt = 0;
    // preload everything left of this chunk's first column
    auto load = [&](double x) {
      while (pi_le < order.size() && pts[size_t(order[pi_le])][0] <= x)
        ++le[size_t(yrank[size_t(order[pi_le++])])];
      while (pi_lt < order.size() && pts[size_t(order[pi_lt])][0] < x)
        ++lt[size_t(yrank[size_t(order[pi_lt++])])];
    };
    std::vector<int64_t> cum_le(size_t(ny) + 1, 0), cum_lt(size_t(ny) + 1, 0);
    for (int64_t col = cb; col < ce; ++col) {
      double x = ux[size_t(col)];
      load(x);
      for (int64_t j = 0; j < ny; ++j) {
        cum_le[size_t(j) + 1] = cum_le[size_t(j)] + le[size_t(j)];
        if (!closed_only) cum_lt[size_t(j) + 1] = cum_lt[size_t(j)] + lt[size_t(j)];
      }
      for (int64_t j = 0; j < ny; ++j) {
        double y = uy[size_t(j)];
        // points with py <= y have rank <= j; with py < y, rank < j
        local.offer(double(cum_le[size_t(j) + 1]) / double(n) - x * y, x, y,
                    BoxKind::closed);
        if (!closed_only)
          local.offer(x * y - double(cum_lt[size_t(j)]) / double(n), x, y,
                      BoxKind::open);
      }
    }
    bests[size_t(chunk)] = local;
  });
  detail::BestBox best;
  for (const auto& b : bests) best.merge(b);

  DiscResult r;
  r.n = n;
  r.value = best.value;
  r.witness = {best.x, best.y};
  r.kind = best.kind;
  r.lower_bound = closed_only;
  detail::fill_normalized(r);
  return r;
}

inline DiscResult star_2d(const std::vector<std::array<double, 2>>& pts) {
  return star_2d_scan(pts, int64_t(pts.size()) > star_exact_limit);
}

inline DiscResult star_2d(const PointSet& ps) {
  if (ps.s != 2) throw std::domain_error("star_2d needs two-dimensional points");
  std::vector<std::array<double, 2>> pts;
  pts.reserve(ps.size());
  for (const auto& row : ps.coords) pts.push_back({row[0], row[1]});
  return star_2d(pts);
}

// Warnock closed form:
// L2^2 = 3^-s - (2^(1-s)/N) sum_i prod_j (1-x_ij^2)
//        + (1/N^2) sum_{i,k} prod_j (1-max(x_ij,x_kj))
inline DiscResult l2(const std::vector<std::vector<double>>& pts, int s) {
  if (pts.empty()) throw InputError("empty point list");
  if (s < 1) throw std::domain_error("dimension must be positive");
  for (const auto& row : pts) {
    if (int(row.size()) != s) throw InputError("point dimension mismatch");
    for (double v : row) detail::require_unit(v);
  }
  int64_t n = int64_t(pts.size());
  double lin = 0.0;
  for (const auto& row : pts) {
    double prod = 1.0;
    for (double v : row) prod *= 1.0 - v * v;
    lin += prod;
  }
  ChunkPlan pl = plan_chunks(n);
  std::vector<double> partial(size_t(std::max<int64_t>(pl.chunks, 1)), 0.0);
  parallel_chunks(n, [&](int64_t chunk, int64_t b, int64_t e) {
    double acc = 0.0;
    for (int64_t i = b; i < e; ++i)
      for (int64_t k = 0; k < n; ++k) {
        double prod = 1.0;
        for (int j = 0; j < s; ++j)
          prod *= 1.0 - std::max(pts[size_t(i)][size_t(j)], pts[size_t(k)][size_t(j)]);
        acc += prod;
      }
    partial[size_t(chunk)] = acc;
  });
  double quad = 0.0;
  for (double v : partial) quad += v;
  double sq = std::pow(3.0, -s) - std::ldexp(1.0, 1 - s) / double(n) * lin +
              quad / (double(n) * double(n));
  DiscResult r;
  r.n = n;
  r.value = std::sqrt(std::max(sq, 0.0));
  detail::fill_normalized(r);
  return r;
}

inline DiscResult l2(const PointSet& ps) { return l2(ps.coords, ps.s); }

inline std::string box_kind_name(const DiscResult& r) {
  if (r.witness.empty()) return "none";
  std::string s = r.kind == BoxKind::closed ? "closed" : "open";
  if (r.lower_bound) s += "-bound";
  return s;
}

inline void disc_to_csv(const DiscResult& r, std::ostream& out) {
  char buf[64];
  out << "N,value,normalized,witness_x,witness_y,witness_kind\n" << r.n;
  std::snprintf(buf, sizeof buf, "%.17g", r.value);
  out << "," << buf << ",";
  if (!std::isnan(r.normalized)) {
    std::snprintf(buf, sizeof buf, "%.17g", r.normalized);
    out << buf;
  }
  for (int j = 0; j < 2; ++j) {
    out << ",";
    if (j < int(r.witness.size())) {
      std::snprintf(buf, sizeof buf, "%.17g", r.witness[size_t(j)]);
      out << buf;
    }
  }
  out << "," << box_kind_name(r) << "\n";
}

}  // namespace irrnet
