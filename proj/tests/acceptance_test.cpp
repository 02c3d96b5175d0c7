// Acceptance gate. Each test covers one numbered criterion and prints exactly
// one summary line; supporting detail goes to stdout right before it. The
// tolerances here are pinned on purpose. A red line below is a real finding
// about the claim being tested, not a knob to loosen.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "irrnet/discrepancy.hpp"
#include "irrnet/equidist.hpp"
#include "irrnet/generators.hpp"
#include "irrnet/intervals.hpp"
#include "oracles.hpp"

namespace {

using irrnet::AxisInterval;
using irrnet::BaseSpec;
using irrnet::DigitWord;
using irrnet::DiscResult;
using irrnet::EquidReport;
using irrnet::GCounts;
using irrnet::PointSet;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double secs() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int criterion, const char* name, const Stopwatch& sw) {
  std::printf("ACCEPTANCE %d %s: %s (%.2f s)\n", criterion, name,
              ::testing::Test::HasFailure() ? "FAIL" : "PASS", sw.secs());
  std::fflush(stdout);
}

std::vector<std::array<double, 2>> as_pairs(const PointSet& ps) {
  std::vector<std::array<double, 2>> out;
  out.reserve(ps.size());
  for (const auto& row : ps.coords) out.push_back({row[0], row[1]});
  return out;
}

// counts G_m as the integer nearest the dominant-root formula
int64_t binet_g(const BaseSpec& base, int m) {
  double delta = base.conj;
  double c1 = (base.p + 1 - delta) / (base.gamma - delta);
  return llround(c1 * std::pow(base.gamma, m) +
                 (1.0 - c1) * std::pow(delta, m));
}

TEST(Acceptance, Criterion1RecurrenceEnumeration) {
  Stopwatch sw;
  for (int p = 1; p <= 4; ++p) {
    for (int q = 1; q <= p; ++q) {
      BaseSpec base = BaseSpec::make(p, q);
      GCounts c = irrnet::g_counts(base, 20);
      for (int m = 0; m <= 20; ++m)
        EXPECT_EQ(c.g[size_t(m)], binet_g(base, m))
            << "p=" << p << " q=" << q << " m=" << m;
      // full filters on both side conditions, capped by candidate count
      int m_enum = 0;
      int64_t cand = 1;
      while (cand * (p + 1) <= 300'000) {
        cand *= p + 1;
        ++m_enum;
      }
      for (int m = 0; m <= m_enum; ++m) {
        int64_t left = int64_t(oracle::admissible_naturals(p, q, m, 'L').size());
        int64_t right = int64_t(oracle::admissible_naturals(p, q, m, 'R').size());
        EXPECT_EQ(left, c.g[size_t(m)]) << "L p=" << p << " q=" << q << " m=" << m;
        EXPECT_EQ(right, c.g[size_t(m)]) << "R p=" << p << " q=" << q << " m=" << m;
      }
    }
  }
  const int64_t first_six[6] = {1, 3, 7, 17, 41, 99};
  GCounts c21 = irrnet::g_counts(BaseSpec::make(2, 1), 5);
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(c21.g[size_t(m)], first_six[m]);
  EXPECT_LT(sw.secs(), 1.0);
  report(1, "recurrence-enumeration", sw);
}

TEST(Acceptance, Criterion2ConstructionFidelity) {
  Stopwatch sw;
  PointSet h3 = irrnet::hammersley(BaseSpec::phi(), 3);
  const std::vector<std::vector<uint8_t>> want_x = {
      {}, {1}, {0, 1}, {0, 0, 1}, {1, 0, 1}};
  const std::vector<std::vector<uint8_t>> want_y = {
      {}, {0, 0, 1}, {0, 1}, {1}, {1, 0, 1}};
  ASSERT_EQ(h3.size(), 5u);
  for (size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(h3.words[i][0].digits, want_x[i]) << "x word " << i;
    EXPECT_EQ(h3.words[i][1].digits, want_y[i]) << "y word " << i;
  }
  PointSet v = irrnet::vdc_prefix(BaseSpec::make(2, 1), 7);
  const double want[7] = {0.0, 0.4142, 0.8284, 0.1715, 0.5857, 0.3431, 0.7573};
  for (size_t i = 0; i < 7; ++i)
    EXPECT_NEAR(v.coords[i][0], want[i], 1e-4) << "term " << i;
  EXPECT_LT(sw.secs(), 1.0);
  report(2, "construction-fidelity", sw);
}

TEST(Acceptance, Criterion3NetProperties) {
  Stopwatch sw;
  BaseSpec phi = BaseSpec::phi();
  auto gen = [&phi](int64_t i) { return irrnet::vdc(phi, i); };
  irrnet::SequenceReport seq = irrnet::verify_sequence(phi, gen, 0, 8, 10);
  EXPECT_TRUE(seq.passed);
  for (const auto& w : seq.windows) EXPECT_TRUE(w.passed) << "window m=" << w.m;
  for (int m = 0; m <= 10; ++m)
    EXPECT_TRUE(irrnet::is_net(irrnet::hammersley(phi, m), 0)) << "H_" << m;
  EXPECT_LT(sw.secs(), 60.0);
  report(3, "net-properties", sw);
}

TEST(Acceptance, Criterion4WeakSequence) {
  Stopwatch sw;
  BaseSpec phi = BaseSpec::phi();
  GCounts c = irrnet::g_counts(phi, 14);
  std::vector<std::string> bad;
  for (int m = 0; m <= 10; ++m) {
    PointSet w = irrnet::weak12(m);
    ASSERT_EQ(int64_t(w.size()), irrnet::fib(m));
    EXPECT_TRUE(irrnet::is_net(w, 1)) << "prefix F^" << m;
    for (int k = 0; k <= m + 1; ++k) {
      EquidReport r = irrnet::check_strong(w, {m + 1 - k, k});
      if (!r.passed) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "m=%d kvec=(%d,%d) first=%s want=%lld got=%lld",
                      m, m + 1 - k, k, r.failures[0].interval.c_str(),
                      (long long)r.failures[0].expected,
                      (long long)r.failures[0].actual);
        bad.emplace_back(buf);
      }
    }
  }
  if (!bad.empty()) {
    std::printf("  strong (m+1-k,k) suite: %zu of the cross partitions fail:\n",
                bad.size());
    for (size_t i = 0; i < bad.size() && i < 6; ++i)
      std::printf("    %s\n", bad[i].c_str());
    if (bad.size() > 6) std::printf("    ... and %zu more\n", bad.size() - 6);
  }
  EXPECT_TRUE(bad.empty()) << "strong cross-partition suite has failures";

  // group-of-four dichotomy: around each type-0/type-1 cell pair on both axes
  // the four counts are (2,0,0,1) or (1,1,1,0)
  for (int m = 2; m <= 10; ++m) {
    PointSet w = irrnet::weak12(m);
    for (int k = 1; k < m; ++k) {
      std::vector<AxisInterval> xc = irrnet::partition_1d(phi, m - k);
      std::vector<AxisInterval> yc = irrnet::partition_1d(phi, k);
      std::vector<int64_t> cx, cy;
      for (size_t i = 0; i < w.size(); ++i) {
        cx.push_back(irrnet::prefix_cell_rank(phi, w.words[i][0], m - k, c));
        cy.push_back(irrnet::prefix_cell_rank(phi, w.words[i][1], k, c));
      }
      for (size_t a = 0; a < xc.size(); ++a) {
        if (xc[a].itype != 0) continue;
        for (size_t b = 0; b < yc.size(); ++b) {
          if (yc[b].itype != 0) continue;
          int64_t cnt[2][2] = {{0, 0}, {0, 0}};
          for (size_t i = 0; i < w.size(); ++i)
            if (cx[i] >= int64_t(a) && cx[i] <= int64_t(a + 1) &&
                cy[i] >= int64_t(b) && cy[i] <= int64_t(b + 1))
              ++cnt[cx[i] - int64_t(a)][cy[i] - int64_t(b)];
          bool case1 = cnt[0][0] == 2 && cnt[1][0] == 0 && cnt[0][1] == 0 &&
                       cnt[1][1] == 1;
          bool case2 = cnt[0][0] == 1 && cnt[1][0] == 1 && cnt[0][1] == 1 &&
                       cnt[1][1] == 0;
          EXPECT_TRUE(case1 || case2) << "m=" << m << " k=" << k << " a=" << a
                                      << " b=" << b;
        }
      }
    }
  }
  EXPECT_LT(sw.secs(), 120.0);
  report(4, "weak-sequence", sw);
}

struct TableRow {
  int64_t n;
  double printed;
};

TEST(Acceptance, Criterion5TableReproduction) {
  Stopwatch sw;
  const std::map<std::pair<int, int>, std::vector<TableRow>> tables = {
      {{2, 1},
       {{3, 3.11}, {7, 2.60}, {17, 2.07}, {41, 1.75}, {99, 1.62}, {239, 1.44},
        {577, 1.37}, {1393, 1.30}, {3363, 1.22}, {8119, 1.20}}},
      {{2, 2},
       {{3, 3.35}, {8, 2.29}, {22, 1.92}, {60, 1.65}, {164, 1.61}, {448, 1.44},
        {1224, 1.33}, {3344, 1.32}, {9136, 1.27}}},
      {{3, 1},
       {{4, 2.71}, {13, 2.25}, {43, 1.83}, {142, 1.53}, {469, 1.47},
        {1549, 1.36}, {5116, 1.31}}},
      {{3, 2},
       {{4, 2.89}, {14, 2.20}, {50, 1.80}, {178, 1.55}, {634, 1.48},
        {2258, 1.38}, {8042, 1.35}}},
      {{3, 3},
       {{4, 3.13}, {15, 2.26}, {57, 1.94}, {216, 1.68}, {819, 1.62},
        {3105, 1.53}}},
      {{4, 1},
       {{5, 2.70}, {21, 2.13}, {89, 1.78}, {377, 1.56}, {1597, 1.47},
        {6765, 1.40}}}};
  for (const auto& [pq, rows] : tables) {
    BaseSpec base = BaseSpec::make(pq.first, pq.second);
    std::vector<double> norms;
    for (size_t i = 0; i < rows.size(); ++i) {
      int m = int(i) + 1;
      PointSet ps = irrnet::hammersley(base, m);
      ASSERT_EQ(int64_t(ps.size()), rows[i].n)
          << "p=" << pq.first << " q=" << pq.second << " m=" << m;
      DiscResult r = irrnet::star_2d(ps);
      EXPECT_FALSE(r.lower_bound);
      norms.push_back(r.normalized);
    }
    for (size_t i = 0; i < rows.size(); ++i) {
      EXPECT_NEAR(norms[i], rows[i].printed, 0.01)
          << "p=" << pq.first << " q=" << pq.second << " N=" << rows[i].n;
      if (std::abs(norms[i] - rows[i].printed) > 0.01) {
        double next = std::numeric_limits<double>::quiet_NaN();
        if (i + 1 < norms.size()) {
          next = norms[i + 1];
        } else {
          PointSet beyond = irrnet::hammersley(base, int(i) + 2);
          if (int64_t(beyond.size()) <= irrnet::star_exact_limit)
            next = irrnet::star_2d(beyond).normalized;
        }
        bool shifted = std::abs(next - rows[i].printed) <= 0.01;
        std::printf(
            "  p=%d q=%d N=%lld: computed %.5f, table prints %.2f%s\n",
            pq.first, pq.second, (long long)rows[i].n, norms[i],
            rows[i].printed,
            shifted ? " (printed value matches the next row's computed value)"
                    : "");
      }
    }
  }
  PointSet h1 = irrnet::hammersley(BaseSpec::make(2, 1), 1);
  DiscResult r = irrnet::star_2d(h1);
  EXPECT_NEAR(r.value, 2.0 * std::sqrt(2.0) - 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(r.value, oracle::star_2d_brute(as_pairs(h1)), 1e-12);
  EXPECT_NEAR(r.normalized, 3.11, 0.01);
  EXPECT_LT(sw.secs(), 900.0);
  report(5, "table-reproduction", sw);
}

TEST(Acceptance, Criterion6DyadicOrdering) {
  Stopwatch sw;
  BaseSpec phi = BaseSpec::phi();
  std::printf("  m: golden vs dyadic with nearest 2^k >= F^m\n");
  for (int m = 4; m <= 14; ++m) {
    DiscResult golden = irrnet::star_2d(irrnet::hammersley(phi, m));
    int k = 0;
    while ((int64_t(1) << k) < irrnet::fib(m)) ++k;
    DiscResult dyadic = irrnet::star_2d(irrnet::hammersley_dyadic(k));
    std::printf("  %2d: %.5f (N=%lld) vs %.5f (N=%lld)%s\n", m, golden.normalized,
                (long long)golden.n, dyadic.normalized, (long long)dyadic.n,
                golden.normalized < dyadic.normalized ? "" : "  <-- not below");
    EXPECT_LT(golden.normalized, dyadic.normalized) << "m=" << m << " k=" << k;
  }
  EXPECT_LT(sw.secs(), 600.0);
  report(6, "dyadic-ordering", sw);
}

TEST(Acceptance, Criterion7IdentitySuites) {
  Stopwatch sw;
  BaseSpec phi = BaseSpec::phi();

  // error formula |F^{m-k}/F^m - phi^{-k}| = phi^{-(m+2)} F^{k-2}/F^m
  for (int m = 2; m <= 22; ++m) {
    for (int k = 0; k <= m + 2; ++k) {
      double lhs = std::abs(double(irrnet::fib(m - k)) / double(irrnet::fib(m)) -
                            std::pow(phi.gamma, -k));
      double rhs = std::pow(phi.gamma, -(m + 2)) * double(irrnet::fib(k - 2)) /
                   double(irrnet::fib(m));
      EXPECT_NEAR(lhs, rhs, 1e-12) << "m=" << m << " k=" << k;
      EXPECT_LT(lhs, 1.0 / double(irrnet::fib(m)));
    }
  }

  // point-count sum identity over full partitions, dims 1..3
  {
    GCounts c = irrnet::g_counts(phi, 12);
    for (int m = 0; m <= 8; ++m) {
      std::vector<std::vector<int>> kvecs;
      for (int k1 = 0; k1 <= m + 1; ++k1) {
        if (irrnet::rho({k1}) <= m + 2) kvecs.push_back({k1});
        for (int k2 = 0; k2 <= m + 1; ++k2) {
          if (irrnet::rho({k1, k2}) <= m + 2) kvecs.push_back({k1, k2});
          for (int k3 = 0; k3 <= m + 1; ++k3)
            if (irrnet::rho({k1, k2, k3}) <= m + 2) kvecs.push_back({k1, k2, k3});
        }
      }
      for (const auto& kv : kvecs) {
        std::vector<std::vector<AxisInterval>> axes;
        for (int k : kv) axes.push_back(irrnet::partition_1d(phi, k));
        std::vector<size_t> idx(kv.size(), 0);
        int64_t total = 0;
        while (true) {
          int size = 0;
          for (size_t j = 0; j < kv.size(); ++j)
            size += axes[j][idx[j]].contribution();
          total += irrnet::required_count(phi, c, m - size);
          size_t j = 0;
          while (j < kv.size() && ++idx[j] == axes[j].size()) idx[j++] = 0;
          if (j == kv.size()) break;
        }
        EXPECT_EQ(total, irrnet::fib(m)) << "m=" << m << " dims=" << kv.size();
      }
    }
  }

  // type counts of the level-m partition
  for (int m = 1; m <= 14; ++m) {
    std::map<int, int64_t> by_type;
    for (const AxisInterval& cell : irrnet::partition_1d(phi, m))
      ++by_type[cell.itype];
    EXPECT_EQ(by_type[0], irrnet::fib(m - 2)) << "m=" << m;
    EXPECT_EQ(by_type[1], irrnet::fib(m - 2)) << "m=" << m;
    EXPECT_EQ(by_type[2], irrnet::fib(m - 3)) << "m=" << m;
  }

  // successor gaps for every n < F^12
  {
    std::vector<DigitWord> words =
        irrnet::enumerate_words(phi, 12, irrnet::Side::right);
    ASSERT_EQ(int64_t(words.size()), irrnet::fib(12));
    for (size_t i = 0; i + 1 < words.size(); ++i) {
      double diff =
          irrnet::value(phi, words[i + 1]) - irrnet::value(phi, words[i]);
      irrnet::Gap g = irrnet::succ_gap(phi, words[i]);
      EXPECT_EQ(g.coeff, 1);
      EXPECT_TRUE(g.exponent == 0 || g.exponent == -1);
      EXPECT_NEAR(diff, irrnet::gap_value(phi, g), 1e-12) << "n=" << i;
    }
  }

  // exact star scan vs full-grid oracle
  {
    std::mt19937 rng(20240818);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 200);
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<std::array<double, 2>> pts(size_t(len(rng)));
      for (auto& pt : pts) pt = {uni(rng), uni(rng)};
      DiscResult r = irrnet::star_2d(pts);
      EXPECT_NEAR(r.value, oracle::star_2d_brute(pts), 1e-12) << "rep " << rep;
    }
  }

  // Warnock formula vs piecewise integration
  {
    std::mt19937 rng(20240819);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_int_distribution<int> len(1, 20);
    for (int rep = 0; rep < 30; ++rep) {
      int s = 1 + rep % 2;
      std::vector<std::vector<double>> pts(size_t(len(rng)),
                                           std::vector<double>(size_t(s)));
      for (auto& pt : pts)
        for (double& v : pt) v = uni(rng);
      DiscResult r = irrnet::l2(pts, s);
      EXPECT_NEAR(r.value, std::sqrt(oracle::l2_sq_brute(pts, s)), 1e-3)
          << "rep " << rep;
    }
  }
  report(7, "identity-suites", sw);
}

TEST(Acceptance, Criterion8NormalizedBand) {
  Stopwatch sw;
  BaseSpec phi = BaseSpec::phi();
  std::vector<double> vals;
  std::printf("  normalized star values, m = 2..16:\n   ");
  for (int m = 2; m <= 16; ++m) {
    DiscResult r = irrnet::star_2d(irrnet::hammersley(phi, m));
    vals.push_back(r.normalized);
    std::printf(" %.3f", r.normalized);
  }
  std::printf("\n");
  for (size_t i = 0; i < vals.size(); ++i) {
    EXPECT_GE(vals[i], 1.0) << "m=" << i + 2;
    EXPECT_LE(vals[i], 3.5) << "m=" << i + 2;
  }
  // no monotone divergence: the tail must not climb step after step
  int rises = 0;
  for (size_t i = vals.size() - 5; i < vals.size(); ++i)
    rises += vals[i] > vals[i - 1] ? 1 : 0;
  EXPECT_LT(rises, 5);
  report(8, "normalized-band", sw);
}

}  // namespace
