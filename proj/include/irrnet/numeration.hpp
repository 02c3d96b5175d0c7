#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace irrnet {

// Quadratic base gamma: the largest root of x^2 = p*x + q with 1 <= q <= p.
// Words are radix-(p+1) digit strings filtered by an adjacency condition on
// the digit p; gamma = (1+sqrt(5))/2 is the p = q = 1 case.
struct BaseSpec {
  int p = 1;
  int q = 1;
  double gamma = 1.6180339887498948482;
  double conj = -0.6180339887498948482;  // p - gamma, lies in (-1, 0)

  static BaseSpec make(int p, int q) {
    if (q < 1 || p < q) throw std::domain_error("base requires 1 <= q <= p");
    BaseSpec b;
    b.p = p;
    b.q = q;
    b.gamma = (p + std::sqrt(double(p) * p + 4.0 * q)) / 2.0;
    b.conj = p - b.gamma;
    return b;
  }
  static BaseSpec phi() { return make(1, 1); }
  bool is_phi() const { return p == 1 && q == 1; }
  int radix() const { return p + 1; }

  friend bool operator==(const BaseSpec& x, const BaseSpec& y) {
    return x.p == y.p && x.q == y.q;
  }
};

namespace detail {
inline int64_t add_ck(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("count overflow");
  return r;
}
inline int64_t mul_ck(int64_t x, int64_t y) {
  int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("count overflow");
  return r;
}
}  // namespace detail

// Shifted Fibonacci numbers: fib(0) = 1, fib(1) = 2, fib(2) = 3, fib(3) = 5.
// fib(-1) = 1 and fib(-2) = 0 extend the recurrence downward.
inline int64_t fib(int m) {
  if (m < -2) throw std::domain_error("fib index below -2");
  if (m > 90) throw std::overflow_error("fib overflow");
  if (m == -2) return 0;
  int64_t a = 0, b = 1;
  for (int i = 0; i < m + 1; ++i) {
    int64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

// g[m] counts admissible m-digit words (either side condition, same count).
// a[m] restricts the leading digit to != p, b[m] restricts it to < q.
struct GCounts {
  std::vector<int64_t> g;
  std::vector<int64_t> a;
  std::vector<int64_t> b;
};

inline GCounts g_counts(const BaseSpec& base, int m_max) {
  if (m_max < 0) throw std::domain_error("negative digit count");
  GCounts c;
  c.g.assign(m_max + 1, 1);
  c.a.assign(m_max + 1, 1);
  c.b.assign(m_max + 1, 1);
  using detail::add_ck;
  using detail::mul_ck;
  for (int m = 1; m <= m_max; ++m) {
    c.a[m] = add_ck(mul_ck(base.q, c.g[m - 1]), mul_ck(base.p - base.q, c.a[m - 1]));
    c.g[m] = add_ck(mul_ck(base.q, c.g[m - 1]), mul_ck(base.p - base.q + 1, c.a[m - 1]));
    c.b[m] = mul_ck(base.q, c.g[m - 1]);
    // the two one-step recursions must produce the same total
    if (c.g[m] != add_ck(mul_ck(base.p, c.g[m - 1]), c.b[m - 1]))
      throw std::logic_error("count recurrences disagree");
  }
  return c;
}

inline int64_t closed_form_g(const BaseSpec& base, int m) {
  double g = base.gamma;
  double v = ((g + 1.0) * std::pow(g, m) + (g - base.p - 1.0) * std::pow(base.conj, m)) /
             (2.0 * g - base.p);
  return std::llround(v);
}

enum class Role : uint8_t { integer, fractional };
enum class Side : uint8_t { left, right };

// digits[j] weights gamma^j for integer words and gamma^-(j+1) for fractional
// ones, so an integer word reread as fractional is exactly its digit reversal.
struct DigitWord {
  std::vector<uint8_t> digits;
  Role role = Role::integer;

  size_t size() const { return digits.size(); }
  friend bool operator==(const DigitWord& x, const DigitWord& y) = default;
};

// i-th digit in most-significant-first reading order
inline uint8_t digit_msd(const DigitWord& w, size_t i) {
  return w.role == Role::integer ? w.digits[w.size() - 1 - i] : w.digits[i];
}

inline std::string to_string(const DigitWord& w) {
  std::string s = w.role == Role::integer ? "" : ".";
  for (size_t i = 0; i < w.size(); ++i) s += char('0' + digit_msd(w, i));
  return s;
}

// Side::right: a digit p must be followed by a digit < q or end the word.
// Side::left: a digit p must be preceded by a digit < q or start the word.
inline bool is_admissible(const BaseSpec& base, const DigitWord& w, Side side) {
  size_t n = w.size();
  for (size_t i = 0; i < n; ++i)
    if (digit_msd(w, i) > base.p) return false;
  for (size_t i = 0; i < n; ++i) {
    if (digit_msd(w, i) != base.p) continue;
    if (side == Side::right) {
      if (i + 1 < n && digit_msd(w, i + 1) >= base.q) return false;
    } else {
      if (i > 0 && digit_msd(w, i - 1) >= base.q) return false;
    }
  }
  return true;
}

// Position of an admissible integer word in the increasing enumeration of all
// admissible words (equivalently fixed-width lexicographic order). Padding
// with leading zeros does not change the rank.
inline int64_t rank_word(const BaseSpec& base, const DigitWord& w, Side side,
                         const GCounts& c) {
  if (w.role != Role::integer) throw std::domain_error("rank needs an integer word");
  int n = int(w.size());
  if (int(c.g.size()) <= n) throw std::domain_error("counts table too short");
  int64_t r = 0;
  bool after_p = false;  // right condition: previous digit was p
  bool upper_ok = true;  // left condition: previous digit < q (pad counts as 0)
  for (int i = 0; i < n; ++i) {
    int d = digit_msd(w, i);
    if (d > base.p) throw std::domain_error("digit exceeds p");
    int rem = n - 1 - i;
    for (int e = 0; e < d; ++e) {
      if (side == Side::right) {
        if (after_p && e >= base.q) continue;
        r = detail::add_ck(r, e == base.p ? c.b[rem] : c.g[rem]);
      } else {
        if (e == base.p && !upper_ok) continue;
        r = detail::add_ck(r, e >= base.q ? c.a[rem] : c.g[rem]);
      }
    }
    if (side == Side::right) {
      if (after_p && d >= base.q) throw std::domain_error("inadmissible word");
      after_p = (d == base.p);
    } else {
      if (d == base.p && !upper_ok) throw std::domain_error("inadmissible word");
      upper_ok = (d < base.q);
    }
  }
  return r;
}

inline int64_t rank_word(const BaseSpec& base, const DigitWord& w, Side side) {
  return rank_word(base, w, side, g_counts(base, int(w.size())));
}

inline DigitWord unrank_word(const BaseSpec& base, int64_t rank, int m, Side side,
                             const GCounts& c) {
  if (rank < 0) throw std::domain_error("negative rank");
  if (int(c.g.size()) <= m) throw std::domain_error("counts table too short");
  if (rank >= c.g[m]) throw std::domain_error("rank out of range for width");
  DigitWord w;
  w.role = Role::integer;
  w.digits.assign(m, 0);
  bool after_p = false, upper_ok = true;
  for (int i = 0; i < m; ++i) {
    int rem = m - 1 - i;
    int chosen = -1;
    for (int e = 0; e <= base.p; ++e) {
      int64_t block;
      if (side == Side::right) {
        if (after_p && e >= base.q) break;
        block = e == base.p ? c.b[rem] : c.g[rem];
      } else {
        if (e == base.p && !upper_ok) break;
        block = e >= base.q ? c.a[rem] : c.g[rem];
      }
      if (rank < block) {
        chosen = e;
        break;
      }
      rank -= block;
    }
    if (chosen < 0) throw std::logic_error("unrank walked out of range");
    w.digits[m - 1 - i] = uint8_t(chosen);
    if (side == Side::right)
      after_p = (chosen == base.p);
    else
      upper_ok = (chosen < base.q);
  }
  return w;
}

inline DigitWord unrank_word(const BaseSpec& base, int64_t rank, int m, Side side) {
  return unrank_word(base, rank, m, side, g_counts(base, m));
}

// Smallest width whose word count exceeds rank. The two-term recurrence for
// the counts only holds from width 2 on, so the first two are spelled out.
inline int min_width(const BaseSpec& base, int64_t rank) {
  if (rank < 0) throw std::domain_error("negative rank");
  if (rank < 1) return 0;
  int m = 1;
  int64_t prev = 1, cur = base.p + 1;
  while (cur <= rank) {
    int64_t next =
        detail::add_ck(detail::mul_ck(base.p, cur), detail::mul_ck(base.q, prev));
    prev = cur;
    cur = next;
    ++m;
  }
  return m;
}

// Plain radix-(p+1) digits of n, least significant first.
inline DigitWord encode(const BaseSpec& base, int64_t n) {
  if (n < 0) throw std::domain_error("negative value");
  DigitWord w;
  w.role = Role::integer;
  while (n > 0) {
    w.digits.push_back(uint8_t(n % base.radix()));
    n /= base.radix();
  }
  return w;
}

inline int64_t nat_value(const BaseSpec& base, const DigitWord& w) {
  if (w.role != Role::integer) throw std::domain_error("needs an integer word");
  int64_t v = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w.digits[i] == 0) continue;
    int64_t pw = 1;
    for (size_t k = 0; k < i; ++k) pw = detail::mul_ck(pw, base.radix());
    v = detail::add_ck(v, detail::mul_ck(w.digits[i], pw));
  }
  return v;
}

// Real value of the word with digit j weighting gamma^j resp. gamma^-(j+1).
// Horner evaluation; relative error stays within a few ulp per digit.
inline double value(const BaseSpec& base, const DigitWord& w) {
  double v = 0.0;
  if (w.role == Role::integer) {
    for (size_t i = 0; i < w.size(); ++i) v = v * base.gamma + digit_msd(w, i);
  } else {
    for (size_t i = w.size(); i-- > 0;) v = (v + w.digits[i]) / base.gamma;
  }
  return v;
}

// Value order for words of one role. Admissible words compare like their real
// values; the shorter word is padded with zeros.
inline std::strong_ordering compare(const BaseSpec& base, const DigitWord& x,
                                    const DigitWord& y) {
  if (x.role != y.role) throw std::domain_error("role mismatch");
  size_t n = std::max(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    size_t ix = x.role == Role::integer ? n - 1 - i : i;
    int dx = ix < x.size() ? (x.role == Role::integer ? x.digits[ix] : x.digits[i]) : 0;
    size_t iy = y.role == Role::integer ? n - 1 - i : i;
    int dy = iy < y.size() ? (y.role == Role::integer ? y.digits[iy] : y.digits[i]) : 0;
    if (dx > base.p || dy > base.p) throw std::domain_error("digit exceeds p");
    if (dx != dy) return dx <=> dy;
  }
  return std::strong_ordering::equal;
}

// Multiply by gamma^k. Digits that would cross the radix point must be zero.
inline DigitWord shift(const DigitWord& w, int k) {
  DigitWord r = w;
  int toward_point = w.role == Role::integer ? -k : k;
  if (toward_point <= 0) {
    r.digits.insert(r.digits.begin(), -toward_point, 0);
  } else {
    size_t drop = std::min(size_t(toward_point), r.digits.size());
    for (size_t i = 0; i < drop; ++i)
      if (r.digits[i] != 0) throw std::domain_error("shift drops a nonzero digit");
    r.digits.erase(r.digits.begin(), r.digits.begin() + drop);
  }
  return r;
}

struct Gap {
  int64_t coeff;
  int exponent;
};

// Distance from an admissible integer word to the next admissible value, as
// coeff * gamma^exponent. Also the gap to gamma^m past the widest m-digit word.
inline Gap succ_gap(const BaseSpec& base, const DigitWord& w) {
  if (w.role != Role::integer) throw std::domain_error("gap needs an integer word");
  int last = w.digits.empty() ? 0 : w.digits[0];
  if (last < base.p) return {1, 0};
  return {base.q, -1};
}

inline double gap_value(const BaseSpec& base, const Gap& g) {
  return double(g.coeff) * std::pow(base.gamma, g.exponent);
}

// Greedy digit expansion of v in [0,1). The small bump snaps values sitting a
// hair under a digit boundary; callers validate the reconstruction error.
inline DigitWord greedy_expand(const BaseSpec& base, double v, int max_digits) {
  if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("expansion needs [0,1)");
  DigitWord w;
  w.role = Role::fractional;
  double r = v;
  for (int i = 0; i < max_digits; ++i) {
    r *= base.gamma;
    int d = int(std::floor(r + 1e-13));
    d = std::clamp(d, 0, base.p);
    w.digits.push_back(uint8_t(d));
    r -= d;
    if (r < 1e-13) break;
  }
  while (!w.digits.empty() && w.digits.back() == 0) w.digits.pop_back();
  return w;
}

// Point counts demanded of an interval of size |I| in an m-digit set are
// g[m - |I|]; the recurrence extends below zero only as far as listed here.
inline int64_t required_count(const BaseSpec& base, const GCounts& c, int n) {
  if (n >= 0) {
    if (n >= int(c.g.size())) throw std::domain_error("counts table too short");
    return c.g[n];
  }
  if (base.is_phi() && n == -3) return 1;
  if (base.q == 1) {
    if (n == -1) return 1;
    if (n == -2) return 0;
  }
  throw std::domain_error("partition too fine for point counts");
}

// Rank of the level-k cell containing every point whose expansion starts with
// the first k digits of x. Finite admissible expansions never reach the cell's
// right endpoint, so membership is a pure prefix test.
inline int64_t prefix_cell_rank(const BaseSpec& base, const DigitWord& x, int k,
                                const GCounts& c) {
  if (x.role != Role::fractional) throw std::domain_error("needs a fractional word");
  DigitWord pre;
  pre.role = Role::integer;
  pre.digits.assign(k, 0);
  for (int i = 0; i < k && i < int(x.size()); ++i) pre.digits[k - 1 - i] = x.digits[i];
  return rank_word(base, pre, Side::right, c);
}

inline std::vector<DigitWord> enumerate_words(const BaseSpec& base, int m, Side side) {
  GCounts c = g_counts(base, m);
  std::vector<DigitWord> out;
  out.reserve(size_t(c.g[m]));
  for (int64_t r = 0; r < c.g[m]; ++r) out.push_back(unrank_word(base, r, m, side, c));
  return out;
}

}  // namespace irrnet
