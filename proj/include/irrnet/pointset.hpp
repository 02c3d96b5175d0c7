#pragma once

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "irrnet/numeration.hpp"

namespace irrnet {

// Malformed or inconsistent external data. The CLI maps this to its own exit
// code, distinct from argument errors and failed property checks.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite s-dimensional point set. `m` is the digit parameter the set was
// built with (counts and partitions are judged against it). Word vectors are
// the exact digit expansions of the coordinates; they may be absent when only
// floats are known (and are never present for dyadic sets).
struct PointSet {
  BaseSpec base = BaseSpec::phi();
  bool dyadic = false;
  int s = 1;
  int m = 0;
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<DigitWord>> words;

  size_t size() const { return coords.size(); }
  bool has_words() const { return !words.empty(); }
};

// Recover digit words from floats. Coordinates of genuine base-gamma sets sit
// a few ulp from their exact values, so a short greedy expansion must land
// back on the input; anything further off is rejected.
inline void ensure_words(PointSet& ps) {
  if (ps.has_words()) return;
  if (ps.dyadic) throw std::domain_error("dyadic sets carry no digit expansions");
  ps.words.reserve(ps.size());
  for (size_t i = 0; i < ps.size(); ++i) {
    std::vector<DigitWord> row;
    for (int j = 0; j < ps.s; ++j) {
      DigitWord w = greedy_expand(ps.base, ps.coords[i][j], 48);
      if (std::abs(value(ps.base, w) - ps.coords[i][j]) > 1e-12) {
        ps.words.clear();
        throw InputError("coordinate is not a base-gamma value: " +
                         std::to_string(ps.coords[i][j]));
      }
      row.push_back(std::move(w));
    }
    ps.words.push_back(std::move(row));
  }
}

inline std::string digit_field(const DigitWord& w) {
  std::string s;
  for (size_t i = 0; i < w.size(); ++i) s += char('0' + digit_msd(w, i));
  return s;
}

inline void write_csv(const PointSet& ps, std::ostream& out) {
  char buf[64];
  if (ps.dyadic)
    out << "# base=dyadic;m=" << ps.m << ";s=" << ps.s << "\n";
  else
    out << "# base=" << ps.base.p << "," << ps.base.q << ";m=" << ps.m << ";s=" << ps.s
        << "\n";
  for (size_t i = 0; i < ps.size(); ++i) {
    for (int j = 0; j < ps.s; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", ps.coords[i][j]);
      out << (j ? "," : "") << buf;
    }
    if (ps.has_words())
      for (int j = 0; j < ps.s; ++j) out << "," << digit_field(ps.words[i][j]);
    out << "\n";
  }
}

namespace detail {
inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t c = line.find(',', pos);
    out.push_back(line.substr(pos, c == std::string::npos ? c : c - pos));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}
}  // namespace detail

inline PointSet read_csv(std::istream& in) {
  PointSet ps;
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty point file");
  int p = 0, q = 0;
  if (std::sscanf(line.c_str(), "# base=dyadic;m=%d;s=%d", &ps.m, &ps.s) == 2) {
    ps.dyadic = true;
  } else if (std::sscanf(line.c_str(), "# base=%d,%d;m=%d;s=%d", &p, &q, &ps.m, &ps.s) ==
             4) {
    try {
      ps.base = BaseSpec::make(p, q);
    } catch (const std::domain_error& e) {
      throw InputError(e.what());
    }
  } else {
    throw InputError("missing or malformed header line: " + line);
  }
  if (ps.s < 1 || ps.s > 16 || ps.m < 0) throw InputError("bad header dimensions");
  bool with_digits = false;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = detail::split_fields(line);
    if (first) {
      first = false;
      if (int(f.size()) == 2 * ps.s)
        with_digits = true;
      else if (int(f.size()) != ps.s)
        throw InputError("unexpected column count: " + line);
      if (with_digits && ps.dyadic) throw InputError("digit columns on a dyadic set");
    } else if (int(f.size()) != (with_digits ? 2 * ps.s : ps.s)) {
      throw InputError("ragged row: " + line);
    }
    std::vector<double> row;
    for (int j = 0; j < ps.s; ++j) {
      char* end = nullptr;
      double v = std::strtod(f[size_t(j)].c_str(), &end);
      if (end == f[size_t(j)].c_str() || *end != '\0')
        throw InputError("bad float field: " + f[size_t(j)]);
      if (!(v >= 0.0 && v < 1.0)) throw InputError("coordinate outside [0,1)");
      row.push_back(v);
    }
    if (with_digits) {
      std::vector<DigitWord> wrow;
      for (int j = 0; j < ps.s; ++j) {
        const std::string& field = f[size_t(ps.s + j)];
        DigitWord w;
        w.role = Role::fractional;
        for (char ch : field) {
          if (ch < '0' || ch > '9') throw InputError("bad digit field: " + field);
          w.digits.push_back(uint8_t(ch - '0'));
        }
        if (!is_admissible(ps.base, w, Side::right))
          throw InputError("inadmissible digit field: " + field);
        // digits are authoritative; floats just cross-check them
        double exact = value(ps.base, w);
        if (std::abs(exact - row[size_t(j)]) > 1e-9)
          throw InputError("digits disagree with float field: " + field);
        row[size_t(j)] = exact;
        wrow.push_back(std::move(w));
      }
      ps.words.push_back(std::move(wrow));
    }
    ps.coords.push_back(std::move(row));
  }
  if (ps.has_words() && ps.words.size() != ps.coords.size())
    throw InputError("digit columns missing on some rows");
  return ps;
}

}  // namespace irrnet
