// Command-line front end: generate | verify | disc | table.
//
// Exit codes: 0 success / verified, 1 property failure (t_min above the
// requested t), 2 usage or configuration error, 3 malformed or unusable input.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "irrnet/discrepancy.hpp"
#include "irrnet/equidist.hpp"
#include "irrnet/generators.hpp"

namespace {

using irrnet::BaseSpec;
using irrnet::DiscResult;
using irrnet::PointSet;

// CSV output stays tractable; the library itself has no such cap.
constexpr int64_t max_generate_points = 5'000'000;
constexpr int64_t max_table_n = 100'000;

struct Options {
  std::string base_text;
  std::string construction;
  std::string in_path;
  std::string out_path;
  std::string format;
  std::string metric = "star";
  int m = -1;
  int64_t count = -1;
  int t = 0;
  double seed_x = 0.0;
  double seed_y = 0.0;
  bool strict_rho = false;
  bool no_normalize = false;
  int64_t max_n = 10'000;
};

BaseSpec parse_base(const std::string& text) {
  if (text.empty() || text == "phi") return BaseSpec::phi();
  int p = 0, q = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d,%d%c", &p, &q, &tail) != 2)
    throw std::domain_error("--base expects 'phi' or 'p,q'");
  if (p > 9) throw std::domain_error("base requires p <= 9");
  return BaseSpec::make(p, q);
}

void require_format(const Options& o, const char* wanted) {
  if (!o.format.empty() && o.format != wanted)
    throw std::domain_error(std::string("this command only writes ") + wanted);
}

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw irrnet::InputError("cannot open output file: " + out_path);
  out << payload;
}

PointSet build_set(const Options& o) {
  if (o.construction == "vdc") {
    if (o.count < 1) throw std::domain_error("vdc needs --count >= 1");
    if (o.count > max_generate_points) throw std::domain_error("--count too large");
    return irrnet::vdc_prefix(parse_base(o.base_text), o.count);
  }
  if (o.construction == "hammersley") {
    if (o.m < 0) throw std::domain_error("hammersley needs --m >= 0");
    BaseSpec base = parse_base(o.base_text);
    irrnet::GCounts counts = irrnet::g_counts(base, o.m);
    if (counts.g[size_t(o.m)] > max_generate_points)
      throw std::domain_error("--m too large for point output");
    return irrnet::hammersley(base, o.m);
  }
  if (o.construction == "weak12") {
    if (!parse_base(o.base_text).is_phi())
      throw std::domain_error("weak12 is defined for --base phi only");
    if (o.m < 0) throw std::domain_error("weak12 needs --m >= 0");
    if (irrnet::fib(o.m) > max_generate_points)
      throw std::domain_error("--m too large for point output");
    return irrnet::weak12(o.m, o.seed_x, o.seed_y);
  }
  if (o.construction == "dyadic") {
    if (!o.base_text.empty())
      throw std::domain_error("--base does not apply to dyadic");
    if (o.m < 0 || o.m > 22) throw std::domain_error("dyadic needs 0 <= m <= 22");
    return irrnet::hammersley_dyadic(o.m);
  }
  throw std::domain_error("pick a --construction");
}

PointSet load_or_build(const Options& o, bool allow_dyadic) {
  if (!o.in_path.empty()) {
    std::ifstream in(o.in_path);
    if (!in) throw irrnet::InputError("cannot open input file: " + o.in_path);
    PointSet ps = irrnet::read_csv(in);
    if (ps.dyadic) {
      if (!allow_dyadic)
        throw irrnet::InputError("dyadic point sets cannot be verified here");
      return ps;
    }
    if (!ps.has_words()) {
      std::cerr << "note: no digit columns; reconstructing words from floats\n";
      irrnet::ensure_words(ps);
    }
    irrnet::GCounts counts = irrnet::g_counts(ps.base, ps.m);
    if (int64_t(ps.size()) != counts.g[size_t(ps.m)])
      throw irrnet::InputError("point count disagrees with header m");
    return ps;
  }
  PointSet ps = build_set(o);
  if (ps.dyadic && !allow_dyadic)
    throw std::domain_error("dyadic point sets cannot be verified");
  return ps;
}

int run_generate(const Options& o) {
  require_format(o, "csv");
  PointSet ps = build_set(o);
  std::ostringstream body;
  irrnet::write_csv(ps, body);
  emit(o.out_path, body.str());
  return 0;
}

int run_verify(const Options& o) {
  require_format(o, "json");
  PointSet ps = load_or_build(o, /*allow_dyadic=*/false);
  irrnet::NetReport rep = irrnet::net_t(ps, o.strict_rho);

  nlohmann::json j;
  j["m"] = rep.m;
  j["s"] = rep.s;
  j["t_min"] = rep.t_min;
  j["checks"] = nlohmann::json::array();
  for (const irrnet::EquidReport& chk : rep.checks) {
    nlohmann::json c;
    c["kvec"] = chk.kvec;
    c["passed"] = chk.passed;
    c["failures"] = nlohmann::json::array();
    for (const irrnet::CellFailure& f : chk.failures)
      c["failures"].push_back({{"interval", f.interval},
                               {"expected", f.expected},
                               {"actual", f.actual}});
    j["checks"].push_back(std::move(c));
  }
  emit(o.out_path, j.dump(2) + "\n");
  return rep.t_min <= o.t ? 0 : 1;
}

int run_disc(const Options& o) {
  require_format(o, "csv");
  PointSet ps = load_or_build(o, /*allow_dyadic=*/true);
  DiscResult r;
  if (o.metric == "star") {
    if (ps.s == 1) {
      std::vector<double> xs;
      xs.reserve(ps.size());
      for (const auto& row : ps.coords) xs.push_back(row[0]);
      r = irrnet::star_1d(std::move(xs));
    } else {
      r = irrnet::star_2d(ps);
    }
  } else {
    r = irrnet::l2(ps);
  }
  if (o.no_normalize) r.normalized = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream body;
  irrnet::disc_to_csv(r, body);
  emit(o.out_path, body.str());
  return 0;
}

int run_table(const Options& o) {
  require_format(o, "csv");
  BaseSpec base = parse_base(o.base_text);
  if (o.max_n < 2 || o.max_n > max_table_n)
    throw std::domain_error("--max-n must lie in [2, 100000]");
  std::ostringstream body;
  body << "N,normalized_star\n";
  for (int m = 1;; ++m) {
    irrnet::GCounts counts = irrnet::g_counts(base, m);
    int64_t n = counts.g[size_t(m)];
    if (n > o.max_n) break;
    DiscResult r = irrnet::star_2d(irrnet::hammersley(base, m));
    char row[64];
    std::snprintf(row, sizeof row, "%lld,%.6f", static_cast<long long>(n),
                  r.normalized);
    body << row;
    if (r.lower_bound) body << ",lower-bound";
    body << "\n";
  }
  emit(o.out_path, body.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point sets and sequences in quadratic irrational bases"};
  app.require_subcommand(1);
  Options o;

  auto add_construction_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--base", o.base_text, "'phi' or 'p,q' with 1 <= q <= p <= 9");
    cmd->add_option("--construction", o.construction)
        ->check(CLI::IsMember({"vdc", "hammersley", "weak12", "dyadic"}));
    cmd->add_option("--m", o.m, "digit depth");
    cmd->add_option("--count", o.count, "number of sequence terms (vdc)");
    cmd->add_option("--seed-x", o.seed_x, "weak12 seed coordinate");
    cmd->add_option("--seed-y", o.seed_y, "weak12 seed coordinate");
  };
  auto add_io_flags = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out_path, "write here instead of stdout");
  };

  CLI::App* gen = app.add_subcommand("generate", "write a point-set CSV");
  add_construction_flags(gen);
  add_io_flags(gen);
  gen->get_option("--construction")->required();

  CLI::App* ver = app.add_subcommand("verify", "equidistribution report as JSON");
  add_construction_flags(ver);
  add_io_flags(ver);
  ver->add_option("--in", o.in_path, "point-set CSV to verify");
  ver->add_option("--t", o.t, "largest acceptable quality parameter")
      ->check(CLI::NonNegativeNumber);
  ver->add_flag("--strict-rho", o.strict_rho, "tighter cell-count budget");

  CLI::App* dsc = app.add_subcommand("disc", "discrepancy of a point set");
  add_construction_flags(dsc);
  add_io_flags(dsc);
  dsc->add_option("--in", o.in_path, "point-set CSV to measure");
  dsc->add_option("--metric", o.metric)->check(CLI::IsMember({"star", "l2"}));
  dsc->add_flag("--no-normalize", o.no_normalize, "leave the normalized field empty");

  CLI::App* tab = app.add_subcommand("table", "normalized star discrepancy by m");
  tab->add_option("--base", o.base_text)->required();
  tab->add_option("--max-n", o.max_n, "stop once G_m exceeds this");
  add_io_flags(tab);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_generate(o);
    if (ver->parsed()) return run_verify(o);
    if (dsc->parsed()) return run_disc(o);
    return run_table(o);
  } catch (const irrnet::InputError& e) {
    std::cerr << "irrnet: input error: " << e.what() << "\n";
    return 3;
  } catch (const irrnet::ExtendError& e) {
    std::cerr << "irrnet: input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "irrnet: " << e.what() << "\n";
    return 2;
  }
}
