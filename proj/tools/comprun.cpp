// comprun: command-line front end emitting CSV/JSON records for every
// computation in the library.

#include <comprun/asymptotics.hpp>
#include <comprun/oracle.hpp>
#include <comprun/record.hpp>
#include <comprun/series.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

using comprun::Error;
using comprun::ErrorCode;
using comprun::Float50;
using comprun::OutputRecord;

constexpr std::size_t kDefaultSeriesCap = 4096;

struct Common {
  std::string format = "csv";
  std::string output;
  std::size_t digits = 30;
  bool timestamp = false;
};

std::size_t env_size(const char* name, std::size_t fallback) {
  if (const char* v = std::getenv(name)) {
    try {
      return static_cast<std::size_t>(std::stoull(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::invalid_argument, std::string("environment variable ") + name + " is not an integer");
    }
  }
  return fallback;
}

std::size_t series_cap() { return env_size("COMPRUN_SERIES_CAP", kDefaultSeriesCap); }
std::size_t enumeration_cap() { return env_size("COMPRUN_ENUM_CAP", comprun::kDefaultEnumerationCap); }

void check_series_cap(std::size_t n) {
  const std::size_t cap = series_cap();
  comprun::require(n <= cap, ErrorCode::cap_exceeded,
                   "n = " + std::to_string(n) + " exceeds the series cap " + std::to_string(cap) +
                       " (set COMPRUN_SERIES_CAP to raise it)");
}

// "a..b" or "a"
std::pair<long long, long long> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const long long v = std::stoll(text);
      return {v, v};
    }
    const long long a = std::stoll(text.substr(0, dots));
    const long long b = std::stoll(text.substr(dots + 2));
    comprun::require(a <= b, ErrorCode::invalid_argument, "empty range " + text);
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_argument, "cannot parse range '" + text + "' (expected a or a..b)");
  }
}

// "from:to:step"
std::vector<std::size_t> parse_sweep(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  comprun::require(c1 != std::string::npos && c2 != std::string::npos, ErrorCode::invalid_argument,
                   "sweep must look like from:to:step, got '" + text + "'");
  std::size_t from = 0, to = 0, step = 0;
  try {
    from = std::stoull(text.substr(0, c1));
    to = std::stoull(text.substr(c1 + 1, c2 - c1 - 1));
    step = std::stoull(text.substr(c2 + 1));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_argument, "cannot parse sweep '" + text + "'");
  }
  comprun::require(step > 0 && from >= 1 && from <= to, ErrorCode::invalid_argument, "invalid sweep " + text);
  std::vector<std::size_t> ns;
  for (std::size_t n = from; n <= to; n += step) ns.push_back(n);
  return ns;
}

std::string fmt(const Float50& x, std::size_t digits) { return comprun::format_real(x, static_cast<int>(digits)); }
std::string fmt(double x) { return comprun::format_real(x, 17); }

OutputRecord make_record(const std::string& command, const Common& common) {
  OutputRecord r;
  r.command = command;
  r.meta["version"] = COMPRUN_VERSION;
  r.meta["working_precision"] = std::to_string(comprun::digits10_of<Float50>()) + " digits";
  r.meta["output_digits"] = std::to_string(common.digits);
  if (common.timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    r.meta["timestamp"] = buf;
  } else if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    r.meta["timestamp"] = epoch;
  } else {
    r.meta["timestamp"] = "none";
  }
  return r;
}

void write(const OutputRecord& r, const Common& common) {
  const auto format = common.format == "json" ? comprun::OutputFormat::json : comprun::OutputFormat::csv;
  const std::string text = comprun::emit(r, format);
  if (common.output.empty() || common.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output, std::ios::binary);
  comprun::require(static_cast<bool>(out), ErrorCode::invalid_argument, "cannot open " + common.output);
  out << text;
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", common.output, "Output file (default stdout)");
  cmd->add_option("--digits", common.digits, "Digits in decimal renderings")
      ->envname("COMPRUN_PRECISION")
      ->check(CLI::Range(10, 200));
  cmd->add_flag("--timestamp", common.timestamp, "Stamp meta.timestamp with the current UTC time");
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
  std::size_t n = 0;
  std::size_t k_max = 0;
  std::string sweep;
  bool oracle = false;
};

OutputRecord run_exact(const ExactArgs& a, const Common& common) {
  const std::vector<std::size_t> ns = a.sweep.empty() ? std::vector<std::size_t>{a.n} : parse_sweep(a.sweep);
  OutputRecord r = make_record("exact", common);
  r.params["n"] = std::to_string(a.n);
  if (!a.sweep.empty()) r.params["sweep"] = a.sweep;
  if (a.k_max) r.params["k_max"] = std::to_string(a.k_max);
  r.params["oracle"] = a.oracle ? "true" : "false";
  r.columns = {"n", "k", "count", "pmf", "cdf", "pmf_exact", "cdf_exact"};
  if (a.oracle) r.columns.push_back("brute_count");

  for (std::size_t n : ns) {
    comprun::require(n >= 1, ErrorCode::invalid_argument, "n must be >= 1");
    check_series_cap(n);
    std::map<std::size_t, std::uint64_t> brute;
    if (a.oracle) brute = comprun::brute_distribution(n, enumeration_cap());
    const auto table = comprun::count_table(n, a.k_max);
    const auto dist = comprun::exact_distribution(table);
    for (std::size_t k = 1; k <= n; ++k) {
      const comprun::Rational& p = dist.pmf[k];
      const comprun::Rational cdf = dist.below(k + 1);
      std::vector<std::string> row = {std::to_string(n),
                                      std::to_string(k),
                                      table.with_longest_run(k).str(),
                                      comprun::to_short_decimal(p, common.digits),
                                      comprun::to_short_decimal(cdf, common.digits),
                                      comprun::rational_string(p),
                                      comprun::rational_string(cdf)};
      if (a.oracle) {
        const auto it = brute.find(k);
        row.push_back(std::to_string(it == brute.end() ? 0 : it->second));
      }
      r.add_row(std::move(row));
    }
  }
  return r;
}

// ---------------------------------------------------------------- rho

struct RhoArgs {
  std::string k = "2..10";
  std::string tol = "1e-40";
};

Float50 parse_float(const std::string& text, const char* what) {
  try {
    return Float50(text);
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, std::string("cannot parse ") + what + " '" + text + "'");
  }
}

OutputRecord run_rho(const RhoArgs& a, const Common& common) {
  const auto [k_lo, k_hi] = parse_range(a.k);
  comprun::require(k_lo >= 2, ErrorCode::invalid_argument,
                   "k = " + std::to_string(k_lo) + " is degenerate: the pole solver needs k >= 2");
  const Float50 tol = parse_float(a.tol, "tolerance");
  OutputRecord r = make_record("rho", common);
  r.params["k"] = a.k;
  r.params["tol"] = a.tol;
  r.columns = {"k", "rho", "first_order", "first_iterate", "residual", "bracket_lo", "bracket_hi",
               "isolation_proven"};
  for (long long k = k_lo; k <= k_hi; ++k) {
    const auto p = comprun::solve_rho<Float50>(static_cast<unsigned>(k), tol);
    r.add_row({std::to_string(k), fmt(p.rho, common.digits), fmt(p.first_order, common.digits),
               fmt(p.first_iterate, common.digits), fmt(p.residual, 6), fmt(p.bracket_lo, common.digits),
               fmt(p.bracket_hi, common.digits), p.isolation_proven ? "true" : "false"});
  }
  return r;
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
  std::size_t n = 0;
  std::size_t k_max = 0;
};

OutputRecord run_compare(const CompareArgs& a, const Common& common) {
  comprun::require(a.n >= 2, ErrorCode::invalid_argument, "compare needs n >= 2");
  check_series_cap(a.n);
  const double lgn = std::log2(static_cast<double>(a.n));
  const std::size_t default_k_max =
      std::min<std::size_t>(a.n + 1, static_cast<std::size_t>(std::ceil(2 * lgn)) + 8);
  const std::size_t k_max = a.k_max ? a.k_max : default_k_max;

  OutputRecord r = make_record("compare", common);
  r.params["n"] = std::to_string(a.n);
  r.params["k_max"] = std::to_string(k_max);
  r.columns = {"k", "exact", "double_exponential", "residue_based", "abs_err", "residue_abs_err", "region"};
  const comprun::BigInt total = comprun::pow2(a.n - 1);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const comprun::Rational exact(comprun::count_below(a.n, static_cast<unsigned>(k)), total);
    const Float50 exact_f = comprun::to_real<Float50>(exact);
    const auto law = comprun::law_probability<Float50>(a.n, static_cast<long>(k));
    std::string residue = "NA";
    std::string residue_err = "NA";
    if (k >= 2) {
      const auto pole = comprun::solve_rho<Float50>(static_cast<unsigned>(k));
      const Float50 value = comprun::residue_count(a.n, pole).count / Float50(total);
      residue = fmt(value, common.digits);
      residue_err = fmt(Float50(abs(value - exact_f)), 6);
    }
    r.add_row({std::to_string(k), comprun::to_short_decimal(exact, common.digits),
               fmt(law.probability, common.digits), residue, fmt(Float50(abs(exact_f - law.probability)), 6),
               residue_err, std::string(comprun::to_string(law.region))});
  }
  return r;
}

// ---------------------------------------------------------------- moments

struct MomentsArgs {
  std::vector<std::size_t> n;
  std::size_t terms = 16;
  bool constant_parts = false;
  std::string from = "10";
  std::string to = "12";
  std::string step = "0.01";
};

OutputRecord run_moments(const MomentsArgs& a, const Common& common) {
  OutputRecord r = make_record("moments", common);
  r.params["terms"] = std::to_string(a.terms);
  const comprun::FluctuationSeries<Float50> series(a.terms);
  const Float50 c = comprun::MomentConstants<Float50>::gamma_over_log2();

  if (a.constant_parts) {
    r.params["constant_parts"] = "true";
    r.params["from"] = a.from;
    r.params["to"] = a.to;
    r.params["step"] = a.step;
    const Float50 from = parse_float(a.from, "--from");
    const Float50 to = parse_float(a.to, "--to");
    const Float50 step = parse_float(a.step, "--step");
    comprun::require(step > 0 && from > 2 && from <= to, ErrorCode::invalid_argument,
                     "--constant-parts needs 2 < from <= to and step > 0");
    r.columns = {"lg_x", "mean_part", "var_part", "mean_fluctuation", "var_fluctuation", "P", "var_fourier"};
    const Float50 mean_c = comprun::MomentConstants<Float50>::mean_offset();
    const Float50 var_c = comprun::MomentConstants<Float50>::variance_constant();
    const auto count = static_cast<std::size_t>(floor((to - from) / step + Float50(1) / 1000000)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const Float50 u = from + Float50(i) * step;
      const auto parts = comprun::constant_parts(Float50(pow(Float50(2), u)));
      const Float50 p = series.P(u).value;
      const Float50 var_fourier = series.Q(u).value - 2 * c * p - p * p;
      r.add_row({fmt(u, 15), fmt(parts.mean, common.digits), fmt(parts.variance, common.digits),
                 fmt(Float50(parts.mean - mean_c), common.digits), fmt(Float50(parts.variance - var_c), common.digits),
                 fmt(p, common.digits), fmt(var_fourier, common.digits)});
    }
    return r;
  }

  comprun::require(!a.n.empty(), ErrorCode::invalid_argument, "moments needs --n or --constant-parts");
  std::string list;
  for (std::size_t n : a.n) list += (list.empty() ? "" : ",") + std::to_string(n);
  r.params["n"] = list;
  r.columns = {"n", "exact_mean", "phi_mean", "mean_asym", "exact_var", "var_asym", "P", "Q"};
  for (std::size_t n : a.n) {
    comprun::require(n >= 2, ErrorCode::invalid_argument, "moments needs n >= 2");
    check_series_cap(n);
    const auto exact = comprun::exact_moments(n, common.digits);
    const auto m = comprun::moment_report<Float50>(n, series);
    r.add_row({std::to_string(n), comprun::trim_decimal(exact.mean_decimal), fmt(m.phi_mean, common.digits),
               fmt(m.mean_asym, common.digits), comprun::trim_decimal(exact.variance_decimal),
               fmt(m.var_asym, common.digits), fmt(m.fluctuation_P, common.digits),
               fmt(m.fluctuation_Q, common.digits)});
  }
  return r;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::size_t n = 0;
  std::size_t trials = 200;
  std::string seed = "1";
  std::size_t r_max = 0;
  std::size_t workers = 1;
  bool single = false;
};

OutputRecord run_simulate(const SimulateArgs& a, const Common& common) {
  comprun::require(a.n >= 2, ErrorCode::invalid_argument, "simulate needs n >= 2");
  const auto [seed_lo, seed_hi] = parse_range(a.seed);
  comprun::require(seed_lo >= 0, ErrorCode::invalid_argument, "seeds must be nonnegative");
  const std::size_t r_max = a.r_max ? a.r_max : comprun::default_r_max(a.n);
  OutputRecord r = make_record("simulate", common);
  r.params["n"] = std::to_string(a.n);
  r.params["seed"] = a.seed;
  r.params["r_max"] = std::to_string(r_max);
  r.params["mode"] = a.single ? "single" : "aggregate";

  if (a.single) {
    r.columns = {"seed", "statistic", "r", "value"};
    for (long long s = seed_lo; s <= seed_hi; ++s) {
      const auto seed = static_cast<std::uint64_t>(s);
      const auto profile = comprun::single_profile(a.n, seed, r_max);
      const std::string ss = std::to_string(seed);
      for (std::size_t rv = 1; rv <= r_max; ++rv) {
        r.add_row({ss, "longest_run_of", std::to_string(rv), std::to_string(profile.per_value[rv - 1])});
      }
      r.add_row({ss, "longest_run", "", std::to_string(profile.longest)});
      r.add_row({ss, "largest_part", "", std::to_string(profile.largest_part)});
    }
    return r;
  }

  r.params["trials"] = std::to_string(a.trials);
  r.columns = {"seed", "statistic", "r", "mean", "variance", "prediction"};
  for (long long s = seed_lo; s <= seed_hi; ++s) {
    const auto seed = static_cast<std::uint64_t>(s);
    const auto rep = comprun::simulate(a.n, a.trials, seed, r_max, a.workers);
    const std::string ss = std::to_string(seed);
    const double lgn = std::log2(static_cast<double>(a.n));
    r.add_row({ss, "longest_run", "", fmt(rep.longest_run_mean), fmt(rep.longest_run_variance), "NA"});
    for (std::size_t rv = 1; rv <= r_max; ++rv) {
      r.add_row({ss, "longest_run_of", std::to_string(rv), fmt(rep.run_mean(rv)),
                 fmt(rep.per_value_variance[rv - 1]), fmt(lgn / static_cast<double>(rv))});
    }
    r.add_row({ss, "largest_part", "", fmt(rep.largest_part_mean), "NA", fmt(lgn)});
  }
  return r;
}

// ---------------------------------------------------------------- rouche

struct RoucheArgs {
  unsigned k = 4;
  std::size_t samples = 4096;
};

OutputRecord run_rouche(const RoucheArgs& a, const Common& common) {
  const auto w = comprun::rouche_witness<Float50>(a.k, a.samples);
  OutputRecord r = make_record("rouche", common);
  r.params["k"] = std::to_string(a.k);
  r.params["samples"] = std::to_string(a.samples);
  r.columns = {"k", "samples", "max_g_sampled", "tail_bound", "analytic_g_bound", "min_f_sampled",
               "analytic_f_bound", "verdict"};
  r.add_row({std::to_string(a.k), std::to_string(a.samples), fmt(w.max_g, common.digits), fmt(w.tail_bound, 6),
             fmt(w.analytic_g_bound, common.digits), fmt(w.min_f, common.digits),
             fmt(w.analytic_f_bound, common.digits), w.verdict ? "true" : "false"});
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Longest runs of equal parts in random integer compositions"};
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags (flags win)");
  app.set_version_flag("--version", std::string(COMPRUN_VERSION));
  app.require_subcommand(1);

  Common common;
  std::function<OutputRecord()> action;

  ExactArgs exact;
  auto* exact_cmd = app.add_subcommand("exact", "Exact distribution of the longest run");
  exact_cmd->add_option("--n", exact.n, "Composition size");
  exact_cmd->add_option("--k-max", exact.k_max, "Largest run bound tracked (>= n+1)");
  exact_cmd->add_option("--sweep", exact.sweep, "Sizes from:to:step (replaces --n)");
  exact_cmd->add_flag("--oracle", exact.oracle, "Add a brute-force count column (small n only)");
  add_common(exact_cmd, common);
  exact_cmd->callback([&] {
    if (exact.sweep.empty() && exact.n == 0) throw CLI::ValidationError("--n", "exact needs --n or --sweep");
    action = [&] { return run_exact(exact, common); };
  });

  RhoArgs rho;
  auto* rho_cmd = app.add_subcommand("rho", "Dominant pole rho_k of the run-bounded generating function");
  rho_cmd->add_option("--k", rho.k, "Run bound or range a..b");
  rho_cmd->add_option("--tol", rho.tol, "Residual tolerance");
  add_common(rho_cmd, common);
  rho_cmd->callback([&] { action = [&] { return run_rho(rho, common); }; });

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Exact vs double-exponential vs residue P(L < k)");
  compare_cmd->add_option("--n", compare.n, "Composition size")->required();
  compare_cmd->add_option("--k-max", compare.k_max, "Largest k row");
  add_common(compare_cmd, common);
  compare_cmd->callback([&] { action = [&] { return run_compare(compare, common); }; });

  MomentsArgs moments;
  auto* moments_cmd = app.add_subcommand("moments", "Exact and asymptotic mean and variance");
  moments_cmd->add_option("--n", moments.n, "Composition sizes")->delimiter(',');
  moments_cmd->add_option("--terms", moments.terms, "Fourier truncation K");
  moments_cmd->add_flag("--constant-parts", moments.constant_parts, "Sweep lg x over the mean/variance constant parts");
  moments_cmd->add_option("--from", moments.from, "First lg x of the sweep");
  moments_cmd->add_option("--to", moments.to, "Last lg x of the sweep");
  moments_cmd->add_option("--step", moments.step, "Step in lg x");
  add_common(moments_cmd, common);
  moments_cmd->callback([&] { action = [&] { return run_moments(moments, common); }; });

  SimulateArgs simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo over uniform compositions");
  simulate_cmd->add_option("--n", simulate.n, "Composition size")->required();
  simulate_cmd->add_option("--trials", simulate.trials, "Samples per seed");
  simulate_cmd->add_option("--seed", simulate.seed, "Seed or range a..b");
  simulate_cmd->add_option("--r-max", simulate.r_max, "Largest part value tracked");
  simulate_cmd->add_option("--workers", simulate.workers, "Worker threads (results do not depend on it)");
  simulate_cmd->add_flag("--single", simulate.single, "Dump one composition per seed");
  add_common(simulate_cmd, common);
  simulate_cmd->callback([&] { action = [&] { return run_simulate(simulate, common); }; });

  RoucheArgs rouche;
  auto* rouche_cmd = app.add_subcommand("rouche", "Numeric |g| < |f| witness on |z| = 3/5");
  rouche_cmd->add_option("--k", rouche.k, "Run bound (>= 4)");
  rouche_cmd->add_option("--samples", rouche.samples, "Points on the circle");
  add_common(rouche_cmd, common);
  rouche_cmd->callback([&] { action = [&] { return run_rouche(rouche, common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << "\n";
    return 2;
  }

  try {
    write(action(), common);
  } catch (const Error& e) {
    std::cerr << "error[" << comprun::to_string(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
