#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivotal/allocation.hpp"
#include "pivotal/errors.hpp"
#include "pivotal/oracle.hpp"

namespace pivotal::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Csv, Json, Text };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_count(const std::string& text, std::string_view flag) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw UsageError(std::string(flag) + ": expected a nonnegative integer, got '" + text + "'");
  }
  return value;
}

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  if (text == "text") return Format::Text;
  throw UsageError("--format: expected csv, json or text, got '" + text + "'");
}

VotingScheme parse_scheme_flag(const std::string& text) {
  if (auto s = parse_scheme(text)) return *s;
  throw UsageError("--scheme: expected binary or ternary, got '" + text + "'");
}

Strategy parse_strategy_flag(const std::string& text) {
  if (auto s = parse_strategy(text)) return *s;
  throw UsageError("--strategy: expected auto, exact or asymptotic, got '" + text + "'");
}

int checked_precision(int precision) {
  if (precision < 1 || precision > 15) {
    throw UsageError("--precision must be between 1 and 15");
  }
  return precision;
}

// Scientific notation with `digits` significant digits.
std::string sci(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

// The value the text output shows, as a double; keeps JSON and CSV in step.
double rounded(double v, int digits) { return std::strtod(sci(v, digits).c_str(), nullptr); }

json optional_number(const std::optional<double>& v, int digits) {
  return v ? json(rounded(*v, digits)) : json(nullptr);
}

std::string optional_sci(const std::optional<double>& v, int digits) {
  return v ? sci(*v, digits) : std::string();
}

// `key` is "n" for single evaluations and "population" for figure rows.
void write_records(std::ostream& out, const std::vector<OutputRecord>& records, Format format,
                   int digits, std::string_view key) {
  const auto key_value = [&](const OutputRecord& r) {
    return key == "n" ? r.population - 1 : r.population;
  };
  switch (format) {
    case Format::Csv:
      out << key << ",scheme,method,power,approx,rel_dev\n";
      for (const auto& r : records) {
        out << key_value(r) << ',' << to_string(r.scheme) << ',' << to_string(r.method) << ','
            << sci(r.power, digits) << ',' << optional_sci(r.approx, digits) << ','
            << optional_sci(r.rel_dev, digits) << '\n';
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : records) {
        json obj;
        obj[std::string(key)] = key_value(r);
        obj["scheme"] = to_string(r.scheme);
        obj["method"] = to_string(r.method);
        obj["power"] = rounded(r.power, digits);
        obj["approx"] = optional_number(r.approx, digits);
        obj["rel_dev"] = optional_number(r.rel_dev, digits);
        if (r.exact) obj["exact"] = *r.exact;
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      const int w = digits + 7;
      out << std::left << std::setw(12) << key << std::setw(9) << "scheme" << std::setw(13)
          << "method" << std::setw(w) << "power" << std::setw(w) << "approx" << "rel_dev\n";
      for (const auto& r : records) {
        out << std::setw(12) << key_value(r) << std::setw(9) << to_string(r.scheme)
            << std::setw(13) << to_string(r.method) << std::setw(w) << sci(r.power, digits)
            << std::setw(w) << (r.approx ? sci(*r.approx, digits) : "-")
            << (r.rel_dev ? sci(*r.rel_dev, digits) : "-") << '\n';
        if (r.exact) out << "  exact value " << *r.exact << '\n';
      }
      out << std::right;
      break;
    }
  }
}

void write_gnuplot(std::ostream& out, const std::vector<OutputRecord>& records, int digits) {
  out << "# Ternary voting power against the square-root law\n"
         "set logscale xy\n"
         "set xlabel \"Population\"\n"
         "set ylabel \"Voting power\"\n"
         "set format x \"%.0f\"\n"
         "$data << EOD\n";
  for (const auto& r : records) {
    out << r.population << ' ' << sci(r.power, digits) << ' ' << optional_sci(r.approx, digits)
        << '\n';
  }
  out << "EOD\n"
         "plot $data using 1:2 with points pt 2 title \"voting power\", \\\n"
         "     $data using 1:3 with lines title \"square root law\"\n";
}

void write_allocation(std::ostream& out, const PopulationTable& table,
                      const WeightAllocation& alloc, Format format, int digits) {
  switch (format) {
    case Format::Csv:
      out << "name,population,weight\n";
      for (std::size_t i = 0; i < alloc.entries.size(); ++i) {
        out << alloc.entries[i].name << ',' << table.entries[i].population << ','
            << sci(alloc.entries[i].weight, digits) << '\n';
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (std::size_t i = 0; i < alloc.entries.size(); ++i) {
        arr.push_back({{"name", alloc.entries[i].name},
                       {"population", table.entries[i].population},
                       {"weight", rounded(alloc.entries[i].weight, digits)}});
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      std::size_t width = 4;
      for (const auto& e : alloc.entries) width = std::max(width, e.name.size());
      out << "basis: " << to_string(alloc.basis) << '\n';
      out << std::left << std::setw(static_cast<int>(width + 2)) << "name" << std::setw(14)
          << "population" << "weight\n";
      for (std::size_t i = 0; i < alloc.entries.size(); ++i) {
        out << std::setw(static_cast<int>(width + 2)) << alloc.entries[i].name << std::setw(14)
            << table.entries[i].population << sci(alloc.entries[i].weight, digits) << '\n';
      }
      out << std::right;
      break;
    }
  }
}

void write_report(std::ostream& out, const InvarianceReport& report, Format format, int digits) {
  switch (format) {
    case Format::Csv:
      out << "name,population,binary_power,ternary_power,power_ratio,sqrt_weight,binary_weight,"
             "ternary_weight\n";
      for (const auto& r : report.rows) {
        out << r.name << ',' << r.population << ',' << sci(r.binary.to_double(), digits) << ','
            << sci(r.ternary.to_double(), digits) << ',' << sci(r.power_ratio, digits) << ','
            << sci(r.sqrt_weight, digits) << ',' << sci(r.binary_weight, digits) << ','
            << sci(r.ternary_weight, digits) << '\n';
      }
      break;
    case Format::Json: {
      json rows = json::array();
      for (const auto& r : report.rows) {
        rows.push_back({{"name", r.name},
                        {"population", r.population},
                        {"binary_power", rounded(r.binary.to_double(), digits)},
                        {"binary_method", to_string(r.binary.method)},
                        {"ternary_power", rounded(r.ternary.to_double(), digits)},
                        {"ternary_method", to_string(r.ternary.method)},
                        {"power_ratio", rounded(r.power_ratio, digits)},
                        {"sqrt_weight", rounded(r.sqrt_weight, digits)},
                        {"binary_weight", rounded(r.binary_weight, digits)},
                        {"ternary_weight", rounded(r.ternary_weight, digits)}});
      }
      json doc = {{"rows", std::move(rows)},
                  {"max_dev_sqrt_binary", rounded(report.max_dev_sqrt_binary, digits)},
                  {"max_dev_sqrt_ternary", rounded(report.max_dev_sqrt_ternary, digits)},
                  {"max_dev_binary_ternary", rounded(report.max_dev_binary_ternary, digits)},
                  {"max_deviation", rounded(report.max_deviation, digits)}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Text: {
      std::size_t width = 4;
      for (const auto& r : report.rows) width = std::max(width, r.name.size());
      const int w = digits + 8;
      out << std::left << std::setw(static_cast<int>(width + 2)) << "name" << std::setw(12)
          << "population" << std::setw(w) << "P_binary" << std::setw(w) << "P_ternary"
          << std::setw(w) << "ratio" << std::setw(w) << "w_sqrt" << std::setw(w) << "w_binary"
          << "w_ternary\n";
      for (const auto& r : report.rows) {
        out << std::setw(static_cast<int>(width + 2)) << r.name << std::setw(12) << r.population
            << std::setw(w) << sci(r.binary.to_double(), digits) << std::setw(w)
            << sci(r.ternary.to_double(), digits) << std::setw(w) << sci(r.power_ratio, digits)
            << std::setw(w) << sci(r.sqrt_weight, digits) << std::setw(w)
            << sci(r.binary_weight, digits) << sci(r.ternary_weight, digits) << '\n';
      }
      out << std::right;
      out << "max deviation sqrt/binary     " << sci(report.max_dev_sqrt_binary, digits) << '\n'
          << "max deviation sqrt/ternary    " << sci(report.max_dev_sqrt_ternary, digits) << '\n'
          << "max deviation binary/ternary  " << sci(report.max_dev_binary_ternary, digits)
          << '\n';
      break;
    }
  }
}

Rational default_analytic(std::uint64_t n, VotingScheme scheme) {
  return power(n, scheme, Strategy::ForceExact).value.rational();
}

}  // namespace

OutputRecord make_record(const PowerResult& result) {
  OutputRecord r;
  r.population = result.n_others + 1;
  r.scheme = result.scheme;
  r.method = result.method;
  r.power = result.to_double();
  if (result.n_others > 0) {
    const double approx = result.scheme == VotingScheme::Binary
                              ? binary_power_asymptotic(result.n_others).to_double()
                              : ternary_power_asymptotic(result.n_others).to_double();
    r.approx = approx;
    r.rel_dev = std::abs(r.power / approx - 1.0);
  }
  if (result.value.is_exact()) {
    const Rational& q = result.value.rational();
    // Full fractions get unwieldy fast; only small ones are worth printing.
    if (q.numerator().decimal_digits() + q.denominator().decimal_digits() <= 40) {
      r.exact = q.to_string();
    }
  }
  return r;
}

std::vector<std::uint64_t> log_spaced_populations(std::uint64_t pop_min, std::uint64_t pop_max,
                                                  std::uint64_t points) {
  std::vector<std::uint64_t> out;
  out.reserve(points);
  const double lo = std::log(static_cast<double>(pop_min));
  const double hi = std::log(static_cast<double>(pop_max));
  for (std::uint64_t i = 0; i < points; ++i) {
    if (i == 0) {
      out.push_back(pop_min);
    } else if (i + 1 == points) {
      out.push_back(pop_max);
    } else {
      const double t = static_cast<double>(i) / static_cast<double>(points - 1);
      out.push_back(static_cast<std::uint64_t>(std::llround(std::exp(lo + t * (hi - lo)))));
    }
  }
  return out;
}

std::vector<OutputRecord> figure_records(const std::vector<std::uint64_t>& populations) {
  std::vector<std::uint64_t> others;
  others.reserve(populations.size());
  for (const auto p : populations) others.push_back(p - 1);
  const auto values = ternary_power_float_sweep(others);

  std::vector<OutputRecord> records;
  records.reserve(populations.size());
  for (std::size_t i = 0; i < populations.size(); ++i) {
    PowerResult result{others[i], VotingScheme::Ternary, Probability::real(values[i]),
                       Method::ExactFloat, std::nullopt};
    records.push_back(make_record(result));
  }
  return records;
}

int run_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  const auto analytic = options.analytic ? options.analytic : default_analytic;
  bool ok = true;

  const auto sweep = [&](VotingScheme scheme, std::uint64_t max_n) {
    std::optional<std::uint64_t> first_bad;
    for (std::uint64_t n = 0; n <= max_n; ++n) {
      const Rational enumerated = oracle::enumerate_pivot_probability(n, scheme);
      const Rational exact = analytic(n, scheme);
      const bool pass = enumerated == exact;
      out << (pass ? "PASS" : "FAIL") << " enumerate " << to_string(scheme) << " N=" << n << ' '
          << enumerated.to_string();
      if (!pass) out << " != analytic " << exact.to_string();
      out << '\n';
      if (!pass && !first_bad) first_bad = n;
    }
    if (first_bad) {
      err << "enumeration mismatch (" << to_string(scheme) << "): first divergent N=" << *first_bad
          << '\n';
      ok = false;
    }
  };
  sweep(VotingScheme::Binary, options.max_n_binary);
  sweep(VotingScheme::Ternary, options.max_n_ternary);

  if (options.mc_samples > 0) {
    for (const auto scheme : {VotingScheme::Binary, VotingScheme::Ternary}) {
      const auto est =
          oracle::monte_carlo_pivot(options.mc_n, scheme, options.mc_samples, options.seed);
      const double exact = analytic(options.mc_n, scheme).to_double();
      const double z = est.std_error > 0.0 ? std::abs(est.mean - exact) / est.std_error
                                           : (est.mean == exact ? 0.0 : INFINITY);
      const bool pass = z <= 4.0;
      out << (pass ? "PASS" : "FAIL") << " monte-carlo " << to_string(scheme)
          << " N=" << options.mc_n << " samples=" << est.samples << " seed=" << est.seed
          << " mean=" << sci(est.mean, 6) << " exact=" << sci(exact, 6) << " z=" << sci(z, 3)
          << '\n';
      if (!pass) {
        err << "monte carlo mismatch (" << to_string(scheme) << "): divergent N=" << options.mc_n
            << '\n';
        ok = false;
      }
    }
  }
  out << (ok ? "all checks passed" : "verification FAILED") << '\n';
  return ok ? kSuccess : kVerificationFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Voting power under yes/no and yes/no/abstain voting", "pivotal"};
  app.require_subcommand(1);

  std::string format_text = "csv";
  int precision = 6;
  std::optional<int> precision_flag;

  // power
  auto* power_cmd = app.add_subcommand("power", "Voting power of one citizen among N others");
  std::string n_text;
  std::string scheme_text = "ternary";
  std::string strategy_text = "auto";
  bool two_term = false;
  power_cmd->add_option("--n", n_text, "Number of other voters (N)")->required();
  power_cmd->add_option("--scheme", scheme_text, "binary | ternary")->capture_default_str();
  power_cmd->add_option("--strategy", strategy_text, "auto | exact | asymptotic")
      ->capture_default_str();
  power_cmd->add_flag("--two-term", two_term, "Use the two-term ternary asymptotic form");

  // figure
  auto* figure_cmd = app.add_subcommand("figure", "Exact ternary power vs. square-root law");
  std::string pop_min_text = "100000";
  std::string pop_max_text = "100000000";
  std::string points_text = "25";
  bool gnuplot = false;
  figure_cmd->add_option("--pop-min", pop_min_text, "Smallest population")->capture_default_str();
  figure_cmd->add_option("--pop-max", pop_max_text, "Largest population")->capture_default_str();
  figure_cmd->add_option("--points", points_text, "Number of log-spaced points")
      ->capture_default_str();
  figure_cmd->add_flag("--gnuplot", gnuplot, "Emit a gnuplot script with inline data");

  // allocate
  auto* allocate_cmd = app.add_subcommand("allocate", "Council weights from a population CSV");
  std::string csv_path;
  std::string basis_text = "sqrt";
  bool report = false;
  allocate_cmd->add_option("csv", csv_path, "CSV file with header name,population")->required();
  allocate_cmd->add_option("--basis", basis_text, "sqrt | binary | ternary")
      ->capture_default_str();
  allocate_cmd->add_option("--strategy", strategy_text, "auto | exact | asymptotic")
      ->capture_default_str();
  allocate_cmd->add_flag("--report", report, "Compare all three weightings");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check analytic results against the oracles");
  std::string max_b_text = "20";
  std::string max_t_text = "13";
  std::string samples_text = "100000";
  std::string seed_text = "1";
  std::string mc_n_text = "100";
  verify_cmd->add_option("--max-n-binary", max_b_text, "Largest binary N to enumerate")
      ->capture_default_str();
  verify_cmd->add_option("--max-n-ternary", max_t_text, "Largest ternary N to enumerate")
      ->capture_default_str();
  verify_cmd->add_option("--samples", samples_text, "Monte Carlo samples (0 skips)")
      ->capture_default_str();
  verify_cmd->add_option("--seed", seed_text, "Monte Carlo seed")->capture_default_str();
  verify_cmd->add_option("--mc-n", mc_n_text, "N for the Monte Carlo checks")
      ->capture_default_str();

  for (auto* cmd : {power_cmd, figure_cmd, allocate_cmd}) {
    cmd->add_option("--format", format_text, "csv | json | text")->capture_default_str();
    cmd->add_option_function<int>(
        "--precision", [&](int p) { precision_flag = p; }, "Significant digits (1-15)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (precision_flag) precision = checked_precision(*precision_flag);

    if (*power_cmd) {
      const std::uint64_t n = parse_count(n_text, "--n");
      const VotingScheme scheme = parse_scheme_flag(scheme_text);
      const Strategy strategy = parse_strategy_flag(strategy_text);
      const Format format = parse_format(format_text);
      PowerConfig config;
      if (two_term) config.ternary_form = AsymptoticForm::TwoTerm;
      const auto result = power(n, scheme, strategy, config);
      write_records(out, {make_record(result)}, format, precision, "n");
      return kSuccess;
    }

    if (*figure_cmd) {
      const std::uint64_t pop_min = parse_count(pop_min_text, "--pop-min");
      const std::uint64_t pop_max = parse_count(pop_max_text, "--pop-max");
      const std::uint64_t points = parse_count(points_text, "--points");
      const Format format = parse_format(format_text);
      if (pop_min < 2) throw UsageError("--pop-min must be at least 2");
      if (pop_max <= pop_min) throw UsageError("--pop-max must exceed --pop-min");
      if (points < 2) throw UsageError("--points must be at least 2");
      const auto records = figure_records(log_spaced_populations(pop_min, pop_max, points));
      if (gnuplot) {
        write_gnuplot(out, records, precision);
      } else {
        write_records(out, records, format, precision, "population");
      }
      return kSuccess;
    }

    if (*allocate_cmd) {
      const Format format = parse_format(format_text);
      const Strategy strategy = parse_strategy_flag(strategy_text);
      std::optional<VotingScheme> scheme;
      if (basis_text != "sqrt") scheme = parse_scheme_flag(basis_text);
      // Machine-readable weights default to 12 digits, text to 6.
      const int digits = precision_flag ? precision : (format == Format::Text ? 6 : 12);

      std::ifstream in(csv_path, std::ios::binary);
      if (!in) throw UsageError("cannot open '" + csv_path + "'");
      const PopulationTable table = load_population_table(in);

      if (report) {
        write_report(out, invariance_report(table, strategy), format, digits);
      } else {
        const auto alloc =
            scheme ? power_based_weights(table, *scheme, strategy) : sqrt_weights(table);
        write_allocation(out, table, alloc, format, digits);
      }
      return kSuccess;
    }

    if (*verify_cmd) {
      VerifyOptions options;
      options.max_n_binary = parse_count(max_b_text, "--max-n-binary");
      options.max_n_ternary = parse_count(max_t_text, "--max-n-ternary");
      options.mc_samples = parse_count(samples_text, "--samples");
      options.seed = parse_count(seed_text, "--seed");
      options.mc_n = parse_count(mc_n_text, "--mc-n");
      return run_verify(options, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const TableError& e) {
    err << "error: " << csv_path << ": " << e.what() << '\n';
    return kUsageError;
  } catch (const ResourceRefused& e) {
    err << "refused: " << e.what() << '\n';
    return kResourceRefused;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace pivotal::cli
