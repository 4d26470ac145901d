#include "pivotal/allocation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iterator>
#include <set>
#include <sstream>

#include "pivotal/errors.hpp"

namespace pivotal {

TableError::TableError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\v\f";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::uint64_t parse_population(std::string_view field, std::size_t line) {
  if (field.empty()) throw TableError(line, "missing population");
  if (!std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw TableError(line, "population must be a plain integer, got '" + std::string(field) + "'");
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw TableError(line, "population out of range: '" + std::string(field) + "'");
  }
  if (value < 1) throw TableError(line, "population must be at least 1");
  return value;
}

WeightAllocation normalise(const PopulationTable& table, const std::vector<double>& raw,
                           WeightBasis basis) {
  double total = 0.0;
  for (const double r : raw) total += r;
  WeightAllocation out;
  out.basis = basis;
  out.entries.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.entries.push_back({table.entries[i].name, raw[i] / total});
  }
  return out;
}

void require_nonempty(const PopulationTable& table) {
  if (table.entries.empty()) throw ContractViolation("population table is empty");
}

double inverse_power(const PowerResult& p) {
  if (p.value.is_exact()) {
    const Rational& r = p.value.rational();
    return Rational(r.denominator(), r.numerator()).to_double();
  }
  return 1.0 / p.to_double();
}

}  // namespace

PopulationTable load_population_table(std::istream& source) {
  PopulationTable table;
  std::set<std::string, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(source, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (trim(line).empty()) continue;

    const auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw TableError(line_no, "expected exactly two comma-separated fields");
    }
    const auto first = trim(line.substr(0, comma));
    const auto second = trim(line.substr(comma + 1));

    if (!header_seen) {
      if (first != "name" || second != "population") {
        throw TableError(line_no, "header must be 'name,population'");
      }
      header_seen = true;
      continue;
    }
    if (first.empty()) throw TableError(line_no, "empty constituency name");
    const std::uint64_t population = parse_population(second, line_no);
    if (!seen.emplace(first).second) {
      throw TableError(line_no, "duplicate constituency name '" + std::string(first) + "'");
    }
    table.entries.push_back({std::string(first), population});
  }
  if (source.bad()) throw TableError(0, "read error");
  if (!header_seen) throw TableError(0, "missing header 'name,population'");
  if (table.entries.empty()) throw TableError(0, "population table has no entries");
  return table;
}

PopulationTable parse_population_table(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_population_table(in);
}

std::string_view to_string(WeightBasis basis) {
  switch (basis) {
    case WeightBasis::SqrtPopulation:
      return "sqrt";
    case WeightBasis::InversePowerBinary:
      return "binary";
    case WeightBasis::InversePowerTernary:
      return "ternary";
  }
  return "unknown";
}

WeightAllocation sqrt_weights(const PopulationTable& table) {
  require_nonempty(table);
  std::vector<double> raw;
  raw.reserve(table.entries.size());
  for (const auto& e : table.entries) raw.push_back(std::sqrt(static_cast<double>(e.population)));
  return normalise(table, raw, WeightBasis::SqrtPopulation);
}

WeightAllocation power_based_weights(const PopulationTable& table, VotingScheme scheme,
                                     Strategy strategy, const PowerConfig& config) {
  require_nonempty(table);
  std::vector<double> raw;
  raw.reserve(table.entries.size());
  for (const auto& e : table.entries) {
    raw.push_back(inverse_power(power(e.population - 1, scheme, strategy, config)));
  }
  return normalise(table, raw,
                   scheme == VotingScheme::Binary ? WeightBasis::InversePowerBinary
                                                  : WeightBasis::InversePowerTernary);
}

InvarianceReport invariance_report(const PopulationTable& table, Strategy strategy,
                                   const PowerConfig& config) {
  require_nonempty(table);
  const auto by_sqrt = sqrt_weights(table);
  const auto by_binary = power_based_weights(table, VotingScheme::Binary, strategy, config);
  const auto by_ternary = power_based_weights(table, VotingScheme::Ternary, strategy, config);

  InvarianceReport report;
  report.rows.reserve(table.entries.size());
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    InvarianceRow row{e.name,
                      e.population,
                      power(e.population - 1, VotingScheme::Binary, strategy, config),
                      power(e.population - 1, VotingScheme::Ternary, strategy, config),
                      0.0,
                      by_sqrt.entries[i].weight,
                      by_binary.entries[i].weight,
                      by_ternary.entries[i].weight};
    row.power_ratio = row.ternary.to_double() / row.binary.to_double();
    report.max_dev_sqrt_binary =
        std::max(report.max_dev_sqrt_binary, std::abs(row.sqrt_weight - row.binary_weight));
    report.max_dev_sqrt_ternary =
        std::max(report.max_dev_sqrt_ternary, std::abs(row.sqrt_weight - row.ternary_weight));
    report.max_dev_binary_ternary =
        std::max(report.max_dev_binary_ternary, std::abs(row.binary_weight - row.ternary_weight));
    report.rows.push_back(std::move(row));
  }
  report.max_deviation = std::max({report.max_dev_sqrt_binary, report.max_dev_sqrt_ternary,
                                   report.max_dev_binary_ternary});
  return report;
}

}  // namespace pivotal
