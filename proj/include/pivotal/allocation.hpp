#pragma once

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pivotal/power.hpp"

namespace pivotal {

/// Malformed population table. line() is 1-based, 0 when not tied to a line.
class TableError : public std::runtime_error {
 public:
  TableError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct Constituency {
  std::string name;
  std::uint64_t population = 1;
};

/// Ordered constituencies. The population figure is taken as given: callers
/// decide whether it counts residents or registered voters.
struct PopulationTable {
  std::vector<Constituency> entries;
};

/// CSV with header `name,population`, LF or CRLF line endings, optional
/// UTF-8 BOM. Fields are trimmed; populations must be plain digits (no
/// thousands separators) and >= 1; names must be unique; blank lines are
/// skipped. Throws TableError.
PopulationTable load_population_table(std::istream& source);
PopulationTable parse_population_table(std::string_view text);

enum class WeightBasis { SqrtPopulation, InversePowerBinary, InversePowerTernary };
std::string_view to_string(WeightBasis basis);

struct WeightEntry {
  std::string name;
  double weight = 0.0;
};

struct WeightAllocation {
  std::vector<WeightEntry> entries;  // same order as the table
  WeightBasis basis = WeightBasis::SqrtPopulation;
};

/// weight_i = sqrt(pop_i) / sum_j sqrt(pop_j).
WeightAllocation sqrt_weights(const PopulationTable& table);

/// weight_i proportional to 1 / P(pop_i - 1, scheme): the council weight that
/// equalises the influence of every citizen. Exact powers are divided as
/// rationals before conversion so tiny populations stay meaningful.
WeightAllocation power_based_weights(const PopulationTable& table, VotingScheme scheme,
                                     Strategy strategy = Strategy::Auto,
                                     const PowerConfig& config = {});

struct InvarianceRow {
  std::string name;
  std::uint64_t population = 0;
  PowerResult binary;
  PowerResult ternary;
  double power_ratio = 0.0;  // ternary / binary
  double sqrt_weight = 0.0;
  double binary_weight = 0.0;
  double ternary_weight = 0.0;
};

struct InvarianceReport {
  std::vector<InvarianceRow> rows;
  // Largest |a_i - b_i| over entries, for each pair of weight vectors.
  double max_dev_sqrt_binary = 0.0;
  double max_dev_sqrt_ternary = 0.0;
  double max_dev_binary_ternary = 0.0;
  double max_deviation = 0.0;  // max of the three
};

InvarianceReport invariance_report(const PopulationTable& table,
                                   Strategy strategy = Strategy::Auto,
                                   const PowerConfig& config = {});

}  // namespace pivotal
