#ifndef SZMK_APP_TABLE_HPP_
#define SZMK_APP_TABLE_HPP_

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace szmk::app {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

enum class OutputFormat { kCsv, kJsonLines };

/// CSV: header row, '.' decimal separator, doubles with 17 significant
/// digits, empty field for missing values. JSON-lines: one object per row
/// keyed by column name, missing and non-finite values as null.
void write_table(std::ostream& out, const Table& table, OutputFormat format);

std::string format_double(double value);

}  // namespace szmk::app

#endif  // SZMK_APP_TABLE_HPP_
