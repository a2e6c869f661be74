#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace mpcr {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  bool empty() const noexcept { return rows.empty(); }
};

enum class TableFormat { Csv, Json };

TableFormat parse_format(const std::string& name);

// Shortest decimal that round-trips to the same double.
std::string format_real(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

// Throws EmptyInput (nothing written) for an empty table, IoError on failure.
void write_table(const Table& table, const std::filesystem::path& path, TableFormat format);

}  // namespace mpcr
