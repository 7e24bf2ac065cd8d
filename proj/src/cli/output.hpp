#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "skinspec/cli.hpp"

namespace skinspec::cli {

/// Empty, number (NaN/inf written as empty/null), integer, text or flag.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Writes `<stem>.csv` or `<stem>.json` (array of row objects); returns the written path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& stem, Format format);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

/// Number as JSON, with non-finite values mapped to null.
[[nodiscard]] nlohmann::json json_number(double value);

}  // namespace skinspec::cli
