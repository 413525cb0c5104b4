#pragma once
// Deterministic CSV / JSON output: fixed column order, shortest round-trip
// floats, LF line endings.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace polyspec {

using Json = nlohmann::ordered_json;

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(const std::string& s);

// Shortest representation that reads back to the same double.
std::string format_double(double x);

std::string to_csv(const Table& table);
Json to_json(const Table& table);
std::string dump(const Json& j);
std::string render(const Table& table, OutputFormat format);

// Writes to the file when a path is given, stdout otherwise. Throws
// std::runtime_error when the file cannot be written.
void emit(const std::string& text, const std::optional<std::string>& path);

}  // namespace polyspec
