#include "polyspec/emit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace polyspec {

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::invalid_argument("row width does not match the header");
    rows.push_back(std::move(row));
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const Cell& c) {
    struct V {
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string out = "\"";
            for (char ch : s) {
                if (ch == '"') out += '"';
                out += ch;
            }
            return out + "\"";
        }
    };
    return std::visit(V{}, c);
}

Json json_value(const Cell& c) {
    struct V {
        Json operator()(double x) const { return std::isfinite(x) ? Json(x) : Json(nullptr); }
        Json operator()(std::int64_t x) const { return Json(x); }
        Json operator()(bool b) const { return Json(b); }
        Json operator()(const std::string& s) const { return Json(s); }
    };
    return std::visit(V{}, c);
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + table.columns[i];
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
        out += '\n';
    }
    return out;
}

Json to_json(const Table& table) {
    Json arr = Json::array();
    for (const auto& row : table.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_value(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string render(const Table& table, OutputFormat format) {
    return format == OutputFormat::Csv ? to_csv(table) : dump(to_json(table));
}

void emit(const std::string& text, const std::optional<std::string>& path) {
    if (!path) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream f(*path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + *path + "' for writing");
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) throw std::runtime_error("failed writing '" + *path + "'");
}

}  // namespace polyspec
