#include "output.hpp"

#include <cmath>
#include <fstream>

namespace skinspec::cli {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

std::string csv_text(const Cell& cell) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double x) const { return std::isfinite(x) ? format_number(x) : std::string(); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, cell);
}

nlohmann::json json_value(const Cell& cell) {
    struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(double x) const { return json_number(x); }
        nlohmann::json operator()(long long x) const { return x; }
        nlohmann::json operator()(const std::string& s) const { return s; }
        nlohmann::json operator()(bool b) const { return b; }
    };
    return std::visit(Visitor{}, cell);
}

}  // namespace

nlohmann::json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return value;
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& stem, Format format) {
    std::filesystem::path path = stem;
    if (format == Format::json) {
        path += ".json";
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t c = 0; c < table.columns.size(); ++c) obj[table.columns[c]] = json_value(row.at(c));
            rows.push_back(std::move(obj));
        }
        write_json(rows, path);
        return path;
    }
    path += ".csv";
    auto out = open_output(path);
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_text(row[c]);
        out << '\n';
    }
    return path;
}

}  // namespace skinspec::cli
