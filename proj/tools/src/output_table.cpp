#include "polaromech_cli/output_table.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace pm::cli {

namespace {

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) return format_number(v);
            else if constexpr (std::is_same_v<T, long>) return std::to_string(v);
            else return quote_csv(v);
        },
        c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_number(v);
            }
            return v;
        },
        c);
}

}

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0) return "0";
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

void OutputTable::write_csv(std::ostream& out) const {
    for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
    out << "# units:";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : " ") << (columns[i].unit.empty() ? "-" : columns[i].unit);
    out << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << quote_csv(columns[i].name);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

void OutputTable::write_json(std::ostream& out) const {
    nlohmann::ordered_json doc;
    doc["table"] = name;
    auto& meta = doc["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : metadata) meta[key] = value;
    auto& cols = doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    auto& body = doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(cell_json(c));
        body.push_back(std::move(r));
    }
    out << doc.dump(1) << '\n';
}

}
