#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pm::cli {

struct Column {
    std::string name;
    std::string unit;  // empty for dimensionless or text columns
};

using Cell = std::variant<double, long, std::string>;
using Row = std::vector<Cell>;

enum class OutputFormat { csv, json };

// Shortest decimal text that parses back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double value);

struct OutputTable {
    std::string name;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<Column> columns;
    std::vector<Row> rows;

    void write_csv(std::ostream& out) const;
    void write_json(std::ostream& out) const;
};

}
