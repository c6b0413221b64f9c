#pragma once

#include "polaromech/keyvalue.hpp"
#include "polaromech/materials.hpp"
#include "polaromech_cli/output_table.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pm::cli {

std::string_view version();

enum class FieldKind { quantity, quantity_list, integer, text, flag };

struct Field {
    std::string section;
    std::string key;
    FieldKind kind = FieldKind::quantity;
    Dimension dimension = Dimension::dimensionless;
    bool required = false;

    std::string path() const { return section + "." + key; }
};

// Numeric value of `d` written with the SI unit symbol understood by the config parser.
std::string si_quantity(double value, Dimension d);

std::vector<std::string> split_list(std::string_view text);
bool parse_flag(const KeyValueDocument& doc, const std::string& section, const std::string& key, bool fallback);

struct SweepAxis {
    Field field;
    std::vector<double> values;  // SI
    std::vector<double> display; // same grid in `unit`
    std::string unit;            // display unit of the declared range
    double unit_factor = 1;      // SI per display unit
};

// [sweep] axes = a.b, c.d ; a.b = from, to unit ; a.b.points = N ; a.b.spacing = linear|log
std::vector<SweepAxis> parse_sweep(const KeyValueDocument& doc, const std::vector<Field>& schema);

struct Context {
    KeyValueDocument config;
    MaterialTable materials;
    std::filesystem::path config_dir;
};

struct TableSpec {
    std::string name;
    std::vector<Column> columns;
};

using PointRows = std::vector<std::vector<Row>>;  // one row list per table

struct Command {
    std::string name;
    std::string summary;
    std::vector<Field> schema;
    std::function<std::vector<TableSpec>(const Context&)> tables;
    std::function<PointRows(const Context&, const KeyValueDocument&)> evaluate;
};

const std::vector<Command>& commands();
const Command& find_command(std::string_view name);

struct RunOptions {
    std::filesystem::path config;
    std::filesystem::path out_dir = ".";
    std::optional<OutputFormat> format;
    std::size_t threads = 0;  // 0: library default
    std::optional<std::filesystem::path> materials;
};

// Rejects unknown sections and keys, parses every declared field, checks required ones.
void validate_config(const KeyValueDocument& doc, const Command& cmd);

// Evaluates the command over the sweep grid and returns the tables in grid order.
std::vector<OutputTable> build_tables(const Command& cmd, const Context& ctx, std::size_t threads);

// Loads, validates, runs and writes the tables; returns the written paths.
std::vector<std::filesystem::path> run_scenario(std::string_view command, const RunOptions& options);

}
