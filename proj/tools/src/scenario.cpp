#include "polaromech_cli/scenario.hpp"

#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <openssl/evp.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <set>

namespace pm::cli {

namespace {

std::string_view si_unit(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::length: return "m";
    case Dimension::frequency: return "Hz";
    case Dimension::frequency_per_length: return "Hz/m";
    case Dimension::energy: return "J";
    case Dimension::energy_area: return "J*m2";
    case Dimension::temperature: return "K";
    case Dimension::density: return "kg/m3";
    case Dimension::pressure: return "Pa";
    case Dimension::velocity: return "m/s";
    case Dimension::mass: return "kg";
    case Dimension::rate: return "1/s";
    }
    return "";
}

std::string trim_copy(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::string sha256_hex(std::string_view text) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 15];
    }
    return out;
}

const std::vector<Field>& common_fields() {
    static const std::vector<Field> fields = {
        {"output", "name", FieldKind::text},
        {"output", "format", FieldKind::text},
        {"materials", "file", FieldKind::text},
    };
    return fields;
}

const Field* find_field(const std::vector<Field>& schema, std::string_view path) {
    for (const auto& f : schema)
        if (f.path() == path) return &f;
    return nullptr;
}

std::string display_unit(const KeyValueDocument& doc, const std::string& key) {
    const auto& value = doc.entry("sweep", key).value;
    auto sp = value.rfind(' ');
    if (sp == std::string::npos) return {};
    auto tail = trim_copy(std::string_view(value).substr(sp));
    if (tail.empty() || tail.back() == ',') return {};
    if (std::isdigit(static_cast<unsigned char>(tail.front())) || tail.front() == '-' || tail.front() == '+' ||
        tail.front() == '.')
        return {};
    return tail;
}

}

std::string_view version() { return POLAROMECH_VERSION; }

std::string si_quantity(double value, Dimension d) {
    auto unit = si_unit(d);
    return unit.empty() ? format_number(value) : format_number(value) + " " + std::string(unit);
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto item = trim_copy(text.substr(pos, comma - pos));
        if (!item.empty()) out.push_back(std::move(item));
        pos = comma + 1;
    }
    return out;
}

bool parse_flag(const KeyValueDocument& doc, const std::string& section, const std::string& key, bool fallback) {
    if (!doc.has(section, key)) return fallback;
    auto v = doc.text(section, key);
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigInvalid(doc.source() + ":" + std::to_string(doc.entry(section, key).line) + ": " + section + "." +
                        key + ": expected true or false");
}

std::vector<SweepAxis> parse_sweep(const KeyValueDocument& doc, const std::vector<Field>& schema) {
    std::vector<SweepAxis> axes;
    if (!doc.has("sweep", "axes")) {
        for (const auto& key : doc.keys("sweep"))
            throw ConfigInvalid(doc.source() + ":" + std::to_string(doc.entry("sweep", key).line) +
                                ": sweep." + key + " given without sweep.axes");
        return axes;
    }
    auto where = [&](const std::string& key) {
        return doc.source() + ":" + std::to_string(doc.entry("sweep", key).line) + ": sweep." + key;
    };
    std::set<std::string> seen;
    for (const auto& path : split_list(doc.text("sweep", "axes"))) {
        const Field* field = find_field(schema, path);
        if (!field || field->kind != FieldKind::quantity)
            throw UnknownSweepVariable(where("axes") + ": '" + path + "' is not a sweepable variable");
        if (!seen.insert(path).second) throw ConfigInvalid(where("axes") + ": '" + path + "' listed twice");
        if (!doc.has("sweep", path)) throw ConfigInvalid(where("axes") + ": missing range 'sweep." + path + "'");
        SweepAxis axis;
        axis.field = *field;
        auto range = doc.quantity_list("sweep", path, field->dimension);
        if (range.empty() || range.size() > 2)
            throw ConfigInvalid(where(path) + ": expected 'from, to' or a single value");
        axis.unit = display_unit(doc, path);
        axis.unit_factor = axis.unit.empty() ? 1.0 : parse_quantity("1 " + axis.unit, field->dimension);
        long points = doc.integer_or("sweep", path + ".points", 1);
        if (points < 1) throw ConfigInvalid(where(path + ".points") + ": must be at least 1");
        auto spacing = doc.text_or("sweep", path + ".spacing", "linear");
        std::vector<double> declared = range;
        if (!axis.unit.empty()) {
            const auto& value = doc.entry("sweep", path).value;
            declared.clear();
            for (const auto& item : split_list(value.substr(0, value.rfind(' '))))
                declared.push_back(parse_quantity(item, Dimension::dimensionless));
        }
        const double from = declared.front(), to = declared.back();
        if (points == 1 || from == to) {
            axis.display = {from};
        } else if (spacing == "linear") {
            axis.display = num::linspace(from, to, static_cast<std::size_t>(points));
        } else if (spacing == "log") {
            if (!(from > 0 && to > 0)) throw ConfigInvalid(where(path) + ": log spacing needs positive bounds");
            axis.display = num::logspace(from, to, static_cast<std::size_t>(points));
            axis.display.front() = from;
            axis.display.back() = to;
        } else {
            throw ConfigInvalid(where(path + ".spacing") + ": expected linear or log");
        }
        for (double v : axis.display) axis.values.push_back(v * axis.unit_factor);
        axes.push_back(std::move(axis));
    }
    for (const auto& key : doc.keys("sweep")) {
        if (key == "axes" || seen.count(key)) continue;
        auto dot = key.rfind('.');
        auto base = dot == std::string::npos ? std::string{} : key.substr(0, dot);
        auto suffix = dot == std::string::npos ? std::string{} : key.substr(dot + 1);
        if (!seen.count(base) || (suffix != "points" && suffix != "spacing"))
            throw ConfigInvalid(where(key) + ": unknown sweep key");
    }
    return axes;
}

void validate_config(const KeyValueDocument& doc, const Command& cmd) {
    auto axes = parse_sweep(doc, cmd.schema);
    std::set<std::string> swept;
    for (const auto& a : axes) swept.insert(a.field.path());

    auto known = [&](const std::string& section, const std::string& key) {
        for (const auto* list : {&cmd.schema, &common_fields()})
            for (const auto& f : *list)
                if (f.section == section && f.key == key) return &f;
        return static_cast<const Field*>(nullptr);
    };
    for (const auto& section : doc.sections()) {
        if (section == "sweep") continue;
        bool section_known = false;
        for (const auto* list : {&cmd.schema, &common_fields()})
            for (const auto& f : *list) section_known |= f.section == section;
        if (!section_known)
            throw ConfigInvalid(doc.source() + ": section [" + section + "] is not used by '" + cmd.name + "'");
        for (const auto& key : doc.keys(section)) {
            const Field* f = known(section, key);
            auto where = doc.source() + ":" + std::to_string(doc.entry(section, key).line) + ": " + section + "." + key;
            if (!f) throw ConfigInvalid(where + ": unknown key for '" + cmd.name + "'");
            try {
                switch (f->kind) {
                case FieldKind::quantity: doc.quantity(section, key, f->dimension); break;
                case FieldKind::quantity_list: doc.quantity_list(section, key, f->dimension); break;
                case FieldKind::integer: doc.integer(section, key); break;
                case FieldKind::flag: parse_flag(doc, section, key, false); break;
                case FieldKind::text: break;
                }
            } catch (const ConfigInvalid&) {
                throw;
            } catch (const ConfigError& ex) {
                throw ConfigInvalid(where + ": " + ex.what());
            }
        }
    }
    for (const auto& f : cmd.schema)
        if (f.required && !doc.has(f.section, f.key) && !swept.count(f.path()))
            throw ConfigInvalid(doc.source() + ": missing required key " + f.path());
}

std::vector<OutputTable> build_tables(const Command& cmd, const Context& ctx, std::size_t threads) {
    validate_config(ctx.config, cmd);
    const auto axes = parse_sweep(ctx.config, cmd.schema);
    const auto specs = cmd.tables(ctx);

    std::size_t count = 1;
    for (const auto& a : axes) count *= a.values.size();

    auto point_index = [&](std::size_t flat) {
        std::vector<std::size_t> idx(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            idx[k] = flat % axes[k].values.size();
            flat /= axes[k].values.size();
        }
        return idx;
    };

    std::vector<PointRows> results(count);
    std::vector<std::exception_ptr> failures(count);
    auto body = [&](std::size_t i) {
        try {
            KeyValueDocument point = ctx.config;
            auto idx = point_index(i);
            for (std::size_t k = 0; k < axes.size(); ++k)
                point.set(axes[k].field.section, axes[k].field.key,
                          si_quantity(axes[k].values[idx[k]], axes[k].field.dimension));
            results[i] = cmd.evaluate(ctx, point);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };
    auto run = [&] { tbb::parallel_for(std::size_t{0}, count, body); };
    if (threads > 0) {
        tbb::task_arena arena(static_cast<int>(threads));
        arena.execute(run);
    } else {
        run();
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    std::vector<OutputTable> tables(specs.size());
    for (std::size_t t = 0; t < specs.size(); ++t) {
        auto& table = tables[t];
        table.name = specs[t].name;
        for (const auto& a : axes) table.columns.push_back({a.field.path(), a.unit});
        table.columns.insert(table.columns.end(), specs[t].columns.begin(), specs[t].columns.end());
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (results[i].size() != specs.size()) throw Error("command '" + cmd.name + "' returned a wrong table count");
        auto idx = point_index(i);
        for (std::size_t t = 0; t < specs.size(); ++t) {
            for (auto& row : results[i][t]) {
                Row full;
                for (std::size_t k = 0; k < axes.size(); ++k)
                    full.emplace_back(axes[k].display[idx[k]]);
                full.insert(full.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
                if (full.size() != tables[t].columns.size())
                    throw Error("command '" + cmd.name + "' produced a row of the wrong width");
                tables[t].rows.push_back(std::move(full));
            }
        }
    }
    return tables;
}

std::vector<std::filesystem::path> run_scenario(std::string_view command, const RunOptions& options) {
    const Command& cmd = find_command(command);
    Context ctx{KeyValueDocument::load(options.config), MaterialTable::builtin(),
                options.config.has_parent_path() ? options.config.parent_path() : std::filesystem::path(".")};
    std::string materials_source = "builtin";
    if (options.materials) {
        ctx.materials = MaterialTable::from_file(*options.materials);
        materials_source = options.materials->filename().string();
    } else if (ctx.config.has("materials", "file")) {
        auto path = ctx.config_dir / ctx.config.text("materials", "file");
        ctx.materials = MaterialTable::from_file(path);
        materials_source = path.filename().string();
    }
    validate_config(ctx.config, cmd);

    OutputFormat format = OutputFormat::csv;
    if (options.format) {
        format = *options.format;
    } else if (ctx.config.has("output", "format")) {
        auto f = ctx.config.text("output", "format");
        if (f == "json") format = OutputFormat::json;
        else if (f != "csv") throw ConfigInvalid(ctx.config.source() + ": output.format must be csv or json");
    }
    const auto stem = ctx.config.text_or("output", "name", cmd.name);

    auto tables = build_tables(cmd, ctx, options.threads);

    std::vector<std::pair<std::string, std::string>> metadata = {
        {"generator", "polaromech " + std::string(version())},
        {"command", cmd.name},
        {"config_sha256", sha256_hex(ctx.config.canonical())},
        {"materials", materials_source + " version " + ctx.materials.version()},
    };
    for (const auto& section : ctx.config.sections())
        for (const auto& key : ctx.config.keys(section))
            metadata.emplace_back("param " + section + "." + key, ctx.config.text(section, key));

    std::filesystem::create_directories(options.out_dir);
    std::vector<std::filesystem::path> written;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        auto& table = tables[t];
        table.metadata = metadata;
        table.metadata.insert(table.metadata.begin() + 2, {"table", table.name});
        auto name = t == 0 ? stem : stem + "_" + table.name;
        auto path = options.out_dir / (name + (format == OutputFormat::csv ? ".csv" : ".json"));
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigInvalid("cannot write '" + path.string() + "'");
        if (format == OutputFormat::csv) table.write_csv(out);
        else table.write_json(out);
        if (!out) throw Error("failed writing '" + path.string() + "'");
        written.push_back(path);
    }
    return written;
}

const Command& find_command(std::string_view name) {
    for (const auto& c : commands())
        if (c.name == name) return c;
    throw ConfigInvalid("unknown subcommand '" + std::string(name) + "'");
}

}
