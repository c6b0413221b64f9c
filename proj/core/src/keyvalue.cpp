#include "polaromech/keyvalue.hpp"

#include "polaromech/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pm {

namespace {

struct UnitDef {
    std::string_view symbol;
    Dimension dim;
    double factor;
};

constexpr double kEv = 1.602176634e-19;

constexpr std::array kUnits{
    UnitDef{"m", Dimension::length, 1.0},
    UnitDef{"mm", Dimension::length, 1e-3},
    UnitDef{"um", Dimension::length, 1e-6},
    UnitDef{"nm", Dimension::length, 1e-9},
    UnitDef{"pm", Dimension::length, 1e-12},
    UnitDef{"fm", Dimension::length, 1e-15},
    UnitDef{"Hz", Dimension::frequency, 1.0},
    UnitDef{"kHz", Dimension::frequency, 1e3},
    UnitDef{"MHz", Dimension::frequency, 1e6},
    UnitDef{"GHz", Dimension::frequency, 1e9},
    UnitDef{"THz", Dimension::frequency, 1e12},
    UnitDef{"Hz/m", Dimension::frequency_per_length, 1.0},
    UnitDef{"GHz/nm", Dimension::frequency_per_length, 1e18},
    UnitDef{"THz/nm", Dimension::frequency_per_length, 1e21},
    UnitDef{"J", Dimension::energy, 1.0},
    UnitDef{"eV", Dimension::energy, kEv},
    UnitDef{"meV", Dimension::energy, 1e-3 * kEv},
    UnitDef{"ueV", Dimension::energy, 1e-6 * kEv},
    UnitDef{"J*m2", Dimension::energy_area, 1.0},
    UnitDef{"ueV*um2", Dimension::energy_area, 1e-6 * kEv * 1e-12},
    UnitDef{"meV*nm2", Dimension::energy_area, 1e-3 * kEv * 1e-18},
    UnitDef{"K", Dimension::temperature, 1.0},
    UnitDef{"mK", Dimension::temperature, 1e-3},
    UnitDef{"kg/m3", Dimension::density, 1.0},
    UnitDef{"g/cm3", Dimension::density, 1e3},
    UnitDef{"Pa", Dimension::pressure, 1.0},
    UnitDef{"GPa", Dimension::pressure, 1e9},
    UnitDef{"m/s", Dimension::velocity, 1.0},
    UnitDef{"km/s", Dimension::velocity, 1e3},
    UnitDef{"nm/ps", Dimension::velocity, 1e3},
    UnitDef{"um/ps", Dimension::velocity, 1e6},
    UnitDef{"kg", Dimension::mass, 1.0},
    UnitDef{"g", Dimension::mass, 1e-3},
    UnitDef{"pg", Dimension::mass, 1e-15},
    UnitDef{"fg", Dimension::mass, 1e-18},
    UnitDef{"1/s", Dimension::rate, 1.0},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, bool& ok) {
    double v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    ok = ec == std::errc{} && ptr == s.data() + s.size();
    return v;
}

}

std::string_view dimension_name(Dimension d) {
    switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::length: return "length";
    case Dimension::frequency: return "frequency";
    case Dimension::frequency_per_length: return "frequency per length";
    case Dimension::energy: return "energy";
    case Dimension::energy_area: return "energy x area";
    case Dimension::temperature: return "temperature";
    case Dimension::density: return "density";
    case Dimension::pressure: return "pressure";
    case Dimension::velocity: return "velocity";
    case Dimension::mass: return "mass";
    case Dimension::rate: return "rate";
    }
    return "unknown";
}

double parse_quantity(std::string_view text, Dimension expected) {
    text = trim(text);
    auto split = text.find_first_of(" \t");
    std::string_view number = split == std::string_view::npos ? text : text.substr(0, split);
    std::string_view unit = split == std::string_view::npos ? std::string_view{} : trim(text.substr(split));
    bool ok = false;
    double v = parse_number(number, ok);
    if (!ok) throw ConfigInvalid("not a number: '" + std::string(number) + "'");
    if (unit.empty()) {
        if (expected != Dimension::dimensionless)
            throw ConfigInvalid("missing unit, expected a " + std::string(dimension_name(expected)));
        return v;
    }
    for (const auto& u : kUnits) {
        if (u.symbol == unit) {
            if (u.dim != expected)
                throw ConfigInvalid("unit '" + std::string(unit) + "' is a " + std::string(dimension_name(u.dim)) +
                                    ", expected a " + std::string(dimension_name(expected)));
            return v * u.factor;
        }
    }
    throw ConfigInvalid("unknown unit '" + std::string(unit) + "'");
}

KeyValueDocument KeyValueDocument::parse(std::string_view text, std::string source) {
    KeyValueDocument doc;
    doc.source_ = std::move(source);
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }
        auto where = doc.source_ + ":" + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigInvalid(where + ": unterminated section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (section.empty()) throw ConfigInvalid(where + ": empty section name");
            doc.data_[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigInvalid(where + ": expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigInvalid(where + ": empty key");
        if (section.empty()) throw ConfigInvalid(where + ": key '" + key + "' outside of a section");
        auto& sec = doc.data_[section];
        if (sec.count(key)) throw ConfigInvalid(where + ": duplicate key '" + section + "." + key + "'");
        sec.emplace(std::move(key), Entry{std::move(value), line_no});
        if (end == text.size()) break;
    }
    return doc;
}

KeyValueDocument KeyValueDocument::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

std::vector<std::string> KeyValueDocument::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : data_) out.push_back(name);
    return out;
}

std::vector<std::string> KeyValueDocument::keys(const std::string& section) const {
    std::vector<std::string> out;
    if (auto it = data_.find(section); it != data_.end())
        for (const auto& [k, _] : it->second) out.push_back(k);
    return out;
}

bool KeyValueDocument::has_section(const std::string& section) const { return data_.count(section) > 0; }

bool KeyValueDocument::has(const std::string& section, const std::string& key) const {
    auto it = data_.find(section);
    return it != data_.end() && it->second.count(key) > 0;
}

void KeyValueDocument::fail(const std::string& section, const std::string& key, const std::string& what) const {
    std::string where = source_;
    if (has(section, key)) where += ":" + std::to_string(data_.at(section).at(key).line);
    throw ConfigInvalid(where + ": " + section + "." + key + ": " + what);
}

const KeyValueDocument::Entry& KeyValueDocument::entry(const std::string& section, const std::string& key) const {
    if (!has(section, key)) fail(section, key, "missing required field");
    return data_.at(section).at(key);
}

std::string KeyValueDocument::text(const std::string& section, const std::string& key) const {
    return entry(section, key).value;
}

std::string KeyValueDocument::text_or(const std::string& section, const std::string& key, std::string fallback) const {
    return has(section, key) ? text(section, key) : fallback;
}

double KeyValueDocument::quantity(const std::string& section, const std::string& key, Dimension d) const {
    const auto& e = entry(section, key);
    try {
        return parse_quantity(e.value, d);
    } catch (const ConfigInvalid& ex) {
        fail(section, key, ex.what());
    }
}

double KeyValueDocument::quantity_or(const std::string& section, const std::string& key, Dimension d,
                                     double fallback) const {
    return has(section, key) ? quantity(section, key, d) : fallback;
}

long KeyValueDocument::integer(const std::string& section, const std::string& key) const {
    auto s = trim(entry(section, key).value);
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) fail(section, key, "expected an integer");
    return v;
}

long KeyValueDocument::integer_or(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

std::vector<double> KeyValueDocument::quantity_list(const std::string& section, const std::string& key,
                                                    Dimension d) const {
    const auto& e = entry(section, key);
    std::string_view all = e.value;
    std::string unit;
    if (auto sp = all.rfind(' '); sp != std::string_view::npos) {
        auto tail = trim(all.substr(sp));
        bool ok = false;
        parse_number(tail, ok);
        if (!ok) {
            unit = std::string(tail);
            all = trim(all.substr(0, sp));
        }
    }
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= all.size()) {
        auto comma = all.find(',', pos);
        if (comma == std::string_view::npos) comma = all.size();
        auto item = trim(all.substr(pos, comma - pos));
        if (item.empty()) fail(section, key, "empty list element");
        try {
            out.push_back(parse_quantity(unit.empty() ? std::string(item) : std::string(item) + " " + unit, d));
        } catch (const ConfigInvalid& ex) {
            fail(section, key, ex.what());
        }
        pos = comma + 1;
        if (comma == all.size()) break;
    }
    return out;
}

void KeyValueDocument::set(const std::string& section, const std::string& key, std::string value) {
    auto& e = data_[section][key];
    e.value = std::move(value);
}

std::string KeyValueDocument::canonical() const {
    std::string out;
    for (const auto& [sec, entries] : data_) {
        out += "[" + sec + "]\n";
        for (const auto& [k, e] : entries) out += k + "=" + e.value + "\n";
    }
    return out;
}

}
