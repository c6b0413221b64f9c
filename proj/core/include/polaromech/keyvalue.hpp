#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pm {

enum class Dimension {
    dimensionless,
    length,
    frequency,
    frequency_per_length,
    energy,
    energy_area,
    temperature,
    density,
    pressure,
    velocity,
    mass,
    rate,
};

std::string_view dimension_name(Dimension d);

// Parses "<number> [unit]" and returns the value in SI for the requested dimension.
// Frequencies are returned in Hz; callers decide whether a field is an angular rate.
double parse_quantity(std::string_view text, Dimension expected);

// Section/key/value text with '#' comments, e.g.
//   [geometry]
//   radius = 1.3 um
class KeyValueDocument {
public:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static KeyValueDocument parse(std::string_view text, std::string source);
    static KeyValueDocument load(const std::filesystem::path& path);

    const std::string& source() const { return source_; }
    std::vector<std::string> sections() const;
    std::vector<std::string> keys(const std::string& section) const;
    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    const Entry& entry(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::string text_or(const std::string& section, const std::string& key, std::string fallback) const;
    double quantity(const std::string& section, const std::string& key, Dimension d) const;
    double quantity_or(const std::string& section, const std::string& key, Dimension d, double fallback) const;
    long integer(const std::string& section, const std::string& key) const;
    long integer_or(const std::string& section, const std::string& key, long fallback) const;
    std::vector<double> quantity_list(const std::string& section, const std::string& key, Dimension d) const;

    void set(const std::string& section, const std::string& key, std::string value);

    // Canonical serialization used for hashing: sections and keys sorted, values trimmed.
    std::string canonical() const;

private:
    [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) const;

    std::string source_;
    std::map<std::string, std::map<std::string, Entry>> data_;
};

}
