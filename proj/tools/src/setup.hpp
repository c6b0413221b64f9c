#pragma once

#include "polaromech/couplings.hpp"
#include "polaromech/fluctuations.hpp"
#include "polaromech_cli/scenario.hpp"

#include <string>
#include <vector>

namespace pm::cli {

inline constexpr double two_pi = 2 * 3.14159265358979323846;

// Field helpers for command schemas.
Field quantity(std::string section, std::string key, Dimension d, bool required = false);
Field quantity_list(std::string section, std::string key, Dimension d);
Field integer(std::string section, std::string key);
Field text(std::string section, std::string key, bool required = false);
Field flag(std::string section, std::string key);

void append(std::vector<Field>& to, const std::vector<Field>& from);

std::vector<Field> quantum_well_fields();
std::vector<Field> geometry_fields();
std::vector<Field> mode_window_fields();
std::vector<Field> system_fields();

QWSpec quantum_well(const Context& ctx, const KeyValueDocument& doc);
ExcitonState exciton(const Context& ctx, const KeyValueDocument& doc);

std::string geometry_kind(const KeyValueDocument& doc);
PlanarGeometry planar_geometry(const Context& ctx, const KeyValueDocument& doc, double wavelength);
PillarGeometry pillar_geometry(const Context& ctx, const KeyValueDocument& doc);

std::vector<int> integer_list(const KeyValueDocument& doc, const std::string& section, const std::string& key,
                              std::vector<int> fallback);

// Rates are declared as ordinary frequencies and returned in rad/s.
double rate(const KeyValueDocument& doc, const std::string& section, const std::string& key);
double rate_or(const KeyValueDocument& doc, const std::string& section, const std::string& key, double fallback);

// [system] plus [point] detuning and population.
FluctuationConfig fluctuation_point(const KeyValueDocument& doc);

std::string join_numbers(const std::vector<double>& values, double scale = 1);

// Short tag for a compute failure, used in status columns.
std::string failure_tag(const std::exception& ex);

}
