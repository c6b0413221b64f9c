#include "setup.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"

#include <cmath>

namespace pm::cli {

Field quantity(std::string section, std::string key, Dimension d, bool required) {
    return {std::move(section), std::move(key), FieldKind::quantity, d, required};
}
Field quantity_list(std::string section, std::string key, Dimension d) {
    return {std::move(section), std::move(key), FieldKind::quantity_list, d, false};
}
Field integer(std::string section, std::string key) {
    return {std::move(section), std::move(key), FieldKind::integer, Dimension::dimensionless, false};
}
Field text(std::string section, std::string key, bool required) {
    return {std::move(section), std::move(key), FieldKind::text, Dimension::dimensionless, required};
}
Field flag(std::string section, std::string key) {
    return {std::move(section), std::move(key), FieldKind::flag, Dimension::dimensionless, false};
}

void append(std::vector<Field>& to, const std::vector<Field>& from) { to.insert(to.end(), from.begin(), from.end()); }

std::vector<Field> quantum_well_fields() {
    return {
        quantity("quantum_well", "thickness", Dimension::length),
        quantity("quantum_well", "indium_fraction", Dimension::dimensionless),
        text("quantum_well", "host"),
        quantity("quantum_well", "grid_step", Dimension::length),
        integer("quantum_well", "radial_points"),
    };
}

std::vector<Field> geometry_fields() {
    return {
        text("geometry", "kind", true),
        quantity("geometry", "radius", Dimension::length, true),
        quantity("geometry", "inner_radius", Dimension::length),
        quantity("geometry", "thickness", Dimension::length),
        text("geometry", "material"),
        quantity("geometry", "wavelength", Dimension::length),
        quantity_list("geometry", "qw_positions", Dimension::length),
        integer("geometry", "mirror_pairs"),
    };
}

std::vector<Field> mode_window_fields() {
    return {
        quantity_list("modes", "optical_radial", Dimension::dimensionless),
        quantity_list("modes", "optical_azimuthal", Dimension::dimensionless),
        quantity_list("modes", "mechanical_radial", Dimension::dimensionless),
        quantity_list("modes", "mechanical_azimuthal", Dimension::dimensionless),
    };
}

std::vector<Field> system_fields() {
    return {
        quantity("system", "total_decay", Dimension::frequency, true),
        quantity("system", "mechanical_frequency", Dimension::frequency, true),
        quantity("system", "mechanical_decay", Dimension::frequency, true),
        quantity("system", "coupling", Dimension::frequency, true),
        quantity("system", "kerr", Dimension::frequency, true),
        quantity("system", "temperature", Dimension::temperature),
    };
}

QWSpec quantum_well(const Context& ctx, const KeyValueDocument& doc) {
    QWSpec qw;
    qw.thickness = doc.quantity_or("quantum_well", "thickness", Dimension::length, qw.thickness);
    qw.indium_fraction = doc.quantity_or("quantum_well", "indium_fraction", Dimension::dimensionless,
                                         qw.indium_fraction);
    qw.host = ctx.materials.lookup(doc.text_or("quantum_well", "host", "GaAs"));
    qw.alloy = ctx.materials.alloy();
    return qw;
}

ExcitonState exciton(const Context& ctx, const KeyValueDocument& doc) {
    ExcitonOptions opts;
    opts.grid_step = doc.quantity_or("quantum_well", "grid_step", Dimension::length, opts.grid_step);
    opts.radial_points = static_cast<std::size_t>(
        doc.integer_or("quantum_well", "radial_points", static_cast<long>(opts.radial_points)));
    return self_consistent_exciton(quantum_well(ctx, doc), opts);
}

std::string geometry_kind(const KeyValueDocument& doc) {
    auto kind = doc.text("geometry", "kind");
    if (kind != "disk" && kind != "ring" && kind != "pillar")
        throw ConfigInvalid(doc.source() + ":" + std::to_string(doc.entry("geometry", "kind").line) +
                            ": geometry.kind must be disk, ring or pillar");
    return kind;
}

PlanarGeometry planar_geometry(const Context& ctx, const KeyValueDocument& doc, double wavelength) {
    PlanarGeometry g;
    g.outer_radius = doc.quantity("geometry", "radius", Dimension::length);
    g.inner_radius = doc.quantity_or("geometry", "inner_radius", Dimension::length, 0.0);
    g.thickness = doc.quantity_or("geometry", "thickness", Dimension::length, g.thickness);
    g.material = ctx.materials.lookup(doc.text_or("geometry", "material", "GaAs"));
    g.wavelength = wavelength;
    if (doc.has("geometry", "qw_positions")) g.qw_positions = doc.quantity_list("geometry", "qw_positions", Dimension::length);
    if (geometry_kind(doc) == "ring" && !(g.inner_radius > 0))
        throw ConfigInvalid(doc.source() + ": a ring needs geometry.inner_radius > 0");
    if (g.inner_radius >= g.outer_radius)
        throw ConfigInvalid(doc.source() + ": geometry.inner_radius must be below geometry.radius");
    return g;
}

PillarGeometry pillar_geometry(const Context& ctx, const KeyValueDocument& doc) {
    std::vector<double> offsets;
    if (doc.has("geometry", "qw_positions")) offsets = doc.quantity_list("geometry", "qw_positions", Dimension::length);
    auto g = make_pillar_geometry(ctx.materials, doc.quantity("geometry", "radius", Dimension::length), offsets);
    g.mirror_pairs = static_cast<int>(doc.integer_or("geometry", "mirror_pairs", g.mirror_pairs));
    if (g.mirror_pairs < 1) throw ConfigInvalid(doc.source() + ": geometry.mirror_pairs must be positive");
    return g;
}

std::vector<int> integer_list(const KeyValueDocument& doc, const std::string& section, const std::string& key,
                              std::vector<int> fallback) {
    if (!doc.has(section, key)) return fallback;
    std::vector<int> out;
    for (double v : doc.quantity_list(section, key, Dimension::dimensionless)) {
        if (v != std::round(v))
            throw ConfigInvalid(doc.source() + ": " + section + "." + key + " must list integers");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

double rate(const KeyValueDocument& doc, const std::string& section, const std::string& key) {
    return two_pi * doc.quantity(section, key, Dimension::frequency);
}

double rate_or(const KeyValueDocument& doc, const std::string& section, const std::string& key, double fallback) {
    return doc.has(section, key) ? rate(doc, section, key) : fallback;
}

FluctuationConfig fluctuation_point(const KeyValueDocument& doc) {
    FluctuationConfig cfg;
    cfg.total_decay = rate(doc, "system", "total_decay");
    cfg.mechanical_frequency = rate(doc, "system", "mechanical_frequency");
    cfg.mechanical_decay = rate(doc, "system", "mechanical_decay");
    cfg.coupling = rate(doc, "system", "coupling");
    cfg.kerr = rate(doc, "system", "kerr");
    cfg.temperature = doc.quantity_or("system", "temperature", Dimension::temperature, 0.0);
    cfg.detuning = rate(doc, "point", "detuning");
    cfg.population = doc.quantity("point", "population", Dimension::dimensionless);
    try {
        cfg.validate();
    } catch (const Error& ex) {
        throw ConfigInvalid(doc.source() + ": " + ex.what());
    }
    return cfg;
}

std::string join_numbers(const std::vector<double>& values, double scale) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ";" : "") + format_number(values[i] * scale);
    return out;
}

std::string failure_tag(const std::exception& ex) {
    if (dynamic_cast<const SqueezeDiverges*>(&ex)) return "squeeze-diverges";
    if (dynamic_cast<const UnstablePoint*>(&ex)) return "unstable";
    if (dynamic_cast<const ResidueInvalid*>(&ex)) return "residue-invalid";
    if (dynamic_cast<const SingularResolvent*>(&ex)) return "singular";
    if (dynamic_cast<const QuadratureNotConverged*>(&ex)) return "quadrature-not-converged";
    return "error";
}

}
