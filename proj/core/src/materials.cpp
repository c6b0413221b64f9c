#include "polaromech/materials.hpp"

#include "builtin_materials.hpp"
#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/keyvalue.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace pm {

double MaterialParams::plane_stress_sound_speed() const {
    return std::sqrt(young_modulus / (density * (1.0 - poisson_ratio * poisson_ratio)));
}

double AlloyModel::bandgap(double p, const MaterialParams& host) const {
    if (p < 0.0 || p > max_fraction)
        throw OutOfRange("indium fraction " + std::to_string(p) + " outside [0, " + std::to_string(max_fraction) + "]");
    return host.bandgap + gap_linear * p + gap_quadratic * p * p;
}

double AlloyModel::conduction_offset_fraction(double p) const {
    if (p < 0.0 || p > max_fraction)
        throw OutOfRange("indium fraction " + std::to_string(p) + " outside [0, " + std::to_string(max_fraction) + "]");
    return offset_0 + offset_1 * p + offset_2 * p * p;
}

std::pair<double, double> alloy_band_offsets(double p, const MaterialParams& host, const AlloyModel& alloy) {
    const double gap_drop = host.bandgap - alloy.bandgap(p, host);
    const double conduction = alloy.conduction_offset_fraction(p) * gap_drop;
    return {conduction, gap_drop - conduction};
}

namespace {

MaterialParams read_record(const KeyValueDocument& doc, const std::string& name) {
    MaterialParams m;
    m.name = name;
    auto dimless = [&](const char* key) { return doc.quantity(name, key, Dimension::dimensionless); };
    m.refractive_index = dimless("refractive_index");
    m.density = doc.quantity(name, "density", Dimension::density);
    m.young_modulus = doc.quantity(name, "young_modulus", Dimension::pressure);
    m.poisson_ratio = dimless("poisson_ratio");
    m.deformation_potential_e = doc.quantity(name, "deformation_potential_e", Dimension::energy);
    m.deformation_potential_h = doc.quantity(name, "deformation_potential_h", Dimension::energy);
    m.mass_e = dimless("mass_e");
    m.mass_hh_z = dimless("mass_hh_z");
    m.mass_hh_inplane = dimless("mass_hh_inplane");
    m.dielectric_constant = dimless("dielectric_constant");
    m.sound_speed_la = doc.quantity(name, "sound_speed_la", Dimension::velocity);
    m.bandgap = doc.quantity(name, "bandgap", Dimension::energy);
    m.kane_energy = doc.quantity(name, "kane_energy", Dimension::energy);

    const double nu = m.poisson_ratio;
    if (!(m.young_modulus > 0 && m.density > 0 && nu > -1.0 && nu < 0.5))
        throw ConfigInvalid(doc.source() + ": " + name + ": elastic constants out of range");
    m.lame_mu = m.young_modulus / (2.0 * (1.0 + nu));
    m.lame_lambda = m.young_modulus * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    return m;
}

}

MaterialTable MaterialTable::from_text(std::string_view text, std::string source) {
    auto doc = KeyValueDocument::parse(text, std::move(source));
    MaterialTable table;
    table.version_ = doc.text_or("meta", "version", "unversioned");
    for (const auto& sec : doc.sections()) {
        if (sec == "meta" || sec == "calibration" || sec == "InGaAs") continue;
        table.records_.emplace(sec, read_record(doc, sec));
    }
    if (doc.has_section("InGaAs")) {
        auto& a = table.alloy_;
        a.gap_linear = doc.quantity("InGaAs", "gap_linear", Dimension::energy);
        a.gap_quadratic = doc.quantity("InGaAs", "gap_quadratic", Dimension::energy);
        a.offset_0 = doc.quantity("InGaAs", "offset_0", Dimension::dimensionless);
        a.offset_1 = doc.quantity_or("InGaAs", "offset_1", Dimension::dimensionless, 0.0);
        a.offset_2 = doc.quantity_or("InGaAs", "offset_2", Dimension::dimensionless, 0.0);
        a.max_fraction = doc.quantity_or("InGaAs", "max_fraction", Dimension::dimensionless, 0.25);
        table.alloy_host_ = doc.text_or("InGaAs", "host", "GaAs");
        if (!table.records_.count(table.alloy_host_))
            throw ConfigInvalid(doc.source() + ": InGaAs host '" + table.alloy_host_ + "' is not defined");
    }
    if (doc.has_section("calibration"))
        for (const auto& key : doc.keys("calibration")) {
            const auto& raw = doc.text("calibration", key);
            Dimension d = raw.find_first_of(" \t") == std::string::npos ? Dimension::dimensionless : Dimension::length;
            table.calibration_[key] = doc.quantity("calibration", key, d);
        }
    return table;
}

MaterialTable MaterialTable::builtin() {
    static const MaterialTable table = from_text(detail::builtin_materials_text, "<builtin materials>");
    return table;
}

MaterialTable MaterialTable::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot read material table '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str(), path.string());
}

MaterialParams MaterialTable::lookup(std::string_view name) const {
    if (name == "InGaAs(p)" || name == "InGaAs") {
        if (alloy_host_.empty()) throw UnknownMaterial("material table defines no InGaAs alloy");
        auto m = records_.find(alloy_host_)->second;
        m.name = "InGaAs(p)";
        return m;
    }
    auto it = records_.find(name);
    if (it == records_.end() || name == "meta") throw UnknownMaterial("unknown material '" + std::string(name) + "'");
    return it->second;
}

double MaterialTable::calibration(const std::string& key) const {
    auto it = calibration_.find(key);
    if (it == calibration_.end()) throw ConfigInvalid("material table lacks calibration entry '" + key + "'");
    return it->second;
}

MaterialParams lookup_material(const MaterialTable& table, std::string_view name) { return table.lookup(name); }

}
