#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace pm {

struct MaterialParams {
    std::string name;
    double refractive_index = 0;
    double density = 0;
    double young_modulus = 0;
    double poisson_ratio = 0;
    double lame_lambda = 0;
    double lame_mu = 0;
    double deformation_potential_e = 0;
    double deformation_potential_h = 0;
    double mass_e = 0;             // m0 units
    double mass_hh_z = 0;          // m0 units, growth axis
    double mass_hh_inplane = 0;    // m0 units
    double dielectric_constant = 0;
    double sound_speed_la = 0;
    double bandgap = 0;
    double kane_energy = 0;

    double plane_stress_sound_speed() const;
    // a_h - a_e, positive for GaAs.
    double deformation_gap() const { return deformation_potential_h - deformation_potential_e; }
};

// Quadratic fits in the indium fraction p, valid on [0, max_fraction]:
//   E_g(p) = E_g(host) + gap_linear p + gap_quadratic p^2
//   dEc/dEg(p) = offset_0 + offset_1 p + offset_2 p^2
struct AlloyModel {
    double gap_linear = 0;
    double gap_quadratic = 0;
    double offset_0 = 0;
    double offset_1 = 0;
    double offset_2 = 0;
    double max_fraction = 0.25;

    double bandgap(double p, const MaterialParams& host) const;
    double conduction_offset_fraction(double p) const;
};

// Band offsets (conduction, valence) of an InGaAs layer with fraction p in the host.
std::pair<double, double> alloy_band_offsets(double p, const MaterialParams& host, const AlloyModel& alloy);

class MaterialTable {
public:
    static MaterialTable builtin();
    static MaterialTable from_file(const std::filesystem::path& path);
    static MaterialTable from_text(std::string_view text, std::string source);

    // Accepts "GaAs", "AlAs" and "InGaAs(p)".
    MaterialParams lookup(std::string_view name) const;
    const AlloyModel& alloy() const { return alloy_; }
    const std::string& version() const { return version_; }
    double calibration(const std::string& key) const;

private:
    std::map<std::string, MaterialParams, std::less<>> records_;
    std::map<std::string, double> calibration_;
    AlloyModel alloy_;
    std::string alloy_host_;
    std::string version_;
};

MaterialParams lookup_material(const MaterialTable& table, std::string_view name);

}
