#include "commands.hpp"
#include "setup.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"

#include <cmath>
#include <limits>

namespace pm::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr double GHz = 1e9, MHz = 1e6;

double wavelength_for(const Context& ctx, const KeyValueDocument& doc) {
    if (doc.has("geometry", "wavelength")) return doc.quantity("geometry", "wavelength", Dimension::length);
    return phys::wavelength_of(exciton(ctx, doc).transition_energy);
}

double resonance_target(const PlanarGeometry& g) {
    auto slab = slab_effective_index(g.thickness, g.material.refractive_index, g.wavelength);
    return slab.effective_index * 2 * phys::pi / g.wavelength * g.outer_radius;
}

std::vector<int> azimuthal_orders(const KeyValueDocument& doc, const PlanarGeometry& g, int radial_order) {
    if (doc.has("modes", "optical_azimuthal")) return integer_list(doc, "modes", "optical_azimuthal", {});
    return {resonant_azimuthal_order(radial_order, resonance_target(g))};
}

MechModePlanar planar_mechanics(const PlanarGeometry& g, int radial_order, int azimuthal_order) {
    return g.is_ring() ? mech_ring(g, radial_order, azimuthal_order) : rbm_disk(g, radial_order);
}

// ---- exciton ----

std::vector<Field> exciton_schema() {
    auto s = quantum_well_fields();
    s.push_back(flag("exciton", "profiles"));
    return s;
}

std::vector<TableSpec> exciton_tables(const Context& ctx) {
    std::vector<TableSpec> t = {{"exciton",
                                 {{"binding_energy", "meV"},
                                  {"bohr_radius", "nm"},
                                  {"transition_energy", "eV"},
                                  {"radiative_halfwidth", "ueV"},
                                  {"envelope_overlap", ""},
                                  {"oscillator_strength_per_area", "1/um2"},
                                  {"iterations", ""}}}};
    if (parse_flag(ctx.config, "exciton", "profiles", false)) {
        t.push_back({"envelopes", {{"z", "nm"}, {"electron", "nm^-1/2"}, {"hole", "nm^-1/2"}}});
        t.push_back({"radial", {{"rho", "nm"}, {"phi", "1/nm"}, {"potential", "meV"}}});
    }
    return t;
}

PointRows exciton_rows(const Context& ctx, const KeyValueDocument& doc) {
    auto x = exciton(ctx, doc);
    PointRows out(1);
    out[0].push_back({x.binding_energy / phys::meV, x.bohr_radius / phys::nm, x.transition_energy / phys::eV,
                      x.radiative_halfwidth / phys::ueV, x.envelope_overlap, x.oscillator_strength_per_area * 1e-12,
                      static_cast<long>(x.iterations)});
    if (parse_flag(ctx.config, "exciton", "profiles", false)) {
        out.resize(3);
        const auto n = std::min(x.electron.z.size(), x.hole.z.size());
        for (std::size_t i = 0; i < n; ++i)
            out[1].push_back({x.electron.z[i] / phys::nm, x.electron.amplitude[i] * std::sqrt(phys::nm),
                              x.hole.amplitude[i] * std::sqrt(phys::nm)});
        for (std::size_t i = 0; i < x.radial.rho.size(); ++i) {
            const double rho = x.radial.rho[i];
            out[2].push_back({rho / phys::nm, x.radial.phi[i] * phys::nm, x.potential.at(rho) / phys::meV});
        }
    }
    return out;
}

// ---- modes ----

std::vector<Field> modes_schema() {
    auto s = geometry_fields();
    append(s, quantum_well_fields());
    append(s, mode_window_fields());
    return s;
}

std::vector<TableSpec> modes_tables(const Context& ctx) {
    if (geometry_kind(ctx.config) == "pillar")
        return {{"pillar",
                 {{"mechanical_frequency", "GHz"},
                  {"effective_mass", "pg"},
                  {"zero_point", "fm"},
                  {"strain_reduction", ""},
                  {"field_reduction", ""},
                  {"effective_index", ""},
                  {"penetration_length", "nm"},
                  {"optical_linewidth", "GHz"}}}};
    return {{"modes",
             {{"family", ""},
              {"radial_order", ""},
              {"azimuthal_order", ""},
              {"wavevector", "1/um"},
              {"frequency", "GHz"},
              {"zero_point", "fm"},
              {"effective_mass", "pg"}}}};
}

PointRows modes_rows(const Context& ctx, const KeyValueDocument& doc) {
    PointRows out(1);
    if (geometry_kind(doc) == "pillar") {
        auto g = pillar_geometry(ctx, doc);
        auto m = pillar_mech_mode(g);
        auto res = cavity_resonance(g);
        out[0].push_back({m.frequency / two_pi / GHz, m.effective_mass * 1e15, m.zero_point * 1e15,
                          join_numbers(m.strain_reduction), join_numbers(m.field_reduction), g.dbr.effective_index,
                          g.dbr.penetration_length / phys::nm, res.linewidth / two_pi / GHz});
        return out;
    }
    auto g = planar_geometry(ctx, doc, wavelength_for(ctx, doc));
    for (int p : integer_list(doc, "modes", "optical_radial", {1}))
        for (int l : azimuthal_orders(doc, g, p)) {
            auto o = wgm_mode(g, p, l);
            out[0].push_back({std::string("optical"), static_cast<long>(p), static_cast<long>(l), o.wavevector * 1e-6,
                              o.frequency / two_pi / GHz, nan, nan});
        }
    for (int n : integer_list(doc, "modes", "mechanical_radial", {1}))
        for (int m : g.is_ring() ? integer_list(doc, "modes", "mechanical_azimuthal", {0}) : std::vector<int>{0}) {
            auto mech = planar_mechanics(g, n, m);
            out[0].push_back({std::string("mechanical"), static_cast<long>(n), static_cast<long>(m),
                              mech.wavevector * 1e-6, mech.frequency / two_pi / GHz, mech.zero_point * 1e15,
                              mech.effective_mass * 1e15});
        }
    return out;
}

// ---- couplings ----

std::vector<Field> coupling_inputs() {
    return {
        quantity("couplings", "photon_phonon_per_displacement", Dimension::frequency_per_length),
        quantity("couplings", "photon_phonon", Dimension::frequency),
        quantity("couplings", "exciton_exciton", Dimension::energy_area),
        quantity("polariton", "exciton_fraction", Dimension::dimensionless),
        quantity("polariton", "cavity_decay", Dimension::frequency),
        quantity("polariton", "exciton_decay", Dimension::frequency),
        quantity("polariton", "mechanical_decay", Dimension::frequency),
    };
}

double photon_phonon(const KeyValueDocument& doc, double zero_point) {
    if (doc.has("couplings", "photon_phonon")) return rate(doc, "couplings", "photon_phonon");
    if (doc.has("couplings", "photon_phonon_per_displacement"))
        return two_pi * doc.quantity("couplings", "photon_phonon_per_displacement", Dimension::frequency_per_length) *
               zero_point;
    return 0.0;
}

std::vector<Field> couplings_schema() {
    auto s = geometry_fields();
    append(s, quantum_well_fields());
    append(s, mode_window_fields());
    append(s, coupling_inputs());
    return s;
}

std::vector<TableSpec> couplings_tables(const Context&) {
    return {{"couplings",
             {{"geometry", ""},
              {"optical_mode", ""},
              {"mechanical_mode", ""},
              {"mechanical_frequency", "GHz"},
              {"zero_point", "fm"},
              {"g_cx", "GHz"},
              {"rabi_splitting", "meV"},
              {"g_cm", "MHz"},
              {"g_xm", "MHz"},
              {"exciton_fraction", ""},
              {"g_lm", "MHz"},
              {"g_um", "MHz"},
              {"g_lu", "MHz"},
              {"chi_l", "MHz"},
              {"kappa_l", "GHz"},
              {"cooperativity", ""}}}};
}

struct SelectedModes {
    std::string optical_id, mechanical_id;
    double g_xm = 0, mech_frequency = 0, zero_point = 0, modal_area = 0, g_cx = 0;
};

SelectedModes planar_selection(const Context& ctx, const KeyValueDocument& doc) {
    auto x = exciton(ctx, doc);
    const double wavelength = doc.has("geometry", "wavelength")
                                  ? doc.quantity("geometry", "wavelength", Dimension::length)
                                  : phys::wavelength_of(x.transition_energy);
    auto g = planar_geometry(ctx, doc, wavelength);
    SelectedModes best;
    double best_abs = -1;
    for (int p : integer_list(doc, "modes", "optical_radial", {1}))
        for (int l : azimuthal_orders(doc, g, p)) {
            auto o = wgm_mode(g, p, l);
            for (int n : integer_list(doc, "modes", "mechanical_radial", {1}))
                for (int m : g.is_ring() ? integer_list(doc, "modes", "mechanical_azimuthal", {0}) : std::vector<int>{0}) {
                    auto mech = planar_mechanics(g, n, m);
                    auto c = gxm_overlap(o, mech, g.material);
                    if (std::abs(c.per_phonon) > best_abs) {
                        best_abs = std::abs(c.per_phonon);
                        best.optical_id = "p=" + std::to_string(p) + " l=" + std::to_string(l);
                        best.mechanical_id = "n=" + std::to_string(n) + " m=" + std::to_string(m);
                        best.g_xm = c.per_phonon;
                        best.mech_frequency = mech.frequency;
                        best.zero_point = mech.zero_point;
                        best.modal_area = modal_area(o);
                    }
                }
        }
    if (best_abs < 0) throw ConfigInvalid(doc.source() + ": empty mode window");
    auto slab = slab_effective_index(g.thickness, g.material.refractive_index, g.wavelength);
    std::vector<double> qws = g.qw_positions.empty() ? std::vector<double>{0.0} : g.qw_positions;
    best.g_cx = gcx_planar(x, slab, qws);
    return best;
}

SelectedModes pillar_selection(const Context& ctx, const KeyValueDocument& doc, bool with_exciton) {
    auto g = pillar_geometry(ctx, doc);
    if (g.qw_offsets.empty()) g.qw_offsets = {0.0};
    auto m = pillar_mech_mode(g);
    auto e = gxm_pillar(m, ctx.materials.lookup(doc.text_or("geometry", "material", "GaAs")));
    SelectedModes s;
    s.optical_id = "HE11";
    s.mechanical_id = "breathing";
    s.g_xm = e.per_phonon;
    s.mech_frequency = m.frequency;
    s.zero_point = m.zero_point;
    s.modal_area = modal_area(m.envelope);
    if (with_exciton) s.g_cx = gcx_pillar(exciton(ctx, doc).radiative_halfwidth, g.dbr, m.field_reduction);
    return s;
}

PointRows couplings_rows(const Context& ctx, const KeyValueDocument& doc) {
    const auto kind = geometry_kind(doc);
    auto s = kind == "pillar" ? pillar_selection(ctx, doc, true) : planar_selection(ctx, doc);
    const double g_cm = photon_phonon(doc, s.zero_point);
    const double g_xx = doc.quantity_or("couplings", "exciton_exciton", Dimension::energy_area, 0.0);
    const double kerr = g_xx / (phys::hbar * s.modal_area);

    double X = nan, g_lm = nan, g_um = nan, g_lu = nan, chi_l = nan, kappa_l = nan, coop = nan;
    if (doc.has("polariton", "exciton_fraction")) {
        X = doc.quantity("polariton", "exciton_fraction", Dimension::dimensionless);
        if (!(X > 0 && X < 1))
            throw ConfigInvalid(doc.source() + ": polariton.exciton_fraction must lie strictly between 0 and 1");
        PolaritonInputs in;
        in.exciton_frequency = 0;
        in.cavity_frequency = detuning_for_exciton_fraction(X, s.g_cx);
        in.g_cx = s.g_cx;
        in.g_cm = g_cm;
        in.g_xm = s.g_xm;
        in.kerr = kerr;
        in.cavity_decay = rate_or(doc, "polariton", "cavity_decay", 0.0);
        in.exciton_decay = rate_or(doc, "polariton", "exciton_decay", 0.0);
        auto b = polariton_transform(in);
        g_lm = b.g_lm;
        g_um = b.g_um;
        g_lu = b.g_lu;
        chi_l = b.chi_l;
        kappa_l = b.kappa_l;
        if (doc.has("polariton", "mechanical_decay") && kappa_l > 0)
            coop = cooperativity(g_lm, kappa_l, rate(doc, "polariton", "mechanical_decay"));
    }
    PointRows out(1);
    out[0].push_back({kind, s.optical_id, s.mechanical_id, s.mech_frequency / two_pi / GHz, s.zero_point * 1e15,
                      s.g_cx / two_pi / GHz, 2 * phys::hbar * s.g_cx / phys::meV, g_cm / two_pi / MHz,
                      s.g_xm / two_pi / MHz, X, g_lm / two_pi / MHz, g_um / two_pi / MHz, g_lu / two_pi / MHz,
                      chi_l / two_pi / MHz, kappa_l / two_pi / GHz, coop});
    return out;
}

// ---- coopmap ----

std::vector<Field> coopmap_schema() {
    return {
        quantity("geometry", "radius", Dimension::length, true),
        quantity_list("geometry", "qw_positions", Dimension::length),
        integer("geometry", "mirror_pairs"),
        text("geometry", "material"),
        quantity("couplings", "photon_phonon_per_displacement", Dimension::frequency_per_length, true),
        quantity("polariton", "exciton_fraction", Dimension::dimensionless, true),
        quantity("polariton", "cavity_decay", Dimension::frequency, true),
        quantity("polariton", "exciton_decay", Dimension::frequency, true),
        quantity("polariton", "mechanical_decay", Dimension::frequency, true),
    };
}

std::vector<TableSpec> coopmap_tables(const Context&) {
    return {{"coopmap",
             {{"mechanical_frequency", "GHz"},
              {"zero_point", "fm"},
              {"g_cm", "MHz"},
              {"g_xm", "MHz"},
              {"g_lm", "MHz"},
              {"kappa_l", "GHz"},
              {"cooperativity", ""}}}};
}

PointRows coopmap_rows(const Context& ctx, const KeyValueDocument& doc) {
    auto s = pillar_selection(ctx, doc, false);
    const double X = doc.quantity("polariton", "exciton_fraction", Dimension::dimensionless);
    if (!(X >= 0 && X <= 1)) throw ConfigInvalid(doc.source() + ": polariton.exciton_fraction must lie in [0, 1]");
    const double g_cm = photon_phonon(doc, s.zero_point);
    const double g_lm = X * s.g_xm + (1 - X) * g_cm;
    const double kappa_l = (1 - X) * rate(doc, "polariton", "cavity_decay") + X * rate(doc, "polariton", "exciton_decay");
    const double coop = cooperativity(g_lm, kappa_l, rate(doc, "polariton", "mechanical_decay"));
    PointRows out(1);
    out[0].push_back({s.mech_frequency / two_pi / GHz, s.zero_point * 1e15, g_cm / two_pi / MHz, s.g_xm / two_pi / MHz,
                      g_lm / two_pi / MHz, kappa_l / two_pi / GHz, coop});
    return out;
}

}

std::vector<Command> structure_commands() {
    return {
        {"exciton", "Self-consistent QW exciton: binding energy, Bohr radius, linewidth, optional profiles",
         exciton_schema(), exciton_tables, exciton_rows},
        {"modes", "Optical and mechanical modes of a disk, ring or pillar", modes_schema(), modes_tables, modes_rows},
        {"couplings", "Pairwise couplings, polariton basis and cooperativity", couplings_schema(), couplings_tables,
         couplings_rows},
        {"coopmap", "Pillar cooperativity over radius and exciton fraction", coopmap_schema(), coopmap_tables,
         coopmap_rows},
    };
}

}
