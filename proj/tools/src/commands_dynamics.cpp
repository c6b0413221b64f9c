#include "commands.hpp"
#include "setup.hpp"

#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace pm::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<Field> point_fields() {
    return {
        quantity("point", "detuning", Dimension::frequency, true),
        quantity("point", "population", Dimension::dimensionless, true),
    };
}

std::vector<Field> fluctuation_schema(std::vector<Field> extra = {}) {
    auto s = system_fields();
    append(s, point_fields());
    append(s, extra);
    return s;
}

std::vector<OccupationMethod> occupation_methods(const KeyValueDocument& doc) {
    if (!doc.has("cool", "methods")) return {OccupationMethod::residues, OccupationMethod::quadrature};
    std::vector<OccupationMethod> out;
    for (const auto& name : split_list(doc.text("cool", "methods"))) {
        bool found = false;
        for (auto m : {OccupationMethod::residues, OccupationMethod::weak_coupling_residues,
                       OccupationMethod::quadrature, OccupationMethod::exact_qle}) {
            if (to_string(m) == name) {
                out.push_back(m);
                found = true;
            }
        }
        if (!found) throw ConfigInvalid(doc.source() + ": cool.methods: unknown method '" + name + "'");
    }
    if (out.empty()) throw ConfigInvalid(doc.source() + ": cool.methods is empty");
    return out;
}

// Frequency grid from [spectrum] in units of the mechanical frequency.
std::vector<double> spectrum_grid(const KeyValueDocument& doc, double mechanical_frequency) {
    const double from = doc.quantity_or("spectrum", "from", Dimension::dimensionless, 0.5);
    const double to = doc.quantity_or("spectrum", "to", Dimension::dimensionless, 1.5);
    const long points = doc.integer_or("spectrum", "points", 201);
    if (points < 1 || !(from > 0) || !(to > 0))
        throw ConfigInvalid(doc.source() + ": spectrum needs positive bounds and at least one point");
    auto grid = points == 1 ? std::vector<double>{from} : num::linspace(from, to, static_cast<std::size_t>(points));
    for (auto& w : grid) w *= mechanical_frequency;
    return grid;
}

std::vector<Field> spectrum_fields() {
    return {
        quantity("spectrum", "from", Dimension::dimensionless),
        quantity("spectrum", "to", Dimension::dimensionless),
        integer("spectrum", "points"),
    };
}

template <class F>
auto attempt(F&& f, std::string& status) -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const ComputeError& ex) {
        if (status == "ok") status = failure_tag(ex);
        return std::nullopt;
    }
}

// ---- stability ----

std::vector<Field> stability_schema() {
    auto s = system_fields();
    append(s, {
                  quantity("system", "radiative_decay", Dimension::frequency),
                  quantity("drive", "detuning", Dimension::frequency, true),
                  quantity("drive", "input_rate", Dimension::dimensionless, true),
                  flag("stability", "mean_field_check"),
              });
    return s;
}

std::vector<TableSpec> stability_tables(const Context& ctx) {
    std::vector<Column> cols = {{"detuning_over_kappa", "kappa"},
                                {"input_rate_over_kappa", "kappa"},
                                {"region", ""},
                                {"roots", ""},
                                {"branch", ""},
                                {"population", ""},
                                {"class", ""},
                                {"max_growth", "kappa"}};
    if (parse_flag(ctx.config, "stability", "mean_field_check", false)) cols.push_back({"mean_field_departs", ""});
    return {{"stability", cols}};
}

PointRows stability_rows(const Context& ctx, const KeyValueDocument& doc) {
    DriveConfig cfg;
    cfg.total_decay = rate(doc, "system", "total_decay");
    cfg.radiative_decay = rate_or(doc, "system", "radiative_decay", cfg.total_decay);
    cfg.mechanical_frequency = rate(doc, "system", "mechanical_frequency");
    cfg.mechanical_decay = rate(doc, "system", "mechanical_decay");
    cfg.coupling = rate(doc, "system", "coupling");
    cfg.kerr = rate(doc, "system", "kerr");
    cfg.detuning = rate(doc, "drive", "detuning");
    cfg.input_rate = doc.quantity("drive", "input_rate", Dimension::dimensionless) * cfg.total_decay;
    try {
        cfg.validate();
    } catch (const Error& ex) {
        throw ConfigInvalid(doc.source() + ": " + ex.what());
    }
    const bool check = parse_flag(ctx.config, "stability", "mean_field_check", false);
    auto pt = classify_point(cfg);
    PointRows out(1);
    const double k = cfg.total_decay;
    for (std::size_t i = 0; i < pt.roots.size(); ++i) {
        const auto& rep = pt.reports[i];
        Row row = {cfg.detuning / k, cfg.input_rate / k, std::string(to_string(pt.region)),
                   static_cast<long>(pt.roots.size()), static_cast<long>(rep.branch), pt.roots[i].population,
                   std::string(to_string(rep.classification)), rep.max_growth / k};
        if (check) row.emplace_back(static_cast<long>(mean_field_departs(pt.roots[i], cfg)));
        out[0].push_back(std::move(row));
    }
    return out;
}

// ---- damping ----

std::vector<TableSpec> damping_tables(const Context&) {
    return {{"damping",
             {{"detuning_over_kappa", "kappa"},
              {"population", ""},
              {"squeezing", ""},
              {"optical_damping", "kappa"},
              {"optical_spring", "kappa"},
              {"optical_damping_exact", "kappa"},
              {"eta_plus", ""},
              {"eta_minus", ""},
              {"sideband_plus", "kappa"},
              {"sideband_minus", "kappa"},
              {"single_mode_unstable", ""},
              {"oscillation", ""},
              {"status", ""}}}};
}

PointRows damping_rows(const Context&, const KeyValueDocument& doc) {
    auto cfg = fluctuation_point(doc);
    const double k = cfg.total_decay;
    std::string status = "ok";
    auto frame = attempt([&] { return squeeze_frame(cfg); }, status);
    std::optional<BackActionResult> ba;
    if (frame) ba = backaction_rates(*frame, cfg, cfg.mechanical_frequency);
    auto stab = fluctuation_stability(cfg);
    auto exact = attempt([&] { return exact_optical_damping(cfg); }, status);
    const bool single_mode = stab.classification == Stability::single_mode_unstable;
    const bool oscillating = exact && cfg.mechanical_decay + *exact < 0;
    PointRows out(1);
    out[0].push_back({cfg.detuning / k, cfg.population, frame ? frame->squeezing : nan,
                      ba ? ba->optical_damping / k : nan, ba ? ba->optical_spring / k : nan, exact ? *exact / k : nan,
                      ba ? ba->enhancement.first : nan, ba ? ba->enhancement.second : nan,
                      ba ? ba->shifted_sidebands.first / k : nan, ba ? ba->shifted_sidebands.second / k : nan,
                      static_cast<long>(single_mode), static_cast<long>(oscillating), status});
    return out;
}

// ---- cool ----

std::vector<Field> cool_schema() {
    return fluctuation_schema({text("cool", "methods"), flag("cool", "optimize")});
}

std::vector<TableSpec> cool_tables(const Context& ctx) {
    const bool optimize = parse_flag(ctx.config, "cool", "optimize", false);
    std::vector<Column> cols = {{"population", ""}, {"thermal_occupation", ""}};
    if (!optimize) cols.insert(cols.begin(), {"detuning_over_kappa", "kappa"});
    for (auto m : occupation_methods(ctx.config)) {
        const std::string name(to_string(m));
        if (optimize) cols.push_back({"optimal_detuning_" + name, "kappa"});
        cols.push_back({(optimize ? "min_occupation_" : "occupation_") + name, ""});
    }
    cols.push_back({"status", ""});
    return {{optimize ? "cooling_optimum" : "cooling", cols}};
}

PointRows cool_rows(const Context& ctx, const KeyValueDocument& doc) {
    auto cfg = fluctuation_point(doc);
    const double k = cfg.total_decay;
    const bool optimize = parse_flag(ctx.config, "cool", "optimize", false);
    std::string status = "ok";
    Row row;
    if (!optimize) row.emplace_back(cfg.detuning / k);
    row.emplace_back(cfg.population);
    row.emplace_back(thermal_occupation(cfg.mechanical_frequency, cfg.temperature));
    for (auto m : occupation_methods(doc)) {
        if (optimize) {
            auto best = attempt([&] { return minimize_occupation(cfg, m); }, status);
            const bool found = best && std::isfinite(best->occupation);
            if (best && !found && status == "ok") status = "no-stable-optimum";
            row.emplace_back(found ? best->detuning / k : nan);
            row.emplace_back(found ? best->occupation : nan);
        } else {
            auto r = attempt([&] { return phonon_occupation(cfg, m); }, status);
            row.emplace_back(r ? r->occupation : nan);
        }
    }
    row.emplace_back(status);
    PointRows out(1);
    out[0].push_back(std::move(row));
    return out;
}

// ---- psd ----

std::vector<TableSpec> psd_tables(const Context&) {
    return {{"psd",
             {{"detuning_over_kappa", "kappa"},
              {"population", ""},
              {"frequency", "Omega"},
              {"psd_squeezed", "xzpf^2 s/rad"},
              {"psd_exact", "xzpf^2 s/rad"},
              {"status", ""}}}};
}

PointRows spectrum_rows(const FluctuationConfig& cfg, const std::vector<double>& grid) {
    const double k = cfg.total_decay;
    std::string status = "ok";
    auto analytic = attempt([&] { return displacement_psd(squeeze_frame(cfg), cfg, grid); }, status);
    auto exact = attempt([&] { return exact_qle_spectrum(cfg, grid); }, status);
    PointRows out(1);
    for (std::size_t i = 0; i < grid.size(); ++i)
        out[0].push_back({cfg.detuning / k, cfg.population, grid[i] / cfg.mechanical_frequency,
                          analytic ? analytic->density[i] : nan, exact ? exact->density[i] : nan, status});
    return out;
}

PointRows psd_rows(const Context&, const KeyValueDocument& doc) {
    auto cfg = fluctuation_point(doc);
    return spectrum_rows(cfg, spectrum_grid(doc, cfg.mechanical_frequency));
}

// ---- phonoriton ----

std::vector<TableSpec> phonoriton_tables(const Context& ctx) {
    auto t = psd_tables(ctx);
    t[0].name = "spectrum";
    t.push_back({"modes",
                 {{"detuning_over_kappa", "kappa"},
                  {"population", ""},
                  {"squeezed_detuning", "kappa"},
                  {"upper", "Omega"},
                  {"upper_width", "kappa"},
                  {"lower", "Omega"},
                  {"lower_width", "kappa"},
                  {"splitting_real", "kappa"},
                  {"splitting_imag", "kappa"},
                  {"strong_coupling", ""},
                  {"status", ""}}});
    return t;
}

PointRows phonoriton_rows(const Context&, const KeyValueDocument& doc) {
    auto cfg = fluctuation_point(doc);
    auto out = spectrum_rows(cfg, spectrum_grid(doc, cfg.mechanical_frequency));
    const double k = cfg.total_decay, om = cfg.mechanical_frequency;
    std::string status = "ok";
    auto frame = attempt([&] { return squeeze_frame(cfg); }, status);
    std::optional<PhonoritonModes> modes;
    if (frame) modes = phonoriton_modes(*frame, cfg);
    out.emplace_back();
    out[1].push_back({cfg.detuning / k, cfg.population, frame ? frame->detuning / k : nan,
                      modes ? modes->upper.real() / om : nan, modes ? -2 * modes->upper.imag() / k : nan,
                      modes ? modes->lower.real() / om : nan, modes ? -2 * modes->lower.imag() / k : nan,
                      modes ? modes->splitting.real() / k : nan, modes ? modes->splitting.imag() / k : nan,
                      modes ? static_cast<long>(modes->strong_coupling) : 0L, status});
    return out;
}

}

std::vector<Command> dynamics_commands() {
    return {
        {"stability", "Steady-state roots and stability classes over drive detuning and input rate",
         stability_schema(), stability_tables, stability_rows},
        {"damping", "Optical damping, spring and sideband enhancement with the Kerr term", fluctuation_schema(),
         damping_tables, damping_rows},
        {"cool", "Phonon occupation under sideband cooling, at fixed or optimal detuning", cool_schema(),
         cool_tables, cool_rows},
        {"psd", "Displacement spectral density from the squeezed-frame formula and the exact solve",
         fluctuation_schema(spectrum_fields()), psd_tables, psd_rows},
        {"phonoriton", "Displacement spectra and normal modes at large population",
         fluctuation_schema(spectrum_fields()), phonoriton_tables, phonoriton_rows},
    };
}

}
