#include "polaromech/constants.hpp"
#include "polaromech/couplings.hpp"
#include "polaromech/dynamics.hpp"
#include "polaromech/exciton.hpp"
#include "polaromech/fluctuations.hpp"
#include "polaromech/numerics.hpp"
#include "polaromech/pillar_modes.hpp"
#include "polaromech/planar_modes.hpp"
#include "polaromech_cli/scenario.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <queue>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace pm;
namespace fs = std::filesystem;

namespace {

constexpr double two_pi = 2 * phys::pi;

struct Report {
    int failures = 0;

    void line(int id, bool pass, const std::string& title, const std::string& detail) {
        std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double rel(double a, double b) { return std::abs(a / b - 1); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
void guarded(Report& r, int id, const std::string& title, F&& body) {
    try {
        body();
    } catch (const std::exception& ex) {
        r.line(id, false, title, std::string("exception: ") + ex.what());
    }
}

cli::Context load_context(const std::string& name) {
    const fs::path path = fs::path(POLAROMECH_CONFIG_DIR) / name;
    return {KeyValueDocument::load(path), MaterialTable::builtin(), path.parent_path()};
}

cli::OutputTable run_table(const std::string& command, const std::string& config, std::size_t table = 0) {
    auto ctx = load_context(config);
    return cli::build_tables(cli::find_command(command), ctx, 0).at(table);
}

std::size_t column(const cli::OutputTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i].name == name) return i;
    throw std::runtime_error("missing column " + name);
}

double number(const cli::Row& row, std::size_t i) { return std::get<double>(row.at(i)); }

// ---- 1 ----
void rbm_roots(Report& r) {
    const auto t0 = std::chrono::steady_clock::now();
    auto table = MaterialTable::builtin();
    PlanarGeometry disk;
    disk.material = table.lookup("GaAs");
    const double nu = disk.material.poisson_ratio;
    const double expected[] = {2.055, 5.391, 8.573};
    // Free-edge radial breathing condition x J0(x) = (1 - nu) J1(x).
    auto condition = [nu](double x) {
        return x * boost::math::cyl_bessel_j(0, x) - (1 - nu) * boost::math::cyl_bessel_j(1, x);
    };
    double worst_ref = 0, worst_oracle = 0;
    std::string values;
    double x = 0.5;
    for (int n = 1; n <= 3; ++n) {
        const double kr = rbm_disk(disk, n).wavevector * disk.outer_radius;
        while (condition(x) * condition(x + 0.05) > 0) x += 0.05;
        std::uintmax_t iters = 100;
        auto [lo, hi] = boost::math::tools::toms748_solve(condition, x, x + 0.05,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
        const double oracle = 0.5 * (lo + hi);
        x += 0.05;
        worst_ref = std::max(worst_ref, std::abs(kr - expected[n - 1]));
        worst_oracle = std::max(worst_oracle, std::abs(kr - oracle));
        values += fmt("%s%.4f", n > 1 ? ", " : "", kr);
    }
    const double dt = seconds_since(t0);
    r.line(1, nu == 0.31 && worst_ref < 1e-3 && worst_oracle < 1e-9 && dt < 1.0, "RBM root table",
           fmt("K R = {%s} at nu = %.2f; max |dev| vs reference %.1e, vs Bessel oracle %.1e; %.3f s", values.c_str(), nu,
               worst_ref, worst_oracle, dt));
}

// ---- 2 ----
void plane_stress(Report& r) {
    const double f = plane_stress_factor(0.31);
    const double oracle = (1 - 2 * 0.31) / (1 - 0.31);
    r.line(2, rel(f, 0.5507) < 5e-3 && rel(f, oracle) < 1e-14, "Plane-stress strain factor",
           fmt("(1-2nu)/(1-nu) = %.5f (reduction %.1f%%), reference 0.5507", f, 100 * (1 - f)));
}

// ---- 3 ----
void pillar_dbr(Report& r) {
    auto table = MaterialTable::builtin();
    auto g = make_pillar_geometry(table, 1.3e-6);
    const auto& d = g.dbr;
    const double formula = d.design_wavelength / (4 * (d.high_index - d.low_index));
    g.terminal_low_layer = true;
    auto dev = envelope_deviation(transfer_matrix_envelope(g), vertical_envelope(g));
    const bool pass = rel(d.effective_index, 3.2) < 0.02 && rel(d.penetration_length, formula) < 1e-14 &&
                      dev.cell_mean < 1e-3;
    r.line(3, pass, "Pillar DBR",
           fmt("n_eff = %.4f (ref 3.2, %.2f%%); L = %.3f nm = lambda/(4 dn); envelope vs transfer matrix mean "
               "per-period deviation %.2e",
               d.effective_index, 100 * rel(d.effective_index, 3.2), d.penetration_length * 1e9, dev.cell_mean));
}

// ---- 4 ----
void pillar_mechanics(Report& r) {
    auto g = make_pillar_geometry(MaterialTable::builtin(), 1.3e-6, {-39e-9, -15e-9, 15e-9, 39e-9});
    auto m = pillar_mech_mode(g);
    const double f = m.frequency / two_pi / 1e9;
    const double mass = m.effective_mass * 1e15, x = m.zero_point * 1e15;
    const double closure = 2 * m.effective_mass * m.frequency * m.zero_point * m.zero_point / phys::hbar;
    const bool pass = rel(f, 19.6) < 0.01 && rel(mass, 0.7) < 0.1 && rel(x, 0.8) < 0.1 && std::abs(closure - 1) < 1e-12;
    r.line(4, pass, "Pillar mechanics at R = 1.3 um",
           fmt("Omega/2pi = %.3f GHz (ref 19.6), m = %.3f pg (ref 0.7), x_zpf = %.3f fm (ref 0.8), "
               "2 m Omega x^2 / hbar - 1 = %.1e",
               f, mass, x, closure - 1));
}

// ---- 5 ----
void couplings(Report& r) {
    auto table = MaterialTable::builtin();
    auto gaas = table.lookup("GaAs");
    QWSpec qw;
    qw.host = gaas;
    qw.alloy = table.alloy();
    auto x = self_consistent_exciton(qw);
    auto g = make_pillar_geometry(table, 1.3e-6, {-39e-9, -15e-9, 15e-9, 39e-9});
    auto m = pillar_mech_mode(g);
    auto p = gxm_pillar(m, gaas);
    const double unit = two_pi * 1e12 * 1e9;
    const double peak = p.per_displacement_peak / unit, total = p.per_displacement / unit;
    const double gcx = gcx_pillar(x.radiative_halfwidth, g.dbr, m.field_reduction) / two_pi / 1e12;

    PlanarGeometry disk;
    disk.material = gaas;
    disk.wavelength = phys::wavelength_of(x.transition_energy);
    auto slab = slab_effective_index(disk.thickness, gaas.refractive_index, disk.wavelength);
    const double one_qw[] = {15e-9};
    const double rabi = 2 * phys::hbar * gcx_planar(x, slab, one_qw) / phys::meV;

    QWSpec centred = qw;
    centred.z_position = 0;
    const double reduced = gxm_overlap(m, gaas, 0.0).per_displacement;
    const double exact = gxm_exact(g, m, x, centred).per_displacement;
    const double gap = rel(exact, reduced);

    const bool pass = rel(peak, 44.3) < 0.02 && rel(total, 30) < 0.05 && rel(gcx, 0.53) < 0.05 &&
                      rel(rabi, 6.04) < 0.10 && gap < 0.01;
    r.line(5, pass, "Couplings",
           fmt("G_xm/eta_S = %.2f THz/nm (ref 44.3), 4-QW G_xm = %.2f THz/nm (ref 30), g_cx = %.4f THz (ref 0.53), "
               "single-QW Rabi = %.2f meV (ref 6.04), pillar exact vs reduced %.2f%%",
               peak, total, gcx, rabi, 100 * gap));
}

// ---- 6 ----
void exciton_solver(Report& r) {
    auto table = MaterialTable::builtin();
    QWSpec qw;
    qw.host = table.lookup("GaAs");
    qw.alloy = table.alloy();
    auto x = self_consistent_exciton(qw);
    const double eb = x.binding_energy / phys::meV;

    const auto& host = qw.host;
    const double mu = 1 / (1 / host.mass_e + 1 / host.mass_hh_inplane);
    const double eps = host.dielectric_constant;
    const double rydberg = mu * phys::m_electron * std::pow(phys::e_charge * phys::e_charge / (4 * phys::pi * phys::eps0 * eps), 2) /
                           (2 * phys::hbar * phys::hbar);
    SampledProfile coulomb;
    coulomb.x = default_radial_grid();
    for (double rho : coulomb.x)
        coulomb.y.push_back(-phys::e_charge * phys::e_charge / (4 * phys::pi * phys::eps0 * eps * rho));
    const double hydrogen = solve_radial_exciton(coulomb, mu).energy;
    const double oracle_gap = rel(hydrogen, -4 * rydberg);

    r.line(6, rel(eb, -6.8) < 0.05 && oracle_gap < 0.01, "Exciton solver",
           fmt("E_B = %.3f meV (ref -6.8, %.1f%%); 2D hydrogen %.3f meV vs -4 Ry* = %.3f meV (%.2f%%)", eb,
               100 * rel(eb, -6.8), hydrogen / phys::meV, -4 * rydberg / phys::meV, 100 * oracle_gap));
}

// ---- 7 ----
void planar_couplings(Report& r) {
    auto disk = run_table("couplings", "fig2_disk.cfg");
    auto ring = run_table("couplings", "fig2_ring.cfg");
    const auto& drow = disk.rows.at(0);
    const auto& rrow = ring.rows.at(0);
    const double gd = std::abs(number(drow, column(disk, "g_xm")));
    const double gr = std::abs(number(rrow, column(ring, "g_xm")));
    r.line(7, rel(gd, 2.29) < 0.10 && rel(gr, 5.47) < 0.10, "Disk and ring g_xm",
           fmt("disk %.3f MHz at %s / %s (ref 2.29); ring %.3f MHz at %s / %s (ref 5.47)", gd,
               std::get<std::string>(drow[1]).c_str(), std::get<std::string>(drow[2]).c_str(), gr,
               std::get<std::string>(rrow[1]).c_str(), std::get<std::string>(rrow[2]).c_str()));
}

// ---- 8 ----
void cooperativity_map(Report& r) {
    const double c0 = cooperativity(0.002, 1.0, 1e-4);
    auto map = run_table("coopmap", "fig3a.cfg");
    const auto ir = column(map, "geometry.radius"), ix = column(map, "polariton.exciton_fraction"),
               ic = column(map, "cooperativity");
    std::vector<double> radii, fractions;
    for (const auto& row : map.rows) {
        if (std::find(radii.begin(), radii.end(), number(row, ir)) == radii.end()) radii.push_back(number(row, ir));
        if (std::find(fractions.begin(), fractions.end(), number(row, ix)) == fractions.end())
            fractions.push_back(number(row, ix));
    }
    const std::size_t nr = radii.size(), nx = fractions.size();
    std::vector<char> above(nr * nx);
    double peak = 0;
    for (std::size_t i = 0; i < map.rows.size(); ++i) {
        const double c = number(map.rows[i], ic);
        above[i] = c >= 1;
        peak = std::max(peak, c);
    }
    std::size_t count = std::count(above.begin(), above.end(), 1), reached = 0;
    if (count > 0) {
        std::vector<char> seen(above.size());
        std::queue<std::size_t> q;
        const auto start = static_cast<std::size_t>(std::find(above.begin(), above.end(), 1) - above.begin());
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            auto k = q.front();
            q.pop();
            ++reached;
            const std::size_t a = k / nx, b = k % nx;
            const std::pair<long, long> steps[] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            for (auto [da, db] : steps) {
                const long na = static_cast<long>(a) + da, nb = static_cast<long>(b) + db;
                if (na < 0 || nb < 0 || na >= static_cast<long>(nr) || nb >= static_cast<long>(nx)) continue;
                const auto nk = static_cast<std::size_t>(na) * nx + static_cast<std::size_t>(nb);
                if (above[nk] && !seen[nk]) {
                    seen[nk] = 1;
                    q.push(nk);
                }
            }
        }
    }
    const bool connected = count > 0 && reached == count;
    r.line(8, rel(c0, 0.15) < 0.10 && connected, "Cooperativity",
           fmt("C0(g/kappa = 0.002, Gamma/kappa = 1e-4) = %.3f (ref 0.15); map %zux%zu has %zu cells with C0 >= 1, "
               "connected = %s, max C0 = %.2f",
               c0, nr, nx, count, connected ? "yes" : "no", peak));
}

// ---- 9 ----
DriveConfig fig4_drive() {
    DriveConfig c;
    c.total_decay = 1;
    c.radiative_decay = 1;
    c.mechanical_frequency = 3;
    c.mechanical_decay = 1e-4;
    c.coupling = 0.002;
    c.kerr = 0.03;
    return c;
}

// Coefficients of the cubic n_in(n) from exact samples, by Newton divided differences.
std::array<double, 4> cubic_coefficients(const DriveConfig& c, double step) {
    double y[4];
    for (int i = 0; i < 4; ++i) y[i] = input_rate_for(c, i * step);
    const double d1[] = {(y[1] - y[0]) / step, (y[2] - y[1]) / step, (y[3] - y[2]) / step};
    const double d2[] = {(d1[1] - d1[0]) / (2 * step), (d1[2] - d1[1]) / (2 * step)};
    const double d3 = (d2[1] - d2[0]) / (3 * step);
    // y = y0 + d1 n + d2 n (n - s) + d3 n (n - s)(n - 2s)
    const double c3 = d3;
    const double c2 = d2[0] - 3 * step * d3;
    const double c1 = d1[0] - step * d2[0] + 2 * step * step * d3;
    return {y[0], c1, c2, c3};
}

void bistability(Report& r) {
    auto c = fig4_drive();
    const double scale = 1 / std::abs(effective_kerr(c.kerr, c.coupling, c.mechanical_frequency));
    auto disc = [&](double detuning) {
        DriveConfig d = c;
        d.detuning = detuning;
        auto k = cubic_coefficients(d, scale);
        return (4 * k[2] * k[2] - 12 * k[3] * k[1]) / (k[3] * k[3] * scale * scale * scale * scale);
    };
    std::uintmax_t iters = 200;
    auto [lo, hi] = boost::math::tools::toms748_solve(disc, 0.5, 1.5, boost::math::tools::eps_tolerance<double>(52), iters);
    const double threshold = 0.5 * (lo + hi);
    const double exact = std::sqrt(3.0) / 2;
    DriveConfig below = c, above = c;
    below.detuning = exact * (1 - 1e-9);
    above.detuning = exact * (1 + 1e-9);
    const bool switches = !bistability_bounds(below) && bistability_bounds(above).has_value();

    double worst_fold = 0;
    for (double detuning : {1.0, 1.5, 2.0, 3.0}) {
        DriveConfig d = c;
        d.detuning = detuning;
        auto bounds = bistability_bounds(d);
        if (!bounds) {
            worst_fold = 1;
            continue;
        }
        const double top = 2 * bounds->second;
        const std::size_t samples = 200000;
        std::vector<double> turning;
        double prev = input_rate_for(d, 0), prev_slope = 0;
        const double h = top / samples;
        for (std::size_t i = 1; i <= samples; ++i) {
            const double n = i * h, v = input_rate_for(d, n), slope = v - prev;
            if (i > 1 && slope * prev_slope < 0) {
                const double sign = prev_slope > 0 ? -1.0 : 1.0;
                auto f = [&](double m) { return sign * input_rate_for(d, m); };
                auto best = boost::math::tools::brent_find_minima(f, n - 2 * h, n, 52);
                turning.push_back(best.first);
            }
            prev = v;
            prev_slope = slope;
        }
        if (turning.size() != 2) {
            worst_fold = 1;
            continue;
        }
        worst_fold = std::max({worst_fold, rel(turning[0], bounds->first), rel(turning[1], bounds->second)});
    }

    int confirmed = 0, sampled = 0;
    for (int i = 0; i < 5; ++i) {
        DriveConfig d = c;
        d.detuning = 1.0 + 0.5 * i;
        auto bounds = bistability_bounds(d);
        if (!bounds) continue;
        const double lo_rate = input_rate_for(d, bounds->second), hi_rate = input_rate_for(d, bounds->first);
        for (int j = 1; j <= 4; ++j) {
            d.input_rate = lo_rate + (hi_rate - lo_rate) * j / 5.0;
            auto roots = steady_state_roots(d);
            if (roots.size() != 3) continue;
            ++sampled;
            auto rep = stability_eigenvalues(roots[1], d, 1);
            if (rep.classification == Stability::single_mode_unstable && mean_field_departs(roots[1], d)) ++confirmed;
        }
    }
    const bool pass = std::abs(threshold - exact) < 1e-9 && switches && worst_fold < 1e-6 && sampled == 20 &&
                      confirmed == 20;
    r.line(9, pass, "Bistability",
           fmt("fold threshold %.12f vs sqrt(3)/2 (|dev| %.1e, bounds switch %s); turning points vs dense scan "
               "max rel %.1e; middle branch unstable by eigenvalues and mean-field integration at %d/%d points",
               threshold, std::abs(threshold - exact), switches ? "yes" : "no", worst_fold, confirmed, sampled));
}

// ---- 10 ----
FluctuationConfig fig4_fluct(double kerr, double population) {
    FluctuationConfig f;
    f.total_decay = 1;
    f.mechanical_frequency = 3;
    f.mechanical_decay = 1e-4;
    f.coupling = 0.002;
    f.kerr = kerr;
    f.population = population;
    f.temperature = 0;
    return f;
}

// Extremal exact optical damping over detuning within +-width of `center`; sign -1 finds the maximum.
double exact_extremum(FluctuationConfig cfg, double center, double width, double sign) {
    auto f = [&](double d) {
        cfg.detuning = d;
        if (fluctuation_stability(cfg).classification == Stability::single_mode_unstable) return 1e300;
        return sign * exact_optical_damping(cfg);
    };
    const int samples = 400;
    double best = 1e300, at = center;
    for (int i = 0; i <= samples; ++i) {
        const double d = center - width + 2 * width * i / samples;
        if (double v = f(d); v < best) {
            best = v;
            at = d;
        }
    }
    const double h = 2 * width / samples;
    return sign * boost::math::tools::brent_find_minima(f, at - h, at + h, 50).second;
}

void backaction(Report& r) {
    double worst_product = 0, antisymmetry = 0;
    for (double n : {10.0, 100.0, 1000.0}) {
        auto cfg = fig4_fluct(0.03, n);
        cfg.detuning = std::hypot(3.0, 0.03 * n);
        auto ba = backaction_rates(squeeze_frame(cfg), cfg, cfg.mechanical_frequency);
        worst_product = std::max(worst_product, std::abs(ba.enhancement.first * ba.enhancement.second - 1));
        auto zero = fig4_fluct(0.0, n);
        auto red = backaction_rates(squeeze_frame(0.0, n, -3.0, zero.coupling), zero, 3.0).optical_damping;
        auto blue = backaction_rates(squeeze_frame(0.0, n, 3.0, zero.coupling), zero, 3.0).optical_damping;
        antisymmetry = std::max(antisymmetry, std::abs(red + blue) / std::abs(red));
    }

    double worst_plus = 0, worst_minus = 0, fail_from = 0;
    std::string trail;
    for (double n : {10.0, 30.0, 100.0, 300.0, 500.0, 1000.0}) {
        auto cfg = fig4_fluct(0.03, n);
        const double center = std::hypot(3.0, 0.03 * n);
        cfg.detuning = center;
        auto ba = backaction_rates(squeeze_frame(cfg), cfg, cfg.mechanical_frequency);
        auto ref = fig4_fluct(0.0, n);
        const double plus = exact_extremum(cfg, center, 2, 1) / exact_extremum(ref, 3, 2, 1);
        const double minus = exact_extremum(cfg, -center, 2, -1) / exact_extremum(ref, -3, 2, -1);
        const double dp = rel(ba.enhancement.first, plus), dm = rel(ba.enhancement.second, minus);
        worst_plus = std::max(worst_plus, dp);
        worst_minus = std::max(worst_minus, dm);
        if ((dp > 0.05 || dm > 0.05) && fail_from == 0) fail_from = n;
        trail += fmt(" n=%g: %.3f/%.3f, %.4f/%.4f;", n, ba.enhancement.first, plus, ba.enhancement.second, minus);
    }

    auto omo_cfg = fig4_fluct(0.03, 50);
    omo_cfg.detuning = 3;
    const double omo = oscillation_threshold(omo_cfg);

    const bool pass = worst_product < 1e-12 && antisymmetry < 1e-12 && worst_plus <= 0.05 && worst_minus <= 0.05 &&
                      std::abs(omo / 7 - 1) <= 0.3;
    std::string detail = fmt("|eta+ eta- - 1| = %.1e; chi = 0 antisymmetry %.1e; eta vs exact max dev + %.1f%% / - %.1f%%",
                             worst_product, antisymmetry, 100 * worst_plus, 100 * worst_minus);
    if (fail_from > 0) detail += fmt(" (above 5%% from n = %g)", fail_from);
    detail += fmt(" [line/exact:%s]; OMO threshold n = %.2f (ref 7 +- 30%%)", trail.c_str(), omo);
    r.line(10, pass, "Back-action with Kerr term", detail);
}

// ---- 11 ----
void cooling(Report& r) {
    double worst = 0;
    for (double chi : {-0.03, 0.0, 0.03}) {
        for (double n : num::logspace(10, 1000, 7)) {
            auto cfg = fig4_fluct(chi, n);
            cfg.temperature = 4;
            cfg.total_decay = two_pi * 6.5e9;
            cfg.mechanical_frequency = 3 * cfg.total_decay;
            cfg.mechanical_decay = 1e-4 * cfg.total_decay;
            cfg.coupling = 0.002 * cfg.total_decay;
            cfg.kerr = chi * cfg.total_decay;
            auto best = minimize_occupation(cfg, OccupationMethod::quadrature);
            cfg.detuning = best.detuning;
            const double res = phonon_occupation(cfg, OccupationMethod::residues).occupation;
            const double quad = phonon_occupation(cfg, OccupationMethod::quadrature).occupation;
            worst = std::max(worst, rel(res, quad));
        }
    }
    auto thermal = fig4_fluct(0.0, 50);
    thermal.coupling = 0;
    thermal.total_decay = two_pi * 6.5e9;
    thermal.mechanical_frequency = two_pi * 19.6e9;
    thermal.mechanical_decay = 1e-4 * thermal.total_decay;
    thermal.temperature = 4;
    thermal.detuning = -thermal.mechanical_frequency;
    const double nth_res = phonon_occupation(thermal, OccupationMethod::residues).occupation;
    const double nth_quad = phonon_occupation(thermal, OccupationMethod::quadrature).occupation;

    auto opt = run_table("cool", "fig4_reference.cfg");
    const auto ires = column(opt, "min_occupation_residues"), iquad = column(opt, "min_occupation_quadrature"),
               ikerr = column(opt, "system.kerr");
    bool below = true;
    std::string mins;
    for (const auto& row : opt.rows) {
        below = below && number(row, ires) < 1 && number(row, iquad) < 1;
        mins += fmt(" chi=%g MHz: %.3f;", number(row, ikerr), number(row, iquad));
    }
    const bool pass = worst < 0.01 && std::abs(nth_res - 3.8) <= 0.1 && std::abs(nth_quad - 3.8) <= 0.1 && below;
    r.line(11, pass, "Cooling",
           fmt("residues vs quadrature max %.2f%% over n in [10, 1000] at optimal detuning; g = 0 gives %.3f / %.3f "
               "(ref 3.8); min n_eff at n = 50:%s",
               100 * worst, nth_res, nth_quad, mins.c_str()));
}

// ---- 12 ----
void phonoritons(Report& r) {
    const double n = 2000;
    auto attractive = fig4_fluct(-0.03, n), repulsive = fig4_fluct(0.03, n);
    attractive.temperature = repulsive.temperature = 4;
    for (auto* c : {&attractive, &repulsive}) {
        const double k = two_pi * 6.5e9;
        c->total_decay *= k;
        c->mechanical_frequency *= k;
        c->mechanical_decay *= k;
        c->coupling *= k;
        c->kerr *= k;
        c->detuning = -std::hypot(c->mechanical_frequency, c->kerr * n);
    }
    auto ma = phonoriton_modes(squeeze_frame(attractive), attractive);
    auto mr = phonoriton_modes(squeeze_frame(repulsive), repulsive);

    const double om = attractive.mechanical_frequency, k = attractive.total_decay;
    auto grid = num::linspace(0.6 * om, 1.4 * om, 8001);
    auto psd = exact_qle_spectrum(attractive, grid);
    std::vector<std::pair<double, double>> peaks;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (psd.density[i] > psd.density[i - 1] && psd.density[i] > psd.density[i + 1])
            peaks.emplace_back(psd.density[i], grid[i]);
    std::sort(peaks.rbegin(), peaks.rend());
    double dev = 1;
    if (peaks.size() >= 2) {
        double a = peaks[0].second, b = peaks[1].second;
        if (a < b) std::swap(a, b);
        dev = std::max(rel(a, ma.upper.real()), rel(b, ma.lower.real()));
    }
    const bool split_real = std::abs(ma.splitting.imag()) == 0 && ma.splitting.real() > 0 && ma.strong_coupling;
    const bool split_absent = std::abs(mr.splitting.real()) == 0 && !mr.strong_coupling;
    const bool pass = split_real && split_absent && ma.splitting.real() > k && dev <= 0.05;
    r.line(12, pass, "Phonoritons at n = 2000",
           fmt("chi < 0: splitting %.3f kappa (real, strong = %s); chi > 0: splitting %.3fi kappa (strong = %s); "
               "PSD peaks vs normal modes max rel %.2f%%",
               ma.splitting.real() / k, ma.strong_coupling ? "yes" : "no", mr.splitting.imag() / k,
               mr.strong_coupling ? "yes" : "no", 100 * dev));
}

// ---- 13 ----
std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism(Report& r) {
    const std::pair<const char*, const char*> bundled[] = {
        {"couplings", "fig2_disk.cfg"},   {"couplings", "fig2_ring.cfg"},   {"couplings", "fig2_pillar.cfg"},
        {"coopmap", "fig3a.cfg"},         {"damping", "fig4.cfg"},          {"cool", "fig4_reference.cfg"},
        {"exciton", "figS1.cfg"},         {"modes", "figS3.cfg"},           {"stability", "figS6.cfg"},
        {"phonoriton", "figS7-phonoriton.cfg"},
    };
    const fs::path root = fs::temp_directory_path() / ("polaromech_acceptance_" + std::to_string(::getpid()));
    std::size_t files = 0, identical = 0;
    double slowest = 0;
    std::string slow_name;
    for (auto [command, config] : bundled) {
        std::vector<std::vector<fs::path>> runs;
        const std::size_t threads[] = {1, 1, 4};
        for (std::size_t k = 0; k < 3; ++k) {
            cli::RunOptions opts;
            opts.config = fs::path(POLAROMECH_CONFIG_DIR) / config;
            opts.out_dir = root / std::to_string(k);
            opts.threads = threads[k];
            const auto t0 = std::chrono::steady_clock::now();
            runs.push_back(cli::run_scenario(command, opts));
            if (double dt = seconds_since(t0); dt > slowest) {
                slowest = dt;
                slow_name = config;
            }
        }
        for (std::size_t f = 0; f < runs[0].size(); ++f) {
            ++files;
            const auto a = slurp(runs[0][f]);
            if (!a.empty() && a == slurp(runs[1][f]) && a == slurp(runs[2][f])) ++identical;
        }
    }
    fs::remove_all(root);
    r.line(13, files > 0 && identical == files && slowest < 60, "Determinism",
           fmt("%zu/%zu output files byte-identical across two single-thread runs and a 4-thread run; slowest "
               "config %s %.2f s",
               identical, files, slow_name.c_str(), slowest));
}

}

int main() {
    Report r;
    guarded(r, 1, "RBM root table", [&] { rbm_roots(r); });
    guarded(r, 2, "Plane-stress strain factor", [&] { plane_stress(r); });
    guarded(r, 3, "Pillar DBR", [&] { pillar_dbr(r); });
    guarded(r, 4, "Pillar mechanics", [&] { pillar_mechanics(r); });
    guarded(r, 5, "Couplings", [&] { couplings(r); });
    guarded(r, 6, "Exciton solver", [&] { exciton_solver(r); });
    guarded(r, 7, "Disk and ring g_xm", [&] { planar_couplings(r); });
    guarded(r, 8, "Cooperativity", [&] { cooperativity_map(r); });
    guarded(r, 9, "Bistability", [&] { bistability(r); });
    guarded(r, 10, "Back-action with Kerr term", [&] { backaction(r); });
    guarded(r, 11, "Cooling", [&] { cooling(r); });
    guarded(r, 12, "Phonoritons", [&] { phonoritons(r); });
    guarded(r, 13, "Determinism", [&] { determinism(r); });
    std::printf("%d of 13 criteria failed\n", r.failures);
    return r.failures == 0 ? 0 : 1;
}
