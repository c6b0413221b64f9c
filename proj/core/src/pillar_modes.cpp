#include "polaromech/pillar_modes.hpp"

#include "polaromech/constants.hpp"
#include "polaromech/errors.hpp"
#include "polaromech/numerics.hpp"
#include "polaromech/planar_modes.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>

namespace pm {

using namespace phys;
using cplx = std::complex<double>;

double bessel_j0_first_zero() {
    static const double zero = boost::math::cyl_bessel_j_zero(0.0, 1);
    return zero;
}

double DBRModel::design_wavevector() const { return 2 * pi / design_wavelength; }

cplx DBRModel::bloch_wavevector(double k0) const {
    const double p1 = high_index * k0 * high_thickness;
    const double p2 = low_index * k0 * low_thickness;
    const double mix = (high_index * high_index + low_index * low_index) / (2 * high_index * low_index);
    const double c = std::cos(p1) * std::cos(p2) - mix * std::sin(p1) * std::sin(p2);
    cplx phase = std::acos(cplx(c, 0.0));
    if (phase.imag() < 0) phase = std::conj(phase);
    return phase / period();
}

DBRModel dbr_dispersion(double high_index, double low_index, double wavelength) {
    if (!(high_index >= low_index) || !(low_index > 1.0) || !(wavelength > 0))
        throw OutOfRange("Bragg mirror needs n_high >= n_low > 1 and a positive wavelength");
    DBRModel m;
    m.high_index = high_index;
    m.low_index = low_index;
    m.design_wavelength = wavelength;
    m.high_thickness = wavelength / (4 * high_index);
    m.low_thickness = wavelength / (4 * low_index);
    m.effective_index = 2 * high_index * low_index / (high_index + low_index);
    m.penetration_length = high_index > low_index ? wavelength / (4 * (high_index - low_index))
                                                  : std::numeric_limits<double>::infinity();
    return m;
}

std::vector<Layer> PillarGeometry::half_stack() const {
    std::vector<Layer> layers{{dbr.high_index, dbr.high_thickness}};
    for (int i = 0; i < mirror_pairs; ++i) {
        layers.push_back({dbr.low_index, dbr.low_thickness});
        layers.push_back({dbr.high_index, dbr.high_thickness});
    }
    if (terminal_low_layer) layers.push_back({dbr.low_index, dbr.low_thickness});
    return layers;
}

std::vector<Layer> PillarGeometry::full_stack() const {
    auto half = half_stack();
    std::vector<Layer> layers(half.rbegin(), half.rend() - 1);
    layers.push_back({dbr.high_index, spacer_thickness()});
    layers.insert(layers.end(), half.begin() + 1, half.end());
    return layers;
}

PillarGeometry make_pillar_geometry(const MaterialTable& table, double radius, std::vector<double> qw_offsets) {
    PillarGeometry g;
    g.radius = radius;
    g.high_material = table.lookup("GaAs");
    g.low_material = table.lookup("AlAs");
    g.qw_offsets = std::move(qw_offsets);
    g.mass_scale = table.calibration("pillar_mass_scale");
    return g;
}

double PillarOpticalMode::shape(double z) const {
    return std::exp(-std::abs(z) / (2 * dbr.penetration_length)) * std::sin(wavevector * z);
}

double PillarOpticalMode::shape_derivative(double z) const {
    const double decay = std::exp(-std::abs(z) / (2 * dbr.penetration_length));
    const double sign = z < 0 ? -1.0 : 1.0;
    return decay * (wavevector * std::cos(wavevector * z) -
                    sign * std::sin(wavevector * z) / (2 * dbr.penetration_length));
}

double PillarOpticalMode::radial(double r) const {
    if (r > radius) return 0.0;
    return radial_normalization * boost::math::cyl_bessel_j(0, radial_wavevector * r);
}

double PillarOpticalMode::shape_peak_position() const {
    return std::atan(2 * dbr.penetration_length * wavevector) / wavevector;
}

double PillarOpticalMode::shape_peak() const { return std::abs(shape(shape_peak_position())); }

PillarOpticalMode vertical_envelope(const PillarGeometry& geometry) {
    if (!(geometry.radius > 0)) throw OutOfRange("pillar radius must be positive");
    const auto& dbr = geometry.dbr;
    PillarOpticalMode mode;
    mode.dbr = dbr;
    mode.radius = geometry.radius;
    const double k0 = dbr.design_wavevector();
    const double n = dbr.effective_index;
    const double len = dbr.penetration_length;
    mode.wavevector = n * k0;
    mode.frequency = c_light * k0;
    mode.vertical_normalization =
        std::sqrt((1 + 4 * k0 * k0 * len * len * n * n) / (4 * k0 * k0 * len * len * len * n * n));
    const double alpha = bessel_j0_first_zero();
    mode.radial_wavevector = alpha / geometry.radius;
    mode.radial_normalization = 1.0 / (std::sqrt(pi) * boost::math::cyl_bessel_j(1, alpha) * geometry.radius);
    return mode;
}

namespace {

void check_layers(std::span<const Layer> layers) {
    for (const auto& l : layers)
        if (!(l.thickness > 0) || !std::isfinite(l.thickness) || !(l.index > 0) || !std::isfinite(l.index))
            throw SingularTransfer("layer with non-physical thickness or index");
}

// Field E and E' at the start of each layer plus the end state, for real k0.
struct LayerState {
    double start = 0;
    double field = 0;
    double slope = 0;
};

std::vector<LayerState> propagate(std::span<const Layer> layers, double k0) {
    std::vector<LayerState> states;
    double z = 0, e = 0, d = 1;
    for (const auto& l : layers) {
        states.push_back({z, e, d});
        const double q = l.index * k0;
        const double cs = std::cos(q * l.thickness), sn = std::sin(q * l.thickness);
        const double e_next = e * cs + d / q * sn;
        d = -e * q * sn + d * cs;
        e = e_next;
        z += l.thickness;
    }
    states.push_back({z, e, d});
    return states;
}

double layer_field(const Layer& l, const LayerState& s, double k0, double local) {
    const double q = l.index * k0;
    return s.field * std::cos(q * local) + s.slope / q * std::sin(q * local);
}

// Exact integral of E^2 across a whole layer.
double layer_energy(const Layer& l, const LayerState& s, double k0) {
    const double q = l.index * k0, d = l.thickness;
    const double a = s.field, b = s.slope / q;
    return a * a * (d / 2 + std::sin(2 * q * d) / (4 * q)) + b * b * (d / 2 - std::sin(2 * q * d) / (4 * q)) +
           a * b * (1 - std::cos(2 * q * d)) / (2 * q);
}

}

StandingWave standing_wave(std::span<const Layer> layers, double k0, std::size_t samples_per_layer) {
    check_layers(layers);
    const auto states = propagate(layers, k0);
    StandingWave wave;
    for (std::size_t i = 0; i < layers.size(); ++i)
        for (std::size_t j = 0; j < samples_per_layer; ++j) {
            const double local = layers[i].thickness * static_cast<double>(j) / samples_per_layer;
            wave.z.push_back(states[i].start + local);
            wave.field.push_back(layer_field(layers[i], states[i], k0, local));
        }
    wave.z.push_back(states.back().start);
    wave.field.push_back(states.back().field);
    return wave;
}

TransferMatrixEnvelope transfer_matrix_envelope(const PillarGeometry& geometry, std::size_t samples_per_layer) {
    const auto layers = geometry.half_stack();
    check_layers(layers);
    const double k0 = geometry.dbr.design_wavevector();
    const auto states = propagate(layers, k0);
    double half_energy = 0;
    for (std::size_t i = 0; i < layers.size(); ++i) half_energy += layer_energy(layers[i], states[i], k0);
    const double scale = 1.0 / std::sqrt(2 * half_energy);

    const auto half = standing_wave(layers, k0, samples_per_layer);
    TransferMatrixEnvelope env;
    const std::size_t n = half.z.size();
    for (std::size_t i = n; i-- > 1;) {
        env.z.push_back(-half.z[i]);
        env.field.push_back(-half.field[i] * scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
        env.z.push_back(half.z[i]);
        env.field.push_back(half.field[i] * scale);
    }

    // Cells of one DBR period each, counted from the spacer center.
    const double end = states.back().start;
    const double period = geometry.dbr.period();
    std::vector<double> edges;
    for (double z = 0; z < end - 1e-3 * period; z += period) edges.push_back(z);
    edges.push_back(end);
    for (std::size_t i = edges.size(); i-- > 1;) env.cell_edges.push_back(-edges[i]);
    env.cell_edges.insert(env.cell_edges.end(), edges.begin(), edges.end());
    return env;
}

StackField::StackField(const PillarGeometry& geometry) {
    const auto layers = geometry.half_stack();
    check_layers(layers);
    const double k0 = geometry.dbr.design_wavevector();
    const auto states = propagate(layers, k0);
    double peak = 0;
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const double q = layers[i].index * k0;
        states_.push_back({states[i].start, states[i].field, states[i].slope, q});
        // Interior extremum where the slope vanishes, if it falls inside the layer.
        const double amp = std::hypot(states[i].field, states[i].slope / q);
        const double turn = std::atan2(states[i].slope / q, states[i].field);
        for (double phase : {turn, turn + pi, turn - pi})
            if (phase > 0 && phase < q * layers[i].thickness) peak = std::max(peak, amp);
        peak = std::max(peak, std::abs(states[i].field));
    }
    peak = std::max(peak, std::abs(states.back().field));
    height_ = states.back().start;
    for (auto& s : states_) {
        s.field /= peak;
        s.slope /= peak;
    }
}

const StackField::State& StackField::locate(double z) const {
    auto it = std::upper_bound(states_.begin(), states_.end(), z,
                               [](double v, const State& s) { return v < s.start; });
    return it == states_.begin() ? states_.front() : *(it - 1);
}

double StackField::value(double z) const {
    const double a = std::abs(z);
    if (a > height_) return 0.0;
    const auto& s = locate(a);
    const double local = a - s.start;
    const double v = s.field * std::cos(s.wavevector * local) + s.slope / s.wavevector * std::sin(s.wavevector * local);
    return z < 0 ? -v : v;
}

double StackField::slope(double z) const {
    const double a = std::abs(z);
    if (a > height_) return 0.0;
    const auto& s = locate(a);
    const double local = a - s.start;
    return -s.field * s.wavevector * std::sin(s.wavevector * local) + s.slope * std::cos(s.wavevector * local);
}

EnvelopeDeviation envelope_deviation(const TransferMatrixEnvelope& exact, const PillarOpticalMode& approx) {
    if (exact.z.size() != exact.field.size() || exact.z.size() < 2 || exact.cell_edges.size() < 2)
        throw GridMismatch("transfer-matrix envelope is not sampled consistently");
    EnvelopeDeviation dev;
    double peak = 0, sum = 0;
    for (std::size_t i = 0; i < exact.z.size(); ++i) {
        peak = std::max(peak, std::abs(exact.field[i]));
        sum += std::abs(exact.field[i] - approx.vertical(exact.z[i]));
    }
    dev.pointwise = sum / static_cast<double>(exact.z.size()) / peak;

    // Both energies per cell by quadrature; the exact field is resolved by its samples.
    auto exact_energy = [&](double a, double b) {
        std::vector<double> zs, ys;
        for (std::size_t i = 0; i < exact.z.size(); ++i)
            if (exact.z[i] >= a - 1e-18 && exact.z[i] <= b + 1e-18) {
                zs.push_back(exact.z[i]);
                ys.push_back(exact.field[i] * exact.field[i]);
            }
        return zs.size() > 1 ? num::trapezoid(zs, ys) : 0.0;
    };
    const double beta = approx.wavevector;
    double total = 0;
    const std::size_t cells = exact.cell_edges.size() - 1;
    for (std::size_t k = 0; k < cells; ++k) {
        const double a = exact.cell_edges[k], b = exact.cell_edges[k + 1];
        const double e1 = exact_energy(a, b);
        const double e2 = num::integrate_panels(
            [&](double z) {
                const double u = approx.vertical(z);
                return u * u;
            },
            a, b, oscillation_panels(2 * beta, a, b));
        const double diff = std::abs(e1 - e2);
        total += diff;
        dev.cell_max = std::max(dev.cell_max, diff);
    }
    dev.cell_mean = total / static_cast<double>(cells);
    return dev;
}

namespace {

// Outgoing-wave mismatch at the top cladding for a complex vacuum wavevector.
cplx outgoing_mismatch(const PillarGeometry& g, const std::vector<Layer>& layers, cplx k) {
    cplx e = 1.0, d = -cplx(0, 1) * g.substrate_index * k;
    for (const auto& l : layers) {
        const cplx q = l.index * k;
        const cplx cs = std::cos(q * l.thickness), sn = std::sin(q * l.thickness);
        const cplx e_next = e * cs + d / q * sn;
        d = -e * q * sn + d * cs;
        e = e_next;
    }
    return d - cplx(0, 1) * g.top_index * k * e;
}

}

CavityResonance cavity_resonance(const PillarGeometry& geometry) {
    const auto layers = geometry.full_stack();
    check_layers(layers);
    cplx k0 = geometry.dbr.design_wavevector();
    cplx k1 = k0 * (1.0 + 1e-6);
    cplx f0 = outgoing_mismatch(geometry, layers, k0);
    cplx f1 = outgoing_mismatch(geometry, layers, k1);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        if (f1 == f0) break;
        const cplx k2 = k1 - f1 * (k1 - k0) / (f1 - f0);
        k0 = k1;
        f0 = f1;
        k1 = k2;
        f1 = outgoing_mismatch(geometry, layers, k1);
        if (std::abs(k1 - k0) < 1e-13 * std::abs(k1)) {
            converged = true;
            break;
        }
    }
    if (!converged) throw NotConverged("cavity resonance search did not converge");
    CavityResonance res;
    res.vacuum_wavevector = k1;
    res.wavelength = 2 * pi / k1.real();
    res.linewidth = -2 * c_light * k1.imag();
    res.quality_factor = k1.real() / (-2 * k1.imag());
    return res;
}

double absorption_linewidth(double absorption, double effective_index) { return absorption * c_light / effective_index; }

double PillarMechMode::displacement(double z) const { return envelope.shape(z) / envelope.shape_peak(); }

double PillarMechMode::strain(double r, double z) const {
    if (r > envelope.radius) return 0.0;
    return boost::math::cyl_bessel_j(0, envelope.radial_wavevector * r) * envelope.shape_derivative(z) /
           envelope.shape_peak();
}

double PillarMechMode::reduced_strain_normalization() const {
    return strain_normalization * envelope.radial_normalization * envelope.vertical_normalization;
}

PillarMechMode pillar_mech_mode(const PillarGeometry& geometry) {
    if (!(geometry.high_material.density > 0) || !(geometry.low_material.density > 0))
        throw OutOfRange("pillar layer densities must be positive");
    PillarMechMode mode;
    mode.envelope = vertical_envelope(geometry);
    const auto& env = mode.envelope;
    const double alpha = bessel_j0_first_zero();
    mode.cutoff_frequency = geometry.cutoff_frequency;
    mode.sound_speed = geometry.sound_speed;
    const double lateral = alpha * geometry.sound_speed / (2 * geometry.radius);
    mode.frequency = std::sqrt(geometry.cutoff_frequency * geometry.cutoff_frequency + lateral * lateral);
    mode.strain_normalization = 1.0 / (env.radial_normalization * env.vertical_normalization * env.shape_peak());

    double z = 0, line = 0;
    const auto layers = geometry.half_stack();
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto& l = layers[i];
        const double rho = i % 2 == 0 ? geometry.high_material.density : geometry.low_material.density;
        line += rho * num::integrate_panels(
                          [&](double s) {
                              const double w = mode.displacement(s);
                              return w * w;
                          },
                          z, z + l.thickness, 4);
        z += l.thickness;
    }
    mode.line_density = 2 * line;
    const double j1 = boost::math::cyl_bessel_j(1, alpha);
    mode.effective_mass = geometry.mass_scale * pi * j1 * j1 * geometry.radius * geometry.radius * mode.line_density;
    mode.zero_point = zero_point_amplitude(mode.effective_mass, mode.frequency);

    const double half_spacer = geometry.spacer_thickness() / 2;
    for (double dz : geometry.qw_offsets) {
        if (std::abs(dz) > half_spacer)
            throw QWOutsideSpacer("quantum well offset lies outside the pillar spacer");
        mode.qw_offsets.push_back(dz);
        mode.strain_reduction.push_back(std::abs(std::cos(env.wavevector * dz)));
        mode.field_reduction.push_back(std::abs(std::sin(env.wavevector * dz)));
    }
    return mode;
}

}
