#include "slitsim/model.hpp"

#include <algorithm>
#include <cmath>

namespace slitsim {

SlitArray SlitArray::make(double slit_width_m, double pitch_m, int slit_count) {
    SlitArray s;
    s.slit_width_m = slit_width_m;
    s.pitch_m = pitch_m;
    s.slit_count = slit_count;
    if (slit_count > 0) {
        s.slit_centers_m.resize(static_cast<std::size_t>(slit_count));
        const double half = 0.5 * (slit_count - 1);
        for (int j = 0; j < slit_count; ++j)
            s.slit_centers_m[static_cast<std::size_t>(j)] = (half - j) * pitch_m;
    }
    return s;
}

Mask Mask::all(int slit_count) {
    Mask m;
    m.open.resize(static_cast<std::size_t>(std::max(slit_count, 0)));
    for (int j = 0; j < slit_count; ++j) m.open[static_cast<std::size_t>(j)] = j;
    return m;
}

Mask Mask::of(std::initializer_list<int> slits) {
    Mask m;
    m.open.assign(slits);
    std::sort(m.open.begin(), m.open.end());
    m.open.erase(std::unique(m.open.begin(), m.open.end()), m.open.end());
    return m;
}

bool Mask::contains(int slit) const {
    return std::binary_search(open.begin(), open.end(), slit);
}

Illumination Illumination::plane_wave(double wavelength_m, int slit_count) {
    Illumination il;
    il.wavelength_m = wavelength_m;
    il.slit_amplitudes.assign(static_cast<std::size_t>(std::max(slit_count, 0)), Complex(1.0, 0.0));
    return il;
}

double CouplingModel::magnitude(int separation) const {
    if (separation < 1 || static_cast<std::size_t>(separation) > hop_amplitudes.size())
        throw ValidationError("hop separation exceeds the coupling table");
    return hop_amplitudes[static_cast<std::size_t>(separation - 1)];
}

CouplingModel CouplingModel::none() {
    CouplingModel c;
    c.n_eff = 1.0;
    c.max_hops = 0;
    return c;
}

DetectorGrid DetectorGrid::uniform(double theta_min_rad, double theta_max_rad, int points) {
    if (points < 1) throw ValidationError("grid must have at least one point");
    if (points == 1 && theta_min_rad != theta_max_rad)
        throw ValidationError("single-point grid requires theta_min == theta_max");
    if (points > 1 && !(theta_min_rad < theta_max_rad))
        throw ValidationError("theta_min must be below theta_max");

    DetectorGrid g;
    g.theta_rad.resize(static_cast<std::size_t>(points));
    if (points == 1) {
        g.theta_rad[0] = theta_min_rad;
    } else if (theta_min_rad == -theta_max_rad && points % 2 == 1) {
        // mirror the positive half so theta[i] == -theta[n-1-i] exactly
        const int half = points / 2;
        g.theta_rad[static_cast<std::size_t>(half)] = 0.0;
        for (int i = 1; i <= half; ++i) {
            const double v = theta_max_rad * i / half;
            g.theta_rad[static_cast<std::size_t>(half + i)] = v;
            g.theta_rad[static_cast<std::size_t>(half - i)] = -v;
        }
    } else {
        const double step = (theta_max_rad - theta_min_rad) / (points - 1);
        for (int i = 0; i < points; ++i)
            g.theta_rad[static_cast<std::size_t>(i)] = theta_min_rad + step * i;
        g.theta_rad.back() = theta_max_rad;
    }
    g.sin_theta.resize(g.theta_rad.size());
    for (std::size_t i = 0; i < g.theta_rad.size(); ++i) g.sin_theta[i] = std::sin(g.theta_rad[i]);
    return g;
}

Pattern Pattern::from_amplitudes(Mask mask, DetectorGrid grid, std::vector<Complex> amplitudes) {
    if (amplitudes.size() != grid.size())
        throw ValidationError("pattern amplitudes must match the grid size");
    Pattern p;
    p.mask = std::move(mask);
    p.grid = std::move(grid);
    p.probabilities.resize(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) p.probabilities[i] = std::norm(amplitudes[i]);
    p.amplitudes = std::move(amplitudes);
    return p;
}

void check_mask(const Mask& mask, int slit_count) {
    int prev = -1;
    for (int j : mask.open) {
        if (j < 0 || j >= slit_count) throw ValidationError("mask references a slit outside 0..N-1");
        if (j <= prev) throw ValidationError("mask indices must be ascending and unique");
        prev = j;
    }
}

ModelBundle validate_config(SlitArray slits, Illumination illumination,
                            CouplingModel coupling, DetectorGrid grid) {
    if (slits.slit_count < 1) throw ValidationError("slit_count >= 1");
    if (!(slits.slit_width_m > 0.0)) throw ValidationError("slit_width_m > 0");
    if (!(slits.pitch_m > slits.slit_width_m)) throw ValidationError("pitch must exceed slit width");
    if (slits.slit_centers_m.size() != static_cast<std::size_t>(slits.slit_count))
        throw ValidationError("slit_centers_m must have slit_count entries");
    const double tol = 1e-12 * slits.pitch_m;
    for (std::size_t j = 0; j + 1 < slits.slit_centers_m.size(); ++j)
        if (!(slits.slit_centers_m[j] > slits.slit_centers_m[j + 1]))
            throw ValidationError("slit_centers_m must be strictly decreasing");
    for (std::size_t j = 0; j < slits.slit_centers_m.size(); ++j) {
        const double mirror = slits.slit_centers_m[slits.slit_centers_m.size() - 1 - j];
        if (std::abs(slits.slit_centers_m[j] + mirror) > tol)
            throw ValidationError("slit_centers_m must be symmetric about 0");
    }

    if (!(illumination.wavelength_m > 0.0)) throw ValidationError("wavelength_m > 0");
    if (illumination.slit_amplitudes.size() != static_cast<std::size_t>(slits.slit_count))
        throw ValidationError("slit_amplitudes length must equal slit_count");

    if (!(coupling.n_eff > 0.0)) throw ValidationError("n_eff > 0");
    if (coupling.max_hops < 0) throw ValidationError("max_hops >= 0");
    for (double c : coupling.hop_amplitudes)
        if (!(c >= 0.0)) throw ValidationError("hop_amplitudes must be non-negative");
    if (coupling.loops_enabled() &&
        coupling.hop_amplitudes.size() < static_cast<std::size_t>(slits.slit_count - 1)) {
        throw ValidationError("hop_amplitudes must provide c_1..c_" +
                              std::to_string(slits.slit_count - 1) + " when loops are enabled");
    }

    if (grid.theta_rad.empty()) throw ValidationError("theta_rad must be non-empty");
    if (grid.sin_theta.size() != grid.theta_rad.size())
        throw ValidationError("sin_theta cache must match theta_rad");
    for (std::size_t i = 0; i < grid.theta_rad.size(); ++i) {
        if (!(std::abs(grid.theta_rad[i]) < kPi / 2.0))
            throw ValidationError("observation angles must satisfy |theta| < pi/2");
        if (i > 0 && !(grid.theta_rad[i] > grid.theta_rad[i - 1]))
            throw ValidationError("theta_rad must be strictly increasing");
    }

    return ModelBundle{std::move(slits), std::move(illumination), std::move(coupling), std::move(grid)};
}

}  // namespace slitsim
