#include "slitsim/reference.hpp"

#include <cmath>
#include <cstdlib>

#include "slitsim/sorkin.hpp"

namespace slitsim::reference {

namespace {

// local direct-path evaluation (not routed through the production module)
Complex direct_local(const SlitArray& slits, const Mask& mask, const Illumination& illum,
                     double kx) {
    const double u = kx * slits.slit_width_m / (2.0 * kPi);
    const double env = (u == 0.0) ? 1.0 : std::sin(kPi * u) / (kPi * u);
    Complex acc(0.0, 0.0);
    for (int j : mask.open) {
        const double xj = slits.slit_centers_m[static_cast<std::size_t>(j)];
        acc += illum.slit_amplitudes[static_cast<std::size_t>(j)] *
               Complex(std::cos(kx * xj), std::sin(kx * xj));
    }
    return env * acc;
}

void extend_paths(const SlitArray& slits, const Mask& mask, const CouplingModel& coupling,
                  double wavelength_m, std::vector<int>& sequence, Complex running,
                  double env, double kx, std::vector<HopPath>& out) {
    const int hops = static_cast<int>(sequence.size()) - 1;
    if (hops >= 1) {
        const int last = sequence.back();
        const double x_last = slits.slit_centers_m[static_cast<std::size_t>(last)];
        const Complex exit =
            env * Complex(std::cos(kx * x_last), std::sin(kx * x_last));
        out.push_back(HopPath{sequence, running * exit});
    }
    if (hops >= coupling.max_hops) return;
    const double phi_sp = coupling.n_eff * (2.0 * kPi / wavelength_m) * slits.pitch_m;
    for (int next : mask.open) {
        if (next == sequence.back()) continue;
        const int m = std::abs(next - sequence.back());
        const Complex hop = coupling.magnitude(m) *
                            Complex(std::cos(m * phi_sp), std::sin(m * phi_sp));
        sequence.push_back(next);
        extend_paths(slits, mask, coupling, wavelength_m, sequence, running * hop, env, kx, out);
        sequence.pop_back();
    }
}

}  // namespace

std::vector<HopPath> enumerate_hop_paths(const SlitArray& slits, const Mask& mask,
                                         const Illumination& illumination,
                                         const CouplingModel& coupling, double theta_rad) {
    check_mask(mask, slits.slit_count);
    std::vector<HopPath> paths;
    if (coupling.max_hops < 1) return paths;
    const double kx = illumination.wavenumber() * std::sin(theta_rad);
    const double u = kx * slits.slit_width_m / (2.0 * kPi);
    const double env = (u == 0.0) ? 1.0 : std::sin(kPi * u) / (kPi * u);
    for (int start : mask.open) {
        std::vector<int> sequence{start};
        const Complex entry = illumination.slit_amplitudes[static_cast<std::size_t>(start)];
        extend_paths(slits, mask, coupling, illumination.wavelength_m, sequence, entry, env, kx,
                     paths);
    }
    return paths;
}

Complex looped_amplitude_enumerated(const SlitArray& slits, const Mask& mask,
                                    const Illumination& illumination,
                                    const CouplingModel& coupling, double theta_rad,
                                    int exact_hops) {
    Complex acc(0.0, 0.0);
    for (const HopPath& p : enumerate_hop_paths(slits, mask, illumination, coupling, theta_rad)) {
        const int hops = static_cast<int>(p.sequence.size()) - 1;
        if (exact_hops > 0 && hops != exact_hops) continue;
        acc += p.amplitude;
    }
    return acc;
}

std::vector<double> epsilon_cross_terms(const SlitArray& slits, const Illumination& illumination,
                                        const CouplingModel& coupling, const DetectorGrid& grid) {
    const std::vector<Mask> masks = seven_masks(slits.slit_count);
    constexpr double signs[7] = {+1, +1, +1, -1, -1, -1, +1};
    const double k0 = illumination.wavenumber();
    std::vector<double> eps(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double kx = k0 * grid.sin_theta[i];
        double acc = 0.0;
        for (std::size_t m = 0; m < masks.size(); ++m) {
            const Complex d = direct_local(slits, masks[m], illumination, kx);
            const Complex l = looped_amplitude_enumerated(slits, masks[m], illumination, coupling,
                                                          grid.theta_rad[i]);
            acc += signs[m] * (2.0 * (std::conj(d) * l).real() + std::norm(l));
        }
        eps[i] = acc;
    }
    return eps;
}

SorkinResult sorkin_reference(const ModelBundle& bundle) {
    const std::vector<Mask> masks = seven_masks(bundle.slits.slit_count);
    const double k0 = bundle.illumination.wavenumber();

    SorkinResult r;
    r.per_mask.reserve(masks.size());
    for (const Mask& m : masks) {
        std::vector<Complex> amps(bundle.grid.size());
        for (std::size_t i = 0; i < bundle.grid.size(); ++i) {
            const double kx = k0 * bundle.grid.sin_theta[i];
            amps[i] = direct_local(bundle.slits, m, bundle.illumination, kx) +
                      looped_amplitude_enumerated(bundle.slits, m, bundle.illumination,
                                                  bundle.coupling, bundle.grid.theta_rad[i]);
        }
        r.per_mask.push_back(Pattern::from_amplitudes(m, bundle.grid, std::move(amps)));
    }

    r.epsilon =
        epsilon_cross_terms(bundle.slits, bundle.illumination, bundle.coupling, bundle.grid);

    const Pattern& p3 = r.per_mask[6];
    std::size_t best = 0;
    for (std::size_t i = 1; i < p3.probabilities.size(); ++i) {
        if (p3.probabilities[i] > p3.probabilities[best] ||
            (p3.probabilities[i] == p3.probabilities[best] &&
             std::abs(p3.grid.theta_rad[i]) < std::abs(p3.grid.theta_rad[best])))
            best = i;
    }
    r.i_max = p3.probabilities[best];
    if (!(r.i_max > 0.0))
        throw ValidationError("three-slit pattern is identically zero; kappa is undefined");
    r.kappa.resize(r.epsilon.size());
    for (std::size_t i = 0; i < r.epsilon.size(); ++i) r.kappa[i] = r.epsilon[i] / r.i_max;
    return r;
}

}  // namespace slitsim::reference
