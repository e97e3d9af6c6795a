#include "slitsim/looped.hpp"

#include <cmath>
#include <cstdlib>

#include "slitsim/propagation.hpp"

namespace slitsim {

Complex hop_coupling(const SlitArray& slits, const CouplingModel& coupling,
                     int j, int k, double wavelength_m) {
    if (j < 0 || j >= slits.slit_count || k < 0 || k >= slits.slit_count)
        throw ValidationError("hop indices must lie within 0..N-1");
    if (j == k) throw ValidationError("hop requires two distinct slits");
    const int m = std::abs(j - k);
    const double phi_sp = coupling.n_eff * (2.0 * kPi / wavelength_m) * slits.pitch_m;
    return coupling.magnitude(m) * std::polar(1.0, m * phi_sp);
}

std::vector<Complex> coupling_matrix(const SlitArray& slits, const Mask& mask,
                                     const CouplingModel& coupling, double wavelength_m) {
    check_mask(mask, slits.slit_count);
    const std::size_t n = static_cast<std::size_t>(slits.slit_count);
    std::vector<Complex> c(n * n, Complex(0.0, 0.0));
    for (int j : mask.open)
        for (int k : mask.open)
            if (j != k)
                c[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(k)] =
                    hop_coupling(slits, coupling, j, k, wavelength_m);
    return c;
}

namespace {

Complex hop_sum(const SlitArray& slits, const Mask& mask, const Illumination& illumination,
                const CouplingModel& coupling, double theta_rad, int min_hops, int max_hops) {
    check_mask(mask, slits.slit_count);
    if (max_hops < 1 || mask.open.size() < 2) return Complex(0.0, 0.0);

    const std::size_t n = static_cast<std::size_t>(slits.slit_count);
    const std::vector<Complex> c =
        coupling_matrix(slits, mask, coupling, illumination.wavelength_m);

    // entry vector: illumination restricted to open slits
    std::vector<Complex> row(n, Complex(0.0, 0.0));
    for (int j : mask.open)
        row[static_cast<std::size_t>(j)] = illumination.slit_amplitudes[static_cast<std::size_t>(j)];

    // exit vector: direct-path far-field factor of the last slit
    const double kx = illumination.wavenumber() * std::sin(theta_rad);
    const double envelope = normalized_sinc(kx * slits.slit_width_m / (2.0 * kPi));
    std::vector<Complex> exit(n, Complex(0.0, 0.0));
    for (int j : mask.open)
        exit[static_cast<std::size_t>(j)] =
            envelope * std::polar(1.0, kx * slits.slit_centers_m[static_cast<std::size_t>(j)]);

    Complex acc(0.0, 0.0);
    std::vector<Complex> next(n);
    for (int hops = 1; hops <= max_hops; ++hops) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex v(0.0, 0.0);
            for (std::size_t j = 0; j < n; ++j) v += row[j] * c[j * n + k];
            next[k] = v;
        }
        row.swap(next);
        if (hops >= min_hops) {
            Complex term(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) term += row[k] * exit[k];
            acc += term;
        }
    }
    return acc;
}

}  // namespace

Complex looped_amplitude(const SlitArray& slits, const Mask& mask,
                         const Illumination& illumination, const CouplingModel& coupling,
                         double theta_rad) {
    return hop_sum(slits, mask, illumination, coupling, theta_rad, 1, coupling.max_hops);
}

Complex looped_amplitude_order(const SlitArray& slits, const Mask& mask,
                               const Illumination& illumination, const CouplingModel& coupling,
                               double theta_rad, int hops) {
    if (hops < 1) throw ValidationError("hop order must be at least 1");
    return hop_sum(slits, mask, illumination, coupling, theta_rad, hops, hops);
}

Complex total_amplitude(const SlitArray& slits, const Mask& mask,
                        const Illumination& illumination, const CouplingModel& coupling,
                        double theta_rad) {
    return direct_amplitude(slits, mask, illumination, theta_rad) +
           looped_amplitude(slits, mask, illumination, coupling, theta_rad);
}

Pattern total_pattern(const SlitArray& slits, const Mask& mask,
                      const Illumination& illumination, const CouplingModel& coupling,
                      const DetectorGrid& grid) {
    std::vector<Complex> amps(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        amps[i] = total_amplitude(slits, mask, illumination, coupling, grid.theta_rad[i]);
    return Pattern::from_amplitudes(mask, grid, std::move(amps));
}

}  // namespace slitsim
