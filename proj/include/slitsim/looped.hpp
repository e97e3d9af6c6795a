#pragma once

#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// One hop sequence j0 -> j1 -> ... -> jM through open slits (adjacent entries
// distinct) with its full amplitude: entry excitation, hop couplings, and the
// far-field exit factor of the last slit.
struct HopPath {
    std::vector<int> sequence;
    Complex amplitude;
};

// Surface-wave coupling for one hop between slits j and k:
//   c_m * exp(i m phi_sp),  m = |j - k|,  phi_sp = n_eff * k0 * pitch.
// Symmetric in (j, k).
Complex hop_coupling(const SlitArray& slits, const CouplingModel& coupling,
                     int j, int k, double wavelength_m);

// N x N hop matrix, row-major: entry (j, k) is hop_coupling(j, k) when both
// slits are open and j != k, zero otherwise.
std::vector<Complex> coupling_matrix(const SlitArray& slits, const Mask& mask,
                                     const CouplingModel& coupling, double wavelength_m);

// Looped-path amplitude summed over all hop sequences with 1..max_hops hops.
// Each sequence contributes E_{j0} * (product of hop couplings) * exit(jM),
// where exit(j) = sinc(k_x w / 2pi) * exp(i k_x x_j) is the direct-path exit
// factor. Evaluated as sum over M of u^T C^M v with C the coupling matrix.
Complex looped_amplitude(const SlitArray& slits, const Mask& mask,
                         const Illumination& illumination, const CouplingModel& coupling,
                         double theta_rad);

// Contribution of sequences with exactly `hops` hops (the u^T C^M v term).
Complex looped_amplitude_order(const SlitArray& slits, const Mask& mask,
                               const Illumination& illumination, const CouplingModel& coupling,
                               double theta_rad, int hops);

// Direct plus looped amplitude at one angle.
Complex total_amplitude(const SlitArray& slits, const Mask& mask,
                        const Illumination& illumination, const CouplingModel& coupling,
                        double theta_rad);

Pattern total_pattern(const SlitArray& slits, const Mask& mask,
                      const Illumination& illumination, const CouplingModel& coupling,
                      const DetectorGrid& grid);

}  // namespace slitsim
