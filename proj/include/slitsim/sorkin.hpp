#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// The seven nonempty slit subsets of a triple, in the fixed order
// {A}, {B}, {C}, {A,B}, {B,C}, {A,C}, {A,B,C}.
std::vector<Mask> seven_masks(int slit_count = 3);

// "A", "AC", "ABC", ... (letters by slit index).
std::string mask_label(const Mask& mask);

// epsilon(theta) = P_ABC - P_AB - P_BC - P_AC + P_A + P_B + P_C from the
// seven per-mask patterns (which must share one grid and use exactly the
// seven canonical masks, in order). i_max is the grid maximum of P_ABC,
// ties broken toward the smallest |theta|; kappa = epsilon / i_max.
SorkinResult sorkin_epsilon(std::vector<Pattern> patterns);

// Fringe visibility over the angular window [theta_lo, theta_hi]:
// adjacent pairs of interior local extrema are scored (hi-lo)/(hi+lo) and
// averaged, which keeps slowly varying envelopes from biasing the result.
// A constant pattern scores 0. When the window holds fewer than two
// interior extrema the window endpoints bracket the pairing instead, so a
// fringeless envelope yields its (small) edge-to-peak contrast.
double visibility(const Pattern& pattern, double theta_lo, double theta_hi);

// Mean kappa over the contiguous run of grid points around the three-slit
// peak where P_ABC >= 70% of its maximum.
double central_fringe_kappa(const SorkinResult& result);

enum class SweepKind { intensity_map, kappa_map, kappa_at_center };

struct SweepSpec {
    SweepKind kind = SweepKind::intensity_map;
    std::vector<double> wavelengths_m;  // axis1
    std::vector<double> widths_m;       // axis2 for kappa_at_center; defaults to the base width
    bool loops_on = true;
};

struct SweepResult {
    SweepKind kind = SweepKind::intensity_map;
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<std::vector<double>> values;  // values[i][j] over (axis1[i], axis2[j])
};

// Per-wavelength coupling lookup used by sweeps; defaults to the bundle's
// constant coupling when absent.
using CouplingResolver = std::function<CouplingModel(double wavelength_m)>;

// Recomputes patterns per axis point. intensity_map and kappa_map use the
// bundle's detector grid as axis2; kappa_at_center reduces each (wavelength,
// width) cell to the central-fringe kappa average.
SweepResult sweep(const ModelBundle& base, const SweepSpec& spec,
                  const CouplingResolver& resolver = {});

}  // namespace slitsim
