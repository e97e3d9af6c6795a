#pragma once

#include <cmath>
#include <complex>

#include "slitsim/model.hpp"

// shared fixtures: the reference slit triple used throughout the suite
namespace testpar {

inline constexpr double kWidth = 200e-9;
inline constexpr double kPitch = 4.6e-6;
inline constexpr double kLambda = 810e-9;
inline constexpr double kNeff = 1.65;
inline constexpr double kA = 0.3;
inline constexpr double kB = 0.15;

inline slitsim::SlitArray slits() { return slitsim::SlitArray::make(kWidth, kPitch, 3); }

inline slitsim::Illumination plane() {
    return slitsim::Illumination::plane_wave(kLambda, 3);
}

inline slitsim::CouplingModel coupling(int max_hops = 1) {
    slitsim::CouplingModel c;
    c.n_eff = kNeff;
    c.hop_amplitudes = {kA, kB};
    c.max_hops = max_hops;
    return c;
}

inline bool close(const std::complex<double>& a, const std::complex<double>& b, double tol) {
    return std::abs(a - b) <= tol;
}

}  // namespace testpar
