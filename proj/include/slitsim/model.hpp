#pragma once

#include <complex>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace slitsim {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Thrown when a model invariant is violated; the message names the invariant.
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// N slits of width w on a uniform pitch p. Centers are symmetric about x = 0
// and strictly decreasing: slit j sits at ((N-1)/2 - j) * p, so for N = 3 the
// centers are {+p, 0, -p}, labeled A, B, C.
struct SlitArray {
    double slit_width_m = 0.0;
    double pitch_m = 0.0;
    int slit_count = 0;
    std::vector<double> slit_centers_m;

    static SlitArray make(double slit_width_m, double pitch_m, int slit_count);
};

// The subset of open slits. A closed slit transmits nothing and hosts no
// surface-wave hops.
struct Mask {
    std::vector<int> open;  // ascending, unique

    static Mask all(int slit_count);
    static Mask of(std::initializer_list<int> slits);
    bool contains(int slit) const;
    bool empty() const { return open.empty(); }

    bool operator==(const Mask&) const = default;
};

struct Illumination {
    double wavelength_m = 0.0;
    std::vector<Complex> slit_amplitudes;  // per-slit excitation E_j

    double wavenumber() const { return 2.0 * kPi / wavelength_m; }
    static Illumination plane_wave(double wavelength_m, int slit_count);
};

// Slit-to-slit surface-wave couplings. hop_amplitudes[m-1] is the field
// magnitude c_m for a hop spanning m pitches; each hop accumulates a phase
// m * phi_sp with phi_sp = n_eff * k0 * pitch. max_hops = 0 disables looped
// paths entirely.
struct CouplingModel {
    double n_eff = 1.0;
    std::vector<double> hop_amplitudes;
    int max_hops = 0;

    bool loops_enabled() const { return max_hops > 0; }
    double magnitude(int separation) const;
    static CouplingModel none();
};

// Far-field observation angles in the (x, z) plane; theta = 0 is the forward
// direction. sin_theta is cached for the k_x = k0 sin(theta) mapping.
struct DetectorGrid {
    std::vector<double> theta_rad;  // strictly increasing, |theta| < pi/2
    std::vector<double> sin_theta;

    // Uniform grid. Symmetric bounds with an odd point count are mirrored
    // exactly so that theta[i] == -theta[n-1-i] holds bit for bit.
    static DetectorGrid uniform(double theta_min_rad, double theta_max_rad, int points);
    std::size_t size() const { return theta_rad.size(); }

    bool operator==(const DetectorGrid&) const = default;
};

// Far-field pattern of one mask over a detector grid.
struct Pattern {
    Mask mask;
    DetectorGrid grid;
    std::vector<Complex> amplitudes;
    std::vector<double> probabilities;  // |amplitudes|^2

    static Pattern from_amplitudes(Mask mask, DetectorGrid grid, std::vector<Complex> amplitudes);
};

struct SorkinResult {
    std::vector<double> epsilon;
    double i_max = 0.0;
    std::vector<double> kappa;  // epsilon / i_max
    std::vector<Pattern> per_mask;
};

struct ModelBundle {
    SlitArray slits;
    Illumination illumination;
    CouplingModel coupling;
    DetectorGrid grid;
};

// Checks every type invariant and returns the bundle unchanged; all other
// operations may assume validated inputs. The first violated invariant is
// reported by name.
ModelBundle validate_config(SlitArray slits, Illumination illumination,
                            CouplingModel coupling, DetectorGrid grid);

// Mask sanity used by per-operation entry points (masks are not part of the
// bundle, so they are checked where they arrive).
void check_mask(const Mask& mask, int slit_count);

}  // namespace slitsim
