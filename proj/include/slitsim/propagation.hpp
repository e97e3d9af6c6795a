#pragma once

#include <span>
#include <vector>

#include "slitsim/model.hpp"

namespace slitsim {

// 2D point in the (x, z) plane; the aperture lives at z = 0 with normal +z.
struct Point {
    double x = 0.0;
    double z = 0.0;
};

// sin(pi u) / (pi u), with the removable singularity filled in.
double normalized_sinc(double u);

// Paraxial far-field amplitude of the direct (single-pass) paths:
//   sum over open slits j of E_j * sinc(k_x w / 2pi) * exp(i k_x x_j),
// where k_x = k0 sin(theta). The slit-B factor is the common envelope; the
// per-slit phases reduce to exp(+/- i p k_x) for the outer slits of a triple.
Complex direct_amplitude(const SlitArray& slits, const Mask& mask,
                         const Illumination& illumination, double theta_rad);

// Same sum over explicit centers; exposed so translation properties can be
// probed without rebuilding a (symmetry-validated) SlitArray.
Complex direct_amplitude_at_centers(std::span<const double> centers_m,
                                    std::span<const Complex> amplitudes,
                                    const Mask& mask, double slit_width_m, double kx);

Pattern direct_pattern(const SlitArray& slits, const Mask& mask,
                       const Illumination& illumination, const DetectorGrid& grid);

// Scalar free-space propagator (k / 2 pi i) e^{ikr}/r * chi with the
// obliquity chi = dz/r, the cosine of the angle to the aperture normal.
// Singular at zero separation.
Complex rs_kernel(Point r1, Point r2, double k);

// One recorded kernel evaluation.
struct RsKernelSample {
    Point source;
    Point dest;
    Complex value;
};

RsKernelSample sample_rs_kernel(Point r1, Point r2, double k);

// Midpoint-rule samples across every open slit. Weights are in meters and
// sum to the slit width per slit.
struct ApertureDiscretization {
    std::vector<double> sample_points_m;
    std::vector<int> slit_index;     // which slit each sample belongs to
    std::vector<double> weights_m;
    int samples_per_slit = 0;

    static ApertureDiscretization midpoint(const SlitArray& slits, const Mask& mask,
                                           int samples_per_slit);
};

// Full numerical far-field pattern: quadrature of rs_kernel from the aperture
// samples to a detector arc at screen_distance_m (enforced >= 1000 * pitch).
//
// Amplitudes are expressed relative to the central-ray spherical wave, i.e.
// each angle is divided by rs_kernel(origin -> detector) and by the slit
// width, which puts them in the same units as direct_amplitude; the pattern
// is then scaled so its peak matches the direct-path pattern peak.
Pattern rs_far_field(const SlitArray& slits, const Mask& mask,
                     const Illumination& illumination, const ApertureDiscretization& disc,
                     const DetectorGrid& grid, double screen_distance_m);

// Self-composition residual |K(r1,r3) - integral K(r1,r2) K(r2,r3) dr2| / |K(r1,r3)|
// with r2 running over the intermediate plane z = plane_z. The kernel keeps
// its 3D 1/r form, so the quadrature spans both transverse directions of the
// physical plane (samples x samples midpoint cells of side 2*halfwidth,
// centered on the straight-line crossing point). plane_z must lie strictly
// between r1.z and r3.z.
double huygens_compose_check(double k, Point r1, Point r3, double plane_z,
                             double halfwidth, int samples);

}  // namespace slitsim
