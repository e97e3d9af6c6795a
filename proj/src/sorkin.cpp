#include "slitsim/sorkin.hpp"

#include <algorithm>
#include <cmath>

#include "slitsim/looped.hpp"
#include "slitsim/parallel.hpp"

namespace slitsim {

std::vector<Mask> seven_masks(int slit_count) {
    if (slit_count != 3)
        throw ValidationError("the Sorkin mask set is defined for slit_count == 3");
    return {Mask::of({0}),    Mask::of({1}),    Mask::of({2}),   Mask::of({0, 1}),
            Mask::of({1, 2}), Mask::of({0, 2}), Mask::of({0, 1, 2})};
}

std::string mask_label(const Mask& mask) {
    std::string label;
    for (int j : mask.open) {
        if (j < 0 || j > 25) throw ValidationError("mask labels cover slit indices 0..25");
        label.push_back(static_cast<char>('A' + j));
    }
    return label;
}

namespace {

// grid maximum with ties broken toward the smallest |theta|
std::size_t peak_index(const Pattern& p) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.probabilities.size(); ++i) {
        const double v = p.probabilities[i];
        const double b = p.probabilities[best];
        if (v > b || (v == b && std::abs(p.grid.theta_rad[i]) < std::abs(p.grid.theta_rad[best])))
            best = i;
    }
    return best;
}

}  // namespace

SorkinResult sorkin_epsilon(std::vector<Pattern> patterns) {
    if (patterns.size() != 7)
        throw ValidationError("sorkin_epsilon requires exactly seven patterns");
    const std::vector<Mask> canon = seven_masks(3);
    for (std::size_t m = 0; m < 7; ++m) {
        if (patterns[m].mask.open != canon[m].open)
            throw ValidationError("patterns must use the seven canonical masks, in order");
        if (!(patterns[m].grid == patterns[0].grid))
            throw ValidationError("patterns must share one detector grid");
    }

    const std::size_t n = patterns[0].grid.size();
    SorkinResult r;
    r.epsilon.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.epsilon[i] = patterns[6].probabilities[i] - patterns[3].probabilities[i] -
                       patterns[4].probabilities[i] - patterns[5].probabilities[i] +
                       patterns[0].probabilities[i] + patterns[1].probabilities[i] +
                       patterns[2].probabilities[i];
    }
    const std::size_t peak = peak_index(patterns[6]);
    r.i_max = patterns[6].probabilities[peak];
    if (!(r.i_max > 0.0))
        throw ValidationError("three-slit pattern is identically zero; kappa is undefined");
    r.kappa.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.kappa[i] = r.epsilon[i] / r.i_max;
    r.per_mask = std::move(patterns);
    return r;
}

double visibility(const Pattern& pattern, double theta_lo, double theta_hi) {
    if (!(theta_lo < theta_hi)) throw ValidationError("visibility window must be non-empty");
    std::vector<double> p;
    for (std::size_t i = 0; i < pattern.grid.size(); ++i) {
        const double t = pattern.grid.theta_rad[i];
        if (t >= theta_lo && t <= theta_hi) p.push_back(pattern.probabilities[i]);
    }
    if (p.size() < 3)
        throw ValidationError("visibility window holds no fringe structure");

    const double pmax = *std::max_element(p.begin(), p.end());
    const double pmin = *std::min_element(p.begin(), p.end());
    if (pmax <= 0.0 || pmax - pmin <= 1e-12 * pmax) return 0.0;  // constant pattern

    std::vector<double> extrema;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        const bool max_here = p[i] > p[i - 1] && p[i] > p[i + 1];
        const bool min_here = p[i] < p[i - 1] && p[i] < p[i + 1];
        if (max_here || min_here) extrema.push_back(p[i]);
    }
    if (extrema.size() < 2) {
        // no interior fringe pair: bracket with the window endpoints
        extrema.insert(extrema.begin(), p.front());
        extrema.push_back(p.back());
    }
    double acc = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        const double hi = std::max(extrema[i], extrema[i + 1]);
        const double lo = std::min(extrema[i], extrema[i + 1]);
        if (hi + lo > 0.0) {
            acc += (hi - lo) / (hi + lo);
            ++pairs;
        }
    }
    if (pairs == 0) throw ValidationError("visibility window holds no fringe structure");
    return acc / pairs;
}

double central_fringe_kappa(const SorkinResult& result) {
    const Pattern& p3 = result.per_mask.at(6);
    const std::size_t peak = peak_index(p3);
    const double cut = 0.7 * result.i_max;
    std::size_t lo = peak;
    while (lo > 0 && p3.probabilities[lo - 1] >= cut) --lo;
    std::size_t hi = peak;
    while (hi + 1 < p3.probabilities.size() && p3.probabilities[hi + 1] >= cut) ++hi;
    double acc = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) acc += result.kappa[i];
    return acc / static_cast<double>(hi - lo + 1);
}

namespace {

SorkinResult sorkin_for(const SlitArray& slits, const Illumination& illum,
                        const CouplingModel& coupling, const DetectorGrid& grid) {
    std::vector<Pattern> patterns;
    patterns.reserve(7);
    for (const Mask& m : seven_masks(3))
        patterns.push_back(total_pattern(slits, m, illum, coupling, grid));
    return sorkin_epsilon(std::move(patterns));
}

}  // namespace

SweepResult sweep(const ModelBundle& base, const SweepSpec& spec,
                  const CouplingResolver& resolver) {
    if (spec.wavelengths_m.empty()) throw ValidationError("sweep wavelength axis must be non-empty");
    for (double w : spec.wavelengths_m)
        if (!(w > 0.0)) throw ValidationError("sweep wavelengths must be positive");

    const CouplingResolver resolve =
        resolver ? resolver : CouplingResolver([&base](double) { return base.coupling; });

    auto coupling_at = [&](double wavelength) {
        CouplingModel c = resolve(wavelength);
        if (!spec.loops_on) c.max_hops = 0;
        return c;
    };

    SweepResult out;
    out.kind = spec.kind;
    out.axis1 = spec.wavelengths_m;

    if (spec.kind != SweepKind::intensity_map && base.slits.slit_count != 3)
        throw ValidationError("the Sorkin mask set is defined for slit_count == 3");

    if (spec.kind == SweepKind::kappa_at_center) {
        out.axis2 = spec.widths_m.empty() ? std::vector<double>{base.slits.slit_width_m}
                                          : spec.widths_m;
        for (double w : out.axis2) {
            if (!(w > 0.0)) throw ValidationError("sweep widths must be positive");
            if (!(w < base.slits.pitch_m)) throw ValidationError("pitch must exceed slit width");
        }
    } else {
        out.axis2 = base.grid.theta_rad;
    }

    out.values.assign(out.axis1.size(), std::vector<double>(out.axis2.size(), 0.0));

    parallel_for(out.axis1.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double wavelength = out.axis1[i];
            Illumination illum = base.illumination;
            illum.wavelength_m = wavelength;
            const CouplingModel coupling = coupling_at(wavelength);

            switch (spec.kind) {
                case SweepKind::intensity_map: {
                    const Pattern p = total_pattern(base.slits, Mask::all(base.slits.slit_count),
                                                    illum, coupling, base.grid);
                    out.values[i] = p.probabilities;
                    break;
                }
                case SweepKind::kappa_map: {
                    out.values[i] = sorkin_for(base.slits, illum, coupling, base.grid).kappa;
                    break;
                }
                case SweepKind::kappa_at_center: {
                    for (std::size_t j = 0; j < out.axis2.size(); ++j) {
                        const SlitArray slits =
                            SlitArray::make(out.axis2[j], base.slits.pitch_m, base.slits.slit_count);
                        out.values[i][j] =
                            central_fringe_kappa(sorkin_for(slits, illum, coupling, base.grid));
                    }
                    break;
                }
            }
        }
    });

    return out;
}

}  // namespace slitsim
