#pragma once

#include <vector>

#include "slitsim/looped.hpp"
#include "slitsim/model.hpp"

// Reference implementations kept deliberately separate from the production
// code paths. They recompute the same quantities by explicit enumeration and
// algebraic expansion so the two routes can cross-check each other, both in
// the test suite and in the `validate`/`sorkin` commands.
namespace slitsim::reference {

// Every hop sequence with 1..max_hops hops through the open slits, with its
// full amplitude (entry excitation * hop couplings * exit factor at theta).
std::vector<HopPath> enumerate_hop_paths(const SlitArray& slits, const Mask& mask,
                                         const Illumination& illumination,
                                         const CouplingModel& coupling, double theta_rad);

// Looped amplitude by summing the enumerated paths. exact_hops > 0 restricts
// the sum to sequences of exactly that many hops; 0 sums 1..max_hops.
Complex looped_amplitude_enumerated(const SlitArray& slits, const Mask& mask,
                                    const Illumination& illumination,
                                    const CouplingModel& coupling, double theta_rad,
                                    int exact_hops = 0);

// epsilon(theta) from the expanded form of the seven-term combination: the
// direct-only products cancel identically, leaving only terms that involve
// the looped field, sum over masks of sign * (2 Re(conj(D) L) + |L|^2).
std::vector<double> epsilon_cross_terms(const SlitArray& slits, const Illumination& illumination,
                                        const CouplingModel& coupling, const DetectorGrid& grid);

// Full from-scratch Sorkin analysis: per-mask patterns assembled from a local
// direct evaluation plus enumerated loops, epsilon from the cross-term
// expansion, i_max from the three-slit pattern.
SorkinResult sorkin_reference(const ModelBundle& bundle);

}  // namespace slitsim::reference
