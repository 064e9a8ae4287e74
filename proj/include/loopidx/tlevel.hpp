#pragma once

#include "loopidx/rootsys.hpp"

#include <vector>

namespace loopidx::tlevel {

using rootsys::CoweightQ;
using rootsys::RootDatum;
using rootsys::WeylElement;

// Canonical representative of a class in the finite level subgroup of the
// torus: coroot coordinates with every entry reduced to [0, 1).
struct TLevelElement {
    CoweightQ xi;

    friend bool operator==(const TLevelElement& a, const TLevelElement& b) {
        return a.xi == b.xi;
    }
    friend bool operator<(const TLevelElement& a, const TLevelElement& b) {
        for (size_t i = 0; i < a.xi.size(); ++i) {
            if (a.xi[i] < b.xi[i]) return true;
            if (b.xi[i] < a.xi[i]) return false;
        }
        return false;
    }
};

// Order = det of the level-scaled Gram matrix.
long long tlevel_order(const RootDatum& d);

// Does the class of xi belong to the level subgroup?
bool is_member(const RootDatum& d, const CoweightQ& xi);

// Reduce mod the coroot lattice; throws if xi is not a member.
TLevelElement canonicalize(const RootDatum& d, const CoweightQ& xi);

// All elements, sorted; throws if the order exceeds the cap.
std::vector<TLevelElement> enumerate_tlevel(const RootDatum& d, size_t cap = 10000000);

// No root pairs integrally with xi.
bool is_regular(const RootDatum& d, const CoweightQ& xi);

struct OrbitData {
    // one entry per free W-orbit of regular classes; indices into the element list
    std::vector<size_t> reps;
    std::vector<std::vector<size_t>> orbits;
};

// Partition of the regular classes into W-orbits.  Every such orbit must be
// free; a non-free regular orbit indicates broken data and throws.
OrbitData regular_orbit_reps(const RootDatum& d, const std::vector<TLevelElement>& elems,
                             const std::vector<WeylElement>& wl);

} // namespace loopidx::tlevel
