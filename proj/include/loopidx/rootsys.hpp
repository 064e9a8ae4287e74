#pragma once

#include "loopidx/linalg.hpp"
#include "loopidx/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace loopidx::rootsys {

// Weights live in fundamental-weight coordinates, coweights in simple-coroot
// coordinates; with that choice the canonical pairing is the plain dot
// product and stays integral on lattice points.
using WeightVec = IntVec;
using CoweightQ = RatVec;
using CoweightC = std::vector<std::complex<double>>;

struct SimpleFactor {
    char series = 'A';   // A..G
    int rank = 1;
    long long level = 1; // positive integer scale applied to this factor's block
};

// Product of simple simply connected factors with one positive level each.
// Text form: "A2*1", "A1*2+A1*3", "G2" (level defaults to 1).
struct LieSpec {
    std::vector<SimpleFactor> factors;

    int rank() const {
        int r = 0;
        for (auto& f : factors) r += f.rank;
        return r;
    }
    static LieSpec parse(const std::string& text);
    std::string str() const;
};

struct WeylElement {
    IntMat on_weights;    // matrix acting on fundamental-weight coordinates
    IntMat on_coweights;  // contragredient matrix on simple-coroot coordinates
    int length = 0;       // Coxeter word length
    int sign() const { return length % 2 ? -1 : 1; }
};

struct RootDatum {
    LieSpec spec;
    int rank = 0;
    IntMat cartan;       // cartan[i][j] = pairing of simple root j with coroot i
    IntMat gram_basic;   // coroot Gram matrix, short coroots of squared length 2
    IntMat gram;         // gram_basic with each factor block multiplied by its level
    RatMat gram_inv;             // inverse of the level-scaled Gram matrix
    std::vector<WeightVec> positive_roots;    // fundamental-weight coordinates
    std::vector<CoweightQ> positive_coroots;  // matching coroots, coroot coordinates
    WeightVec rho;                            // (1, ..., 1)
    std::vector<long long> dual_coxeter;      // one entry per factor
    unsigned long long weyl_order = 1;        // exact iff weyl_order_exact
    bool weyl_order_exact = true;
    std::vector<int> factor_of_coord;         // coordinate index -> factor index
    std::vector<long long> level_of_coord;

    long long level_scale(int coord) const { return level_of_coord[coord]; }
};

RootDatum build_root_datum(const LieSpec& spec);

// <lambda, xi> for a weight and a coweight; the 2*pi*i exponential convention
// lives entirely in the character/jet layer, not here.
inline Rational pairing(const WeightVec& w, const CoweightQ& x) {
    Rational s(0);
    for (size_t i = 0; i < w.size(); ++i) s += Rational(w[i]) * x[i];
    return s;
}
inline std::complex<double> pairing(const WeightVec& w, const CoweightC& x) {
    std::complex<double> s = 0.0;
    for (size_t i = 0; i < w.size(); ++i) s += double(w[i]) * x[i];
    return s;
}

// Level-scaled inner product of coweights (the bilinear form written as a dot
// against the scaled Gram matrix).
Rational inner_product(const RootDatum& d, const CoweightQ& a, const CoweightQ& b);
std::complex<double> inner_product(const RootDatum& d, const CoweightC& a, const CoweightC& b);
// Same with the unscaled basic form.
Rational inner_product_basic(const RootDatum& d, const CoweightQ& a, const CoweightQ& b);
std::complex<double> inner_product_basic(const RootDatum& d, const CoweightC& a,
                                         const CoweightC& b);

// The weight representing a level-scaled coroot-lattice vector under the
// basic form: coordinates gram * eta (integral since the Gram matrix is).
WeightVec weight_of_coweight(const RootDatum& d, const IntVec& eta);

// The coweight realizing a weight under the level-scaled form: gram^{ -1} * w.
CoweightQ coweight_of_weight(const RootDatum& d, const WeightVec& w);

WeightVec simple_root(const RootDatum& d, int i);       // column i of cartan
WeylElement simple_reflection(const RootDatum& d, int i);

inline WeightVec act_on_weight(const WeylElement& w, const WeightVec& v) {
    return mat_vec(w.on_weights, v);
}
template <class S>
std::vector<S> act_on_coweight(const WeylElement& w, const std::vector<S>& v) {
    return mat_vec<S>(w.on_coweights, v);
}

// Full Weyl group, breadth-first over the simple generators, sorted by
// (length, matrix entries).  Throws if the order exceeds the cap.
std::vector<WeylElement> weyl_elements(const RootDatum& d, size_t cap = 1000000);

bool is_dominant(const WeightVec& w);

// Weyl dimension formula as an exact rational (always a positive integer for
// dominant lambda; kept rational so tests can detect breakage).
Rational weyl_dimension(const RootDatum& d, const WeightVec& lambda);

} // namespace loopidx::rootsys
