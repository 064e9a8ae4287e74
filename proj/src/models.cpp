#include "loopidx/models.hpp"

#include "loopidx/tlevel.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace loopidx::models {

using charring::LaurentPoly;
using charring::Window;
using charring::WindowedMultiplicity;
using jetcalc::Cpx;
using jetcalc::VectorFieldSeries;
using locindex::AssemblyMode;
using locindex::FixedPointContribution;
using locindex::IntegrandDatum;
using rootsys::CoweightQ;
using rootsys::RootDatum;
using rootsys::WeightVec;

namespace {

WeightVec shifted_weight(const RootDatum& d, const WeightVec& lambda) {
    if ((int)lambda.size() != d.rank)
        throw std::invalid_argument("coadjoint toy: weight rank mismatch");
    for (long long c : lambda)
        if (c < 0) throw std::invalid_argument("coadjoint toy: weight must be dominant");
    WeightVec lr = lambda;
    for (int i = 0; i < d.rank; ++i) lr[i] += d.rho[i];
    return lr;
}

} // namespace

WindowedMultiplicity coadjoint_toy_index(const RootDatum& d, const WeightVec& lambda,
                                         const Window& win) {
    WeightVec lr = shifted_weight(d, lambda);
    auto wl = rootsys::weyl_elements(d);
    std::vector<std::pair<WeightVec, int>> pts;
    pts.reserve(wl.size());
    for (const auto& w : wl) pts.push_back({rootsys::act_on_weight(w, lr), w.sign()});

    // a translate landing in the window bounds every coordinate of gram*eta,
    // and |eta|_inf <= ||gram_inv||_inf * |gram*eta|_inf
    Rational norm(0);
    for (int i = 0; i < d.rank; ++i) {
        Rational row(0);
        for (int j = 0; j < d.rank; ++j)
            row += d.gram_inv[i][j] < Rational(0) ? -d.gram_inv[i][j] : d.gram_inv[i][j];
        if (norm < row) norm = row;
    }
    long long coord_bound = 0;
    for (int i = 0; i < d.rank; ++i) {
        long long m = std::max(std::llabs(win.lo[i]), std::llabs(win.hi[i]));
        long long orbit_max = 0;
        for (const auto& [p, s] : pts) {
            (void)s;
            orbit_max = std::max(orbit_max, std::llabs(p[i]));
        }
        coord_bound = std::max(coord_bound, m + orbit_max);
    }
    long long r_stop = (norm * Rational(coord_bound)).floor() + 1;

    WindowedMultiplicity out;
    out.window = win;
    IntVec eta(d.rank, -r_stop);
    for (;;) {
        IntVec shift = mat_vec(d.gram, eta);
        for (const auto& [p, s] : pts) {
            WeightVec mu = p;
            for (int i = 0; i < d.rank; ++i) mu[i] += shift[i];
            if (win.contains(mu)) out.add(mu, Cpx(double(s)));
        }
        int pos = 0;
        while (pos < d.rank) {
            if (++eta[pos] <= r_stop) break;
            eta[pos] = -r_stop;
            ++pos;
        }
        if (pos >= d.rank) break;
    }
    return out;
}

WindowedMultiplicity coadjoint_toy_index_by_contributions(const RootDatum& d,
                                                          const WeightVec& lambda,
                                                          const Window& win) {
    WeightVec lr = shifted_weight(d, lambda);
    auto wl = rootsys::weyl_elements(d);
    FixedPointContribution base;
    base.beta = CoweightQ(d.rank, Rational(0));
    base.mu0 = WeightVec(d.rank, 0);
    base.e_weights = charring::weyl_antisymmetrize<Cpx>(wl, lr);
    auto family = locindex::expand_lattice_translates(d, base, win);
    return locindex::nonabelian_sum(d, family, win);
}

VerlindeParams make_verlinde_params(const std::string& simple_factor, int level,
                                    int genus) {
    rootsys::LieSpec spec = rootsys::LieSpec::parse(simple_factor);
    if (spec.factors.size() != 1)
        throw std::invalid_argument("verlinde: expected a single simple factor");
    if (spec.factors[0].level != 1)
        throw std::invalid_argument(
            "verlinde: factor scale is derived from level and genus; pass the bare type");
    if (level < 0) throw std::invalid_argument("verlinde: level must be >= 0");
    if (genus < 1) throw std::invalid_argument("verlinde: genus must be >= 1");

    VerlindeParams p;
    p.level = level;
    p.genus = genus;
    rootsys::RootDatum probe = rootsys::build_root_datum(spec);
    p.ell = level + probe.dual_coxeter[0];
    spec.factors[0].level = p.ell;
    p.datum = rootsys::build_root_datum(spec);
    return p;
}

IntegrandDatum verlinde_integrand(const VerlindeParams& p) {
    const RootDatum& d = p.datum;
    int m = p.genus - 1;
    IntegrandDatum I;
    I.numerator = LaurentPoly::constant(
        d.rank, Cpx(std::pow(double(tlevel::tlevel_order(d)), m)));
    if (m > 0) {
        for (const auto& alpha : d.positive_roots) {
            WeightVec neg(alpha.size());
            for (size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
            I.denominator_factors.push_back({alpha, m});
            I.denominator_factors.push_back({neg, m});
        }
    }
    return I;
}

namespace {

Cpx validated_count(Cpx acc, const char* who) {
    if (std::abs(acc.imag()) > 1e-9)
        throw std::runtime_error(std::string(who) + ": value is not real");
    if (std::abs(acc.real() - std::round(acc.real())) > 1e-6)
        throw std::runtime_error(std::string(who) + ": value is not integral");
    return acc;
}

} // namespace

Cpx verlinde_fixed_point(const VerlindeParams& p) {
    const RootDatum& d = p.datum;
    auto wl = rootsys::weyl_elements(d);
    auto els = tlevel::enumerate_tlevel(d);
    auto orbits = tlevel::regular_orbit_reps(d, els, wl);
    IntegrandDatum I = verlinde_integrand(p);
    Cpx acc = 0.0;
    for (size_t r : orbits.reps)
        acc += locindex::integrand_eval(I, jetcalc::make_jet(els[r].xi, 0), 0)[0];
    return validated_count(acc, "verlinde_fixed_point");
}

Cpx verlinde_assembled(const VerlindeParams& p) {
    const RootDatum& d = p.datum;
    auto wl = rootsys::weyl_elements(d);
    auto els = tlevel::enumerate_tlevel(d);
    auto orbits = tlevel::regular_orbit_reps(d, els, wl);
    long long T = tlevel::tlevel_order(d);
    int h = p.genus;

    IntegrandDatum I;
    WeightVec neg_rho(d.rank, -1);
    double sgn = d.positive_roots.size() % 2 ? -1.0 : 1.0;
    I.numerator = LaurentPoly::monomial(neg_rho, Cpx(sgn * std::pow(double(T), h)));
    for (const auto& alpha : d.positive_roots) {
        WeightVec neg(alpha.size());
        for (size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
        I.denominator_factors.push_back({alpha, h});
        if (h > 1) I.denominator_factors.push_back({neg, h - 1});
    }

    std::vector<std::pair<CoweightQ, IntegrandDatum>> data;
    data.reserve(orbits.reps.size());
    for (size_t r : orbits.reps) data.push_back({els[r].xi, I});
    VectorFieldSeries v;
    v.rank = d.rank;
    auto dist = locindex::assemble_fixed_point_index(d, data, v, 0, AssemblyMode::G);
    auto val = locindex::pair_with_character(dist, LaurentPoly::constant(d.rank, 1.0), 0);
    return validated_count(val[0], "verlinde_assembled");
}

double verlinde_trig_oracle(const VerlindeParams& p) {
    const auto& f = p.datum.spec.factors.at(0);
    if (f.series != 'A' || f.rank != 1)
        throw std::invalid_argument("verlinde_trig_oracle: defined for A1 factors only");
    const double pi = 3.14159265358979323846;
    double q = double(p.level) + 2.0;
    double acc = 0.0;
    for (int j = 1; j <= p.level + 1; ++j)
        acc += std::pow(std::sin(double(j) * pi / q), 2.0 - 2.0 * p.genus);
    return std::pow(q / 2.0, double(p.genus - 1)) * acc;
}

} // namespace loopidx::models
