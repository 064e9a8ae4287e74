#include "loopidx/tlevel.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace loopidx::tlevel {

long long tlevel_order(const RootDatum& d) {
    long long det = int_det(d.gram);
    assert(det > 0); // the scaled Gram matrix is positive definite
    return det;
}

bool is_member(const RootDatum& d, const CoweightQ& xi) {
    if ((int)xi.size() != d.rank) return false;
    for (int i = 0; i < d.rank; ++i) {
        Rational s(0);
        for (int j = 0; j < d.rank; ++j) s += Rational(d.gram[i][j]) * xi[j];
        if (!s.is_integer()) return false;
    }
    return true;
}

TLevelElement canonicalize(const RootDatum& d, const CoweightQ& xi) {
    if (!is_member(d, xi)) throw std::domain_error("coweight is not in the level subgroup");
    TLevelElement e;
    e.xi.reserve(xi.size());
    for (const Rational& c : xi) e.xi.push_back(c.frac());
    return e;
}

std::vector<TLevelElement> enumerate_tlevel(const RootDatum& d, size_t cap) {
    long long order = tlevel_order(d);
    if ((unsigned long long)order > cap)
        throw std::length_error("level subgroup too large to enumerate");

    // With u*gram*v = s diagonal and u, v unimodular, the classes are exactly
    // frac(v * (k_1/s_1, ..., k_r/s_r)) for 0 <= k_i < s_i, all distinct.
    SmithForm f = smith_normal_form(d.gram);
    int r = d.rank;
    std::vector<TLevelElement> out;
    out.reserve((size_t)order);
    IntVec k(r, 0);
    for (;;) {
        CoweightQ xi(r, Rational(0));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (f.v[i][j] && k[j]) xi[i] += Rational(f.v[i][j] * k[j], f.s[j][j]);
        TLevelElement e;
        e.xi.reserve(r);
        for (const Rational& c : xi) e.xi.push_back(c.frac());
        assert(is_member(d, e.xi));
        out.push_back(std::move(e));

        int pos = r - 1;
        while (pos >= 0) {
            if (++k[pos] < f.s[pos][pos]) break;
            k[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    std::sort(out.begin(), out.end());
    if ((long long)out.size() != order || std::adjacent_find(out.begin(), out.end()) != out.end())
        throw std::logic_error("level subgroup enumeration produced duplicates");
    return out;
}

bool is_regular(const RootDatum& d, const CoweightQ& xi) {
    for (const auto& alpha : d.positive_roots)
        if (rootsys::pairing(alpha, xi).is_integer()) return false;
    return true;
}

OrbitData regular_orbit_reps(const RootDatum& d, const std::vector<TLevelElement>& elems,
                             const std::vector<WeylElement>& wl) {
    std::map<CoweightQ, size_t> index_of;
    for (size_t i = 0; i < elems.size(); ++i) index_of[elems[i].xi] = i;

    OrbitData data;
    std::vector<char> visited(elems.size(), 0);
    for (size_t i = 0; i < elems.size(); ++i) {
        if (visited[i] || !is_regular(d, elems[i].xi)) continue;
        std::vector<size_t> orbit;
        for (const auto& w : wl) {
            CoweightQ moved = rootsys::act_on_coweight<Rational>(w, elems[i].xi);
            for (Rational& c : moved) c = c.frac();
            auto it = index_of.find(moved);
            if (it == index_of.end())
                throw std::logic_error("Weyl action left the level subgroup");
            if (!visited[it->second]) {
                visited[it->second] = 1;
                orbit.push_back(it->second);
            }
        }
        if (orbit.size() != wl.size())
            throw std::logic_error("regular class with a non-free Weyl orbit");
        std::sort(orbit.begin(), orbit.end());
        data.reps.push_back(orbit.front());
        data.orbits.push_back(std::move(orbit));
    }
    return data;
}

} // namespace loopidx::tlevel
