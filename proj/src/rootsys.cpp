#include "loopidx/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace loopidx::rootsys {

namespace {

struct FactorTables {
    IntMat cartan;          // factor-local, C[i][j] = <alpha_j, alpha_i^vee>
    IntVec colength;        // d_i = squared coroot length / 2 (1, 2 or 3)
    unsigned long long weyl_order;
    bool weyl_exact;
    long long dual_coxeter;
};

unsigned long long sat_mul(unsigned long long a, unsigned long long b, bool& exact) {
    if (a != 0 && b > ~0ull / a) { exact = false; return ~0ull; }
    return a * b;
}

unsigned long long factorial_sat(int n, bool& exact) {
    unsigned long long f = 1;
    for (int i = 2; i <= n; ++i) f = sat_mul(f, (unsigned long long)i, exact);
    return f;
}

IntMat chain_cartan(int n) {
    IntMat c(n, IntVec(n, 0));
    for (int i = 0; i < n; ++i) {
        c[i][i] = 2;
        if (i + 1 < n) { c[i][i + 1] = -1; c[i + 1][i] = -1; }
    }
    return c;
}

FactorTables factor_tables(char series, int n) {
    FactorTables t;
    t.weyl_exact = true;
    auto bad = [&](const std::string& why) {
        throw std::invalid_argument(std::string("unsupported factor ") + series +
                                    std::to_string(n) + ": " + why);
    };
    switch (series) {
    case 'A': {
        if (n < 1) bad("rank must be >= 1");
        t.cartan = chain_cartan(n);
        t.colength = IntVec(n, 1);
        t.weyl_order = factorial_sat(n + 1, t.weyl_exact);
        t.dual_coxeter = n + 1;
        break;
    }
    case 'B': {
        if (n < 2) bad("rank must be >= 2");
        t.cartan = chain_cartan(n);
        t.cartan[n - 1][n - 2] = -2;           // short alpha_n against long chain
        t.colength = IntVec(n, 1);
        t.colength[n - 1] = 2;
        t.weyl_order = factorial_sat(n, t.weyl_exact);
        for (int i = 0; i < n; ++i) t.weyl_order = sat_mul(t.weyl_order, 2, t.weyl_exact);
        t.dual_coxeter = 2 * n - 1;
        break;
    }
    case 'C': {
        if (n < 2) bad("rank must be >= 2");
        t.cartan = chain_cartan(n);
        t.cartan[n - 2][n - 1] = -2;           // long alpha_n against short chain
        t.colength = IntVec(n, 2);
        t.colength[n - 1] = 1;
        t.weyl_order = factorial_sat(n, t.weyl_exact);
        for (int i = 0; i < n; ++i) t.weyl_order = sat_mul(t.weyl_order, 2, t.weyl_exact);
        t.dual_coxeter = n + 1;
        break;
    }
    case 'D': {
        if (n < 4) bad("rank must be >= 4");
        t.cartan = chain_cartan(n);
        t.cartan[n - 1][n - 2] = 0;
        t.cartan[n - 2][n - 1] = 0;
        t.cartan[n - 1][n - 3] = -1;
        t.cartan[n - 3][n - 1] = -1;
        t.colength = IntVec(n, 1);
        t.weyl_order = factorial_sat(n, t.weyl_exact);
        for (int i = 0; i < n - 1; ++i) t.weyl_order = sat_mul(t.weyl_order, 2, t.weyl_exact);
        t.dual_coxeter = 2 * n - 2;
        break;
    }
    case 'E': {
        if (n < 6 || n > 8) bad("rank must be 6, 7 or 8");
        // chain 1-3-4-5-...-n with node 2 attached to node 4 (1-based labels)
        t.cartan = IntMat(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) t.cartan[i][i] = 2;
        auto link = [&](int a, int b) { t.cartan[a - 1][b - 1] = t.cartan[b - 1][a - 1] = -1; };
        link(1, 3); link(2, 4);
        for (int a = 3; a < n; ++a) link(a, a + 1);
        t.colength = IntVec(n, 1);
        t.weyl_order = n == 6 ? 51840ull : n == 7 ? 2903040ull : 696729600ull;
        t.dual_coxeter = n == 6 ? 12 : n == 7 ? 18 : 30;
        break;
    }
    case 'F': {
        if (n != 4) bad("rank must be 4");
        t.cartan = chain_cartan(4);
        t.cartan[2][1] = -2;                   // short alpha_3 against long alpha_2
        t.colength = {1, 1, 2, 2};
        t.weyl_order = 1152;
        t.dual_coxeter = 9;
        break;
    }
    case 'G': {
        if (n != 2) bad("rank must be 2");
        t.cartan = {{2, -3}, {-1, 2}};         // alpha_1 short, alpha_2 long
        t.colength = {3, 1};
        t.weyl_order = 12;
        t.dual_coxeter = 4;
        break;
    }
    default:
        bad("series must be one of A-G");
    }
    return t;
}

// All roots of one factor: Weyl-orbit closure of the simple roots under the
// simple reflections, in fundamental-weight coordinates.
std::vector<IntVec> factor_roots(const IntMat& cartan) {
    int n = (int)cartan.size();
    std::vector<IntVec> simple(n, IntVec(n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) simple[i][k] = cartan[k][i];
    std::set<IntVec> seen(simple.begin(), simple.end());
    std::vector<IntVec> queue(simple.begin(), simple.end());
    for (size_t q = 0; q < queue.size(); ++q) {
        IntVec beta = queue[q];
        for (int i = 0; i < n; ++i) {
            IntVec img = beta;
            long long bi = beta[i];
            for (int k = 0; k < n; ++k) img[k] -= bi * simple[i][k];
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    return {seen.begin(), seen.end()};
}

} // namespace

LieSpec LieSpec::parse(const std::string& text) {
    LieSpec spec;
    size_t pos = 0;
    if (text.empty()) throw std::invalid_argument("empty group spec");
    while (pos < text.size()) {
        size_t end = text.find('+', pos);
        std::string tok = text.substr(pos, end == std::string::npos ? end : end - pos);
        pos = end == std::string::npos ? text.size() : end + 1;
        if (tok.empty()) throw std::invalid_argument("empty factor in group spec");
        SimpleFactor f;
        f.series = (char)std::toupper((unsigned char)tok[0]);
        size_t i = 1, j = i;
        while (j < tok.size() && std::isdigit((unsigned char)tok[j])) ++j;
        if (j == i) throw std::invalid_argument("missing rank in factor '" + tok + "'");
        f.rank = std::stoi(tok.substr(i, j - i));
        if (j < tok.size()) {
            if (tok[j] != '*')
                throw std::invalid_argument("expected '*level' in factor '" + tok + "'");
            f.level = std::stoll(tok.substr(j + 1));
        }
        if (f.level < 1) throw std::invalid_argument("level must be a positive integer");
        spec.factors.push_back(f);
    }
    return spec;
}

std::string LieSpec::str() const {
    std::string s;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += '+';
        s += factors[i].series;
        s += std::to_string(factors[i].rank);
        s += '*';
        s += std::to_string(factors[i].level);
    }
    return s;
}

RootDatum build_root_datum(const LieSpec& spec) {
    if (spec.factors.empty()) throw std::invalid_argument("group spec has no factors");
    RootDatum d;
    d.spec = spec;
    d.rank = spec.rank();
    d.cartan = IntMat(d.rank, IntVec(d.rank, 0));
    d.gram_basic = IntMat(d.rank, IntVec(d.rank, 0));
    d.gram = IntMat(d.rank, IntVec(d.rank, 0));
    d.rho = WeightVec(d.rank, 1);

    int off = 0;
    for (size_t fi = 0; fi < spec.factors.size(); ++fi) {
        const auto& f = spec.factors[fi];
        FactorTables t = factor_tables(f.series, f.rank);
        for (int i = 0; i < f.rank; ++i) {
            d.factor_of_coord.push_back((int)fi);
            d.level_of_coord.push_back(f.level);
            for (int j = 0; j < f.rank; ++j) {
                d.cartan[off + i][off + j] = t.cartan[i][j];
                long long g = t.cartan[i][j] * t.colength[j];
                d.gram_basic[off + i][off + j] = g;
                d.gram[off + i][off + j] = g * f.level;
            }
        }
        long long short_sq = t.cartan[0][0] * t.colength[0];
        for (int i = 0; i < f.rank; ++i)
            short_sq = std::min(short_sq, t.cartan[i][i] * t.colength[i]);
        if (short_sq != 2)
            throw std::logic_error("basic normalization broken: short coroot length^2 != 2");

        RatMat gf_inv = rat_inverse(to_rational([&] {
            IntMat g(f.rank, IntVec(f.rank));
            for (int i = 0; i < f.rank; ++i)
                for (int j = 0; j < f.rank; ++j) g[i][j] = t.cartan[i][j] * t.colength[j];
            return g;
        }()));
        for (const IntVec& beta : factor_roots(t.cartan)) {
            // keep positives: all simple-root expansion coefficients >= 0
            RatVec expn = rat_mat_vec(rat_inverse(to_rational(t.cartan)), RatVec(beta.begin(), beta.end()));
            bool pos = true;
            for (auto& c : expn) pos = pos && c >= Rational(0);
            if (!pos) continue;
            WeightVec full(d.rank, 0);
            for (int k = 0; k < f.rank; ++k) full[off + k] = beta[k];
            RatVec bv = rat_mat_vec(gf_inv, RatVec(beta.begin(), beta.end()));
            Rational len(0);
            for (int k = 0; k < f.rank; ++k) len += Rational(beta[k]) * bv[k];
            CoweightQ coroot(d.rank, Rational(0));
            for (int k = 0; k < f.rank; ++k) coroot[off + k] = Rational(2) * bv[k] / len;
            d.positive_roots.push_back(full);
            d.positive_coroots.push_back(coroot);
        }
        d.dual_coxeter.push_back(t.dual_coxeter);
        d.weyl_order_exact = d.weyl_order_exact && t.weyl_exact;
        d.weyl_order = sat_mul(d.weyl_order, t.weyl_order, d.weyl_order_exact);
        off += f.rank;
    }

    // deterministic order for the root list
    std::vector<size_t> idx(d.positive_roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return d.positive_roots[a] < d.positive_roots[b];
    });
    std::vector<WeightVec> pr;
    std::vector<CoweightQ> pc;
    for (size_t i : idx) {
        pr.push_back(d.positive_roots[i]);
        pc.push_back(d.positive_coroots[i]);
    }
    d.positive_roots = std::move(pr);
    d.positive_coroots = std::move(pc);

    for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j)
            if (d.gram[i][j] != d.gram[j][i])
                throw std::logic_error("Gram matrix not symmetric");
    for (int k = 1; k <= d.rank; ++k) {
        RatMat minor(k, RatVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) minor[i][j] = Rational(d.gram[i][j]);
        if (!(rat_det(minor) > Rational(0)))
            throw std::logic_error("Gram matrix not positive definite");
    }
    d.gram_inv = rat_inverse(to_rational(d.gram));

    for (size_t b = 0; b < d.positive_roots.size(); ++b) {
        // simple coroots must come out as unit vectors; guards the tables
        Rational p = pairing(d.rho, d.positive_coroots[b]);
        if (!(p > Rational(0)))
            throw std::logic_error("positive coroot with non-positive rho pairing");
    }
    return d;
}

Rational inner_product(const RootDatum& d, const CoweightQ& a, const CoweightQ& b) {
    Rational s(0);
    for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j)
            if (d.gram[i][j]) s += a[i] * Rational(d.gram[i][j]) * b[j];
    return s;
}

std::complex<double> inner_product(const RootDatum& d, const CoweightC& a, const CoweightC& b) {
    std::complex<double> s = 0.0;
    for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j)
            if (d.gram[i][j]) s += a[i] * double(d.gram[i][j]) * b[j];
    return s;
}

Rational inner_product_basic(const RootDatum& d, const CoweightQ& a, const CoweightQ& b) {
    Rational s(0);
    for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j)
            if (d.gram_basic[i][j]) s += a[i] * Rational(d.gram_basic[i][j]) * b[j];
    return s;
}

std::complex<double> inner_product_basic(const RootDatum& d, const CoweightC& a,
                                         const CoweightC& b) {
    std::complex<double> s = 0.0;
    for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j)
            if (d.gram_basic[i][j]) s += a[i] * double(d.gram_basic[i][j]) * b[j];
    return s;
}

WeightVec weight_of_coweight(const RootDatum& d, const IntVec& eta) {
    return mat_vec(d.gram, eta);
}

CoweightQ coweight_of_weight(const RootDatum& d, const WeightVec& w) {
    return rat_mat_vec(d.gram_inv, RatVec(w.begin(), w.end()));
}

WeightVec simple_root(const RootDatum& d, int i) {
    WeightVec a(d.rank);
    for (int k = 0; k < d.rank; ++k) a[k] = d.cartan[k][i];
    return a;
}

WeylElement simple_reflection(const RootDatum& d, int i) {
    WeylElement w;
    w.length = 1;
    w.on_weights = identity_mat(d.rank);
    WeightVec alpha = simple_root(d, i);
    for (int k = 0; k < d.rank; ++k) w.on_weights[k][i] -= alpha[k];
    w.on_coweights = transpose(w.on_weights);  // involution, so transpose = inverse-transpose
    return w;
}

std::vector<WeylElement> weyl_elements(const RootDatum& d, size_t cap) {
    if (d.weyl_order_exact && d.weyl_order > cap)
        throw std::length_error("Weyl group order " + std::to_string(d.weyl_order) +
                                " exceeds enumeration cap " + std::to_string(cap));
    std::vector<WeylElement> gens;
    for (int i = 0; i < d.rank; ++i) gens.push_back(simple_reflection(d, i));

    std::map<IntMat, size_t> seen;
    std::vector<WeylElement> out;
    WeylElement id;
    id.on_weights = identity_mat(d.rank);
    id.on_coweights = identity_mat(d.rank);
    id.length = 0;
    seen[id.on_weights] = 0;
    out.push_back(id);
    for (size_t q = 0; q < out.size(); ++q) {
        WeylElement cur = out[q];  // copy: out may reallocate
        for (const auto& g : gens) {
            WeylElement nxt;
            nxt.on_weights = mat_mul(g.on_weights, cur.on_weights);
            if (seen.count(nxt.on_weights)) continue;
            nxt.on_coweights = mat_mul(g.on_coweights, cur.on_coweights);
            nxt.length = cur.length + 1;
            if (out.size() >= cap)
                throw std::length_error("Weyl enumeration exceeded cap");
            seen[nxt.on_weights] = out.size();
            out.push_back(nxt);
        }
    }
    if (d.weyl_order_exact && out.size() != d.weyl_order)
        throw std::logic_error("Weyl enumeration count disagrees with the order table");
    std::sort(out.begin(), out.end(), [](const WeylElement& a, const WeylElement& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.on_weights < b.on_weights;
    });
    return out;
}

bool is_dominant(const WeightVec& w) {
    for (long long c : w)
        if (c < 0) return false;
    return true;
}

Rational weyl_dimension(const RootDatum& d, const WeightVec& lambda) {
    Rational dim(1);
    for (size_t b = 0; b < d.positive_roots.size(); ++b) {
        WeightVec lr(lambda);
        for (int i = 0; i < d.rank; ++i) lr[i] += d.rho[i];
        dim *= pairing(lr, d.positive_coroots[b]) / pairing(d.rho, d.positive_coroots[b]);
    }
    return dim;
}

} // namespace loopidx::rootsys
