#include "loopidx/charring.hpp"

namespace loopidx::charring {

LaurentPoly to_complex_poly(const LaurentPolyQ& p) {
    LaurentPoly out;
    for (auto& [w, c] : p.terms()) out.add_term(w, c.to_complex());
    return out;
}

jetcalc::CSeries evaluate_at_jet(const LaurentPoly& p, const jetcalc::TorusJet& jet, int N) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    jetcalc::CSeries out = jetcalc::series_zero(N);
    for (auto& [w, c] : p.terms()) {
        Cpx phase = std::exp(Cpx(0, two_pi) * rootsys::pairing(w, jet.base));
        jetcalc::CSeries x = jetcalc::jet_pairing_series(w, jet, N);
        for (auto& v : x) v *= Cpx(0, two_pi);
        jetcalc::CSeries e = jetcalc::series_exp(x, N);
        for (int i = 0; i <= N; ++i) out[i] += c * phase * e[i];
    }
    return out;
}

} // namespace loopidx::charring
