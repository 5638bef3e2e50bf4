#include "pipeflow/setup.hpp"

#include <cmath>

#include "pipeflow/analytic.hpp"
#include "pipeflow/reference.hpp"

namespace pipeflow {

namespace {

SampledCurve sample_preclosure(const ValidatedScenario& scn, double x_lo, double x_hi,
                               const SeriesConfig& cfg, int n_samples = 201) {
    SampledCurve c;
    c.x.reserve(n_samples);
    c.y.reserve(n_samples);
    for (int i = 0; i < n_samples; ++i) {
        const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / (n_samples - 1);
        c.x.push_back(x);
        c.y.push_back(preclosure_profile(x, scn.leak.t1, scn.line, scn.leak, cfg));
    }
    return c;
}

SampledCurve restrict_curve(const SampledCurve& full, double x_lo, double x_hi) {
    SampledCurve c;
    c.x.push_back(x_lo);
    c.y.push_back(full.at(x_lo));
    for (std::size_t i = 0; i < full.x.size(); ++i)
        if (full.x[i] > x_lo && full.x[i] < x_hi) {
            c.x.push_back(full.x[i]);
            c.y.push_back(full.y[i]);
        }
    c.x.push_back(x_hi);
    c.y.push_back(full.at(x_hi));
    return c;
}

bool matches_reference_geometry(const ValidatedScenario& scn) {
    const ValidatedScenario ref = reference_scenario();
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
    return close(scn.line.L, ref.line.L) && close(scn.line.step, ref.line.step) &&
           close(scn.leak.ell2, ref.leak.ell2) && close(scn.leak.t1, ref.leak.t1);
}

}  // namespace

std::array<SectionState, 3> make_section_states(const ValidatedScenario& scn,
                                                const ValvePair& pair,
                                                const SeriesConfig& cfg,
                                                const std::string& fit_id) {
    const LineParams& line = scn.line;
    const double t1 = scn.leak.t1;

    std::array<SectionState, 3> s{};
    for (int i = 0; i < 3; ++i) {
        s[i].id = i + 1;
        s[i].t_start = t1;
        s[i].c2 = line.c2();
        s[i].two_a = line.two_a;
    }
    s[0].x_lo = 0;
    s[0].x_hi = pair.ell1;
    s[1].x_lo = pair.ell1;
    s[1].x_hi = pair.ell3;
    s[2].x_lo = pair.ell3;
    s[2].x_hi = line.L;

    s[0].flux_lo = line.G0;
    s[1].leak_pos = scn.leak.ell2;
    s[1].leak = scn.leak.leak_flux;
    s[2].flux_hi = line.Gs;

    if (fit_id == kReferenceFitId) {
        if (!matches_reference_geometry(scn))
            throw ConfigError("fit '" + std::string(kReferenceFitId) +
                              "' requires the bundled reference scenario geometry");
        const FitParams fit = reference_fit();
        const SampledCurve& profile = reference_closure_profile();
        s[0].g_lo = fit.g_lo;
        s[2].g_hi = fit.g_hi;
        s[2].flux_hi = fit.offtake_flux;
        for (int i = 0; i < 3; ++i)
            s[i].p_init = restrict_curve(profile, s[i].x_lo, s[i].x_hi);
    } else if (fit_id == "none" || fit_id.empty()) {
        // Boundary gradients taken from the pre-closure field at closure.
        s[0].g_lo = -line.two_a * line.G0;
        s[2].g_hi = -line.two_a * (line.G0 - scn.leak.leak_flux.at(t1));
        const SampledCurve full = sample_preclosure(scn, 0, line.L, cfg);
        for (int i = 0; i < 3; ++i)
            s[i].p_init = restrict_curve(full, s[i].x_lo, s[i].x_hi);
    } else {
        throw ConfigError("unknown fit '" + fit_id + "' (expected 'none' or '" +
                          std::string(kReferenceFitId) + "')");
    }

    for (const auto& st : s) st.check();
    return s;
}

SectionState make_preclosure_state(const ValidatedScenario& scn) {
    SectionState st;
    st.id = 0;
    st.x_lo = 0;
    st.x_hi = scn.line.L;
    st.t_start = 0;
    st.c2 = scn.line.c2();
    st.two_a = scn.line.two_a;
    // Pre-leak steady profile: both stations carry the through-flow G0.
    st.p_init = SampledCurve{{0, scn.line.L},
                             {scn.line.Pb, scn.line.Pb - scn.line.two_a * scn.line.G0 * scn.line.L}};
    st.flux_lo = scn.line.G0;
    st.flux_hi = scn.line.G0;
    st.leak_pos = scn.leak.ell2;
    st.leak = scn.leak.leak_flux;
    st.check();
    return st;
}

SectionState equilibrated(const SectionState& state) {
    SectionState eq = state;
    eq.p_init = SampledCurve::uniform(state.x_lo, state.x_hi, state.p_init.mean());
    eq.flux_lo = state.net_influx();
    eq.flux_hi = state.net_offtake();
    eq.g_lo = 0;
    eq.g_hi = 0;
    return eq;
}

}  // namespace pipeflow
