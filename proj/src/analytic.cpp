#include "pipeflow/analytic.hpp"

#include <cmath>

#include "pipeflow/series_sums.hpp"

namespace pipeflow {

namespace {

void check_x(double x, double lo, double hi) {
    const double tol = 1e-9 * (hi - lo);
    if (x < lo - tol || x > hi + tol) throw BoundsError("x outside the section span");
}

// Response of a sealed span to a point flux history G at relative position
// u_src (0/1 for boundary stations): (c^2/ell) [ \int G + 2 sum coscos C_n ].
// C_n is integrated by parts so the remainders decay like e^{-A n^2 tau}.
double source_response(double u, double u_src, double ell, double c2, double two_a,
                       const LeakFluxModel& flux, double t0, double t,
                       const SeriesConfig& cfg) {
    if (t <= t0 || flux.is_zero()) return 0.0;
    const double A = decay_base(c2, two_a, ell);
    const double dt = t - t0;

    const double secular = flux.integral(t0, t);
    double modal = (2.0 / A) * (flux.at(t) * series::pair_over_n2(u, u_src, A, 0.0, cfg) -
                                flux.at(t0) * series::pair_over_n2(u, u_src, A, dt, cfg));
    if (!flux.is_constant()) {
        const auto edges = flux.breakpoints(t0, t);
        for (std::size_t j = 1; j < edges.size(); ++j) {
            const double a = edges[j - 1], b = edges[j];
            const double slope = (flux.at(b) - flux.at(a)) / (b - a);
            if (slope == 0.0) continue;
            modal -= (2.0 / (A * A)) * slope *
                     (series::pair_over_n4(u, u_src, A, t - b, cfg) -
                      series::pair_over_n4(u, u_src, A, t - a, cfg));
        }
    }
    return (c2 / ell) * (secular + modal);
}

// Imposed-gradient term: (c^2 g / (two_a ell)) [ dt + 2 sum coscos
// (e^{-A n^2 t0} - e^{-A n^2 t}) / (A n^2) ]; the kernel runs in absolute time.
double gradient_term(double u, double u_src, double ell, double c2, double two_a, double g,
                     double t0, double t, const SeriesConfig& cfg) {
    if (g == 0.0 || t <= t0) return 0.0;
    const double A = decay_base(c2, two_a, ell);
    const double bracket = (t - t0) + (2.0 / A) * (series::pair_over_n2(u, u_src, A, t0, cfg) -
                                                   series::pair_over_n2(u, u_src, A, t, cfg));
    return (c2 * g / (two_a * ell)) * bracket;
}

}  // namespace

double decay_rate(int kind, int n, const LineParams& params, const ValvePair& pair) {
    if (n < 1) throw BoundsError("modal index must be >= 1");
    double span;
    switch (kind) {
        case 1: span = params.L; break;
        case 3: span = pair.ell1; break;
        case 4: span = pair.ell3 - pair.ell1; break;
        case 5: span = params.L - pair.ell3; break;
        default: throw BoundsError("decay-rate kind must be one of 1, 3, 4, 5");
    }
    if (!(span > 0)) throw GeometryError("decay-rate span must be positive");
    return decay_base(params.c2(), params.two_a, span) * n * n;
}

double preclosure_profile(double x, double t, const LineParams& params,
                          const LeakScenario& scenario, const SeriesConfig& cfg,
                          PreclosureForm form) {
    check_x(x, 0.0, params.L);
    if (t < 0 || t > scenario.t1 + 1e-9 * scenario.t1)
        throw BoundsError("pre-closure time must lie in [0, t1]");

    const double stationary = params.Pb - params.two_a * params.G0 * x;
    double p = stationary - source_response(x / params.L, scenario.ell2 / params.L, params.L,
                                            params.c2(), params.two_a, scenario.leak_flux,
                                            0.0, t, cfg);
    if (form == PreclosureForm::full && t > 0) {
        // The two inlet sums cancel term by term once reindexed; kept for the
        // full form, where they contribute only truncation-level residue.
        const double A = decay_base(params.c2(), params.two_a, params.L);
        const double coef = 4.0 * params.two_a * params.L * params.G0 / (kPi * kPi);
        double extra = 0.0;
        for (int j = 1; j <= cfg.n_max; ++j) {
            const double m = 2.0 * j - 1.0;
            extra += std::exp(-A * m * m * t) * std::cos(m * kPi * x / params.L) / (m * m);
        }
        for (int m = 1; m <= cfg.n_max; m += 2) {
            const double md = m;
            extra -= std::exp(-A * md * md * t) * std::cos(md * kPi * x / params.L) / (md * md);
        }
        p += 2.0 * coef * extra;
    }
    return p;
}

double section1_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg) {
    check_x(x, state.x_lo, state.x_hi);
    if (t < state.t_start) throw BoundsError("section time precedes valve closure");
    const double u = (x - state.x_lo) / state.span();
    double p = state.p_init.at(x);
    if (t == state.t_start) return p;
    p += source_response(u, 0.0, state.span(), state.c2, state.two_a,
                         LeakFluxModel::constant(state.flux_lo), state.t_start, t, cfg);
    p += gradient_term(u, 0.0, state.span(), state.c2, state.two_a, state.g_lo,
                       state.t_start, t, cfg);
    return p;
}

double section2_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg) {
    check_x(x, state.x_lo, state.x_hi);
    if (t < state.t_start) throw BoundsError("section time precedes valve closure");
    if (!state.leak_pos) throw GeometryError("section 2 needs a leak position");
    const double u = (x - state.x_lo) / state.span();
    const double u_src = (*state.leak_pos - state.x_lo) / state.span();
    double p = state.p_init.at(x);
    if (t == state.t_start) return p;
    p -= source_response(u, u_src, state.span(), state.c2, state.two_a, state.leak,
                         state.t_start, t, cfg);
    return p;
}

double section3_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg) {
    check_x(x, state.x_lo, state.x_hi);
    if (t < state.t_start) throw BoundsError("section time precedes valve closure");
    const double u = (x - state.x_lo) / state.span();
    double p = state.p_init.at(x);
    if (t == state.t_start) return p;
    p -= source_response(u, 1.0, state.span(), state.c2, state.two_a,
                         LeakFluxModel::constant(state.flux_hi), state.t_start, t, cfg);
    p -= gradient_term(u, 1.0, state.span(), state.c2, state.two_a, state.g_hi,
                       state.t_start, t, cfg);
    return p;
}

double inlet_pressure(double t, const SectionState& state, const SeriesConfig& cfg, InletForm form) {
    if (t < state.t_start) throw BoundsError("inlet time precedes valve closure");
    if (form == InletForm::series) return section1_pressure(state.x_lo, t, state, cfg);

    const double ell = state.span();
    const double dt = t - state.t_start;
    const double A = decay_base(state.c2, state.two_a, ell);
    const double secular = (state.c2 / ell) * state.net_influx() * dt;
    const double saturation = (state.two_a * ell / 3.0) * state.flux_lo;
    return state.p_init.at(state.x_lo) + secular +
           saturation * (1.0 - std::exp(-A * (1.0 - kEulerC) * dt));
}

double section_mean(const SectionState& state, double t) {
    const double dt = t - state.t_start;
    if (dt < 0) throw BoundsError("section time precedes valve closure");
    const double rate = (state.c2 / state.span()) * (state.net_influx() - state.net_offtake());
    return state.p_init.mean() + rate * dt -
           (state.c2 / state.span()) * state.leak.integral(state.t_start, t);
}

double section_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg) {
    switch (state.id) {
        case 1: return section1_pressure(x, t, state, cfg);
        case 2: return section2_pressure(x, t, state, cfg);
        case 3: return section3_pressure(x, t, state, cfg);
        default: throw BoundsError("section id must be 1, 2 or 3");
    }
}

PressureField evaluate_section(const SectionState& state, const std::vector<double>& xs,
                               const std::vector<double>& ts, const SeriesConfig& cfg) {
    PressureField f;
    f.section_id = state.id;
    f.source = PressureField::Source::analytic;
    f.x = xs;
    f.t = ts;
    f.p.resize(xs.size() * ts.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
            f.at(i, j) = section_pressure(xs[i], ts[j], state, cfg);
    return f;
}

std::array<PressureField, 3> field_snapshot(const std::array<SectionState, 3>& states,
                                            const std::vector<double>& x_grid,
                                            const std::vector<double>& t_grid,
                                            const SeriesConfig& cfg) {
    std::array<PressureField, 3> out;
    for (std::size_t s = 0; s < 3; ++s) {
        const auto& st = states[s];
        std::vector<double> xs;
        const double tol = 1e-9 * st.span();
        for (double x : x_grid)
            if (x >= st.x_lo - tol && x <= st.x_hi + tol) xs.push_back(x);
        std::vector<double> ts;
        for (double t : t_grid)
            if (t >= st.t_start) ts.push_back(t);
        out[s] = evaluate_section(st, xs, ts, cfg);
    }
    return out;
}

}  // namespace pipeflow
