#include "pipeflow/dispatch.hpp"

#include <cmath>
#include <functional>

namespace pipeflow {

namespace {

// Activation law behind the closed-form rule: the inlet limit is reached when
// P(0,t1) + (2 - C) (c^2 G0 / l1) dt + 2a l1 G0 (1/3 - 1/pi^2) (1 - e^{-a1 (1-C) dt})
// meets eps * Pb. The exponential relaxation vanishes on the scale of the
// answer, so the closed form inverts the affine part.
struct ActivationLaw {
    double p0, slope, offset, relax_rate;

    double operator()(double dt) const {
        return p0 + slope * dt + offset * (1.0 - std::exp(-relax_rate * dt));
    }
};

ActivationLaw make_law(const SectionState& s1) {
    const double ell = s1.span();
    const double a1 = decay_base(s1.c2, s1.two_a, ell);
    return ActivationLaw{
        s1.p_init.at(s1.x_lo),
        (2.0 - kEulerC) * s1.c2 * s1.flux_lo / ell,
        s1.two_a * ell * s1.flux_lo * (1.0 / 3.0 - 1.0 / (kPi * kPi)),
        a1 * (1.0 - kEulerC),
    };
}

double bisect_crossing(const std::function<double(double)>& f, double target, double lo_dt,
                       double cap, const char* what) {
    double lo = lo_dt, hi = 60.0;
    while (f(hi) < target) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) throw NoRootError(std::string(what) + " does not reach the limit within " +
                                        std::to_string(cap) + " s");
    }
    while (hi - lo > 0.1) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ActivationTime compute_activation_time(const LineParams& params, const SectionState& s1,
                                       ActivationMethod method) {
    const double limit = params.eps * params.Pb;
    const double p0 = s1.p_init.at(s1.x_lo);
    if (p0 >= limit)
        throw AlreadyViolatedError("inlet pressure already at the compressor limit at closure");
    if (!(s1.flux_lo > 0))
        throw UnitError("activation time needs a positive inlet flux");

    const ActivationLaw law = make_law(s1);
    double delta;
    if (method == ActivationMethod::closed_form) {
        delta = (limit - law.p0 - law.offset) / law.slope;
    } else {
        delta = bisect_crossing([&](double dt) { return law(dt); }, limit, 0.0, 1e7,
                                "activation law");
    }
    if (delta <= 0)
        throw AlreadyViolatedError("computed activation time does not exceed the closure time");
    delta = std::max(delta, 1.0);
    return ActivationTime{s1.t_start + delta, delta};
}

double inlet_series_crossing(const LineParams& params, const SectionState& s1,
                             const SeriesConfig& cfg, double search_cap) {
    const double limit = params.eps * params.Pb;
    if (s1.p_init.at(s1.x_lo) >= limit)
        throw AlreadyViolatedError("inlet pressure already at the compressor limit at closure");
    if (!(s1.net_influx() > 0))
        throw NoRootError("inlet series is not increasing; the limit is never reached");
    const double delta = bisect_crossing(
        [&](double dt) { return inlet_pressure(s1.t_start + dt, s1, cfg, InletForm::series); },
        limit, 0.0, search_cap, "inlet series");
    return s1.t_start + delta;
}

LeakedMass leaked_mass(const SectionState& s2, double horizon,
                       std::optional<double> pipe_diameter) {
    if (horizon < s2.t_start) throw BoundsError("horizon precedes valve closure");
    LeakedMass m;
    m.flux_integral = s2.leak.integral(s2.t_start, horizon);
    // The linepack reading of the balance: span/c^2 times the mean pressure
    // drop (boundary terms vanish for the sealed section).
    const double mean_drop = section_mean(s2, s2.t_start) - section_mean(s2, horizon);
    m.linepack_form = s2.span() / s2.c2 * mean_drop;
    if (pipe_diameter && *pipe_diameter > 0)
        m.kg = m.flux_integral * kPi * (*pipe_diameter) * (*pipe_diameter) / 4.0;
    return m;
}

double supply_deficit(double t, const SectionState& s3, const LineParams& params,
                      const SeriesConfig& cfg) {
    const double p_end = section3_pressure(s3.x_hi, t, s3, cfg);
    return 1.0 - p_end / params.Ps;
}

ValveTimeline build_timeline(const ValidatedScenario& scenario, const ValvePair& pair,
                             const std::array<SectionState, 3>& states) {
    const ActivationTime act =
        compute_activation_time(scenario.line, states[0], ActivationMethod::closed_form);
    ValveTimeline tl;
    tl.events.push_back({scenario.leak.t1, "4.2", pair.ell1, ValveAction::close, "isolate-leak"});
    tl.events.push_back({scenario.leak.t1, "4.1", pair.ell3, ValveAction::close, "isolate-leak"});
    tl.events.push_back({act.t2, "5.2", pair.ell1, ValveAction::open, "protect-compressor"});
    tl.events.push_back({act.t2, "5.1", pair.ell3, ValveAction::open, "restore-supply"});
    return tl;
}

DispatchReport make_dispatch_report(const ValidatedScenario& scenario,
                                    const std::array<SectionState, 3>& states,
                                    const SeriesConfig& cfg) {
    DispatchReport r;
    r.t1 = scenario.leak.t1;
    r.epsilon_used = scenario.line.eps;

    const ActivationTime closed =
        compute_activation_time(scenario.line, states[0], ActivationMethod::closed_form);
    const ActivationTime root =
        compute_activation_time(scenario.line, states[0], ActivationMethod::root_find);
    r.t2 = closed.t2;
    r.t2_delta = closed.delta;
    r.t2_root = root.t2;
    try {
        r.t2_series_root = inlet_series_crossing(scenario.line, states[0], cfg);
    } catch (const Error&) {
        r.t2_series_root = std::nullopt;
    }

    const auto mass = leaked_mass(states[1], scenario.leak.horizon, scenario.line.meta.d);
    r.leaked_mass_integral = mass.flux_integral;
    r.leaked_mass_kg = mass.kg;
    r.supply_deficit = supply_deficit(scenario.leak.horizon, states[2], scenario.line, cfg);
    return r;
}

}  // namespace pipeflow
