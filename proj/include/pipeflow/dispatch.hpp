// Emergency-mode decision computations: connector activation time, leaked-mass
// estimate, consumer supply deficit and the valve event timeline.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "pipeflow/analytic.hpp"
#include "pipeflow/domain.hpp"
#include "pipeflow/placement.hpp"

namespace pipeflow {

enum class ValveAction { open, close };

struct ValveEvent {
    double t = 0;          // absolute time since leak onset, s
    std::string valve;     // "4.1"/"4.2" isolation, "5.1"/"5.2" connector
    double position = 0;   // m
    ValveAction action = ValveAction::close;
    std::string reason;    // isolate-leak | protect-compressor | restore-supply
};

struct ValveTimeline {
    std::vector<ValveEvent> events;  // ordered by time, closures first
};

struct ActivationTime {
    double t2 = 0;     // absolute, s
    double delta = 0;  // t2 - t1, s
};

enum class ActivationMethod { closed_form, root_find };

// Time at which the connector valves must open so the section-1 inlet stays
// below eps * Pb. closed_form evaluates the analytic rule; root_find bisects
// the same activation law (with its relaxation term) to 0.1 s. Throws
// AlreadyViolatedError when there is no headroom at closure.
ActivationTime compute_activation_time(const LineParams& params, const SectionState& s1,
                                       ActivationMethod method);

// Crossing time of the full modal inlet series (InletForm::series) with
// eps * Pb, bisected to 0.1 s. This is the law the section-1 field actually
// follows; it is reported alongside the activation rule, whose slope differs.
double inlet_series_crossing(const LineParams& params, const SectionState& s1,
                             const SeriesConfig& cfg, double search_cap = 1e6);

struct LeakedMass {
    double flux_integral = 0;        // \int G_ut dt, Pa*s (per unit area)
    double linepack_form = 0;        // span/c^2 * (mean drop), same units
    std::optional<double> kg;        // with pipe area from meta.d
};

LeakedMass leaked_mass(const SectionState& s2, double horizon,
                       std::optional<double> pipe_diameter = std::nullopt);

// 1 - P3(L, t) / Ps: relative shortfall of delivery pressure.
double supply_deficit(double t, const SectionState& s3, const LineParams& params,
                      const SeriesConfig& cfg);

// Close 4.2/4.1 at t1, open the connector valves at t2 (closed form).
ValveTimeline build_timeline(const ValidatedScenario& scenario, const ValvePair& pair,
                             const std::array<SectionState, 3>& states);

struct DispatchReport {
    double t1 = 0;
    double t2 = 0;                 // closed form, absolute
    double t2_delta = 0;           // closed form, since closure
    double t2_root = 0;            // root-find on the activation law, absolute
    std::optional<double> t2_series_root;  // modal-series crossing, absolute
    double leaked_mass_integral = 0;
    std::optional<double> leaked_mass_kg;
    double supply_deficit = 0;     // at the scenario horizon
    double epsilon_used = 0;
};

DispatchReport make_dispatch_report(const ValidatedScenario& scenario,
                                    const std::array<SectionState, 3>& states,
                                    const SeriesConfig& cfg);

}  // namespace pipeflow
