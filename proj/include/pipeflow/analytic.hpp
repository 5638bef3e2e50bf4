// Closed-form transient pressure fields: the pre-closure leaking line and the
// three post-closure sections, plus the inlet-pressure law. Evaluation folds
// the non-decaying modal parts into Bernoulli closed forms, leaving remainders
// that decay like e^{-A n^2 (t - t1)}.
#pragma once

#include <array>

#include "pipeflow/domain.hpp"
#include "pipeflow/placement.hpp"

namespace pipeflow {

// Euler constant as used by the simplified inlet law.
inline constexpr double kEulerC = 0.577215;

enum class PreclosureForm { full, simplified };
enum class InletForm { series, simplified };

// Modal decay rate alpha_kind(n); kind 1 spans the whole line, kinds 3/4/5
// span sections 1/2/3.
double decay_rate(int kind, int n, const LineParams& params, const ValvePair& pair);

// Whole-line profile while the leak is open and both stations hold their
// nominal flux, 0 <= t <= t1. The full form carries the pair of mutually
// cancelling inlet sums; the simplified form omits them.
double preclosure_profile(double x, double t, const LineParams& params,
                          const LeakScenario& scenario, const SeriesConfig& cfg,
                          PreclosureForm form = PreclosureForm::simplified);

// Post-closure section fields, t >= state.t_start.
double section1_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg);
double section2_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg);
double section3_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg);

// Pressure at the section-1 inlet. The series form equals
// section1_pressure(x_lo, t); the simplified form collapses the modal sum into
// its saturation level with an Euler-constant-scaled relaxation.
double inlet_pressure(double t, const SectionState& state, const SeriesConfig& cfg, InletForm form);

// Exact spatial mean of a section field at time t (modal terms average out).
double section_mean(const SectionState& state, double t);

// Dispatch by state.id (1/2/3).
double section_pressure(double x, double t, const SectionState& state, const SeriesConfig& cfg);

PressureField evaluate_section(const SectionState& state, const std::vector<double>& xs,
                               const std::vector<double>& ts, const SeriesConfig& cfg);

// Evaluates the three sections on the sub-grids falling inside each span.
std::array<PressureField, 3> field_snapshot(const std::array<SectionState, 3>& states,
                                            const std::vector<double>& x_grid,
                                            const std::vector<double>& t_grid,
                                            const SeriesConfig& cfg);

}  // namespace pipeflow
