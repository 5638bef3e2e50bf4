// Builds the three post-closure section states (and the whole-line pre-closure
// state) from a validated scenario, either from first principles or from the
// bundled fit calibration.
#pragma once

#include <array>
#include <string>

#include "pipeflow/domain.hpp"
#include "pipeflow/placement.hpp"

namespace pipeflow {

// fit_id: "none" derives the closure profile and boundary gradients from the
// pre-closure field; "paper-fit" applies the bundled calibration (and requires
// the reference geometry).
std::array<SectionState, 3> make_section_states(const ValidatedScenario& scenario,
                                                const ValvePair& pair,
                                                const SeriesConfig& cfg,
                                                const std::string& fit_id);

// Whole line with the leak open and both stations holding their nominal flux.
SectionState make_preclosure_state(const ValidatedScenario& scenario);

// Same geometry and net fluxes with a uniform initial profile (the section
// mean). On these states the closed forms are exact, which is what the
// solver-vs-series verification runs on.
SectionState equilibrated(const SectionState& state);

}  // namespace pipeflow
