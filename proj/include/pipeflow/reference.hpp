// Bundled reference scenario and calibration. The "paper-fit" preset carries
// the closure-time profile and the effective boundary terms that reproduce the
// reference tables; `tables` and `verify` run against this dataset without any
// input file.
#pragma once

#include "pipeflow/domain.hpp"

namespace pipeflow {

inline constexpr const char* kReferenceFitId = "paper-fit";

// Reference table values in 1e-2 MPa on km / seconds-since-closure grids.
struct ReferenceTable {
    std::vector<double> x_km;
    std::vector<double> t_offsets;
    std::vector<std::vector<double>> cells;  // cells[row][col]
};

// which = 1..4: closure profile, then sections 1/2/3 over time.
const ReferenceTable& reference_table(int which);

// Line parameters, leak scenario and output grids of the reference case.
ValidatedScenario reference_scenario();

// Closure-time pressure profile over the whole line (SI).
const SampledCurve& reference_closure_profile();

// Back-fitted effective boundary terms of the reference calibration.
struct FitParams {
    double g_lo;          // section-1 imposed gradient, Pa/m
    double g_hi;          // section-3 imposed gradient, Pa/m
    double offtake_flux;  // section-3 flux amplitude, Pa*s/m
    double leak_flux;     // constant breach flux, Pa*s/m
};
FitParams reference_fit();

}  // namespace pipeflow
