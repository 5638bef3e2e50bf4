// Connector geometry and selection of the isolation-valve pair around a leak.
#pragma once

#include "pipeflow/domain.hpp"

namespace pipeflow {

struct ValvePair {
    double ell1 = 0;  // left valve position, m
    double ell3 = 0;  // right valve position, m
    int n = 0;        // connector index, ell3 = n * step

    bool operator==(const ValvePair&) const = default;
};

// Smallest connector multiple strictly beyond the leak; ell1 = ell3 - step.
// A leak exactly on a connector follows the tie-break policy.
ValvePair locate_isolation_valves(double ell2, double step, double L,
                                  TieBreak tie_break = TieBreak::reject);

// Interior connector positions [step, 2 step, ..., L - step].
std::vector<double> connector_positions(double step, double L);

}  // namespace pipeflow
