// Conservative theta-scheme reference solver for the section diffusion model
// P_t = (c^2/two_a) P_xx - c^2 G_ut(t) delta(x - l2). Boundary fluxes enter
// through ghost points; the discrete trapezoid linepack then changes exactly
// by the theta-quadrature of boundary and leak fluxes.
#pragma once

#include "pipeflow/domain.hpp"

namespace pipeflow {

struct FDConfig {
    double dx = 100.0;
    double dt = 1.0;
    double theta = 0.5;       // implicitness weight
    double horizon = 600.0;   // run length from state.t_start, s
    int startup_steps = 2;    // fully implicit first steps (damps start-up ringing)

    void check() const;
};

// Solves the section over [t_start, t_start + horizon]. Snapshots are taken at
// t_samples (absolute, snapped to the step grid); the first and last step are
// always included. Throws StabilityError for an unstable explicit setup and
// GridError if the span or leak cannot be placed on the grid.
PressureField fd_solve(const SectionState& state, const FDConfig& cfg,
                       std::vector<double> t_samples = {});

// |delta linepack - theta-quadrature of (influx - outflux - leak)| / linepack,
// evaluated between the field's first and last snapshot.
double mass_balance_residual(const PressureField& field, const SectionState& state,
                             const FDConfig& cfg);

struct ConvergenceResult {
    std::vector<double> pairwise;  // log2 error ratios of successive halvings
    double estimate = 0;           // last pairwise order
};

// Richardson order estimate against one further halving as the reference;
// dt halves together with dx. refinements counts solution grids (>= 3).
ConvergenceResult convergence_order(const SectionState& state, const FDConfig& cfg,
                                    int refinements);

// Trapezoid linepack (1/c^2) \int P dx of one snapshot column.
double linepack(const PressureField& field, std::size_t t_index, double c2);

}  // namespace pipeflow
