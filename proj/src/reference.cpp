#include "pipeflow/reference.hpp"

namespace pipeflow {

namespace {

std::vector<double> offsets_0_600() {
    std::vector<double> t;
    for (int k = 0; k <= 10; ++k) t.push_back(60.0 * k);
    return t;
}

ReferenceTable make_table(int which) {
    switch (which) {
        case 1:
            return ReferenceTable{
                {0, 5, 10, 14.5, 20, 25, 30},
                {0},
                {{13.36}, {12.82}, {12.19}, {11.56}, {11.24}, {10.86}, {10.40}}};
        case 2:
            return ReferenceTable{
                {0, 5, 10},
                offsets_0_600(),
                {{13.36, 14.13, 14.58, 15.02, 15.46, 15.91, 16.35, 16.79, 17.24, 17.68, 18.13},
                 {12.82, 13.22, 13.67, 14.11, 14.55, 15.00, 15.44, 15.89, 16.33, 16.77, 17.22},
                 {12.19, 12.47, 12.91, 13.36, 13.80, 14.24, 14.69, 15.13, 15.57, 16.02, 16.46}}};
        case 3:
            return ReferenceTable{
                {10, 14.5, 20},
                offsets_0_600(),
                {{12.19, 11.77, 11.32, 10.87, 10.43, 9.98, 9.54, 9.10, 8.65, 8.21, 7.77},
                 {11.56, 11.03, 10.59, 10.15, 9.70, 9.26, 8.81, 8.37, 7.93, 7.48, 7.04},
                 {11.24, 10.86, 10.42, 9.97, 9.53, 9.09, 8.64, 8.20, 7.75, 7.31, 6.87}}};
        case 4:
            return ReferenceTable{
                {20, 25, 30},
                offsets_0_600(),
                {{11.24, 10.96, 10.52, 10.08, 9.63, 9.19, 8.74, 8.30, 7.86, 7.41, 6.97},
                 {10.86, 10.46, 10.01, 9.57, 9.13, 8.68, 8.24, 7.80, 7.35, 6.91, 6.46},
                 {10.40, 9.63, 9.19, 8.74, 8.30, 7.85, 7.41, 6.97, 6.52, 6.08, 5.63}}};
        default:
            throw BoundsError("reference table index must be 1..4");
    }
}

}  // namespace

const ReferenceTable& reference_table(int which) {
    static const ReferenceTable t1 = make_table(1);
    static const ReferenceTable t2 = make_table(2);
    static const ReferenceTable t3 = make_table(3);
    static const ReferenceTable t4 = make_table(4);
    switch (which) {
        case 1: return t1;
        case 2: return t2;
        case 3: return t3;
        case 4: return t4;
        default: throw BoundsError("reference table index must be 1..4");
    }
}

const SampledCurve& reference_closure_profile() {
    static const SampledCurve curve{
        {0, 5000, 10000, 14500, 20000, 25000, 30000},
        {13.36e4, 12.82e4, 12.19e4, 11.56e4, 11.24e4, 10.86e4, 10.40e4}};
    return curve;
}

FitParams reference_fit() { return FitParams{-0.5, -0.5, 10.0, 5.0}; }

ValidatedScenario reference_scenario() {
    LineParams line;
    line.c = 383.3;
    line.two_a = 0.1;
    line.L = 3e4;
    line.step = 1e4;
    line.Pb = 14e4;
    line.Ps = 11e4;
    line.G0 = 10.0;
    line.Gs = reference_fit().offtake_flux;
    line.eps = 1.35;

    LeakScenario leak;
    leak.ell2 = 1.45e4;
    leak.t1 = 300.0;
    leak.leak_flux = LeakFluxModel::constant(reference_fit().leak_flux);
    leak.horizon = 900.0;
    leak.x_grid = {0, 5000, 10000, 14500, 20000, 25000, 30000};
    for (int k = 0; k <= 10; ++k) leak.t_grid.push_back(300.0 + 60.0 * k);

    return validate(line, leak);
}

}  // namespace pipeflow
