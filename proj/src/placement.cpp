#include "pipeflow/placement.hpp"

#include <cmath>

namespace pipeflow {

namespace {

long round_to_long(double r) { return static_cast<long>(std::llround(r)); }

bool divides(double unit, double value, double rel = 1e-9) {
    const double r = value / unit;
    return std::abs(r - std::round(r)) <= rel * std::max(1.0, std::abs(r));
}

}  // namespace

ValvePair locate_isolation_valves(double ell2, double step, double L, TieBreak tie_break) {
    if (!(step > 0) || !(step <= L)) throw GeometryError("connector step must satisfy 0 < step <= length");
    if (!(ell2 > 0) || !(ell2 < L)) throw GeometryError("leak position must lie strictly inside (0, length)");
    if (!divides(step, L)) throw GeometryError("line length must be an integer multiple of the connector step");

    const double ratio = ell2 / step;
    long n;
    if (divides(step, ell2)) {
        if (tie_break == TieBreak::reject)
            throw OnConnectorError("leak position coincides with connector " +
                                   std::to_string(round_to_long(ratio)));
        n = round_to_long(ratio);  // bracket upstream: [ell2 - step, ell2]
    } else {
        n = static_cast<long>(std::floor(ratio)) + 1;
    }
    const double ell3 = static_cast<double>(n) * step;
    if (ell3 > L * (1 + 1e-12)) throw GeometryError("right isolation valve would fall beyond the line end");
    return ValvePair{ell3 - step, ell3, static_cast<int>(n)};
}

std::vector<double> connector_positions(double step, double L) {
    if (!(step > 0) || !(step <= L)) throw GeometryError("connector step must satisfy 0 < step <= length");
    if (!divides(step, L)) throw GeometryError("line length must be an integer multiple of the connector step");
    const long count = round_to_long(L / step);
    std::vector<double> xs;
    for (long k = 1; k < count; ++k) xs.push_back(static_cast<double>(k) * step);
    return xs;
}

}  // namespace pipeflow
