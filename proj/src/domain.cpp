#include "pipeflow/domain.hpp"

#include <algorithm>
#include <cmath>

namespace pipeflow {

namespace {

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool near_multiple(double value, double unit, double rel = 1e-9) {
    const double r = value / unit;
    return std::abs(r - std::round(r)) <= rel * std::max(1.0, std::abs(r));
}

}  // namespace

LeakFluxModel LeakFluxModel::constant(double g) {
    if (g < 0) throw UnitError("leak flux must be non-negative");
    LeakFluxModel m;
    m.values = {g};
    return m;
}

LeakFluxModel LeakFluxModel::piecewise_linear(std::vector<double> t, std::vector<double> v) {
    if (t.size() < 2 || t.size() != v.size())
        throw UnitError("piecewise leak flux needs matching times and values (>= 2 samples)");
    if (!strictly_increasing(t)) throw UnitError("leak flux sample times must be strictly increasing");
    for (double g : v)
        if (g < 0) throw UnitError("leak flux must be non-negative");
    LeakFluxModel m;
    m.times = std::move(t);
    m.values = std::move(v);
    return m;
}

bool LeakFluxModel::is_zero() const {
    return std::all_of(values.begin(), values.end(), [](double g) { return g == 0.0; });
}

double LeakFluxModel::at(double t) const {
    if (is_constant()) return values.front();
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times.begin());
    const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
    return values[j - 1] + w * (values[j] - values[j - 1]);
}

std::vector<double> LeakFluxModel::breakpoints(double a, double b) const {
    std::vector<double> edges{a};
    for (double tk : times)
        if (tk > a && tk < b) edges.push_back(tk);
    edges.push_back(b);
    return edges;
}

double LeakFluxModel::integral(double a, double b) const {
    if (b <= a) return 0.0;
    const auto edges = breakpoints(a, b);
    double s = 0.0;
    for (std::size_t j = 1; j < edges.size(); ++j)
        s += 0.5 * (at(edges[j - 1]) + at(edges[j])) * (edges[j] - edges[j - 1]);
    return s;
}

double LeakFluxModel::conv_exp(double t0, double t, double alpha) const {
    if (t <= t0) return 0.0;
    const auto edges = breakpoints(t0, t);
    double s = 0.0;
    for (std::size_t j = 1; j < edges.size(); ++j) {
        const double a = edges[j - 1], b = edges[j];
        const double ga = at(a), gb = at(b);
        const double slope = (gb - ga) / (b - a);
        const double ea = std::exp(-alpha * (t - a));
        const double eb = std::exp(-alpha * (t - b));
        // \int (ga + slope (tau - a)) e^{-alpha (t - tau)} dtau over [a, b]
        s += ga * (eb - ea) / alpha;
        s += slope * ((b - a) * eb / alpha - (eb - ea) / (alpha * alpha));
    }
    return s;
}

void LineParams::check() const {
    if (!(c > 0)) throw UnitError("line.c must be positive");
    if (!(two_a > 0)) throw UnitError("line.two_a must be positive");
    if (!(L > 0)) throw UnitError("line.length must be positive");
    if (!(step > 0)) throw UnitError("line.step must be positive");
    if (!(step <= L)) throw GeometryError("line.step must not exceed line.length");
    if (!(Pb > 0) || !(Ps > 0)) throw UnitError("nominal pressures must be positive");
    if (!(Pb > Ps)) throw UnitError("line.inlet_pressure must exceed line.outlet_pressure");
    if (G0 < 0) throw UnitError("line.inlet_flux must be non-negative");
    if (Gs < 0) throw UnitError("line.offtake_flux must be non-negative");
    if (!(eps > 1)) throw ThresholdError("line.epsilon must exceed 1");
}

void SeriesConfig::check() const {
    if (n_max < 1) throw ConfigError("series.n_max must be >= 1");
    if (!(tail_tol > 0)) throw ConfigError("series.tail_tol must be positive");
}

ValidatedScenario validate(const LineParams& params, const LeakScenario& scenario,
                           TieBreak tie_break) {
    params.check();
    if (!(scenario.ell2 > 0) || !(scenario.ell2 < params.L))
        throw GeometryError("leak.position must lie strictly inside (0, length)");
    if (!(scenario.t1 > 0)) throw UnitError("leak.closure_time must be positive");
    if (!(scenario.horizon >= scenario.t1))
        throw UnitError("leak.horizon must not precede leak.closure_time");
    if (near_multiple(scenario.ell2, params.step) && tie_break == TieBreak::reject)
        throw OnConnectorError("leak.position coincides with a connector");
    if (!std::is_sorted(scenario.x_grid.begin(), scenario.x_grid.end(),
                        std::less_equal<double>()))
        throw GeometryError("outputs.x_grid must be strictly increasing");
    if (!std::is_sorted(scenario.t_grid.begin(), scenario.t_grid.end(),
                        std::less_equal<double>()))
        throw GeometryError("outputs.t_grid must be strictly increasing");
    for (double x : scenario.x_grid)
        if (x < 0 || x > params.L) throw GeometryError("outputs.x_grid must lie within [0, length]");
    for (double t : scenario.t_grid)
        if (t < 0 || t > scenario.horizon)
            throw GeometryError("outputs.t_grid must lie within [0, horizon]");
    return ValidatedScenario{params, scenario, tie_break};
}

ValidatedScenario validate(const ValidatedScenario& scenario) {
    return validate(scenario.line, scenario.leak, scenario.tie_break);
}

SampledCurve SampledCurve::uniform(double x_lo, double x_hi, double value) {
    return SampledCurve{{x_lo, x_hi}, {value, value}};
}

double SampledCurve::at(double xi) const {
    if (x.empty()) throw BoundsError("empty pressure curve");
    if (xi <= x.front()) return y.front();
    if (xi >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), xi);
    const std::size_t j = static_cast<std::size_t>(it - x.begin());
    const double w = (xi - x[j - 1]) / (x[j] - x[j - 1]);
    return y[j - 1] + w * (y[j] - y[j - 1]);
}

double SampledCurve::mean() const {
    if (x.size() < 2) return y.empty() ? 0.0 : y.front();
    double s = 0.0;
    for (std::size_t j = 1; j < x.size(); ++j)
        s += 0.5 * (y[j - 1] + y[j]) * (x[j] - x[j - 1]);
    return s / (x.back() - x.front());
}

void SectionState::check() const {
    if (!(x_lo < x_hi)) throw GeometryError("section bounds must satisfy x_lo < x_hi");
    if (!(c2 > 0) || !(two_a > 0)) throw UnitError("section needs positive c2 and two_a");
    if (p_init.x.empty()) throw GeometryError("section has no initial pressure profile");
    if (p_init.x.front() > x_lo + 1e-9 * span() || p_init.x.back() < x_hi - 1e-9 * span())
        throw GeometryError("initial profile must cover the section span");
    if (leak_pos && (*leak_pos <= x_lo || *leak_pos >= x_hi))
        throw GeometryError("leak position must lie strictly inside the section");
}

}  // namespace pipeflow
