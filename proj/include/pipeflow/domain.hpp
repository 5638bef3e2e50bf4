// Core parameter model for linearized pipeline transients. All quantities SI:
// lengths m, times s, pressures Pa, mass fluxes Pa*s/m (= kg m^-2 s^-1).
#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pipeflow {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PIPEFLOW_ERROR_CLASS(Name)                                       \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& m) : Error(#Name ": " + m) {}   \
    }

PIPEFLOW_ERROR_CLASS(UnitError);
PIPEFLOW_ERROR_CLASS(GeometryError);
PIPEFLOW_ERROR_CLASS(ThresholdError);
PIPEFLOW_ERROR_CLASS(OnConnectorError);
PIPEFLOW_ERROR_CLASS(BoundsError);
PIPEFLOW_ERROR_CLASS(TruncationError);
PIPEFLOW_ERROR_CLASS(StabilityError);
PIPEFLOW_ERROR_CLASS(GridError);
PIPEFLOW_ERROR_CLASS(AlreadyViolatedError);
PIPEFLOW_ERROR_CLASS(NoRootError);
PIPEFLOW_ERROR_CLASS(ConfigError);
PIPEFLOW_ERROR_CLASS(IoError);

#undef PIPEFLOW_ERROR_CLASS

inline constexpr double kPi = std::numbers::pi;

// Mass flux drawn at the breach, either constant or a piecewise-linear
// time series. Outside the sample range the end values extend as constants.
struct LeakFluxModel {
    std::vector<double> times;   // empty for the constant model
    std::vector<double> values;  // single entry for the constant model

    static LeakFluxModel constant(double g);
    static LeakFluxModel piecewise_linear(std::vector<double> t, std::vector<double> v);

    bool is_constant() const { return times.empty(); }
    bool is_zero() const;
    double at(double t) const;
    double integral(double a, double b) const;
    // \int_{t0}^{t} G(tau) e^{-alpha (t - tau)} dtau, closed form per segment.
    double conv_exp(double t0, double t, double alpha) const;
    // Segment edges of the model clipped to [a, b], always including a and b.
    std::vector<double> breakpoints(double a, double b) const;

    bool operator==(const LeakFluxModel&) const = default;
};

struct LineParams {
    double c = 0;      // isothermal speed of sound, m/s
    double two_a = 0;  // linearized dissipation constant 2a, 1/s
    double L = 0;      // line length, m
    double step = 0;   // connector spacing, m
    double Pb = 0;     // inlet nominal pressure, Pa
    double Ps = 0;     // delivery nominal pressure, Pa
    double G0 = 0;     // inlet mass flux, Pa*s/m
    double Gs = 0;     // consumer offtake mass flux, Pa*s/m
    double eps = 0;    // compressor pressure-ratio limit, > 1

    // Descriptive only; not used by the linearized model.
    struct Meta {
        std::optional<double> d;           // pipe diameter, m
        std::optional<double> rho_avg;     // kg/m^3
        std::optional<double> v_avg;       // m/s
        std::optional<double> lambda_hyd;  // hydraulic resistance coefficient
        bool operator==(const Meta&) const = default;
    } meta;

    double c2() const { return c * c; }
    void check() const;  // throws UnitError/GeometryError/ThresholdError

    bool operator==(const LineParams&) const = default;
};

struct SeriesConfig {
    int n_max = 50;
    double tail_tol = 1e-9;
    void check() const;
    bool operator==(const SeriesConfig&) const = default;
};

struct LeakScenario {
    double ell2 = 0;  // breach position, m
    double t1 = 0;    // isolation-closure time since leak onset, s
    LeakFluxModel leak_flux = LeakFluxModel::constant(0.0);
    double horizon = 0;          // total simulated time since leak onset, s
    std::vector<double> x_grid;  // output positions, m
    std::vector<double> t_grid;  // output times since leak onset, s

    bool operator==(const LeakScenario&) const = default;
};

enum class TieBreak { reject, bracket_upstream };

struct ValidatedScenario {
    LineParams line;
    LeakScenario leak;
    TieBreak tie_break = TieBreak::reject;
    bool operator==(const ValidatedScenario&) const = default;
};

ValidatedScenario validate(const LineParams& params, const LeakScenario& scenario,
                           TieBreak tie_break = TieBreak::reject);
ValidatedScenario validate(const ValidatedScenario& scenario);

// Piecewise-linear pressure profile over a span.
struct SampledCurve {
    std::vector<double> x;
    std::vector<double> y;

    static SampledCurve uniform(double x_lo, double x_hi, double value);
    double at(double xi) const;  // linear interpolation, clamped at the ends
    double mean() const;         // exact trapezoid mean over [x.front(), x.back()]

    bool operator==(const SampledCurve&) const = default;
};

// One isolated section after valve closure (or the whole pre-closure line).
// Boundary handling: an end with nonzero mass flux imposes the gradient
// -two_a * flux there; a sealed end imposes zero gradient. g_lo/g_hi are the
// additional imposed-gradient terms of the closed-form fields.
struct SectionState {
    int id = 0;
    double x_lo = 0, x_hi = 0;
    double t_start = 0;  // time the section evolution begins (valve closure)
    double c2 = 0;       // speed of sound squared
    double two_a = 0;
    SampledCurve p_init;
    double flux_lo = 0;  // influx through x_lo (0 when sealed)
    double flux_hi = 0;  // offtake through x_hi (0 when sealed)
    double g_lo = 0;     // imposed gradient term at x_lo, Pa/m
    double g_hi = 0;     // imposed gradient term at x_hi, Pa/m
    std::optional<double> leak_pos;
    LeakFluxModel leak = LeakFluxModel::constant(0.0);

    double span() const { return x_hi - x_lo; }
    // Net boundary mass fluxes including the imposed-gradient equivalents.
    double net_influx() const { return flux_lo + g_lo / two_a; }
    double net_offtake() const { return flux_hi + g_hi / two_a; }
    void check() const;
};

struct PressureField {
    enum class Source { analytic, fd };

    int section_id = 0;
    Source source = Source::analytic;
    std::vector<double> x;  // positions, m
    std::vector<double> t;  // absolute times, s
    std::vector<double> p;  // row-major, p[ix * t.size() + it], Pa

    std::size_t nx() const { return x.size(); }
    std::size_t nt() const { return t.size(); }
    double& at(std::size_t ix, std::size_t it) { return p[ix * t.size() + it]; }
    double at(std::size_t ix, std::size_t it) const { return p[ix * t.size() + it]; }
};

// Modal decay base: alpha(n) = decay_base * n^2 for a sealed span.
inline double decay_base(double c2, double two_a, double span) {
    return kPi * kPi * c2 / (two_a * span * span);
}

}  // namespace pipeflow
