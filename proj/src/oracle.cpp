#include "pipeflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pipeflow {

namespace {

struct Tridiag {
    std::vector<double> lower, diag, upper;  // N x N
    void solve_into(std::vector<double>& rhs) const {
        const std::size_t n = diag.size();
        static thread_local std::vector<double> cp;
        cp.assign(n, 0.0);
        cp[0] = upper[0] / diag[0];
        rhs[0] /= diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double m = 1.0 / (diag[i] - lower[i] * cp[i - 1]);
            cp[i] = upper[i] * m;
            rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) * m;
        }
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= cp[i] * rhs[i + 1];
    }
};

long steps_in(double horizon, double dt) {
    const double r = horizon / dt;
    const long n = std::lround(r);
    if (n < 1 || std::abs(r - static_cast<double>(n)) > 1e-6)
        throw GridError("horizon must be an integer number of time steps");
    return n;
}

}  // namespace

void FDConfig::check() const {
    if (!(dx > 0) || !(dt > 0)) throw ConfigError("fd.dx and fd.dt must be positive");
    if (theta < 0 || theta > 1) throw ConfigError("fd.theta must lie in [0, 1]");
    if (!(horizon > 0)) throw ConfigError("fd.horizon must be positive");
    if (startup_steps < 0) throw ConfigError("fd.startup_steps must be >= 0");
}

PressureField fd_solve(const SectionState& state, const FDConfig& cfg,
                       std::vector<double> t_samples) {
    cfg.check();
    state.check();

    const double D = state.c2 / state.two_a;
    if (cfg.theta < 0.5) {
        const double dt_max = cfg.dx * cfg.dx / (2.0 * D * (1.0 - 2.0 * cfg.theta));
        if (cfg.dt > dt_max)
            throw StabilityError("dt " + std::to_string(cfg.dt) + " exceeds the explicit bound " +
                                 std::to_string(dt_max));
    }

    const double span = state.span();
    const long cells = std::lround(span / cfg.dx);
    if (cells < 2 || std::abs(span - static_cast<double>(cells) * cfg.dx) > 1e-6 * span)
        throw GridError("dx must tile the section span");
    const std::size_t n = static_cast<std::size_t>(cells) + 1;

    long leak_node = -1;
    if (state.leak_pos && !state.leak.is_zero()) {
        leak_node = std::lround((*state.leak_pos - state.x_lo) / cfg.dx);
        if (leak_node <= 0 || leak_node >= cells)
            throw GridError("leak position falls on a section boundary node");
    }

    const long nsteps = steps_in(cfg.horizon, cfg.dt);

    // Snapshot step indices; first and last always kept.
    std::vector<long> snap_steps{0, nsteps};
    for (double ts : t_samples) {
        const long k = std::lround((ts - state.t_start) / cfg.dt);
        if (k >= 0 && k <= nsteps) snap_steps.push_back(k);
    }
    std::sort(snap_steps.begin(), snap_steps.end());
    snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

    PressureField f;
    f.section_id = state.id;
    f.source = PressureField::Source::fd;
    f.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.x[i] = state.x_lo + static_cast<double>(i) * cfg.dx;
    for (long k : snap_steps) f.t.push_back(state.t_start + static_cast<double>(k) * cfg.dt);
    f.p.resize(n * f.t.size());

    std::vector<double> p(n), rhs(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = state.p_init.at(f.x[i]);

    const double g_lo_bc = -state.two_a * state.net_influx();   // gradient at x_lo
    const double g_hi_bc = -state.two_a * state.net_offtake();  // gradient at x_hi

    // Rate vector contribution at time t, scaled by dt later. Boundary rows
    // carry the ghost-point flux terms, the leak node the single-cell sink.
    auto add_source = [&](std::vector<double>& v, double t, double w) {
        v[0] += w * (-2.0 * D * g_lo_bc / cfg.dx);
        v[n - 1] += w * (2.0 * D * g_hi_bc / cfg.dx);
        if (leak_node >= 0)
            v[static_cast<std::size_t>(leak_node)] +=
                w * (-state.c2 * state.leak.at(t) / cfg.dx);
    };

    std::size_t snap_cursor = 0;
    auto maybe_snapshot = [&](long k) {
        while (snap_cursor < snap_steps.size() && snap_steps[snap_cursor] == k) {
            for (std::size_t i = 0; i < n; ++i) f.at(i, snap_cursor) = p[i];
            ++snap_cursor;
        }
    };
    maybe_snapshot(0);

    double theta_prev = -1.0;
    Tridiag lhs{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    for (long k = 0; k < nsteps; ++k) {
        const double theta = k < cfg.startup_steps ? 1.0 : cfg.theta;
        const double r = D * cfg.dt / (cfg.dx * cfg.dx);
        if (theta != theta_prev) {
            for (std::size_t i = 0; i < n; ++i) {
                lhs.lower[i] = -theta * r;
                lhs.diag[i] = 1.0 + 2.0 * theta * r;
                lhs.upper[i] = -theta * r;
            }
            lhs.upper[0] = -2.0 * theta * r;
            lhs.lower[n - 1] = -2.0 * theta * r;
            theta_prev = theta;
        }

        const double t_k = state.t_start + static_cast<double>(k) * cfg.dt;
        const double t_k1 = t_k + cfg.dt;
        const double re = (1.0 - theta) * r;
        rhs[0] = p[0] + re * (2.0 * p[1] - 2.0 * p[0]);
        for (std::size_t i = 1; i + 1 < n; ++i)
            rhs[i] = p[i] + re * (p[i - 1] - 2.0 * p[i] + p[i + 1]);
        rhs[n - 1] = p[n - 1] + re * (2.0 * p[n - 2] - 2.0 * p[n - 1]);
        add_source(rhs, t_k, (1.0 - theta) * cfg.dt);
        add_source(rhs, t_k1, theta * cfg.dt);

        lhs.solve_into(rhs);
        p.swap(rhs);
        maybe_snapshot(k + 1);
    }
    return f;
}

double linepack(const PressureField& field, std::size_t t_index, double c2) {
    const std::size_t n = field.nx();
    const double dx = field.x[1] - field.x[0];
    double s = 0.5 * (field.at(0, t_index) + field.at(n - 1, t_index));
    for (std::size_t i = 1; i + 1 < n; ++i) s += field.at(i, t_index);
    return s * dx / c2;
}

double mass_balance_residual(const PressureField& field, const SectionState& state,
                             const FDConfig& cfg) {
    if (field.nt() < 2) throw GridError("field needs at least two snapshots");
    const double lp0 = linepack(field, 0, state.c2);
    const double lp1 = linepack(field, field.nt() - 1, state.c2);

    // Theta-quadrature of (influx - outflux - leak) over the run, matching the
    // per-step weighting used by the scheme.
    const double t0 = field.t.front();
    const double t1 = field.t.back();
    const long nsteps = steps_in(t1 - t0, cfg.dt);
    double m = 0.0;
    for (long k = 0; k < nsteps; ++k) {
        const double theta = k < cfg.startup_steps ? 1.0 : cfg.theta;
        const double ta = t0 + static_cast<double>(k) * cfg.dt;
        const double tb = ta + cfg.dt;
        auto rate = [&](double t) {
            return state.net_influx() - state.net_offtake() -
                   (state.leak_pos ? state.leak.at(t) : 0.0);
        };
        m += cfg.dt * ((1.0 - theta) * rate(ta) + theta * rate(tb));
    }
    return std::abs((lp1 - lp0) - m) / std::max(std::abs(lp0), std::abs(lp1));
}

ConvergenceResult convergence_order(const SectionState& state, const FDConfig& cfg,
                                    int refinements) {
    if (refinements < 3)
        throw ConfigError("convergence study needs at least 3 refinements");
    cfg.check();

    std::vector<PressureField> runs;
    for (int j = 0; j <= refinements; ++j) {  // last one is the reference
        FDConfig c = cfg;
        const double f = std::pow(2.0, j);
        c.dx = cfg.dx / f;
        c.dt = cfg.dt / f;
        runs.push_back(fd_solve(state, c));
    }
    const PressureField& ref = runs.back();

    std::vector<double> errs;
    for (int j = 0; j < refinements; ++j) {
        const auto& run = runs[static_cast<std::size_t>(j)];
        const std::size_t stride = ref.nx() > 1 ? (ref.nx() - 1) / (run.nx() - 1) : 1;
        double e = 0.0;
        for (std::size_t i = 0; i < run.nx(); ++i) {
            const double d = std::abs(run.at(i, run.nt() - 1) - ref.at(i * stride, ref.nt() - 1));
            e = std::max(e, d);
        }
        errs.push_back(e);
    }

    ConvergenceResult res;
    for (std::size_t j = 1; j < errs.size(); ++j)
        res.pairwise.push_back(std::log2(errs[j - 1] / errs[j]));
    res.estimate = res.pairwise.back();
    return res;
}

}  // namespace pipeflow
