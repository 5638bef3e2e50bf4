#include "pipeflow/run.hpp"

#include <algorithm>
#include <cmath>

#include "pipeflow/analytic.hpp"
#include "pipeflow/oracle.hpp"
#include "pipeflow/reference.hpp"

namespace pipeflow {

namespace {

using nlohmann::ordered_json;

ordered_json timeline_json(const ValveTimeline& tl) {
    ordered_json events = ordered_json::array();
    for (const auto& e : tl.events)
        events.push_back({{"t_s", e.t},
                          {"valve", e.valve},
                          {"position_m", e.position},
                          {"action", e.action == ValveAction::close ? "close" : "open"},
                          {"reason", e.reason}});
    return ordered_json{{"events", events}};
}

ordered_json dispatch_json(const DispatchReport& r) {
    ordered_json j{{"t1_s", r.t1},
                   {"t2_s", r.t2},
                   {"t2_delta_s", r.t2_delta},
                   {"t2_root_find_s", r.t2_root},
                   {"leaked_mass_integral_pa_s", r.leaked_mass_integral},
                   {"supply_deficit", r.supply_deficit},
                   {"epsilon_used", r.epsilon_used}};
    j["t2_series_root_s"] = r.t2_series_root ? ordered_json(*r.t2_series_root) : ordered_json();
    j["leaked_mass_kg"] = r.leaked_mass_kg ? ordered_json(*r.leaked_mass_kg) : ordered_json();
    return j;
}

// Max/mean relative gap between the series field evaluated at the solver's
// nodes and the solver field, over snapshots at least min_elapsed past start.
VerifyReport::SectionCheck compare_fields(const SectionState& state, const PressureField& fd,
                                          const SeriesConfig& cfg, const FDConfig& fdc,
                                          double min_elapsed) {
    VerifyReport::SectionCheck chk;
    chk.id = state.id;
    chk.mass_residual = mass_balance_residual(fd, state, fdc);
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < fd.nt(); ++j) {
        if (fd.t[j] - state.t_start < min_elapsed - 1e-9) continue;
        for (std::size_t i = 0; i < fd.nx(); ++i) {
            const double a = state.id == 0
                                 ? 0.0  // pre-closure handled by caller via analytic_at
                                 : section_pressure(fd.x[i], fd.t[j], state, cfg);
            const double rel = std::abs(a - fd.at(i, j)) / std::max(std::abs(a), 1.0);
            chk.max_rel_dev = std::max(chk.max_rel_dev, rel);
            sum += rel;
            ++count;
        }
    }
    chk.mean_rel_dev = count ? sum / count : 0.0;
    return chk;
}

VerifyReport::SectionCheck compare_preclosure(const ValidatedScenario& scn,
                                              const SectionState& state,
                                              const PressureField& fd, const SeriesConfig& cfg,
                                              const FDConfig& fdc, double min_elapsed) {
    VerifyReport::SectionCheck chk;
    chk.id = 0;
    chk.mass_residual = mass_balance_residual(fd, state, fdc);
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < fd.nt(); ++j) {
        if (fd.t[j] < min_elapsed - 1e-9) continue;
        for (std::size_t i = 0; i < fd.nx(); ++i) {
            const double a = preclosure_profile(fd.x[i], fd.t[j], scn.line, scn.leak, cfg);
            const double rel = std::abs(a - fd.at(i, j)) / std::max(std::abs(a), 1.0);
            chk.max_rel_dev = std::max(chk.max_rel_dev, rel);
            sum += rel;
            ++count;
        }
    }
    chk.mean_rel_dev = count ? sum / count : 0.0;
    return chk;
}

std::vector<double> comparison_times(double t_start, double horizon) {
    std::vector<double> ts{t_start + 10, t_start + 20, t_start + 40};
    for (double off = 60; off <= horizon + 1e-9; off += 60) ts.push_back(t_start + off);
    return ts;
}

ordered_json section_check_json(const VerifyReport::SectionCheck& c) {
    return ordered_json{{"section", c.id},
                        {"max_rel_dev", c.max_rel_dev},
                        {"mean_rel_dev", c.mean_rel_dev},
                        {"mass_residual", c.mass_residual}};
}

}  // namespace

void run_scenario(const RunSpec& spec, const std::filesystem::path& out_dir, bool si) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const auto& scn = spec.scenario;
    const ValvePair pair =
        locate_isolation_valves(scn.leak.ell2, scn.line.step, scn.line.L, scn.tie_break);
    const auto states = make_section_states(scn, pair, spec.series, spec.fit);
    const auto fields = field_snapshot(states, spec.outputs.x, spec.outputs.t, spec.series);

    std::vector<std::string> written;
    for (int i = 0; i < 3; ++i) {
        const std::string name = "section" + std::to_string(i + 1) + ".csv";
        atomic_write(out_dir / name, csv_from_field(fields[static_cast<std::size_t>(i)], si, scn.leak.t1));
        written.push_back(name);
    }

    const ValveTimeline tl = build_timeline(scn, pair, states);
    atomic_write(out_dir / "timeline.json", timeline_json(tl).dump(2) + "\n");
    written.push_back("timeline.json");

    const DispatchReport rep = make_dispatch_report(scn, states, spec.series);
    atomic_write(out_dir / "dispatch.json", dispatch_json(rep).dump(2) + "\n");
    written.push_back("dispatch.json");

    const std::string resolved = resolved_config_json(spec).dump(2) + "\n";
    atomic_write(out_dir / "resolved_config.json", resolved);
    written.push_back("resolved_config.json");

    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(resolved)));
    ordered_json manifest{{"tool", kToolName},
                          {"version", kToolVersion},
                          {"config_hash_fnv1a64", hash},
                          {"resolved_config", "resolved_config.json"},
                          {"si", si},
                          {"outputs", written}};
    atomic_write(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

std::vector<TableDiff::Cell> TableDiff::outliers() const {
    std::vector<Cell> out;
    for (const auto& c : cells)
        if (!c.within) out.push_back(c);
    return out;
}

ordered_json TableDiff::to_json() const {
    ordered_json jcells = ordered_json::array();
    for (const auto& c : cells)
        jcells.push_back({{"table", c.table},
                          {"x_km", c.x_km},
                          {"t_offset_s", c.t_offset},
                          {"expected", c.expected},
                          {"computed", c.computed},
                          {"rel_err", c.rel_err},
                          {"within", c.within}});
    ordered_json outl = ordered_json::array();
    for (const auto& c : outliers())
        outl.push_back({{"table", c.table}, {"x_km", c.x_km}, {"t_offset_s", c.t_offset}});
    return ordered_json{{"tolerance", tolerance},
                        {"cells_total", cells.size()},
                        {"cells_within", within_count},
                        {"fraction_within", fraction()},
                        {"outliers", outl},
                        {"cells", jcells}};
}

TableDiff reproduce_tables(const std::filesystem::path& out_dir, double tolerance,
                           const SeriesConfig& cfg) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory '" + out_dir.string() + "'");

    const ValidatedScenario scn = reference_scenario();
    const ValvePair pair =
        locate_isolation_valves(scn.leak.ell2, scn.line.step, scn.line.L, scn.tie_break);
    const auto states = make_section_states(scn, pair, cfg, kReferenceFitId);

    TableDiff diff;
    diff.tolerance = tolerance;

    auto record = [&](int table, double x_km, double t_off, double expected, double computed_pa) {
        TableDiff::Cell c;
        c.table = table;
        c.x_km = x_km;
        c.t_offset = t_off;
        c.expected = expected;
        c.computed = computed_pa / kPaPerTableUnit;
        c.rel_err = std::abs(c.computed - c.expected) / std::abs(c.expected);
        c.within = c.rel_err <= tolerance;
        diff.within_count += c.within ? 1 : 0;
        diff.cells.push_back(c);
        return c.computed;
    };

    // Table 1: whole-line profile at closure.
    {
        const ReferenceTable& rt = reference_table(1);
        PressureField f;
        f.section_id = 0;
        for (double xk : rt.x_km) f.x.push_back(xk * kMetersPerKm);
        f.t = {scn.leak.t1};
        f.p.resize(f.x.size());
        for (std::size_t i = 0; i < f.x.size(); ++i) {
            const double p = preclosure_profile(f.x[i], scn.leak.t1, scn.line, scn.leak, cfg);
            f.at(i, 0) = p;
            record(1, rt.x_km[i], 0.0, rt.cells[i][0], p);
        }
        atomic_write(out_dir / "table1.csv", csv_from_field(f, false, scn.leak.t1));
    }

    for (int table = 2; table <= 4; ++table) {
        const ReferenceTable& rt = reference_table(table);
        const SectionState& st = states[static_cast<std::size_t>(table - 2)];
        PressureField f;
        f.section_id = st.id;
        for (double xk : rt.x_km) f.x.push_back(xk * kMetersPerKm);
        for (double off : rt.t_offsets) f.t.push_back(scn.leak.t1 + off);
        f.p.resize(f.x.size() * f.t.size());
        for (std::size_t i = 0; i < f.x.size(); ++i)
            for (std::size_t j = 0; j < f.t.size(); ++j) {
                const double p = section_pressure(f.x[i], f.t[j], st, cfg);
                f.at(i, j) = p;
                record(table, rt.x_km[i], rt.t_offsets[j], rt.cells[i][j], p);
            }
        atomic_write(out_dir / ("table" + std::to_string(table) + ".csv"),
                     csv_from_field(f, false, scn.leak.t1));
    }

    atomic_write(out_dir / "table_diff.json", diff.to_json().dump(2) + "\n");
    return diff;
}

ordered_json VerifyReport::to_json() const {
    ordered_json js = ordered_json::array();
    for (const auto& c : sections) js.push_back(section_check_json(c));
    ordered_json jf = ordered_json::array();
    for (const auto& c : frozen_profile) jf.push_back(section_check_json(c));
    ordered_json jt{{"closed_s", t2_closed}, {"root_find_s", t2_root}};
    jt["series_root_s"] = t2_series_root ? ordered_json(*t2_series_root) : ordered_json();
    jt["fd_crossing_s"] = t2_fd_crossing ? ordered_json(*t2_fd_crossing) : ordered_json();
    return ordered_json{{"pass", pass},
                        {"thresholds",
                         {{"max_rel_dev", max_dev_threshold},
                          {"mass_residual", residual_threshold},
                          {"order_range", {order_lo, order_hi}},
                          {"t2_rel", t2_rel_threshold}}},
                        {"sections", js},
                        {"convergence_order_smooth", order_smooth},
                        {"convergence_order_with_leak", order_with_leak},
                        {"t2", jt},
                        {"frozen_profile_gap", jf}};
}

VerifyReport verify_scenario(const RunSpec& spec) {
    const auto& scn = spec.scenario;
    const ValvePair pair =
        locate_isolation_valves(scn.leak.ell2, scn.line.step, scn.line.L, scn.tie_break);
    const auto states = make_section_states(scn, pair, spec.series, spec.fit);

    VerifyReport rep;
    const double post_horizon = scn.leak.horizon - scn.leak.t1;

    // Pre-closure whole line.
    {
        SectionState pre = make_preclosure_state(scn);
        FDConfig fdc = spec.fd;
        fdc.horizon = scn.leak.t1;
        const auto fd = fd_solve(pre, fdc, comparison_times(0.0, scn.leak.t1));
        rep.sections.push_back(compare_preclosure(scn, pre, fd, spec.series, fdc, 10.0));
    }

    // Equilibrated sections: the closed forms are exact on these states.
    for (const auto& st : states) {
        const SectionState eq = equilibrated(st);
        FDConfig fdc = spec.fd;
        fdc.horizon = post_horizon;
        const auto fd = fd_solve(eq, fdc, comparison_times(eq.t_start, post_horizon));
        rep.sections.push_back(compare_fields(eq, fd, spec.series, fdc, 10.0));
    }

    // Informational gap on the sampled closure profile itself.
    for (const auto& st : states) {
        FDConfig fdc = spec.fd;
        fdc.horizon = post_horizon;
        const auto fd = fd_solve(st, fdc, comparison_times(st.t_start, post_horizon));
        rep.frozen_profile.push_back(compare_fields(st, fd, spec.series, fdc, 10.0));
    }

    // Convergence studies on the section-1 geometry.
    {
        SectionState smooth = equilibrated(states[0]);
        smooth.flux_lo = 0;
        const double mean = smooth.p_init.mean();
        SampledCurve bump;
        const int ns = 257;
        for (int i = 0; i < ns; ++i) {
            const double u = static_cast<double>(i) / (ns - 1);
            bump.x.push_back(smooth.x_lo + u * smooth.span());
            bump.y.push_back(mean * (1.0 + 0.05 * std::cos(kPi * u)));
        }
        smooth.p_init = bump;
        FDConfig study;
        study.dx = smooth.span() / 20.0;
        study.dt = 1.0;
        study.theta = spec.fd.theta;
        study.horizon = 20.0;
        rep.order_smooth = convergence_order(smooth, study, 3).estimate;

        SectionState leaky = equilibrated(states[1]);
        FDConfig study2 = study;
        study2.dx = leaky.span() / 20.0;
        rep.order_with_leak = convergence_order(leaky, study2, 3).estimate;
    }

    // Activation-time forms plus the modal-series and solver crossings.
    {
        const auto closed = compute_activation_time(scn.line, states[0], ActivationMethod::closed_form);
        const auto root = compute_activation_time(scn.line, states[0], ActivationMethod::root_find);
        rep.t2_closed = closed.t2;
        rep.t2_root = root.t2;
        try {
            rep.t2_series_root = inlet_series_crossing(scn.line, states[0], spec.series);
        } catch (const Error&) {
            rep.t2_series_root = std::nullopt;
        }
        const double limit = scn.line.eps * scn.line.Pb;
        for (double horizon = 2048.0; horizon <= 16384.0; horizon *= 2.0) {
            FDConfig fdc = spec.fd;
            fdc.horizon = horizon;
            std::vector<double> every;
            for (double t = 0; t <= horizon; t += fdc.dt) every.push_back(scn.leak.t1 + t);
            const auto fd = fd_solve(states[0], fdc, every);
            for (std::size_t j = 1; j < fd.nt(); ++j) {
                if (fd.at(0, j) >= limit) {
                    const double p0 = fd.at(0, j - 1), p1 = fd.at(0, j);
                    const double w = (limit - p0) / (p1 - p0);
                    rep.t2_fd_crossing = fd.t[j - 1] + w * (fd.t[j] - fd.t[j - 1]);
                    break;
                }
            }
            if (rep.t2_fd_crossing) break;
        }
    }

    bool ok = true;
    for (const auto& c : rep.sections)
        ok = ok && c.max_rel_dev <= rep.max_dev_threshold &&
             c.mass_residual < rep.residual_threshold;
    ok = ok && rep.order_smooth >= rep.order_lo && rep.order_smooth <= rep.order_hi;
    ok = ok && rep.order_with_leak >= 1.0;
    const double t1 = scn.leak.t1;
    ok = ok && std::abs((rep.t2_root - t1) - (rep.t2_closed - t1)) <=
                   rep.t2_rel_threshold * (rep.t2_closed - t1);
    rep.pass = ok;
    return rep;
}

}  // namespace pipeflow
