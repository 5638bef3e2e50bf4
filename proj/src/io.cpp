#include "pipeflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pipeflow {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
    for (const auto& item : obj.items())
        if (!known.count(item.key()))
            throw ConfigError("unknown key '" + item.key() + "' in '" + where + "'");
}

double need_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + where + "." + key + "'");
    if (!obj[key].is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

std::vector<double> need_grid(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) throw ConfigError("missing key '" + where + "." + key + "'");
    const json& g = obj[key];
    if (g.is_array()) {
        std::vector<double> v;
        for (const auto& e : g) {
            if (!e.is_number()) throw ConfigError("'" + where + "." + key + "' must hold numbers");
            v.push_back(e.get<double>());
        }
        return v;
    }
    if (g.is_object()) {
        reject_unknown(g, where + "." + key, {"start", "stop", "step"});
        const double start = need_number(g, where + "." + key, "start");
        const double stop = need_number(g, where + "." + key, "stop");
        const double step = need_number(g, where + "." + key, "step");
        if (!(step > 0) || stop < start)
            throw ConfigError("'" + where + "." + key + "' range must have step > 0, stop >= start");
        std::vector<double> v;
        for (long k = 0;; ++k) {
            const double x = start + step * static_cast<double>(k);
            if (x > stop + 1e-9 * step) break;
            v.push_back(x);
        }
        return v;
    }
    throw ConfigError("'" + where + "." + key + "' must be an array or a start/stop/step range");
}

}  // namespace

RunSpec parse_scenario_json(const json& j) {
    if (!j.is_object()) throw ConfigError("scenario file must hold a JSON object");
    reject_unknown(j, "<root>", {"line", "leak", "series", "fd", "fit", "outputs", "tie_break"});
    if (!j.contains("line") || !j.contains("leak"))
        throw ConfigError("scenario file needs 'line' and 'leak' sections");

    RunSpec spec;

    const json& jl = j["line"];
    reject_unknown(jl, "line",
                   {"c_m_per_s", "two_a_per_s", "length_m", "step_m", "inlet_pressure_pa",
                    "outlet_pressure_pa", "inlet_flux", "offtake_flux", "epsilon", "meta"});
    LineParams line;
    line.c = need_number(jl, "line", "c_m_per_s");
    line.two_a = need_number(jl, "line", "two_a_per_s");
    line.L = need_number(jl, "line", "length_m");
    line.step = need_number(jl, "line", "step_m");
    line.Pb = need_number(jl, "line", "inlet_pressure_pa");
    line.Ps = need_number(jl, "line", "outlet_pressure_pa");
    line.G0 = need_number(jl, "line", "inlet_flux");
    line.Gs = opt_number(jl, "line", "offtake_flux", line.G0);
    line.eps = need_number(jl, "line", "epsilon");
    if (jl.contains("meta")) {
        const json& jm = jl["meta"];
        reject_unknown(jm, "line.meta", {"d_m", "rho_avg", "v_avg", "lambda_hyd"});
        if (jm.contains("d_m")) line.meta.d = need_number(jm, "line.meta", "d_m");
        if (jm.contains("rho_avg")) line.meta.rho_avg = need_number(jm, "line.meta", "rho_avg");
        if (jm.contains("v_avg")) line.meta.v_avg = need_number(jm, "line.meta", "v_avg");
        if (jm.contains("lambda_hyd"))
            line.meta.lambda_hyd = need_number(jm, "line.meta", "lambda_hyd");
    }

    const json& jk = j["leak"];
    reject_unknown(jk, "leak", {"position_m", "closure_time_s", "flux", "horizon_s"});
    LeakScenario leak;
    leak.ell2 = need_number(jk, "leak", "position_m");
    leak.t1 = need_number(jk, "leak", "closure_time_s");
    leak.horizon = need_number(jk, "leak", "horizon_s");
    if (jk.contains("flux")) {
        const json& jf = jk["flux"];
        reject_unknown(jf, "leak.flux", {"kind", "value", "times_s", "values"});
        const std::string kind = jf.value("kind", "constant");
        if (kind == "constant") {
            leak.leak_flux = LeakFluxModel::constant(need_number(jf, "leak.flux", "value"));
        } else if (kind == "piecewise") {
            leak.leak_flux = LeakFluxModel::piecewise_linear(need_grid(jf, "leak.flux", "times_s"),
                                                             need_grid(jf, "leak.flux", "values"));
        } else {
            throw ConfigError("'leak.flux.kind' must be 'constant' or 'piecewise'");
        }
    }

    spec.series = SeriesConfig{};
    if (j.contains("series")) {
        const json& js = j["series"];
        reject_unknown(js, "series", {"n_max", "tail_tol"});
        spec.series.n_max = static_cast<int>(opt_number(js, "series", "n_max", spec.series.n_max));
        spec.series.tail_tol = opt_number(js, "series", "tail_tol", spec.series.tail_tol);
    }
    spec.series.check();

    spec.fd = FDConfig{};
    spec.fd.horizon = leak.horizon - leak.t1;
    if (j.contains("fd")) {
        const json& jf = j["fd"];
        reject_unknown(jf, "fd", {"dx_m", "dt_s", "theta", "startup_implicit_steps"});
        spec.fd.dx = opt_number(jf, "fd", "dx_m", spec.fd.dx);
        spec.fd.dt = opt_number(jf, "fd", "dt_s", spec.fd.dt);
        spec.fd.theta = opt_number(jf, "fd", "theta", spec.fd.theta);
        spec.fd.startup_steps = static_cast<int>(
            opt_number(jf, "fd", "startup_implicit_steps", spec.fd.startup_steps));
    }
    spec.fd.check();

    if (j.contains("fit")) {
        if (!j["fit"].is_string()) throw ConfigError("'fit' must be a string");
        spec.fit = j["fit"].get<std::string>();
    }

    TieBreak tie = TieBreak::reject;
    if (j.contains("tie_break")) {
        const std::string t = j["tie_break"].get<std::string>();
        if (t == "reject") tie = TieBreak::reject;
        else if (t == "bracket-upstream") tie = TieBreak::bracket_upstream;
        else throw ConfigError("'tie_break' must be 'reject' or 'bracket-upstream'");
    }

    if (j.contains("outputs")) {
        const json& jo = j["outputs"];
        reject_unknown(jo, "outputs", {"x_grid_m", "t_grid_s"});
        leak.x_grid = need_grid(jo, "outputs", "x_grid_m");
        leak.t_grid = need_grid(jo, "outputs", "t_grid_s");
    }

    spec.scenario = validate(line, leak, tie);
    spec.outputs.x = spec.scenario.leak.x_grid;
    spec.outputs.t = spec.scenario.leak.t_grid;
    return spec;
}

RunSpec load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse failure in '" + path.string() + "': " + e.what());
    }
    return parse_scenario_json(j);
}

nlohmann::ordered_json resolved_config_json(const RunSpec& spec) {
    nlohmann::ordered_json j;
    const LineParams& l = spec.scenario.line;
    j["line"] = {{"c_m_per_s", l.c},         {"two_a_per_s", l.two_a},
                 {"length_m", l.L},          {"step_m", l.step},
                 {"inlet_pressure_pa", l.Pb}, {"outlet_pressure_pa", l.Ps},
                 {"inlet_flux", l.G0},       {"offtake_flux", l.Gs},
                 {"epsilon", l.eps}};
    if (l.meta.d) j["line"]["meta"]["d_m"] = *l.meta.d;

    const LeakScenario& k = spec.scenario.leak;
    j["leak"] = {{"position_m", k.ell2}, {"closure_time_s", k.t1}, {"horizon_s", k.horizon}};
    if (k.leak_flux.is_constant()) {
        j["leak"]["flux"] = {{"kind", "constant"}, {"value", k.leak_flux.values.front()}};
    } else {
        j["leak"]["flux"] = {{"kind", "piecewise"},
                             {"times_s", k.leak_flux.times},
                             {"values", k.leak_flux.values}};
    }
    j["series"] = {{"n_max", spec.series.n_max}, {"tail_tol", spec.series.tail_tol}};
    j["fd"] = {{"dx_m", spec.fd.dx},
               {"dt_s", spec.fd.dt},
               {"theta", spec.fd.theta},
               {"startup_implicit_steps", spec.fd.startup_steps}};
    j["fit"] = spec.fit;
    j["tie_break"] =
        spec.scenario.tie_break == TieBreak::reject ? "reject" : "bracket-upstream";
    j["outputs"] = {{"x_grid_m", spec.outputs.x}, {"t_grid_s", spec.outputs.t}};
    return j;
}

std::string format_g6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string csv_from_field(const PressureField& field, bool si, double t_ref) {
    std::ostringstream out;
    out << "x_km";
    for (double t : field.t) out << ",t" << format_g6(t - t_ref);
    out << "\n";
    const double p_unit = si ? 1.0 : kPaPerTableUnit;
    for (std::size_t i = 0; i < field.nx(); ++i) {
        out << format_g6(field.x[i] / kMetersPerKm);
        for (std::size_t j = 0; j < field.nt(); ++j) out << "," << format_g6(field.at(i, j) / p_unit);
        out << "\n";
    }
    return out.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();
    if (!fs::is_directory(dir, ec)) throw IoError("output directory '" + dir.string() + "' is not usable");
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.good()) throw IoError("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' into place: " + ec.message());
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace pipeflow
