// Copyright 2026 The hamsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hamsynth/job.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hamsynth/errors.hpp"
#include "hamsynth/expr.hpp"
#include "hamsynth/geomphase.hpp"
#include "hamsynth/open_synth.hpp"
#include "hamsynth/path.hpp"
#include "hamsynth/tolerances.hpp"
#include "hamsynth/unitary_synth.hpp"
#include "hamsynth/verify.hpp"

namespace hamsynth {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) config_error(where + ": unknown key '" + key + "'");
    }
}

double number_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) config_error(where + ": missing '" + key + "'");
    if (!obj[key].is_number()) config_error(where + ": '" + std::string(key) + "' must be a number");
    return obj[key].get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) return std::nullopt;
    return number_at(obj, key, where);
}

Command parse_command(const json& v) {
    if (!v.is_string()) config_error("'command' must be a string");
    const auto s = v.get<std::string>();
    if (s == "synth-unitary") return Command::SynthUnitary;
    if (s == "synth-open") return Command::SynthOpen;
    if (s == "geomphase") return Command::GeomPhase;
    if (s == "verify") return Command::Verify;
    config_error("unknown command '" + s + "'");
}

std::string_view command_name(Command c) {
    switch (c) {
        case Command::SynthUnitary: return "synth-unitary";
        case Command::SynthOpen: return "synth-open";
        case Command::GeomPhase: return "geomphase";
        case Command::Verify: return "verify";
    }
    return "?";
}

}  // namespace

JobConfig parse_job(const json& doc, std::filesystem::path base_dir) {
    if (!doc.is_object()) config_error("job file must contain a JSON object");
    only_keys(doc, {"command", "path", "gauge", "grid", "output", "fd_step", "synthesis"}, "job");
    if (!doc.contains("command")) config_error("job: missing 'command'");

    JobConfig job;
    job.base_dir = std::move(base_dir);
    job.command = parse_command(doc["command"]);

    if (!doc.contains("path") || !doc["path"].is_object()) config_error("job: 'path' object required");
    job.path = doc["path"];
    if (!job.path.contains("family") || !job.path["family"].is_string())
        config_error("path: 'family' string required");
    const auto family = job.path["family"].get<std::string>();
    if (family == "circle") {
        only_keys(job.path, {"family", "r0", "theta0", "cos_theta0", "omega"}, "path");
    } else if (family == "ellipse") {
        only_keys(job.path, {"family", "omega"}, "path");
    } else if (family == "shrink") {
        only_keys(job.path, {"family", "r_expr"}, "path");
        if (!doc.contains("grid") || !doc["grid"].is_object() || !doc["grid"].contains("tau"))
            config_error("path: shrink needs grid.tau");
    } else if (family == "sampled") {
        only_keys(job.path, {"family", "csv_path"}, "path");
    } else {
        config_error("path: unknown family '" + family + "'");
    }

    job.gauge = doc.value("gauge", json::object());
    if (!job.gauge.is_object()) config_error("'gauge' must be an object");
    only_keys(job.gauge, {"parallel", "alpha1_expr", "alpha2_expr", "w", "v"}, "gauge");
    if (job.gauge.contains("parallel") && !job.gauge["parallel"].is_boolean())
        config_error("gauge: 'parallel' must be a boolean");
    if (job.gauge.value("parallel", false) &&
        (job.gauge.contains("alpha1_expr") || job.gauge.contains("alpha2_expr")))
        config_error("gauge: 'parallel' = true forbids explicit alpha expressions");
    if (job.gauge.contains("v") && job.gauge["v"] != "auto") config_error("gauge: 'v' must be \"auto\"");

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) config_error("'grid' must be an object");
        only_keys(g, {"n", "tau"}, "grid");
        if (g.contains("n")) {
            if (!g["n"].is_number_integer() || g["n"].get<long long>() <= 0)
                config_error("grid: 'n' must be a positive integer");
            job.grid_n = g["n"].get<int>();
        }
        job.grid_tau = optional_number(g, "tau", "grid");
        if (job.grid_tau && !(*job.grid_tau > 0.0)) config_error("grid: 'tau' must be positive");
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (!o.is_object()) config_error("'output' must be an object");
        only_keys(o, {"dir", "formats", "path_csv"}, "output");
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) config_error("output: 'dir' must be a string");
            job.output_dir = o["dir"].get<std::string>();
        }
        if (o.contains("formats")) {
            if (!o["formats"].is_array()) config_error("output: 'formats' must be an array");
            job.formats.clear();
            for (const auto& f : o["formats"]) {
                if (f != "csv" && f != "json") config_error("output: formats must be csv or json");
                job.formats.insert(f.get<std::string>());
            }
        }
        if (o.contains("path_csv")) {
            if (!o["path_csv"].is_boolean()) config_error("output: 'path_csv' must be a boolean");
            job.write_path_csv = o["path_csv"].get<bool>();
        }
    }
    if (job.output_dir.is_relative() && !job.base_dir.empty()) job.output_dir = job.base_dir / job.output_dir;

    job.fd_step = optional_number(doc, "fd_step", "job");
    if (job.fd_step && !(*job.fd_step > 0.0)) config_error("job: 'fd_step' must be positive");

    if (doc.contains("synthesis")) {
        if (doc["synthesis"] != "numeric" && doc["synthesis"] != "closed-form")
            config_error("job: 'synthesis' must be \"numeric\" or \"closed-form\"");
        job.synthesis = doc["synthesis"].get<std::string>();
    }
    return job;
}

JobConfig load_job(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::IoError, "cannot open job file " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error(std::string("job file is not valid JSON: ") + e.what());
    }
    return parse_job(doc, file.parent_path());
}

namespace {

struct BuiltPath {
    std::optional<PathSpec> path;
    Expression::Bindings bindings;
};

BuiltPath build_path(const JobConfig& job) {
    const json& p = job.path;
    const auto family = p["family"].get<std::string>();
    BuiltPath out;
    if (family == "circle") {
        const double r0 = number_at(p, "r0", "path");
        double theta0;
        if (p.contains("theta0") == p.contains("cos_theta0"))
            config_error("path: circle needs exactly one of 'theta0' or 'cos_theta0'");
        if (p.contains("theta0")) {
            theta0 = number_at(p, "theta0", "path");
        } else {
            const double c = number_at(p, "cos_theta0", "path");
            if (c < -1.0 || c > 1.0) config_error("path: 'cos_theta0' must lie in [-1, 1]");
            theta0 = std::acos(c);
        }
        const double omega = number_at(p, "omega", "path");
        out.path = job.grid_tau ? family_circle(r0, theta0, omega, *job.grid_tau)
                                : family_circle(r0, theta0, omega);
    } else if (family == "ellipse") {
        const double omega = number_at(p, "omega", "path");
        out.path = job.grid_tau ? family_ellipse(omega, *job.grid_tau) : family_ellipse(omega);
    } else if (family == "shrink") {
        if (!p.contains("r_expr") || !p["r_expr"].is_string())
            config_error("path: shrink needs an 'r_expr' string");
        if (!job.grid_tau) config_error("path: shrink needs grid.tau");
        Expression r = Expression::parse(p["r_expr"].get<std::string>(), {{"tau", *job.grid_tau}});
        out.path = family_shrink({[r](double t) { return r(t); }, {}}, *job.grid_tau);
    } else {
        if (!p.contains("csv_path") || !p["csv_path"].is_string())
            config_error("path: sampled needs a 'csv_path' string");
        std::filesystem::path csv = p["csv_path"].get<std::string>();
        if (csv.is_relative() && !job.base_dir.empty()) csv = job.base_dir / csv;
        out.path = family_sampled(read_path_csv(csv));
    }
    if (job.fd_step) out.path->set_default_step(*job.fd_step);
    for (const auto& [k, v] : out.path->params()) out.bindings[k] = v;
    out.bindings["tau"] = out.path->tau();
    out.bindings["phi0"] = out.path->initial().phi;
    out.bindings["r0"] = out.path->initial().r;
    out.bindings["theta0"] = out.path->initial().theta;
    return out;
}

ScalarFn as_function(const json& gauge, const char* key, const Expression::Bindings& b) {
    if (!gauge.contains(key)) return [](double) { return 0.0; };
    if (!gauge[key].is_string()) config_error(std::string("gauge: '") + key + "' must be a string");
    Expression e = Expression::parse(gauge[key].get<std::string>(), b);
    return [e](double t) { return e(t); };
}

AlphaGauge build_alpha(const JobConfig& job, const PathSpec& path, const TimeGrid& grid,
                       const Expression::Bindings& b) {
    if (job.gauge.value("parallel", false)) return parallel_alphas(path, grid);
    if (!job.gauge.contains("alpha1_expr") && !job.gauge.contains("alpha2_expr")) return AlphaGauge();
    return AlphaGauge(as_function(job.gauge, "alpha1_expr", b), as_function(job.gauge, "alpha2_expr", b));
}

WGauge build_w(const JobConfig& job, const Expression::Bindings& b) {
    if (!job.gauge.contains("w") || job.gauge["w"] == "identity") return WGauge();
    const json& w = job.gauge["w"];
    if (!w.is_object() || w.value("type", "") != "sampled")
        config_error("gauge: 'w' must be \"identity\" or {\"type\": \"sampled\", ...}");
    only_keys(w, {"type", "ax_expr", "ay_expr", "az_expr"}, "gauge.w");
    return WGauge::from_generator(as_function(w, "ax_expr", b), as_function(w, "ay_expr", b),
                                  as_function(w, "az_expr", b));
}

std::string gauge_description(const JobConfig& job) {
    if (job.gauge.value("parallel", false)) return "parallel-transport";
    std::string s;
    s += "alpha1=" + job.gauge.value("alpha1_expr", std::string("0"));
    s += ", alpha2=" + job.gauge.value("alpha2_expr", std::string("0"));
    s += ", w=" + (job.gauge.contains("w") ? job.gauge["w"].dump() : std::string("\"identity\""));
    return s;
}

json provenance(const JobConfig& job, const PathSpec& path, const TimeGrid& grid) {
    json prov;
    prov["command"] = std::string(command_name(job.command));
    prov["path"] = job.path;
    prov["path_params"] = path.params();
    prov["tau"] = path.tau();
    prov["grid_n"] = grid.intervals();
    prov["fd_step"] = path.default_step();
    prov["unitary_fd_step"] = tol::kUnitaryStepRelative * path.tau();
    prov["gauge"] = gauge_description(job);
    prov["formats"] = job.formats;
    return prov;
}

std::ofstream open_output(const JobConfig& job, const std::string& name) {
    std::filesystem::create_directories(job.output_dir);
    std::ofstream out(job.output_dir / name);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (job.output_dir / name).string());
    out << std::setprecision(17);
    return out;
}

void write_json(const JobConfig& job, const std::string& name, const json& doc) {
    auto out = open_output(job, name);
    out << doc.dump(2) << '\n';
}

template <int N>
std::string matrix_header(char prefix) {
    std::string s;
    for (int i = 1; i <= N; ++i)
        for (int j = 1; j <= N; ++j) {
            s += ',';
            s += prefix;
            s += std::to_string(i) + std::to_string(j) + "_re,";
            s += prefix;
            s += std::to_string(i) + std::to_string(j) + "_im";
        }
    return s;
}

template <typename M>
void write_entries(std::ostream& out, const M& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out << ',' << m(i, j).real() << ',' << m(i, j).imag();
}

template <typename M>
json matrix_json(const M& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

int grid_n_or(const JobConfig& job, int fallback) { return job.grid_n.value_or(fallback); }

void maybe_write_path(const JobConfig& job, const PathSpec& path, const TimeGrid& grid) {
    if (job.write_path_csv) {
        std::filesystem::create_directories(job.output_dir);
        write_path_csv(job.output_dir / "path.csv", path, grid);
    }
}

int synth_unitary(const JobConfig& job, std::ostream& out) {
    BuiltPath built = build_path(job);
    const PathSpec& path = *built.path;
    if (path.kind() != PathKind::Unitary)
        throw Error(ErrorCode::KindMismatch, "synth-unitary needs a constant-r path; use synth-open");
    const SpectralInit init = spectral_init(path);
    const TimeGrid grid(grid_n_or(job, tol::kDefaultClosedSteps), path.tau());
    const AlphaGauge gauge = build_alpha(job, path, grid, built.bindings);
    maybe_write_path(job, path, grid);

    json rows = json::array();
    std::optional<std::ofstream> csv;
    if (job.formats.contains("csv")) {
        csv = open_output(job, "hamiltonian.csv");
        *csv << 't' << matrix_header<2>('h') << ",B0,Bx,By,Bz\n";
    }
    double worst_defect = 0.0;
    for (double t : grid.points()) {
        const CMat2 h = h_general(path, init, gauge, t);
        const PulseSample pulse = pulse_decompose(h, t);
        const double defect = hermiticity_defect(h);
        worst_defect = std::max(worst_defect, defect);
        if (csv) {
            *csv << t;
            write_entries(*csv, h);
            *csv << ',' << pulse.b0 << ',' << pulse.b[0] << ',' << pulse.b[1] << ',' << pulse.b[2] << '\n';
        }
        if (job.formats.contains("json"))
            rows.push_back({{"t", t}, {"h", matrix_json(h)}, {"b0", pulse.b0}, {"b", pulse.b},
                            {"herm_defect", defect}});
    }
    if (job.formats.contains("json"))
        write_json(job, "hamiltonian.json", {{"provenance", provenance(job, path, grid)}, {"rows", rows}});
    out << "synth-unitary: " << grid.nodes() << " samples, max hermiticity defect " << worst_defect
        << ", written to " << job.output_dir.string() << '\n';
    return kExitOk;
}

bool use_closed_form(const JobConfig& job, const PathSpec& path) {
    if (!job.synthesis.empty()) return job.synthesis == "closed-form";
    return path.family() == "shrink";
}

VGauge build_v(const JobConfig& job, const PathSpec& path, const TimeGrid& grid,
               const Expression::Bindings& b) {
    if (path.initial().r <= tol::kDegenerateR0) return VGauge();
    if (job.gauge.value("parallel", false)) {
        if (path.kind() != PathKind::Unitary)
            throw Error(ErrorCode::KindMismatch, "parallel alphas need a constant-r path");
    } else if (!job.gauge.contains("alpha1_expr") && !job.gauge.contains("alpha2_expr")) {
        return VGauge();
    }
    return VGauge::from_alpha(spectral_init(path), build_alpha(job, path, grid, b));
}

int synth_open(const JobConfig& job, std::ostream& out) {
    BuiltPath built = build_path(job);
    const PathSpec& path = *built.path;
    const TimeGrid grid(grid_n_or(job, tol::kDefaultCombinedSteps), path.tau());
    const WGauge w = build_w(job, built.bindings);
    const VGauge v = build_v(job, path, grid, built.bindings);
    const bool closed = use_closed_form(job, path);
    if (closed && path.family() != "shrink")
        throw Error(ErrorCode::InvalidConfig, "closed-form synthesis is only available for the shrink family");
    if (closed && (!w.is_identity() || !v.is_identity()))
        throw Error(ErrorCode::InvalidConfig, "closed-form shrink synthesis takes trivial gauges only");
    maybe_write_path(job, path, grid);

    DifferentiationOptions dopts;
    const CMat4 kick = preparation_kick(path, w, v);
    json rows = json::array();
    std::optional<std::ofstream> csv;
    if (job.formats.contains("csv")) {
        csv = open_output(job, "hamiltonian_ab.csv");
        *csv << 't' << matrix_header<4>('h') << '\n';
        auto kick_csv = open_output(job, "kick.csv");
        kick_csv << matrix_header<4>('u').substr(1) << '\n';
        std::ostringstream line;
        line << std::setprecision(17);
        write_entries(line, kick);
        kick_csv << line.str().substr(1) << '\n';
    }
    double worst_skew = 0.0;
    for (double t : grid.points()) {
        CMat4 h;
        double skew = 0.0;
        if (closed) {
            h = shrink_h_ab(path.r(), t, path.default_step());
        } else {
            auto est = h_ab_numeric(path, w, v, t, dopts);
            h = est.h;
            skew = est.skew_defect;
        }
        worst_skew = std::max(worst_skew, skew);
        if (csv) {
            *csv << t;
            write_entries(*csv, h);
            *csv << '\n';
        }
        if (job.formats.contains("json"))
            rows.push_back({{"t", t}, {"h", matrix_json(h)}, {"skew_defect", skew},
                            {"herm_defect", hermiticity_defect(h)}});
    }
    if (job.formats.contains("json")) {
        json prov = provenance(job, path, grid);
        prov["synthesis"] = closed ? "closed-form" : "numeric";
        write_json(job, "hamiltonian_ab.json",
                   {{"provenance", prov}, {"kick", matrix_json(kick)}, {"rows", rows}});
    }
    out << "synth-open: " << grid.nodes() << " samples (" << (closed ? "closed-form" : "numeric")
        << "), max pre-Hermitization defect " << worst_skew << ", written to "
        << job.output_dir.string() << '\n';
    return kExitOk;
}

int geomphase(const JobConfig& job, std::ostream& out) {
    BuiltPath built = build_path(job);
    const PathSpec& path = *built.path;
    const SpectralInit init = spectral_init(path);
    int n = grid_n_or(job, 10000);
    n += n % 2;
    const TimeGrid grid(n, path.tau());
    const AlphaGauge gauge = build_alpha(job, path, grid, built.bindings);
    const PhaseResult phase = geometric_phase(path, init, gauge, grid);

    json doc;
    doc["gamma"] = phase.gamma;
    doc["near_branch_cut"] = phase.near_branch_cut;
    doc["grid_n"] = phase.grid_n;
    doc["trace_sum"] = {phase.trace_sum.real(), phase.trace_sum.imag()};
    doc["connection_integrals"] = json::array();
    for (const cplx& c : phase.connection_integrals) doc["connection_integrals"].push_back({c.real(), c.imag()});
    if (path.family() == "circle")
        doc["gamma_closed_form"] = gamma_closed_form(path.params().at("r0"), path.params().at("theta0"));
    doc["provenance"] = provenance(job, path, grid);
    write_json(job, "phase.json", doc);

    out << std::setprecision(12) << "gamma = " << phase.gamma;
    if (doc.contains("gamma_closed_form")) out << " (closed form " << doc["gamma_closed_form"].get<double>() << ")";
    if (phase.near_branch_cut) out << " [near branch cut]";
    out << '\n';
    return kExitOk;
}

int verify(const JobConfig& job, std::ostream& out) {
    BuiltPath built = build_path(job);
    const PathSpec& path = *built.path;
    const bool unitary = path.kind() == PathKind::Unitary;
    const TimeGrid grid(grid_n_or(job, unitary ? tol::kDefaultClosedSteps : tol::kDefaultCombinedSteps),
                        path.tau());

    Synthesis synthesis;
    if (unitary)
        synthesis = job.gauge.value("parallel", false) ? Synthesis::UnitaryParallel : Synthesis::UnitaryGeneral;
    else
        synthesis = use_closed_form(job, path) ? Synthesis::ShrinkClosedForm : Synthesis::OpenDilation;

    ReportGauges gauges;
    gauges.description = gauge_description(job);
    ReportOptions opts;
    if (job.fd_step) opts.fd_step = *job.fd_step;
    VerificationReport report;
    try {
        if (synthesis == Synthesis::UnitaryGeneral) gauges.alpha = build_alpha(job, path, grid, built.bindings);
        if (!unitary) {
            gauges.w = build_w(job, built.bindings);
            gauges.v = build_v(job, path, grid, built.bindings);
        }
        report = run_report(path, synthesis, gauges, grid, opts);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::InvalidExpression) throw;
        report = VerificationReport();
        report.add({"synthesis", std::nullopt, 0.0, false, std::string(to_string(e.code())), e.what()});
    }
    json doc = report.to_json();
    doc["provenance"]["job"] = provenance(job, path, grid);
    write_json(job, "report.json", doc);
    maybe_write_path(job, path, grid);

    for (const auto& c : report.checks()) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (c.residual) out << "  residual=" << *c.residual;
        out << "  tol=" << c.tolerance;
        if (!c.error.empty()) out << "  error=" << c.error << " (" << c.message << ')';
        out << '\n';
    }
    out << "overall: " << (report.overall_pass() ? "pass" : "fail") << '\n';
    return report.overall_pass() ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run_job(const JobConfig& job, std::ostream& out, std::ostream& err) {
    try {
        switch (job.command) {
            case Command::SynthUnitary: return synth_unitary(job, out);
            case Command::SynthOpen: return synth_open(job, out);
            case Command::GeomPhase: return geomphase(job, out);
            case Command::Verify: return verify(job, out);
        }
    } catch (const Error& e) {
        err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << json{{"error", "Exception"}, {"message", e.what()}}.dump() << '\n';
        return kExitConfigError;
    }
    return kExitConfigError;
}

}  // namespace hamsynth
