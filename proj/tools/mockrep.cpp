// mockrep: command-line front end for the mock metaplectic library.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mockrep/admissibility.hpp"
#include "mockrep/coarea.hpp"
#include "mockrep/examples.hpp"
#include "mockrep/setups.hpp"
#include "mockrep/transform.hpp"

#ifndef MOCKREP_GIT_DESCRIBE
#define MOCKREP_GIT_DESCRIBE "unknown"
#endif

using json = nlohmann::json;
using namespace mockrep;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct RunConfig {
    std::string command;
    std::string system;
    std::map<std::string, double> params;
    Settings settings;
    std::string f = "test";
    std::string eta = "eta";
    int sample_budget = 50;
    int probe_budget = 1000;
    double band_lo = 0.98, band_hi = 1.02;
    int coarea_points = 512;
    int coarea_fiber_points = 256;
    double coarea_radius = 8.0;
    double coarea_tol = 1e-6;
    double validate_tol = 1e-8;
    double validate_mc_tol = 1e-5;
    double phi_perturbation = 0.0;
    std::vector<double> truncations = {1, 2, 4, 8};
};

template <class T>
void take(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

RunConfig load_config(const std::string& command, const std::string& path, const std::string& system_flag,
                      const std::optional<double>& gamma, const std::string& f_flag, const std::string& eta_flag) {
    RunConfig c;
    c.command = command;
    json j = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config '" + path + "'");
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
    }
    try {
        take(j, "system", c.system);
        if (j.contains("params"))
            for (auto& [k, v] : j.at("params").items()) c.params[k] = v.get<double>();
        if (j.contains("settings"))
            for (auto& [k, v] : j.at("settings").items()) c.settings[k] = v.get<double>();
        take(j, "f", c.f);
        take(j, "eta", c.eta);
        take(j, "sample_budget", c.sample_budget);
        take(j, "probe_budget", c.probe_budget);
        if (j.contains("band")) {
            const auto b = j.at("band").get<std::vector<double>>();
            if (b.size() != 2) throw ConfigError("band must be [lo, hi]");
            c.band_lo = b[0];
            c.band_hi = b[1];
        }
        if (j.contains("coarea")) {
            const json& k = j.at("coarea");
            take(k, "points", c.coarea_points);
            take(k, "fiber_points", c.coarea_fiber_points);
            take(k, "radius", c.coarea_radius);
            take(k, "tol", c.coarea_tol);
        }
        if (j.contains("tolerances")) {
            const json& k = j.at("tolerances");
            take(k, "validate", c.validate_tol);
            take(k, "validate_mc", c.validate_mc_tol);
        }
        take(j, "phi_perturbation", c.phi_perturbation);
        take(j, "truncations", c.truncations);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!system_flag.empty()) c.system = system_flag;
    if (gamma) c.params["gamma"] = *gamma;
    if (!f_flag.empty()) c.f = f_flag;
    if (!eta_flag.empty()) c.eta = eta_flag;
    if (c.system.empty()) throw ConfigError("no system given (use --system or the config key 'system')");
    if (c.coarea_points < 8 || c.coarea_fiber_points < 8) throw ConfigError("coarea resolutions must be >= 8");
    if (!(c.band_lo <= c.band_hi)) throw ConfigError("band bounds out of order");
    if (c.sample_budget < 1) throw ConfigError("sample_budget must be >= 1");
    if (c.truncations.empty()) throw ConfigError("truncations must not be empty");
    return c;
}

json config_json(const RunConfig& c) {
    json j;
    j["system"] = c.system;
    j["params"] = c.params;
    j["f"] = c.f;
    j["eta"] = c.eta;
    return j;
}

SemidirectSystem make_system(const RunConfig& c) {
    SemidirectSystem sys = build_example(c.system, c.params);
    if (c.phi_perturbation != 0.0) {
        const auto phi = sys.phi;
        const double eps = c.phi_perturbation;
        sys.phi = [phi, eps](const Vec& x) {
            Vec y = phi(x);
            y[0] += eps * x[0];
            return y;
        };
    }
    return sys;
}

json verdict_json(const Verdict& v) {
    return {{"unimodular", v.unimodular},
            {"max_modular_deviation", v.max_modular_deviation},
            {"n_vs_d", to_string(v.n_vs_d)},
            {"critical_fraction", v.critical_fraction},
            {"stabilizers", to_string(v.stabilizers)},
            {"conclusion", to_string(v.conclusion)},
            {"cited", v.cited},
            {"probes", v.probes}};
}

json grid_json(const ExampleSetup& e) {
    json a = json::array();
    for (const auto& ax : e.grid.a_axes) a.push_back({{"lo", ax.lo}, {"hi", ax.hi()}, {"step", ax.step}, {"count", ax.count}});
    return {{"a_axes", a},
            {"h_nodes", e.grid.h.size()},
            {"h_desc", e.grid.h.desc},
            {"nodes", e.grid.size()},
            {"truncation", e.grid.truncation_desc},
            {"inner_rule", e.inner.desc}};
}

// ---------------------------------------------------------------- commands

int cmd_validate(const RunConfig& c, json& out) {
    const SemidirectSystem sys = make_system(c);
    ValidationOptions opt;
    opt.tol = c.validate_tol;
    opt.mc_tol = c.validate_mc_tol;
    const ValidationReport r = validate_system(sys, c.sample_budget, opt);
    json items = json::array();
    for (const auto& i : r.items)
        items.push_back({{"name", i.name},
                         {"max_residual", i.max_residual},
                         {"tolerance", i.tolerance},
                         {"pass", i.pass},
                         {"worst_sample", i.worst_sample}});
    out["items"] = items;
    out["pass"] = r.pass();
    out["config"]["sample_budget"] = c.sample_budget;
    out["config"]["phi_perturbation"] = c.phi_perturbation;
    return r.pass() ? kPass : kFail;
}

int cmd_classify(const RunConfig& c, json& out) {
    const SemidirectSystem sys = make_system(c);
    out["verdict"] = verdict_json(classify(sys, c.probe_budget));
    if (sys.orbit_meta) {
        json fin = json::array();
        for (int z = 0; z < sys.orbit_meta->num_orbits; ++z) {
            const FinitenessReport f = finiteness_check(sys, z);
            fin.push_back({{"orbit", sys.orbit_meta->labels.at(z)},
                           {"fiber_finite", f.fiber_finite},
                           {"stabilizer_compact", f.stabilizer_compact},
                           {"consistent", f.consistent}});
        }
        out["finiteness"] = fin;
    }
    out["config"]["probe_budget"] = c.probe_budget;
    return kPass;
}

int cmd_coarea(const RunConfig& c, json& out) {
    const SemidirectSystem sys = make_system(c);
    const Field f = example_field(sys, c.f);
    const CoareaSetup s = coarea_setup(sys, c.coarea_points, c.coarea_fiber_points, c.coarea_radius);
    const CoareaSides sides = coarea_sides(sys, f, s.xrule, s.yrule, s.res);
    out["volume"] = sides.volume;
    out["fibered"] = sides.fibered;
    out["residual"] = sides.residual();
    bool pass = sides.residual() <= c.coarea_tol;
    if (c.f == "gaussian") {
        const double exact = std::pow(kPi, 0.5 * sys.d);
        const double err = std::max(std::abs(sides.volume - exact), std::abs(sides.fibered - exact));
        out["exact"] = exact;
        out["residual_exact"] = err;
        pass = pass && err <= c.coarea_tol;
    }
    out["rules"] = s.desc;
    out["pass"] = pass;
    out["config"]["coarea"] = {{"points", c.coarea_points},
                               {"fiber_points", c.coarea_fiber_points},
                               {"radius", c.coarea_radius},
                               {"tol", c.coarea_tol}};
    return pass ? kPass : kFail;
}

ExampleSetup setup_for(const RunConfig& c, const SemidirectSystem& sys, json& out, const Settings& extra = {}) {
    Settings ov = c.settings;
    for (const auto& [k, v] : extra) ov[k] = v;
    ExampleSetup e = example_setup(sys, example_field(sys, c.f), example_field(sys, c.eta), ov);
    out["config"]["settings"] = e.settings;
    return e;
}

int cmd_transform(const RunConfig& c, json& out, const std::string& csv_path) {
    const SemidirectSystem sys = make_system(c);
    const ExampleSetup e = setup_for(c, sys, out);
    const Coefficients co = analyze(sys, e.f, e.eta, e.grid, e.inner);
    if (csv_path.empty() || csv_path == "-") {
        write_csv(std::cout, co);
    } else {
        std::ofstream os(csv_path);
        if (!os) throw ConfigError("cannot write '" + csv_path + "'");
        write_csv(os, co);
    }
    out["grid"] = grid_json(e);
    out["energy_direct"] = energy(co);
    return kPass;
}

// Energies over growing t-truncations; fits energy_ratio = slope T + intercept.
json truncation_dependence(const RunConfig& c, const SemidirectSystem& sys) {
    std::vector<double> T = c.truncations, r;
    json rows = json::array();
    for (double t : T) {
        Settings ov = c.settings;
        ov["t_max"] = t;
        const ExampleSetup e = example_setup(sys, example_field(sys, c.f), example_field(sys, c.eta), ov);
        const ReproductionReport rep = energy_report(sys, e.f, e.eta, e.grid, e.inner);
        r.push_back(rep.energy_ratio);
        rows.push_back({{"t_max", t}, {"energy_ratio", rep.energy_ratio}});
    }
    const double n = static_cast<double>(T.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < T.size(); ++i) {
        sx += T[i];
        sy += r[i];
        sxx += T[i] * T[i];
        sxy += T[i] * r[i];
        syy += r[i] * r[i];
    }
    const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n, cxy = sxy - sx * sy / n;
    const double slope = vx > 0 ? cxy / vx : 0.0;
    const double r2 = (vx > 0 && vy > 0) ? cxy * cxy / (vx * vy) : 1.0;
    return {{"rows", rows}, {"slope", slope}, {"intercept", (sy - slope * sx) / n}, {"r_squared", r2}};
}

int energy_like(const RunConfig& c, json& out, bool synthesize_too) {
    const SemidirectSystem sys = make_system(c);
    const ExampleSetup e = setup_for(c, sys, out);
    const ReproductionReport r = synthesize_too ? reproduction_report(sys, e.f, e.eta, e.grid, e.inner, e.eval)
                                                : energy_report(sys, e.f, e.eta, e.grid, e.inner);
    out["energy_direct"] = r.energy;
    out["norm_f"] = r.norm_f;
    out["energy_ratio"] = r.energy_ratio;
    out["l2_error"] = synthesize_too ? json(r.l2_error) : json(nullptr);
    if (e.density_y.size() > 0) {
        const double d = energy_via_density(sys, e.f, e.eta, e.density_h, e.density_y, e.density_res, e.density_frame);
        out["energy_density"] = d;
        out["density_ratio"] = r.norm_f > 0 ? d / (r.norm_f * r.norm_f) : 0.0;
    } else {
        out["energy_density"] = nullptr;
    }
    out["grid"] = grid_json(e);

    const Verdict v = classify(sys, c.probe_budget);
    out["verdict"] = to_string(v.conclusion);
    if (v.conclusion == Conclusion::not_reproducing && sys.id == "heisenberg")
        out["truncation_dependence"] = truncation_dependence(c, sys);

    const bool in_band = r.energy_ratio >= c.band_lo && r.energy_ratio <= c.band_hi;
    const bool pass = in_band && v.conclusion != Conclusion::not_reproducing;
    out["band"] = {c.band_lo, c.band_hi};
    out["pass"] = pass;
    return pass ? kPass : kFail;
}

CriterionInput criterion_input(const SemidirectSystem& sys, const std::string& name) {
    double scale = 1.0;
    if (name == "zero")
        scale = 0.0;
    else if (name == "half_eta")
        scale = 0.5;
    else if (name != "eta" && name != "paper")
        throw ConfigError("admissible: eta must be one of eta, paper, half_eta, zero");
    if (sys.id == "dilrot2d") {
        AngularFourier af = dilrot_eta_fourier(4);
        const auto base = af.coeff;
        af.coeff = [base, scale](double t, int n) { return scale * base(t, n); };
        return af;
    }
    if (sys.id == "transdil2d") {
        PartialFourier pf = transdil_eta_fourier();
        const auto base = pf.value;
        pf.value = [base, scale](double y, double w) { return scale * base(y, w); };
        return pf;
    }
    return example_field(sys, name);
}

int cmd_admissible(const RunConfig& c, json& out) {
    const SemidirectSystem sys = make_system(c);
    const Verdict v = classify(sys, c.probe_budget);
    out["verdict"] = to_string(v.conclusion);
    if (sys.id == "heisenberg") {
        out["example"] = sys.id;
        out["criterion"] = json::array();
        out["satisfied"] = false;
        out["residuals"] = json::object();
        return kFail;
    }
    const CriterionReport r = example_criterion(sys, criterion_input(sys, c.eta));
    json terms = json::array();
    for (const auto& t : r.terms)
        terms.push_back({{"name", t.name},
                         {"value", t.value},
                         {"target", t.target},
                         {"tolerance", t.tolerance},
                         {"residual", t.residual()}});
    out["example"] = r.example;
    out["criterion"] = terms;
    out["satisfied"] = r.satisfied;
    out["residuals"] = r.residuals();
    return r.satisfied ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mock metaplectic representations of semidirect products"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(MOCKREP_GIT_DESCRIBE));

    std::string system, config_path, out_path, f_name, eta_name, csv_path;
    std::optional<double> gamma;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"validate", "check the system's structural identities"},
        {"classify", "structural verdict on the reproducing property"},
        {"coarea", "both sides of the coarea identity"},
        {"transform", "coefficients on the default grid (CSV)"},
        {"energy", "transform energy by the direct and density routes"},
        {"reproduce", "energy and reconstruction error"},
        {"admissible", "closed-form admissibility conditions"}};
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--system", system, "wavelet1d, heisenberg, shearlet, dilrot2d, transdil2d");
        sub->add_option("--gamma", gamma, "shearlet exponent");
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_path, "report path (default stdout)");
        sub->add_option("--f", f_name, "test field: test, gaussian, eta, half_eta, zero");
        sub->add_option("--eta", eta_name, "analyzing vector: eta (alias paper), half_eta, zero");
        if (name == "transform") sub->add_option("--csv", csv_path, "coefficient CSV path (default stdout)");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    json report;
    int code = kUsage;
    try {
        const RunConfig c = load_config(command, config_path, system, gamma, f_name, eta_name);
        report["command"] = command;
        report["version"] = MOCKREP_GIT_DESCRIBE;
        report["config"] = config_json(c);
        if (command == "validate") code = cmd_validate(c, report);
        else if (command == "classify") code = cmd_classify(c, report);
        else if (command == "coarea") code = cmd_coarea(c, report);
        else if (command == "transform") code = cmd_transform(c, report, csv_path);
        else if (command == "energy") code = energy_like(c, report, false);
        else if (command == "reproduce") code = energy_like(c, report, true);
        else code = cmd_admissible(c, report);
    } catch (const Error& e) {
        std::cerr << "mockrep: " << e.what() << "\n";
        return kUsage;
    }
    report["exit_code"] = code;
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        (command == "transform" && (csv_path.empty() || csv_path == "-") ? std::cerr : std::cout) << text;
    } else {
        std::ofstream os(out_path);
        if (!os) {
            std::cerr << "mockrep: cannot write '" << out_path << "'\n";
            return kUsage;
        }
        os << text;
    }
    return code;
}
