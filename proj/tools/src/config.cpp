#include "monoblock/cli/config.hpp"

#include "monoblock/error.hpp"

#include <fstream>
#include <set>

namespace monoblock::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) {
    raise(ErrorCode::Config, what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) {
        bad(where + " must be an object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) {
            bad("unknown key '" + it.key() + "' in " + where);
        }
    }
}

double number(const json& v, const std::string& what) {
    if (!v.is_number()) {
        bad(what + " must be a number");
    }
    return v.get<double>();
}

int integer(const json& v, const std::string& what) {
    if (!v.is_number_integer()) {
        bad(what + " must be an integer");
    }
    return v.get<int>();
}

bool boolean(const json& v, const std::string& what) {
    if (!v.is_boolean()) {
        bad(what + " must be true or false");
    }
    return v.get<bool>();
}

std::string text(const json& v, const std::string& what) {
    if (!v.is_string()) {
        bad(what + " must be a string");
    }
    return v.get<std::string>();
}

std::array<double, 2> number_pair(const json& v, const std::string& what) {
    if (v.is_number()) {
        const double x = v.get<double>();
        return {x, x};
    }
    if (!v.is_array() || v.size() != 2) {
        bad(what + " must be a number or a two-element array");
    }
    return {number(v[0], what), number(v[1], what)};
}

ComponentRule parse_rule(const json& v, const std::string& where) {
    only_keys(v, where, {"kind", "value"});
    if (!v.contains("kind")) {
        bad(where + " needs a kind");
    }
    ComponentRule r;
    r.kind = rule_kind_from_string(text(v["kind"], where + ".kind"));
    if (v.contains("value")) {
        r.param = number(v["value"], where + ".value");
    }
    return r;
}

void parse_construction(const json& v, ExperimentConfig& cfg) {
    only_keys(v, "construction", {"lower", "upper"});
    for (const char* side : {"lower", "upper"}) {
        if (!v.contains(side)) {
            continue;
        }
        const json& list = v[side];
        if (!list.is_array() || list.size() != 2) {
            bad(std::string("construction.") + side + " must list two components (null keeps the default)");
        }
        auto& target = std::string(side) == "lower" ? cfg.lower_override : cfg.upper_override;
        for (int a = 0; a < 2; ++a) {
            if (!list[a].is_null()) {
                target[a] = parse_rule(list[a], std::string("construction.") + side + "[" + std::to_string(a) + "]");
            }
        }
    }
}

Regime parse_regime(const json& v, std::size_t k) {
    const std::string where = "convergence.regimes[" + std::to_string(k) + "]";
    only_keys(v, where,
              {"name", "scaling", "tau_factor", "T", "h", "eps", "velocity", "amplitude", "delta", "expected_slope"});
    Regime r;
    r.name = v.contains("name") ? text(v["name"], where + ".name") : "regime" + std::to_string(k);
    ConvergenceConfig& c = r.config;
    c.policy.delta = 1e-10;
    if (v.contains("scaling")) {
        const std::string s = text(v["scaling"], where + ".scaling");
        if (s == "linear") {
            c.scaling = TauScaling::Linear;
        } else if (s == "quadratic") {
            c.scaling = TauScaling::Quadratic;
        } else {
            bad(where + ".scaling must be linear or quadratic");
        }
    }
    if (v.contains("tau_factor")) c.tau_factor = number(v["tau_factor"], where + ".tau_factor");
    if (v.contains("T")) c.T = number(v["T"], where + ".T");
    if (v.contains("delta")) c.policy.delta = number(v["delta"], where + ".delta");
    if (v.contains("eps")) c.manufactured.eps = number_pair(v["eps"], where + ".eps");
    if (v.contains("amplitude")) c.manufactured.amp = number_pair(v["amplitude"], where + ".amplitude");
    if (v.contains("velocity")) {
        const auto vel = number_pair(v["velocity"], where + ".velocity");
        c.manufactured.vx = {vel[0], vel[0]};
        c.manufactured.vy = {vel[1], vel[1]};
    }
    if (v.contains("h")) {
        if (!v["h"].is_array()) {
            bad(where + ".h must be an array");
        }
        c.h.clear();
        for (const auto& h : v["h"]) {
            c.h.push_back(number(h, where + ".h"));
        }
    }
    if (c.h.size() < 3) {
        bad(where + " needs at least 3 mesh levels");
    }
    for (double h : c.h) {
        if (!(h > 0.0) || std::abs(1.0 / h - std::round(1.0 / h)) > 1e-9) {
            bad(where + ".h entries must be 1/n for integer n");
        }
    }
    if (!(c.tau_factor > 0.0) || !(c.T > 0.0) || !(c.policy.delta > 0.0)) {
        bad(where + " needs positive tau_factor, T and delta");
    }
    if (v.contains("expected_slope")) {
        r.expected_slope = number_pair(v["expected_slope"], where + ".expected_slope");
    }
    return r;
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::Jacobi: return "jacobi";
        case Method::GaussSeidel: return "gauss-seidel";
        case Method::Both: return "both";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "jacobi") return Method::Jacobi;
    if (s == "gauss-seidel") return Method::GaussSeidel;
    if (s == "both") return Method::Both;
    bad("method must be jacobi, gauss-seidel or both, got '" + s + "'");
}

std::vector<Regime> default_regimes() {
    std::vector<Regime> out(2);
    out[0].name = "upwind";
    out[0].config.policy.delta = 1e-10;
    out[0].expected_slope = std::array<double, 2>{0.8, 1.2};
    out[1].name = "central";
    auto& c = out[1].config;
    c.manufactured.eps = {0.1, 0.1};
    c.manufactured.vx = {0.0, 0.0};
    c.manufactured.vy = {0.0, 0.0};
    c.scaling = TauScaling::Quadratic;
    c.tau_factor = 1.0;
    c.policy.delta = 1e-11;
    out[1].expected_slope = std::array<double, 2>{1.7, 2.3};
    return out;
}

ExperimentConfig parse_config(const json& doc) {
    only_keys(doc, "config",
              {"model", "mesh", "method", "delta", "max_iters", "tau_check", "construction", "output", "seed",
               "threads", "warm_start", "test_hooks", "convergence", "audit"});
    ExperimentConfig cfg;
    if (doc.contains("model")) {
        const json& m = doc["model"];
        only_keys(m, "model", {"name", "params"});
        if (!m.contains("name")) {
            bad("model needs a name");
        }
        cfg.model = text(m["name"], "model.name");
        if (m.contains("params")) {
            if (!m["params"].is_object()) {
                bad("model.params must be an object");
            }
            for (auto it = m["params"].begin(); it != m["params"].end(); ++it) {
                cfg.params[it.key()] = number(it.value(), "model.params." + it.key());
            }
        }
        const auto names = model_names();
        if (std::find(names.begin(), names.end(), cfg.model) == names.end()) {
            bad("unknown model '" + cfg.model + "'");
        }
    }
    if (doc.contains("mesh")) {
        const json& m = doc["mesh"];
        only_keys(m, "mesh", {"l1", "l2", "T", "Nx", "Ny", "Nt"});
        if (m.contains("l1")) cfg.mesh.l1 = number(m["l1"], "mesh.l1");
        if (m.contains("l2")) cfg.mesh.l2 = number(m["l2"], "mesh.l2");
        if (m.contains("T")) cfg.mesh.T = number(m["T"], "mesh.T");
        if (m.contains("Nx")) cfg.mesh.nx = integer(m["Nx"], "mesh.Nx");
        if (m.contains("Ny")) cfg.mesh.ny = integer(m["Ny"], "mesh.Ny");
        if (m.contains("Nt")) cfg.mesh.nt = integer(m["Nt"], "mesh.Nt");
    }
    try {
        Mesh probe(cfg.mesh);
    } catch (const Error& e) {
        bad(std::string("mesh: ") + e.what());
    }
    if (doc.contains("method")) cfg.method = method_from_string(text(doc["method"], "method"));
    if (doc.contains("delta")) cfg.policy.delta = number(doc["delta"], "delta");
    if (!(cfg.policy.delta > 0.0)) {
        bad("delta must be positive");
    }
    if (doc.contains("max_iters")) cfg.policy.max_iters = integer(doc["max_iters"], "max_iters");
    if (cfg.policy.max_iters < 1) {
        bad("max_iters must be at least 1");
    }
    if (doc.contains("tau_check")) {
        const std::string t = text(doc["tau_check"], "tau_check");
        if (t == "enforce") cfg.policy.tau_check = TauCheck::Enforce;
        else if (t == "warn") cfg.policy.tau_check = TauCheck::Warn;
        else if (t == "off") cfg.policy.tau_check = TauCheck::Off;
        else bad("tau_check must be enforce, warn or off");
    }
    if (doc.contains("audit")) {
        const std::string a = text(doc["audit"], "audit");
        if (a == "throw") cfg.policy.on_violation = ViolationPolicy::Throw;
        else if (a == "record") cfg.policy.on_violation = ViolationPolicy::Record;
        else if (a == "off") cfg.policy.audit = false;
        else bad("audit must be throw, record or off");
    }
    if (doc.contains("construction")) parse_construction(doc["construction"], cfg);
    if (doc.contains("output")) {
        const json& o = doc["output"];
        only_keys(o, "output", {"dir", "levels", "csv"});
        if (o.contains("dir")) cfg.output.dir = text(o["dir"], "output.dir");
        if (o.contains("csv")) cfg.output.csv = boolean(o["csv"], "output.csv");
        if (o.contains("levels")) {
            if (!o["levels"].is_array()) {
                bad("output.levels must be an array");
            }
            for (const auto& l : o["levels"]) {
                const int m = integer(l, "output.levels");
                if (m < 0 || m > cfg.mesh.nt) {
                    bad("output level " + std::to_string(m) + " outside 0..Nt");
                }
                cfg.output.levels.push_back(m);
            }
        }
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() || doc["seed"].get<std::int64_t>() < 0) {
            bad("seed must be a nonnegative integer");
        }
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("threads")) cfg.policy.threads = integer(doc["threads"], "threads");
    if (cfg.policy.threads < 0) {
        bad("threads must be nonnegative");
    }
    if (doc.contains("warm_start")) cfg.policy.warm_start = boolean(doc["warm_start"], "warm_start");
    if (doc.contains("test_hooks")) {
        const json& h = doc["test_hooks"];
        only_keys(h, "test_hooks", {"corrupt_upwind"});
        if (h.contains("corrupt_upwind")) {
            cfg.policy.assembly.corrupt_upwind = boolean(h["corrupt_upwind"], "test_hooks.corrupt_upwind");
        }
    }
    if (doc.contains("convergence")) {
        const json& c = doc["convergence"];
        only_keys(c, "convergence", {"regimes"});
        if (!c.contains("regimes") || !c["regimes"].is_array() || c["regimes"].empty()) {
            bad("convergence.regimes must be a non-empty array");
        }
        for (std::size_t k = 0; k < c["regimes"].size(); ++k) {
            cfg.regimes.push_back(parse_regime(c["regimes"][k], k));
        }
    } else {
        cfg.regimes = default_regimes();
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        bad("cannot open config '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        bad("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

ModelInstance resolve_model(const ExperimentConfig& cfg) {
    if (cfg.model.empty()) {
        bad("config has no model");
    }
    ModelInstance mi;
    try {
        mi = instantiate(cfg.model, cfg.params, cfg.mesh);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) {
            throw;
        }
        bad(std::string("model parameters: ") + e.what());
    }
    for (int a = 0; a < 2; ++a) {
        if (cfg.lower_override[a]) mi.bracket.lower[a] = *cfg.lower_override[a];
        if (cfg.upper_override[a]) mi.bracket.upper[a] = *cfg.upper_override[a];
    }
    return mi;
}

}  // namespace monoblock::cli
