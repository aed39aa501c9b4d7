#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace gids::app {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail_config(where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) fail_config("unknown key \"" + k + "\" in " + where);
}

double number(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        if (auto q = parse_rational(j.get<std::string>())) return to_double(*q);
    }
    fail_config(what + " must be a number or a \"p/q\" string");
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        fail_config("bad type for \"" + std::string(key) + "\" in " + where);
    }
}

Frequency parse_frequency(const json& j, int d) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) fail_config("frequency must be an array of " + std::to_string(d) + " entries");
    std::vector<Rational> exact;
    Point p(d);
    bool all_exact = true;
    for (int i = 0; i < d; ++i) {
        const auto& e = j[static_cast<std::size_t>(i)];
        if (e.is_string()) {
            auto q = parse_rational(e.get<std::string>());
            if (!q) fail_config("cannot parse rational \"" + e.get<std::string>() + "\"");
            exact.push_back(*q);
            p[i] = to_double(*q);
        } else if (e.is_number_integer()) {
            exact.emplace_back(e.get<long long>());
            p[i] = e.get<double>();
        } else if (e.is_number()) {
            all_exact = false;
            p[i] = e.get<double>();
        } else {
            fail_config("frequency coordinates must be numbers or \"p/q\" strings");
        }
    }
    return all_exact ? Frequency(p, exact) : Frequency(p);
}

Point parse_point(const json& j, int d, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) fail_config(what + " must be an array of " + std::to_string(d) + " numbers");
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = number(j[static_cast<std::size_t>(i)], what);
    return p;
}

Engine parse_engine(const std::string& s) {
    if (s == "gauge") return Engine::gauge;
    if (s == "oracle") return Engine::oracle;
    if (s == "both") return Engine::both;
    if (s == "free") return Engine::free;
    fail_config("engine must be one of gauge, oracle, both, free (got \"" + s + "\")");
}

void parse_operator(const json& j, RunConfig& cfg) {
    reject_unknown(j, "operator", {"d", "w", "kappa", "C0", "frequencies", "terms", "self_adjoint"});
    OperatorSpec& op = cfg.op;
    if (!j.contains("d")) fail_config("operator.d is required");
    op.d = get_or<int>(j, "d", 1, "operator");
    if (op.d < 1 || op.d > kMaxDim) fail_config("operator.d must lie in 1.." + std::to_string(kMaxDim));
    op.w = j.contains("w") ? number(j["w"], "operator.w") : 1.0;
    op.kappa = j.contains("kappa") ? number(j["kappa"], "operator.kappa") : 0.0;
    op.C0 = j.contains("C0") ? number(j["C0"], "operator.C0") : 0.0;
    op.self_adjoint = get_or<bool>(j, "self_adjoint", true, "operator");
    std::vector<Frequency> fs;
    if (j.contains("frequencies")) {
        if (!j["frequencies"].is_array()) fail_config("operator.frequencies must be an array");
        for (const auto& f : j["frequencies"]) fs.push_back(parse_frequency(f, op.d));
    } else {
        fs.push_back(Frequency(Point::Zero(op.d), std::vector<Rational>(static_cast<std::size_t>(op.d), Rational(0))));
    }
    op.frequencies = FrequencySet(op.d, fs);
    if (j.contains("terms")) {
        if (!j["terms"].is_array()) fail_config("operator.terms must be an array");
        for (const auto& t : j["terms"]) {
            reject_unknown(t, "operator.terms[]", {"iota", "coeffs"});
            RadialTermSpec rt;
            rt.iota = t.contains("iota") ? number(t["iota"], "iota") : 0.0;
            if (!t.contains("coeffs") || !t["coeffs"].is_array()) fail_config("operator.terms[].coeffs must be an array");
            for (const auto& c : t["coeffs"]) {
                reject_unknown(c, "operator.terms[].coeffs[]", {"theta", "tau", "re", "im"});
                RadialCoeffSpec rc;
                if (!c.contains("theta")) fail_config("coefficient needs theta");
                rc.theta = parse_point(c["theta"], op.d, "theta");
                rc.tau = c.contains("tau") ? c["tau"].get<std::vector<int>>() : std::vector<int>(static_cast<std::size_t>(op.d), 0);
                rc.value = cplx(c.contains("re") ? number(c["re"], "re") : 0.0, c.contains("im") ? number(c["im"], "im") : 0.0);
                rt.coeffs.push_back(std::move(rc));
            }
            op.terms.push_back(std::move(rt));
        }
    }
}

void parse_scale(const json& j, RunConfig& cfg) {
    ScaleParams& sp = cfg.scale;
    if (j.is_null()) return;
    reject_unknown(j, "scale", {"beta", "alphas", "theta_upper", "sigma", "C0", "R0", "rho_n", "k", "k_tilde", "M"});
    if (j.contains("beta")) sp.beta = number(j["beta"], "scale.beta");
    if (j.contains("alphas")) {
        sp.alphas.clear();
        for (const auto& a : j["alphas"]) sp.alphas.push_back(number(a, "scale.alphas"));
    }
    if (j.contains("theta_upper")) sp.theta_upper = number(j["theta_upper"], "scale.theta_upper");
    if (j.contains("sigma")) sp.sigma = number(j["sigma"], "scale.sigma");
    if (j.contains("C0")) sp.C0 = number(j["C0"], "scale.C0");
    if (j.contains("R0")) sp.R0 = number(j["R0"], "scale.R0");
    if (j.contains("rho_n")) sp.rho_n = number(j["rho_n"], "scale.rho_n");
    sp.k = get_or<int>(j, "k", sp.k, "scale");
    sp.k_tilde = get_or<int>(j, "k_tilde", sp.k_tilde, "scale");
    sp.M = get_or<int>(j, "M", sp.M, "scale");
}

std::vector<double> parse_lambdas(const json& j) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(number(v, "ids.lambdas"));
    } else if (j.is_object()) {
        reject_unknown(j, "ids.lambdas", {"from", "to", "count"});
        const double a = number(j.at("from"), "from"), b = number(j.at("to"), "to");
        const int n = j.at("count").get<int>();
        if (n < 1) fail_config("ids.lambdas.count must be positive");
        for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
        fail_config("ids.lambdas must be an array or {from, to, count}");
    }
    return out;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        fail_config("parse error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
    reject_unknown(root, "config", {"operator", "scale", "ids", "fit", "gauge", "regions", "symbols", "tolerances"});
    if (!root.contains("operator")) fail_config("config needs an \"operator\" section");

    RunConfig cfg;
    parse_operator(root["operator"], cfg);
    cfg.scale = default_scale_params(cfg.op.d, cfg.op.w, cfg.op.kappa);
    cfg.scale.C0 = cfg.op.C0 > 0 ? cfg.op.C0 : default_C0(cfg.op.frequencies);
    if (root.contains("scale")) parse_scale(root["scale"], cfg);
    if (cfg.op.C0 <= 0) cfg.op.C0 = cfg.scale.C0;

    if (root.contains("ids")) {
        const json& j = root["ids"];
        reject_unknown(j, "ids", {"lambdas", "engine", "nodes", "seed", "oracle_grid", "truncation", "tau_half_width"});
        if (j.contains("lambdas")) cfg.ids.lambdas = parse_lambdas(j["lambdas"]);
        if (j.contains("engine")) cfg.ids.engine = parse_engine(j["engine"].get<std::string>());
        cfg.ids.volume.nodes = get_or<std::uint64_t>(j, "nodes", cfg.ids.volume.nodes, "ids");
        cfg.ids.volume.seed = get_or<std::uint64_t>(j, "seed", cfg.ids.volume.seed, "ids");
        if (j.contains("tau_half_width")) cfg.ids.volume.tau_half_width = number(j["tau_half_width"], "ids.tau_half_width");
        cfg.ids.oracle.grid = get_or<int>(j, "oracle_grid", cfg.ids.oracle.grid, "ids");
        if (j.contains("truncation")) cfg.ids.oracle.truncation = number(j["truncation"], "ids.truncation");
    }
    if (root.contains("fit")) {
        const json& j = root["fit"];
        reject_unknown(j, "fit", {"window", "samples", "basis", "h_max", "j_max", "q_max", "gamma_min", "source", "csv"});
        if (j.contains("csv")) cfg.fit.csv = j["csv"].get<std::string>();
        if (j.contains("window")) {
            if (!j["window"].is_array() || j["window"].size() != 2) fail_config("fit.window must be [rho_min, rho_max]");
            cfg.fit.rho_min = number(j["window"][0], "fit.window");
            cfg.fit.rho_max = number(j["window"][1], "fit.window");
        }
        cfg.fit.samples = get_or<int>(j, "samples", cfg.fit.samples, "fit");
        if (j.contains("basis")) {
            for (const auto& b : j["basis"]) {
                if (!b.is_array() || b.size() != 2) fail_config("fit.basis entries must be [gamma, q]");
                cfg.fit.basis.push_back({number(b[0], "fit.basis"), b[1].get<int>()});
            }
        }
        cfg.fit.h_max = get_or<int>(j, "h_max", cfg.fit.h_max, "fit");
        cfg.fit.j_max = get_or<int>(j, "j_max", cfg.fit.j_max, "fit");
        cfg.fit.q_max = get_or<int>(j, "q_max", cfg.fit.q_max, "fit");
        if (j.contains("gamma_min")) cfg.fit.gamma_min = number(j["gamma_min"], "fit.gamma_min");
        if (j.contains("source")) cfg.fit.source = parse_engine(j["source"].get<std::string>());
    }
    if (root.contains("gauge")) {
        const json& j = root["gauge"];
        reject_unknown(j, "gauge", {"probes", "seed"});
        cfg.gauge.probes = get_or<int>(j, "probes", cfg.gauge.probes, "gauge");
        cfg.gauge.seed = get_or<std::uint64_t>(j, "seed", cfg.gauge.seed, "gauge");
    }
    if (root.contains("regions")) {
        const json& j = root["regions"];
        reject_unknown(j, "regions", {"samples", "seed", "shell"});
        cfg.regions.samples = get_or<int>(j, "samples", cfg.regions.samples, "regions");
        cfg.regions.seed = get_or<std::uint64_t>(j, "seed", cfg.regions.seed, "regions");
        if (j.contains("shell")) {
            cfg.regions.shell_lo = number(j["shell"].at(0), "regions.shell");
            cfg.regions.shell_hi = number(j["shell"].at(1), "regions.shell");
        }
    }
    if (root.contains("symbols")) {
        const json& j = root["symbols"];
        reject_unknown(j, "symbols", {"norm_alpha", "norm_l", "norm_s", "radii"});
        if (j.contains("norm_alpha")) cfg.symbols.norm_alpha = number(j["norm_alpha"], "symbols.norm_alpha");
        if (j.contains("norm_l")) cfg.symbols.norm_l = number(j["norm_l"], "symbols.norm_l");
        cfg.symbols.norm_s = get_or<int>(j, "norm_s", cfg.symbols.norm_s, "symbols");
        cfg.symbols.radii = get_or<int>(j, "radii", cfg.symbols.radii, "symbols");
    }
    if (root.contains("tolerances")) {
        const json& j = root["tolerances"];
        reject_unknown(j, "tolerances", {"residual", "condition_a"});
        if (j.contains("residual")) cfg.tol.residual = number(j["residual"], "tolerances.residual");
        cfg.tol.condition_a = get_or<bool>(j, "condition_a", cfg.tol.condition_a, "tolerances");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_config("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace gids::app
