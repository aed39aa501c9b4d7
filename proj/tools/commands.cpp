#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "gaugeids/calculus.hpp"
#include "gaugeids/cutoffs.hpp"
#include "gaugeids/geometry.hpp"
#include "gaugeids/report.hpp"

namespace gids::app {

namespace {

using nlohmann::json;

json point_json(const Point& p) {
    json a = json::array();
    for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
    return a;
}

CommandOutput as_output(const json& j, int code = 0) { return {code, j.dump(2) + "\n"}; }

std::vector<double> operator_iotas(const OperatorSpec& op) {
    std::vector<double> out;
    for (const auto& t : op.terms)
        if (std::abs(t.iota) > 1e-12) out.push_back(t.iota);
    return out;
}

std::vector<IdsPoint> oracle_points(const RunConfig& cfg, const Symbol& b, const std::vector<double>& lambdas) {
    const FloquetResult fr = ids_oracle_floquet(b, cfg.op.frequencies, cfg.op.w, lambdas, cfg.ids.oracle);
    // Grid error: compare against half the grid when it is even.
    std::vector<double> coarse(lambdas.size(), 0.0);
    bool have_coarse = false;
    if (cfg.ids.oracle.grid >= 4 && cfg.ids.oracle.grid % 2 == 0) {
        FloquetOptions half = cfg.ids.oracle;
        half.grid /= 2;
        coarse = ids_oracle_floquet(b, cfg.op.frequencies, cfg.op.w, lambdas, half).N;
        have_coarse = true;
    }
    std::vector<IdsPoint> out;
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        out.push_back({lambdas[i], fr.N[i], IdsMethod::floquet_oracle, have_coarse ? std::abs(fr.N[i] - coarse[i]) : 0.0});
    return out;
}

}  // namespace

CommandOutput cmd_validate(const RunConfig& cfg) {
    std::ostringstream out;
    bool all = true;
    auto report = [&](const std::string& name, bool pass, const std::string& detail) {
        all = all && pass;
        out << (pass ? "PASS " : "FAIL ") << name << (detail.empty() ? "" : ": " + detail) << '\n';
    };
    const std::string chain = cfg.scale.validation_error();
    report("scale-chain", chain.empty(), chain);
    const std::string freq = cfg.op.frequencies.validation_error();
    report("frequency-set", freq.empty(), freq);
    try {
        build_symbol(cfg.op);
        report("symbol", true, "");
    } catch (const Error& e) {
        report("symbol", false, e.what());
    }
    if (cfg.tol.condition_a) {
        if (!cfg.op.frequencies.all_exact()) {
            report("condition-A", false, "rational coords missing");
        } else {
            try {
                const ConditionAReport rep = check_condition_A(cfg.op.frequencies, cfg.scale.k);
                std::ostringstream det;
                det << rep.tuples << " tuples, " << rep.dependent << " dependent";
                report("condition-A", rep.pass, det.str());
            } catch (const Error& e) {
                report("condition-A", false, e.what());
            }
        }
    }
    if (chain.empty() && freq.empty()) {
        try {
            const ResonanceGeometry geo(cfg.op.frequencies, cfg.scale);
            const GeometryConstants gc = geo.constants();
            std::ostringstream det;
            det << "s = " << gc.s << (gc.s_vacuous ? " (vacuous)" : "") << ", r = " << gc.r << ", R = " << gc.R
                << ", card = " << gc.card;
            if (!(gc.s_ok && gc.r_ok && gc.card_ok)) {
                // Smallest rho_n at which all three inequalities would hold.
                const double k = cfg.scale.k;
                double need = std::pow(static_cast<double>(gc.card), k);
                if (!gc.s_vacuous && gc.s > 0) need = std::max(need, std::pow(gc.s, -k));
                if (gc.r > 0) need = std::max(need, std::pow(gc.r, -k));
                det << "; needs rho_n >= " << need;
            }
            report("condition-C", gc.s_ok && gc.r_ok && gc.card_ok, det.str());
        } catch (const Error& e) {
            report("condition-C", false, e.what());
        }
    }
    return {all ? 0 : static_cast<int>(ErrorKind::config), out.str()};
}

CommandOutput cmd_symbols(const RunConfig& cfg) {
    cfg.scale.validate();
    const Symbol b = build_symbol(cfg.op);
    const CutoffFamily cf(cfg.scale);
    json j;
    j["order"] = b.order();
    j["self_adjoint"] = b.self_adjoint();
    j["terms"] = json::array();
    for (const auto& t : b.terms()) j["terms"].push_back(point_json(t.theta));
    j["symmetry_defect"] = check_symmetry(b, 200, 0x5EED, 8.0 * cfg.scale.C0);
    NormGrid grid{cfg.scale.beta, cfg.scale.rho_n, cfg.symbols.radii, 3};
    j["norm_lower_bound"] = symbol_norm(b, cfg.symbols.norm_alpha, cfg.symbols.norm_l, cfg.symbols.norm_s, grid);
    const SymbolSplit split = partition_symbol(b, cf);
    j["partition_terms"] = {{"o", split.o.size()},
                            {"down", split.down.size()},
                            {"flat", split.flat.size()},
                            {"natural", split.natural.size()},
                            {"large_energy", split.le.size()}};
    return as_output(j);
}

CommandOutput cmd_gauge(const RunConfig& cfg) {
    cfg.scale.validate();
    const Symbol b = build_symbol(cfg.op);
    const CutoffFamily cf(cfg.scale);
    const GaugeResult gr = gauge_recursion(b, cf, cfg.op.w, cfg.scale.k_tilde, cfg.gauge);
    const double radius = 8.0 * cfg.scale.rho_n;
    std::ostringstream out;
    out << "level,psi_terms,b_terms,t_terms,residual,b_symmetry_defect\n";
    char buf[64];
    bool ok = true;
    for (std::size_t l = 0; l < gr.psi.size(); ++l) {
        const double res = l < gr.residuals.size() ? gr.residuals[l] : 0.0;
        ok = ok && res < cfg.tol.residual;
        out << l + 1 << ',' << gr.psi[l].size() << ',' << gr.b_terms[l].size() << ',' << gr.t_terms[l].size() << ',';
        std::snprintf(buf, sizeof buf, "%.17g", res);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", check_symmetry(gr.b_terms[l], 64, cfg.gauge.seed, radius));
        out << buf << '\n';
    }
    return {ok ? 0 : static_cast<int>(ErrorKind::convergence), out.str()};
}

CommandOutput cmd_regions(const RunConfig& cfg) {
    cfg.scale.validate();
    const Symbol b = build_symbol(cfg.op);
    const ResonanceGeometry geo(symbol_support(b), cfg.scale);
    const int d = cfg.scale.d;
    std::mt19937_64 rng(cfg.regions.seed);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double lo = cfg.regions.shell_lo * cfg.scale.rho_n, hi = cfg.regions.shell_hi * cfg.scale.rho_n;
    std::map<int, long> per_space;
    long bad_membership = 0, ambiguous = 0, too_wide = 0;
    std::size_t max_class = 0;
    double max_ratio = 0.0;
    for (int s = 0; s < cfg.regions.samples; ++s) {
        Point dir(d);
        for (int i = 0; i < d; ++i) dir[i] = gauss(rng);
        dir.normalize();
        const double r = std::pow(std::pow(lo, d) + unif(rng) * (std::pow(hi, d) - std::pow(lo, d)), 1.0 / d);
        const Point xi = r * dir;
        const Classification c = geo.classify(xi);
        ++per_space[c.region];
        if (c.memberships != 1) ++bad_membership;
        if (c.ambiguous) ++ambiguous;
        const int m = c.region >= 0 ? geo.lattice().at(static_cast<std::size_t>(c.region)).m : 0;
        if (m > 0 && m < d) {
            const CongruenceClass cls = geo.congruence_class(xi);
            max_class = std::max(max_class, cls.points.size());
            const double ratio = cls.diameter() / (m * cfg.scale.L(m));
            max_ratio = std::max(max_ratio, ratio);
            if (ratio > 1 + 1e-9) ++too_wide;
        }
    }
    json j;
    json spaces = json::array();
    for (const auto& [v, n] : per_space)
        spaces.push_back({{"space", v}, {"dim", v >= 0 ? geo.lattice().at(static_cast<std::size_t>(v)).m : -1}, {"count", n}});
    j["samples"] = cfg.regions.samples;
    j["spaces"] = spaces;
    j["lattice_size"] = geo.lattice().size();
    j["membership_violations"] = bad_membership;
    j["ambiguous"] = ambiguous;
    j["diameter_violations"] = too_wide;
    j["max_class_size"] = max_class;
    j["max_diameter_ratio"] = max_ratio;
    const bool ok = bad_membership == 0 && too_wide == 0;
    j["pass"] = ok;
    return as_output(j, ok ? 0 : static_cast<int>(ErrorKind::precondition));
}

CommandOutput cmd_ids(const RunConfig& cfg) {
    if (cfg.ids.lambdas.empty()) fail_config("ids.lambdas is empty");
    for (std::size_t i = 1; i < cfg.ids.lambdas.size(); ++i)
        if (!(cfg.ids.lambdas[i] > cfg.ids.lambdas[i - 1])) fail_config("ids.lambdas must be strictly ascending");
    cfg.scale.validate();
    std::vector<IdsRow> rows;
    const Engine e = cfg.ids.engine;
    if (e == Engine::free) {
        for (double l : cfg.ids.lambdas) rows.push_back({{l, free_ids(l, cfg.op.d, cfg.op.w), IdsMethod::free_closed_form, 0.0}, {}});
        return {0, ids_csv(rows)};
    }
    const Symbol b = build_symbol(cfg.op);
    std::vector<IdsPoint> gauge, oracle;
    if (e == Engine::gauge || e == Engine::both) {
        const GaugeModel model(b, cfg.scale, cfg.gauge);
        for (double l : cfg.ids.lambdas) gauge.push_back(model.ids(l, cfg.ids.volume));
    }
    if (e == Engine::oracle || e == Engine::both) oracle = oracle_points(cfg, b, cfg.ids.lambdas);
    for (std::size_t i = 0; i < cfg.ids.lambdas.size(); ++i) {
        if (!gauge.empty()) {
            std::optional<double> disc;
            if (!oracle.empty()) disc = gauge[i].N - oracle[i].N;
            rows.push_back({gauge[i], disc});
        }
        if (!oracle.empty()) rows.push_back({oracle[i], {}});
    }
    return {0, ids_csv(rows)};
}

std::vector<std::pair<double, double>> read_ids_csv(const std::string& text, double w, IdsMethod method) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) fail_config("ids CSV is empty");
    auto split = [](const std::string& row) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream rs(row);
        while (std::getline(rs, cell, ',')) cells.push_back(cell);
        if (!row.empty() && row.back() == ',') cells.emplace_back();
        return cells;
    };
    const std::vector<std::string> header = split(line);
    auto column = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        fail_config("ids CSV lacks a \"" + name + "\" column");
    };
    const std::size_t c_lambda = column("lambda"), c_n = column("N"), c_method = column("method");
    const std::string wanted = to_string(method);
    std::vector<std::pair<double, double>> out;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split(line);
        if (cells.size() < header.size()) fail_config("ids CSV row " + std::to_string(row) + " is short");
        if (cells[c_method] != wanted) continue;
        try {
            const double lambda = std::stod(cells[c_lambda]);
            out.emplace_back(std::pow(lambda, 1.0 / (2.0 * w)), std::stod(cells[c_n]));
        } catch (const std::exception&) {
            fail_config("ids CSV row " + std::to_string(row) + " has a malformed number");
        }
    }
    if (out.empty()) fail_config("ids CSV has no rows with method " + wanted);
    return out;
}

namespace {

IdsMethod method_for(Engine e) {
    switch (e) {
        case Engine::free: return IdsMethod::free_closed_form;
        case Engine::oracle: return IdsMethod::floquet_oracle;
        default: return IdsMethod::gauge_volume;
    }
}

}  // namespace

CommandOutput cmd_fit(const RunConfig& cfg) {
    cfg.scale.validate();
    const double lo = cfg.fit.rho_min > 0 ? cfg.fit.rho_min : cfg.scale.rho_n;
    const double hi = cfg.fit.rho_max > 0 ? cfg.fit.rho_max : 4.0 * cfg.scale.rho_n;
    if (!(hi > lo)) fail_config("fit window must have rho_max > rho_min");
    std::vector<std::pair<double, double>> samples;
    if (!cfg.fit.csv.empty()) {
        std::ifstream f(cfg.fit.csv, std::ios::binary);
        if (!f) fail_config("cannot read ids CSV " + cfg.fit.csv);
        std::ostringstream text;
        text << f.rdbuf();
        const auto rows = read_ids_csv(text.str(), cfg.op.w, method_for(cfg.fit.source));
        double data_lo = rows.front().first, data_hi = rows.front().first;
        for (const auto& [rho, n] : rows) {
            data_lo = std::min(data_lo, rho);
            data_hi = std::max(data_hi, rho);
            if (rho >= lo * (1 - 1e-12) && rho <= hi * (1 + 1e-12)) samples.emplace_back(rho, n);
        }
        if (lo < data_lo * (1 - 1e-9) || hi > data_hi * (1 + 1e-9))
            fail_precondition("fit window [" + std::to_string(lo) + ", " + std::to_string(hi) + "] outside the data range [" +
                              std::to_string(data_lo) + ", " + std::to_string(data_hi) + "]");
    } else {
        if (cfg.fit.samples < 2) fail_config("fit.samples must be at least 2");
        std::vector<double> rhos, lambdas;
        for (int i = 0; i < cfg.fit.samples; ++i) {
            const double rho = lo + (hi - lo) * i / (cfg.fit.samples - 1);
            rhos.push_back(rho);
            lambdas.push_back(std::pow(rho, 2.0 * cfg.op.w));
        }
        const Symbol b = build_symbol(cfg.op);
        std::vector<double> N;
        if (cfg.fit.source == Engine::oracle) {
            N = ids_oracle_floquet(b, cfg.op.frequencies, cfg.op.w, lambdas, cfg.ids.oracle).N;
        } else if (cfg.fit.source == Engine::free) {
            for (double l : lambdas) N.push_back(free_ids(l, cfg.op.d, cfg.op.w));
        } else {
            const GaugeModel model(b, cfg.scale, cfg.gauge);
            for (double l : lambdas) N.push_back(model.ids(l, cfg.ids.volume).N);
        }
        for (std::size_t i = 0; i < rhos.size(); ++i) samples.emplace_back(rhos[i], N[i]);
    }
    std::vector<FitTerm> basis = cfg.fit.basis.empty()
                                     ? expansion_basis(cfg.op.d, cfg.op.w, operator_iotas(cfg.op), cfg.fit.h_max, cfg.fit.j_max,
                                                       cfg.fit.q_max, cfg.fit.gamma_min)
                                     : merge_basis(cfg.fit.basis, cfg.op.d);
    return {0, fit_json(fit_expansion(samples, std::move(basis)))};
}

}  // namespace gids::app
