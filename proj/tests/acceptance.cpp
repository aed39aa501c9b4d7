// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "gaugeids/block.hpp"
#include "gaugeids/contour.hpp"
#include "gaugeids/cutoffs.hpp"
#include "gaugeids/gauge.hpp"
#include "gaugeids/geometry.hpp"
#include "gaugeids/ids.hpp"
#include "gaugeids/oracle.hpp"
#include "block_fixtures.hpp"

using namespace gids;
using namespace gids::app;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

RunConfig config(const std::string& name) { return load_config(std::string(GIDS_CONFIG_DIR) + "/" + name); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Random point with modulus uniform in volume between lo and hi.
Point shell_point(std::mt19937_64& rng, int d, double lo, double hi) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = g(rng);
    p.normalize();
    return std::pow(std::pow(lo, d) + u(rng) * (std::pow(hi, d) - std::pow(lo, d)), 1.0 / d) * p;
}

// Ray through xi inside its region: chart coordinates and the matching ray block.
struct LiftRay {
    CoordinateChart::Coords coords;
    std::vector<Point> offsets;
    CongruenceClass cls;
};

std::optional<LiftRay> lift_ray(const GaugeModel& model, const Point& xi) {
    const ResonanceGeometry& geo = model.geometry();
    const int v = geo.classify(xi).region;
    if (v < 0 || v == geo.lattice().full_space()) return std::nullopt;
    const Subspace& V = geo.lattice().at(static_cast<std::size_t>(v));
    Point phi = V.project_perp(xi);
    if (phi.norm() == 0) return std::nullopt;
    phi.normalize();
    const CoordinateChart& chart = geo.chart_for(v, phi);
    if (!chart.minimal) return std::nullopt;
    LiftRay out;
    out.coords = chart.to_coords(xi, V);
    out.cls = geo.congruence_class(xi);
    for (const auto& q : out.cls.points) out.offsets.push_back(q - out.coords.r * out.coords.Phi);
    return out;
}

std::vector<gids::testing::RandomBlockCase> generated_blocks() {
    std::mt19937_64 rng(2024);
    std::vector<gids::testing::RandomBlockCase> cases;
    for (int i = 0; i < 25; ++i) cases.push_back(gids::testing::random_block(rng, 1 + i % 6, i % 2 ? 1.5 : 1.0));
    return cases;
}

Outcome free_weyl() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int d : {1, 2})
        for (double w : {1.0, 1.5}) {
            ScaleParams sp = default_scale_params(d, w);
            sp.rho_n = 10.0;
            const GaugeModel model(Symbol(d), sp);
            const double lo = std::pow(sp.rho_n, 2 * w), hi = std::pow(4 * sp.rho_n, 2 * w);
            for (int i = 0; i < 20; ++i) {
                const double lambda = lo + (hi - lo) * i / 19.0;
                worst = std::max(worst, rel(model.ids(lambda).N, free_ids(lambda, d, w)));
            }
        }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst < 1e-6 && secs < 10.0, fmt("max rel err %.3g over 80 points, %.2f s", worst, secs)};
}

Outcome gauge_residuals() {
    const auto t0 = Clock::now();
    const RunConfig cfg = config("toy_gauge_d2.json");
    const CutoffFamily cf(cfg.scale);
    GaugeOptions opts = cfg.gauge;
    opts.probes = 50;
    const GaugeResult gr = gauge_recursion(build_symbol(cfg.op), cf, cfg.op.w, cfg.scale.k_tilde, opts);
    double worst = 0.0;
    for (double r : gr.residuals) worst = std::max(worst, r);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst < 1e-8 && secs < 30.0, fmt("max residual %.3g over %g levels, %.2f s", worst, double(gr.residuals.size()), secs)};
}

Outcome contour_identity() {
    const auto t0 = Clock::now();
    double worst = 0.0, min_det = INFINITY;
    int i = 0;
    for (const auto& c : generated_blocks()) {
        const int power = 1 + i++ % 3;
        const LinearBlockFamily f = c.family();
        const TauResult tr = tau_solve(f, c.rho, c.w, contour_radius(c.rho_n, c.w));
        double direct = 0.0;
        for (double t : tr.tau) direct += std::pow(t, power);
        const ContourResult r = contour_power_sum(f, c.rho, c.w, c.rho_n, power);
        worst = std::max(worst, std::abs(r.value - cplx(direct, 0.0)) / std::abs(direct));
        min_det = std::min(min_det, r.min_abs_det);
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {worst < 1e-8 && min_det > 0 && secs < 60.0,
            fmt("max rel err %.3g, min |det| %.3g, %.2f s", worst, min_det, secs)};
}

Outcome a_series_check() {
    double worst = 0.0;
    bool lead = true;
    const double rho_n = 100.0, rho = 200.0;
    for (double w : {1.0, 1.5, 2.0}) {
        const auto table = a_coefficients(w, 3, 40);
        lead = lead && table[1][0] == 1.0 / (2.0 * w);
        const double t = contour_radius(rho_n, w);
        for (int l = 1; l <= 3; ++l)
            for (int n = 0; n < 128; ++n) {
                const cplx z = rho + t * std::polar(1.0, 2.0 * M_PI * n / 128.0);
                const cplx exact = std::pow(std::pow(z, 2.0 * w) - std::pow(rho, 2.0 * w), -l);
                worst = std::max(worst, std::abs(a_series(table, l, w, rho, z) - exact) / std::abs(exact));
            }
    }
    return {worst < 1e-10 && lead, fmt("max rel err %.3g, leading coefficient exact: ", worst) + (lead ? "yes" : "no")};
}

Outcome denominator_check() {
    // Lift symbol on the toy scale, where the radial coordinate dominates the slab widths.
    RunConfig cfg = config("cos_lift_d2.json");
    cfg.scale.rho_n = 200.0;
    double worst15 = 0.0, worst1 = 0.0;
    int samples = 0, diverged = 0;
    for (double w : {1.0, 1.5}) {
        cfg.op.w = w;
        cfg.scale.w = w;
        const GaugeModel model(build_symbol(cfg.op), cfg.scale);
        std::mt19937_64 rng(55);
        int got = 0;
        for (int trial = 0; trial < 20000 && got < 200; ++trial) {
            const Point xi = shell_point(rng, 2, cfg.scale.rho_n, 4 * cfg.scale.rho_n);
            if (!model.in_A(xi)) continue;
            const auto ray = lift_ray(model, xi);
            if (!ray) continue;
            for (const auto& q : ray->cls.points)
                for (const auto& term : model.perturbation().terms()) {
                    if (term.theta.isZero(0.0) || std::abs(model.perturbation().coeff(term.theta, q)) == 0.0) continue;
                    try {
                        const DenominatorCheck c = denominator_series_check(term.theta, q - xi, xi, ray->coords.r, w);
                        (w == 1.0 ? worst1 : worst15) = std::max(w == 1.0 ? worst1 : worst15, c.rel_error());
                        ++samples;
                        ++got;
                    } catch (const Error&) {
                        ++diverged;
                    }
                }
        }
    }
    return {samples > 0 && diverged == 0 && worst15 < 1e-10 && worst1 < 1e-14,
            fmt("w=3/2 max defect %.3g, w=1 max defect %.3g, %g samples, %g divergent", worst15, worst1, samples, diverged)};
}

Outcome region_partition() {
    const auto t0 = Clock::now();
    const RunConfig cfg = config("regions_d2.json");
    const ResonanceGeometry geo(symbol_support(build_symbol(cfg.op)), cfg.scale);
    std::mt19937_64 rng(cfg.regions.seed);
    long membership = 0, not_closed = 0, escaped = 0, too_wide = 0;
    double max_ratio = 0.0;
    const int d = cfg.scale.d;
    for (int s = 0; s < 10000; ++s) {
        const Point xi = shell_point(rng, d, 2.0 * cfg.scale.rho_n / 3.0, 6.0 * cfg.scale.rho_n);
        const Classification c = geo.classify(xi);
        if (c.memberships != 1) ++membership;
        const int m = geo.lattice().at(static_cast<std::size_t>(c.region)).m;
        if (m == 0 || m == d) continue;
        const CongruenceClass cls = geo.congruence_class(xi);
        for (const auto& q : cls.points)
            if (geo.classify(q).region != c.region) ++escaped;
        // Closure: the class of any member is the same set.
        const CongruenceClass other = geo.congruence_class(cls.points.back());
        if (other.points.size() != cls.points.size()) {
            ++not_closed;
        } else {
            for (const auto& q : cls.points) {
                bool found = false;
                for (const auto& p : other.points) found = found || (p - q).norm() < 1e-9 * q.norm();
                if (!found) {
                    ++not_closed;
                    break;
                }
            }
        }
        const double ratio = cls.diameter() / (m * cfg.scale.L(m));
        max_ratio = std::max(max_ratio, ratio);
        if (ratio > 1.0 + 1e-9) ++too_wide;
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    return {membership == 0 && not_closed == 0 && escaped == 0 && too_wide == 0 && secs < 60.0,
            fmt("membership %g, closure %g, escapes %g violations; ", membership, not_closed, escaped) +
                fmt("diameter/(m L_m) max %.4f with %g classes over the bound, %.2f s", max_ratio, too_wide, secs)};
}

Outcome monotonicity() {
    long violations = 0;
    int blocks = 0;
    for (const auto& c : generated_blocks()) {
        violations += monotonicity_violations(c.family(), c.rho_n, 4 * c.rho_n, 200, 1e-3 * c.rho_n);
        ++blocks;
    }
    const RunConfig cfg = config("cos_lift_d2.json");
    const GaugeModel model(build_symbol(cfg.op), cfg.scale, cfg.gauge);
    const double rho_n = cfg.scale.rho_n, t = contour_radius(rho_n, cfg.op.w);
    std::mt19937_64 rng(71);
    int rays = 0;
    for (int trial = 0; trial < 4000 && rays < 60; ++trial) {
        const Point xi = shell_point(rng, 2, rho_n, 4 * rho_n);
        if (!model.in_A(xi)) continue;
        const auto ray = lift_ray(model, xi);
        if (!ray) continue;
        const RayBlock blk(model.perturbation(), cfg.op.w, ray->offsets, ray->coords.Phi);
        violations += monotonicity_violations(blk, ray->coords.r - t, ray->coords.r + t, 50, 1e-3 * rho_n);
        ++rays;
    }
    return {violations == 0 && rays > 0, fmt("%g violations on %g generated blocks and %g lift rays", violations, blocks, rays)};
}

struct OracleRun {
    Outcome outcome;
    std::string mathieu_csv, lift_csv;
};

OracleRun oracle_cross_check() {
    const auto t0 = Clock::now();
    OracleRun run;
    RunConfig m = config("mathieu_d1.json");
    double worst = 0.0;
    for (int grid : {1024, 2048}) {
        m.ids.oracle.grid = grid;
        const CommandOutput out = cmd_ids(m);
        if (grid == 1024) run.mathieu_csv = out.text;
        for (const auto& [rho, N] : read_ids_csv(out.text, 1.0, IdsMethod::floquet_oracle)) worst = std::max(worst, std::abs(N - rho / M_PI));
    }
    RunConfig lift = config("cos_lift_d2.json");
    double worst_lift = 0.0;
    for (int grid : {16, 32}) {
        lift.ids.oracle.grid = grid;
        const CommandOutput out = cmd_ids(lift);
        if (grid == 16) run.lift_csv = out.text;
        const auto g = read_ids_csv(out.text, lift.op.w, IdsMethod::gauge_volume);
        const auto o = read_ids_csv(out.text, lift.op.w, IdsMethod::floquet_oracle);
        for (std::size_t i = 0; i < g.size() && i < o.size(); ++i) worst_lift = std::max(worst_lift, rel(g[i].second, o[i].second));
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    run.outcome = {worst <= 0.02 && worst_lift < 0.02 && secs < 300.0,
                   fmt("Mathieu max |N - sqrt(lambda)/pi| %.4f, lift gauge vs oracle %.4f rel, %.1f s", worst, worst_lift, secs)};
    return run;
}

Outcome expansion_fit() {
    const RunConfig cfg = config("mathieu_d1.json");
    const auto j = nlohmann::json::parse(cmd_fit(cfg).text);
    double lead = NAN, worst_log = 0.0;
    for (std::size_t i = 0; i < j["basis"].size(); ++i) {
        const double gamma = j["basis"][i][0].get<double>();
        const int q = j["basis"][i][1].get<int>();
        const double c = j["coeffs"][i].get<double>(), se = j["std_errors"][i].get<double>();
        if (gamma == 1.0 && q == 0) lead = c;
        if (q > 0) worst_log = std::max(worst_log, std::abs(c) / se);
    }
    const double err = rel(lead, 1.0 / M_PI);
    return {err < 0.01 && worst_log < 3.0, fmt("leading coefficient %.6f (rel err %.3g), max |log coeff|/SE %.2f", lead, err, worst_log)};
}

Outcome determinism(const OracleRun& first) {
    const OracleRun second = oracle_cross_check();
    const bool same = first.mathieu_csv == second.mathieu_csv && first.lift_csv == second.lift_csv;
    return {same && !first.lift_csv.empty(), same ? "CSV output byte-identical across runs" : "CSV output differs between runs"};
}

}  // namespace

int main() {
    int failed = 0;
    auto report = [&](int n, const std::function<Outcome()>& f) {
        Outcome o;
        try {
            o = f();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", n, o.detail.c_str());
        std::fflush(stdout);
    };
    report(1, free_weyl);
    report(2, gauge_residuals);
    report(3, contour_identity);
    report(4, a_series_check);
    report(5, denominator_check);
    report(6, region_partition);
    report(7, monotonicity);
    OracleRun first;
    report(8, [&] {
        first = oracle_cross_check();
        return first.outcome;
    });
    report(9, expansion_fit);
    report(10, [&] { return determinism(first); });
    std::printf("%d of 10 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
