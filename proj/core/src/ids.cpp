#include "gaugeids/ids.hpp"

#include <cmath>
#include <numbers>

#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

#include "gaugeids/lowdisc.hpp"

namespace gids {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform parameterisation of the unit sphere S^K inside span(basis columns);
// returns the total measure of S^K. K = 0 is handled by the caller.
double sphere_measure(int K) {
    switch (K) {
        case 1: return 2.0 * kPi;
        case 2: return 4.0 * kPi;
        case 3: return 2.0 * kPi * kPi;
        default: fail_precondition("sphere dimension " + std::to_string(K) + " not supported");
    }
}

Point sphere_point(int K, const double* u, const Eigen::MatrixXd& basis) {
    Eigen::VectorXd c(K + 1);
    if (K == 1) {
        c << std::cos(2 * kPi * u[0]), std::sin(2 * kPi * u[0]);
    } else if (K == 2) {
        const double z = 2.0 * u[0] - 1.0, s = std::sqrt(std::max(0.0, 1.0 - z * z)), ph = 2 * kPi * u[1];
        c << s * std::cos(ph), s * std::sin(ph), z;
    } else {
        const double a = std::sqrt(1.0 - u[0]), b = std::sqrt(u[0]);
        c << a * std::cos(2 * kPi * u[1]), a * std::sin(2 * kPi * u[1]), b * std::cos(2 * kPi * u[2]), b * std::sin(2 * kPi * u[2]);
    }
    return basis * c;
}

}  // namespace

double unit_ball_volume(int d) { return std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0 + 1.0); }

double free_ids(double lambda, int d, double w) {
    return std::pow(2.0 * kPi, -d) * unit_ball_volume(d) * std::pow(lambda, d / (2.0 * w));
}

double RegionVolume::error() const { return std::abs(value - half_value) + excluded; }

std::string to_string(IdsMethod m) {
    switch (m) {
        case IdsMethod::gauge_volume: return "gauge-volume";
        case IdsMethod::floquet_oracle: return "floquet-oracle";
        case IdsMethod::free_closed_form: return "free-closed-form";
    }
    return "unknown";
}

FrequencySet symbol_support(const Symbol& b) {
    FrequencySet s(b.dim());
    s.insert(Frequency(Point::Zero(b.dim())));
    for (const auto& t : b.terms()) s.insert(Frequency(t.theta));
    return s;
}

GaugeModel::GaugeModel(const Symbol& b, const ScaleParams& sp, const GaugeOptions& gopts) : sp_(sp), cf_(sp) {
    sp_.validate();
    if (b.dim() != sp_.d) fail_config("symbol dimension differs from d");
    if (b.is_zero()) {
        gauge_.y = Symbol(sp_.d);
        gauge_.w = Symbol(sp_.d);
    } else {
        gauge_ = gauge_recursion(b, cf_, sp_.w, sp_.k_tilde, gopts);
    }
    geometry_ = std::make_unique<ResonanceGeometry>(symbol_support(b), sp_);
}

bool GaugeModel::in_A(const Point& xi) const {
    const double lo = 5.0 * sp_.rho_n / 6.0, hi = 5.0 * sp_.rho_n;
    const double r = xi.norm();
    if (r >= lo && r <= hi) return true;
    if (geometry_->classify(xi).region == geometry_->lattice().full_space()) return false;
    for (const auto& p : geometry_->congruence_class(xi).points) {
        const double n = p.norm();
        if (n >= lo && n <= hi) return true;
    }
    return false;
}

Block GaugeModel::block_at(const Point& xi) const {
    return assemble_block(geometry_->congruence_class(xi), gauge_.w, sp_.w);
}

double GaugeModel::g(const Point& xi) const {
    if (!in_A(xi)) return std::pow(xi.squaredNorm(), sp_.w);
    const Block blk = block_at(xi);
    const Eigen::VectorXd ev = block_eigenvalues(blk.matrix);
    const double tol = 1e-9 * std::max(1.0, xi.norm());
    for (std::size_t t = 0; t < blk.basis.size(); ++t)
        if (same_point(blk.basis[t], xi, tol)) return ev[static_cast<Eigen::Index>(t)];
    fail_precondition("point missing from its own class");
}

RegionVolume GaugeModel::volume_A_pm(int space, double rho, const VolumeOptions& opts) const {
    const auto& lat = geometry_->lattice();
    const Subspace& V = lat.at(static_cast<std::size_t>(space));
    const int d = sp_.d;
    const int m = V.m;
    if (m >= d) fail_precondition("volume_A_pm needs a proper subspace");
    const int K = d - m - 1;
    const int sphere_dims = K == 0 ? 0 : K;
    const int dims = m + sphere_dims;
    const double half_cube = m > 0 ? m * sp_.L(m) : 0.0;
    const double x_measure = std::pow(2.0 * half_cube, m);
    const double phi_measure = K == 0 ? 1.0 : sphere_measure(K);
    const double half_width = opts.tau_half_width > 0 ? opts.tau_half_width : sp_.L(d);
    const std::uint64_t nodes = dims == 0 ? 1 : std::max<std::uint64_t>(opts.nodes, 2);

    KroneckerSequence seq(std::max(dims, 1), opts.seed + static_cast<std::uint64_t>(space));
    std::vector<double> value(nodes, 0.0), excluded(nodes, 0.0);
    std::vector<char> active(nodes, 0);

    auto node_value = [&](std::uint64_t n) {
        std::vector<double> u(static_cast<std::size_t>(std::max(dims, 1)));
        seq.fill(n, u.data());
        Eigen::VectorXd X(m);
        for (int i = 0; i < m; ++i) X[i] = (2.0 * u[static_cast<std::size_t>(i)] - 1.0) * half_cube;
        const Point xv = V.basis * X;

        std::vector<Point> dirs;
        if (K == 0) {
            dirs.push_back(V.complement.col(0));
            dirs.push_back(-V.complement.col(0));
        } else {
            dirs.push_back(sphere_point(K, u.data() + m, V.complement));
        }
        double acc = 0.0, excl = 0.0;
        for (const Point& Phi : dirs) {
            const CoordinateChart& chart = geometry_->chart_for(space, Phi);
            const Point base = xv + chart.apex;
            const double p = base.dot(Phi);
            const double disc = p * p - base.squaredNorm() + rho * rho;
            if (disc <= 0) continue;
            const double tau0 = -p + std::sqrt(disc);
            if (tau0 <= 0) continue;
            const Point seed = base + tau0 * Phi;
            if (geometry_->classify(seed).region != space) continue;
            if (!chart.minimal) {
                // Bound by the free contribution of the node.
                excl += std::pow(tau0, K + 1) / (K + 1);
                continue;
            }
            active[n] = 1;
            const CongruenceClass cls = geometry_->congruence_class(seed);
            std::vector<Point> offsets;
            offsets.reserve(cls.points.size());
            for (const auto& q : cls.points) offsets.push_back(q - tau0 * Phi);
            const RayBlock block(gauge_.w, sp_.w, std::move(offsets), Phi);
            const TauResult tr = tau_solve(block, rho, sp_.w, half_width);
            double s = 0.0;
            for (double t : tr.tau) s += std::pow(std::max(t, 0.0), K + 1);
            for (double t : tr.tau0) s -= std::pow(std::max(t, 0.0), K + 1);
            acc += s / (K + 1) / static_cast<double>(cls.points.size());
        }
        value[n] = acc;
        excluded[n] = excl;
    };

    tbb::parallel_for(tbb::blocked_range<std::uint64_t>(0, nodes), [&](const tbb::blocked_range<std::uint64_t>& r) {
        for (std::uint64_t n = r.begin(); n != r.end(); ++n) node_value(n);
    });

    RegionVolume out;
    out.space = space;
    out.K = K;
    out.nodes = nodes;
    const double scale = x_measure * phi_measure;
    double full = 0.0, half = 0.0, excl = 0.0;
    const std::uint64_t half_n = std::max<std::uint64_t>(nodes / 2, 1);
    for (std::uint64_t n = 0; n < nodes; ++n) {
        full += value[n];
        excl += excluded[n];
        if (n < half_n) half += value[n];
        out.active += static_cast<std::uint64_t>(active[n]);
    }
    out.value = scale * full / static_cast<double>(nodes);
    out.half_value = nodes > 1 ? scale * half / static_cast<double>(half_n) : out.value;
    out.excluded = scale * excl / static_cast<double>(nodes);
    return out;
}

IdsPoint GaugeModel::ids(double lambda, const VolumeOptions& opts) const {
    if (!(lambda > 0)) fail_precondition("lambda must be positive");
    const double rho = std::pow(lambda, 1.0 / (2.0 * sp_.w));
    if (rho < sp_.rho_n * (1 - 1e-12) || rho > 4.0 * sp_.rho_n * (1 + 1e-12))
        fail_precondition("rho = lambda^{1/2w} outside the window [rho_n, 4 rho_n]");
    const int d = sp_.d;
    double vol = unit_ball_volume(d) * std::pow(rho, d);
    double err = 0.0;
    const auto& lat = geometry_->lattice();
    for (std::size_t v = 0; v < lat.size(); ++v) {
        if (lat.at(v).m >= d) continue;
        const RegionVolume rv = volume_A_pm(static_cast<int>(v), rho, opts);
        vol += rv.value;
        err += rv.error();
    }
    const double norm = std::pow(2.0 * kPi, -d);
    return {lambda, norm * vol, IdsMethod::gauge_volume, norm * err};
}

}  // namespace gids
