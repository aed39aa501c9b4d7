#include "gaugeids/block.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "point_index.hpp"

namespace gids {

bool modulus_then_lex_less(const Point& a, const Point& b) {
    const double na = a.norm(), nb = b.norm();
    if (std::abs(na - nb) > 1e-12 * std::max(1.0, std::max(na, nb))) return na < nb;
    return compare_points(a, b, 1e-12 * std::max(1.0, std::max(na, nb))) < 0;
}

std::vector<Point> ordered_basis(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), modulus_then_lex_less);
    return points;
}

Block assemble_block(const CongruenceClass& cls, const Symbol& w_symbol, double w) {
    Block blk;
    blk.basis = ordered_basis(cls.points);
    const int n = static_cast<int>(blk.basis.size());
    const int d = n > 0 ? static_cast<int>(blk.basis[0].size()) : 1;
    double scale = 1.0;
    for (const auto& p : blk.basis) scale = std::max(scale, p.norm());
    detail::PointIndex index(d, 1e-9 * scale);
    for (const auto& p : blk.basis) index.insert(p);

    blk.matrix = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const Point& eta = blk.basis[static_cast<std::size_t>(j)];
        blk.matrix(j, j) += std::pow(eta.squaredNorm(), w);
        for (const auto& term : w_symbol.terms()) {
            const cplx c = term.coeff->eval(eta);
            if (c == cplx(0.0, 0.0)) continue;
            const long i = index.find(Point(eta + term.theta));
            if (i < 0) {
                blk.invariance_defect = std::max(blk.invariance_defect, std::abs(c));
                continue;
            }
            blk.matrix(i, j) += c;
        }
    }
    if (blk.invariance_defect > 1e-10)
        fail_precondition("the class is not invariant under W (leak " + std::to_string(blk.invariance_defect) + ")");
    return blk;
}

Eigen::VectorXd block_eigenvalues(const Eigen::MatrixXcd& h) {
    const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        fail_precondition("block is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

cplx complex_power_modulus(const Point& base, const Point& dir, cplx z, double w) {
    return std::pow(RayArg{base, dir, z}.modulus_sq(), w);
}

cplx complex_power_modulus_derivative(const Point& base, const Point& dir, cplx z, double w) {
    const cplx m = RayArg{base, dir, z}.modulus_sq();
    const cplx dm = 2.0 * base.dot(dir) + 2.0 * z * dir.squaredNorm();
    return w * std::pow(m, w - 1.0) * dm;
}

BlockFamily::BlockFamily(std::vector<Point> offsets, Point dir) : offsets_(std::move(offsets)), dir_(std::move(dir)) {
    if (offsets_.empty()) fail_precondition("empty block");
    if (!(dir_.norm() > 0)) fail_precondition("ray direction must be nonzero");
}

Eigen::MatrixXcd BlockFamily::derivative(cplx z) const {
    const double h = 1e-3 * std::max(1.0, std::abs(z));
    return (at(z - 2.0 * h) - 8.0 * at(z - h) + 8.0 * at(z + h) - at(z + 2.0 * h)) / (12.0 * h);
}

double BlockFamily::vertex() const { return -offsets_.front().dot(dir_) / dir_.squaredNorm(); }

std::vector<double> BlockFamily::free_roots(double rho) const {
    std::vector<double> out;
    const double dd = dir_.squaredNorm();
    for (const auto& b : offsets_) {
        const double p = b.dot(dir_) / dd;
        const double disc = p * p - (b.squaredNorm() - rho * rho) / dd;
        if (disc > 0) out.push_back(-p + std::sqrt(disc));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RayBlock::RayBlock(const Symbol& w_symbol, double w, std::vector<Point> offsets, Point dir)
    : BlockFamily(std::move(offsets), std::move(dir)), w_(w) {
    const int n = size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point theta = offsets_[static_cast<std::size_t>(i)] - offsets_[static_cast<std::size_t>(j)];
            if (const Term* t = w_symbol.find(theta)) coupled_.push_back({i, j, t->theta, t->coeff});
        }
}

Eigen::MatrixXcd RayBlock::perturbation(cplx z) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(size(), size());
    for (const auto& c : coupled_)
        m(c.row, c.col) += c.coeff->eval_ray(RayArg{offsets_[static_cast<std::size_t>(c.col)], dir_, z});
    return m;
}

Eigen::MatrixXcd RayBlock::at(cplx z) const {
    Eigen::MatrixXcd m = perturbation(z);
    for (int i = 0; i < size(); ++i) m(i, i) += complex_power_modulus(offsets_[static_cast<std::size_t>(i)], dir_, z, w_);
    return m;
}

Eigen::MatrixXcd RayBlock::derivative(cplx z) const {
    const double h = 1e-3 * std::max(1.0, std::abs(z));
    Eigen::MatrixXcd m = (perturbation(z - 2.0 * h) - 8.0 * perturbation(z - h) + 8.0 * perturbation(z + h) -
                          perturbation(z + 2.0 * h)) /
                         (12.0 * h);
    for (int i = 0; i < size(); ++i)
        m(i, i) += complex_power_modulus_derivative(offsets_[static_cast<std::size_t>(i)], dir_, z, w_);
    return m;
}

LinearBlockFamily::LinearBlockFamily(double w, std::vector<Point> offsets, Point dir, Eigen::MatrixXcd p0,
                                     Eigen::MatrixXcd p1, double rho0)
    : BlockFamily(std::move(offsets), std::move(dir)), w_(w), p0_(std::move(p0)), p1_(std::move(p1)), rho0_(rho0) {
    if (p0_.rows() != size() || p0_.cols() != size() || p1_.rows() != size() || p1_.cols() != size())
        fail_precondition("linear block family: matrix size mismatch");
}

Eigen::MatrixXcd LinearBlockFamily::at(cplx z) const {
    Eigen::MatrixXcd m = p0_ + (z - rho0_) * p1_;
    for (int i = 0; i < size(); ++i) m(i, i) += complex_power_modulus(offsets_[static_cast<std::size_t>(i)], dir_, z, w_);
    return m;
}

Eigen::MatrixXcd LinearBlockFamily::derivative(cplx z) const {
    Eigen::MatrixXcd m = p1_;
    for (int i = 0; i < size(); ++i)
        m(i, i) += complex_power_modulus_derivative(offsets_[static_cast<std::size_t>(i)], dir_, z, w_);
    return m;
}

TauResult tau_solve(const BlockFamily& family, double rho, double w, double half_width) {
    TauResult res;
    res.tau0 = family.free_roots(rho);  // descending
    const double level = std::pow(rho, 2.0 * w);
    const double v = family.vertex();
    const Eigen::VectorXd at_vertex = family.eigenvalues(v);
    const int crossing = static_cast<int>((at_vertex.array() < level).count());
    half_width = std::max(half_width, 1e-6 * std::max(1.0, rho));

    for (int t = 0; t < crossing; ++t) {
        auto f = [&](double r) { return family.eigenvalues(r)[t] - level; };
        const double guess = t < static_cast<int>(res.tau0.size()) ? res.tau0[static_cast<std::size_t>(t)]
                                                                  : (res.tau0.empty() ? v : res.tau0.back());
        double lo = std::max(v, guess - half_width);
        double flo = f(lo);
        if (flo >= 0) {
            lo = v;
            flo = f(lo);
        }
        double width = half_width;
        double hi = std::max(guess, v) + width;
        double fhi = f(hi);
        int expansions = 0;
        while (fhi <= 0) {
            if (++expansions > 60) fail_precondition("bracketing failure while solving for a tau root");
            width *= 2.0;
            lo = hi;
            flo = fhi;
            hi = std::max(guess, v) + width;
            fhi = f(hi);
        }
        boost::uintmax_t iters = 200;
        auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(50),
                                                        iters);
        if (iters >= 200) fail_convergence("tau root solver did not converge");
        res.tau.push_back(0.5 * (a + b));
    }
    std::sort(res.tau.begin(), res.tau.end());
    std::sort(res.tau0.begin(), res.tau0.end());
    return res;
}

int monotonicity_violations(const BlockFamily& family, double r_lo, double r_hi, int steps, double delta, double tol) {
    int bad = 0;
    for (int s = 0; s <= steps; ++s) {
        const double r = r_lo + (r_hi - r_lo) * s / std::max(steps, 1);
        const Eigen::VectorXd a = family.eigenvalues(r);
        const Eigen::VectorXd b = family.eigenvalues(r + delta);
        for (Eigen::Index t = 0; t < a.size(); ++t)
            if (b[t] < a[t] - tol * std::max(1.0, std::abs(a[t]))) ++bad;
    }
    return bad;
}

}  // namespace gids
