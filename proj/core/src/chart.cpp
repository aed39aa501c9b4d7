#include <algorithm>
#include <cmath>

#include "gaugeids/geometry.hpp"

namespace gids {

namespace {

// Minimum of c.x over {A x >= 0, |x_k| <= 1} by enumerating vertices.
double box_lp_min(const Eigen::MatrixXd& A, const Eigen::VectorXd& c) {
    const int D = static_cast<int>(c.size());
    std::vector<Eigen::VectorXd> normals;
    std::vector<double> rhs;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        normals.push_back(A.row(i).transpose());
        rhs.push_back(0.0);
    }
    for (int k = 0; k < D; ++k)
        for (double s : {-1.0, 1.0}) {
            Eigen::VectorXd e = Eigen::VectorXd::Zero(D);
            e[k] = 1.0;
            normals.push_back(e);
            rhs.push_back(s);
        }
    const int H = static_cast<int>(normals.size());
    double best = std::numeric_limits<double>::infinity();
    // Iterate over D-subsets of hyperplanes.
    std::vector<bool> mask(static_cast<std::size_t>(H), false);
    std::fill(mask.begin(), mask.begin() + std::min(D, H), true);
    do {
        Eigen::MatrixXd M(D, D);
        Eigen::VectorXd b(D);
        int r = 0;
        for (int h = 0; h < H; ++h)
            if (mask[static_cast<std::size_t>(h)]) {
                M.row(r) = normals[static_cast<std::size_t>(h)].transpose();
                b[r] = rhs[static_cast<std::size_t>(h)];
                ++r;
            }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
        if (lu.rank() < D) continue;
        Eigen::VectorXd x = lu.solve(b);
        if (x.cwiseAbs().maxCoeff() > 1.0 + 1e-9) continue;
        if (A.rows() > 0 && (A * x).minCoeff() < -1e-9) continue;
        best = std::min(best, c.dot(x));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

}  // namespace

CoordinateChart::Coords CoordinateChart::to_coords(const Point& xi, const Subspace& v) const {
    Coords c;
    c.X = v.coords(xi);
    Point eta = v.project_perp(xi) - apex;
    c.r = eta.norm();
    c.Phi = c.r > 0 ? Point(eta / c.r) : Point(Point::Zero(xi.size()));
    return c;
}

Point CoordinateChart::from_coords(const Coords& c, const Subspace& v) const {
    Point x = v.basis * c.X;
    return x + apex + c.r * c.Phi;
}

bool CoordinateChart::contains_direction(const Point& Phi) const {
    for (const auto& f : facets)
        if (Phi.dot(f) <= 0.0) return false;
    return true;
}

std::vector<Point> CoordinateChart::vertices(const Subspace& v) const {
    const int D = static_cast<int>(v.complement.cols());
    std::vector<Point> out;
    if (static_cast<int>(facets.size()) != D) return out;
    Eigen::MatrixXd N(D, D);
    for (int j = 0; j < D; ++j) N.row(j) = (v.complement.transpose() * facets[static_cast<std::size_t>(j)]).transpose();
    for (int t = 0; t < D; ++t) {
        Eigen::MatrixXd rest(D - 1, D);
        for (int j = 0, r = 0; j < D; ++j)
            if (j != t) rest.row(r++) = N.row(j);
        Eigen::VectorXd y;
        if (D == 1) {
            y = Eigen::VectorXd::Ones(1);
        } else {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(rest);
            Eigen::MatrixXd ker = lu.kernel();
            y = ker.col(0);
        }
        Point p = v.complement * y;
        p /= p.norm();
        if (p.dot(facets[static_cast<std::size_t>(t)]) < 0) p = -p;
        out.push_back(p);
    }
    return out;
}

CoordinateChart build_chart(const Subspace& v, int space, const std::vector<Point>& normals, double level) {
    const int D = static_cast<int>(v.complement.cols());
    CoordinateChart ch;
    ch.space = space;
    ch.facets = normals;
    ch.apex = Point::Zero(v.projector.rows());
    if (normals.empty()) {
        ch.minimal = true;
        return ch;
    }
    const int J = static_cast<int>(normals.size());
    Eigen::MatrixXd N(J, D);
    for (int j = 0; j < J; ++j) {
        const Point& mu = normals[static_cast<std::size_t>(j)];
        if (std::abs(mu.norm() - 1.0) > 1e-9) fail_precondition("defining vectors must be unit vectors");
        if (v.project(mu).norm() > 1e-9) fail_precondition("defining vectors must lie in the orthogonal complement of V");
        N.row(j) = (v.complement.transpose() * mu).transpose();
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(N);
    lu.setThreshold(1e-10);
    if (lu.rank() < J) fail_precondition("defining vectors are not linearly independent");
    Eigen::VectorXd a = N.completeOrthogonalDecomposition().solve(Eigen::VectorXd::Constant(J, level));
    ch.apex = v.complement * a;
    ch.minimal = true;
    return ch;
}

const CoordinateChart& ResonanceGeometry::chart_for(int v, const Point& Phi) const {
    const Subspace& V = lattice_.at(static_cast<std::size_t>(v));
    const auto& parents = lattice_.parents(v);
    std::vector<int> signs;
    for (const auto& p : parents) signs.push_back(Phi.dot(p.normal) >= 0 ? 1 : -1);
    auto key = std::make_pair(v, signs);
    {
        std::lock_guard<std::mutex> lock(*chart_mutex_);
        auto it = charts_.find(key);
        if (it != charts_.end()) return it->second;
    }

    const int D = static_cast<int>(V.complement.cols());
    const int n = static_cast<int>(parents.size());
    std::vector<Point> signed_normals;
    Eigen::MatrixXd A(n, D);
    for (int j = 0; j < n; ++j) {
        Point mu = signs[static_cast<std::size_t>(j)] * parents[static_cast<std::size_t>(j)].normal;
        signed_normals.push_back(mu);
        A.row(j) = (V.complement.transpose() * mu).transpose();
    }
    std::vector<int> facet_idx;
    for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd others(n - 1, D);
        for (int i = 0, r = 0; i < n; ++i)
            if (i != j) others.row(r++) = A.row(i);
        if (box_lp_min(others, A.row(j).transpose()) < -1e-9) facet_idx.push_back(j);
    }
    std::vector<Point> facets;
    for (int j : facet_idx) facets.push_back(signed_normals[static_cast<std::size_t>(j)]);

    const double level = V.m + 1 <= sp_.d ? sp_.L(V.m + 1) : 0.0;
    CoordinateChart ch;
    ch.space = v;
    ch.signs = signs;
    ch.facets = facets;
    ch.apex = Point::Zero(sp_.d);
    Eigen::MatrixXd F(static_cast<Eigen::Index>(facets.size()), D);
    for (std::size_t j = 0; j < facets.size(); ++j) F.row(static_cast<Eigen::Index>(j)) = A.row(facet_idx[j]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
    lu.setThreshold(1e-10);
    if (facets.empty() || lu.rank() == static_cast<Eigen::Index>(facets.size())) {
        ch = build_chart(V, v, facets, level);
        ch.signs = signs;
        for (const auto& mu : signed_normals)
            if (ch.apex.dot(mu) < level * (1.0 - 1e-9)) ch.minimal = false;
    }
    std::lock_guard<std::mutex> lock(*chart_mutex_);
    return charts_.emplace(key, std::move(ch)).first->second;
}

}  // namespace gids
