#include "gaugeids/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "point_index.hpp"

namespace gids {

FrequencySet theta_closure(const FrequencySet& theta, int k, std::size_t cap) {
    if (k < 1) fail_precondition("closure order k must be at least 1");
    const int d = theta.dim();
    FrequencySet out(d);
    detail::PointIndex index(d, 1e-10);
    for (const auto& f : theta.elements())
        if (index.insert(f.coords).second) out.append_unchecked(f);
    std::vector<Frequency> frontier = out.elements();
    for (int step = 2; step <= k; ++step) {
        std::vector<Frequency> next;
        for (const auto& a : frontier)
            for (const auto& b : theta.elements()) {
                Frequency s = a.plus(b);
                if (index.insert(s.coords).second) {
                    out.append_unchecked(s);
                    next.push_back(s);
                    if (out.size() > cap)
                        fail_precondition("closure Theta_" + std::to_string(k) + " exceeds the cap of " + std::to_string(cap) + " elements");
                }
            }
        frontier = std::move(next);
    }
    return out;
}

Subspace make_subspace(int d, std::vector<Point> generators) {
    Subspace s;
    s.m = static_cast<int>(generators.size());
    s.generators = std::move(generators);
    if (s.m == 0) {
        s.basis = Eigen::MatrixXd::Zero(d, 0);
        s.projector = Eigen::MatrixXd::Zero(d, d);
        s.complement = Eigen::MatrixXd::Identity(d, d);
        return s;
    }
    Eigen::MatrixXd g(d, s.m);
    for (int j = 0; j < s.m; ++j) g.col(j) = s.generators[static_cast<std::size_t>(j)];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
    s.basis = q.leftCols(s.m);
    s.complement = q.rightCols(d - s.m);
    s.projector = s.basis * s.basis.transpose();
    return s;
}

bool Subspace::contains(const Subspace& u) const {
    if (u.m > m) return false;
    return (projector * u.projector - u.projector).norm() < 1e-9;
}

namespace {

bool same_subspace(const Subspace& a, const Subspace& b) { return a.m == b.m && (a.projector - b.projector).norm() < 1e-9; }

Point unit_difference(const Subspace& big, const Subspace& small) {
    Eigen::MatrixXd diff = big.projector - small.projector;
    Eigen::Index best = 0;
    diff.colwise().norm().maxCoeff(&best);
    Point n = diff.col(best);
    n /= n.norm();
    // Deterministic orientation: first significant coordinate positive.
    for (Eigen::Index i = 0; i < n.size(); ++i)
        if (std::abs(n[i]) > 1e-12) {
            if (n[i] < 0) n = -n;
            break;
        }
    return n;
}

}  // namespace

SubspaceLattice::SubspaceLattice(const FrequencySet& theta_k, std::size_t cap) : d_(theta_k.dim()) {
    spaces_.push_back(make_subspace(d_, {}));
    std::vector<Point> lines;
    for (const auto& f : theta_k.elements()) {
        if (f.coords.norm() < 1e-12) continue;
        Subspace s = make_subspace(d_, {f.coords});
        bool dup = false;
        for (std::size_t i = 1; i < spaces_.size(); ++i)
            if (same_subspace(spaces_[i], s)) dup = true;
        if (!dup) {
            spaces_.push_back(s);
            lines.push_back(f.coords);
        }
    }
    std::size_t level_begin = 1, level_end = spaces_.size();
    for (int m = 1; m < d_ && level_begin < level_end; ++m) {
        std::size_t next_begin = spaces_.size();
        for (std::size_t v = level_begin; v < level_end; ++v)
            for (const auto& line : lines) {
                if (spaces_[v].contains(line)) continue;
                std::vector<Point> gens = spaces_[v].generators;
                gens.push_back(line);
                Subspace w = make_subspace(d_, gens);
                bool dup = false;
                for (std::size_t i = next_begin; i < spaces_.size() && !dup; ++i)
                    if (same_subspace(spaces_[i], w)) dup = true;
                if (!dup) {
                    spaces_.push_back(std::move(w));
                    if (spaces_.size() > cap)
                        fail_precondition("number of quasi-lattice subspaces exceeds the cap of " + std::to_string(cap));
                }
            }
        level_begin = next_begin;
        level_end = spaces_.size();
    }

    const std::size_t n = spaces_.size();
    children_.assign(n, {});
    parents_.assign(n, {});
    supersets_.assign(n, {});
    for (std::size_t v = 0; v < n; ++v) {
        if (spaces_[v].m == d_) full_ = static_cast<int>(v);
        for (std::size_t u = 0; u < n; ++u) {
            if (spaces_[u].m + 1 != spaces_[v].m || !spaces_[v].contains(spaces_[u])) continue;
            Point nu = unit_difference(spaces_[v], spaces_[u]);
            children_[v].push_back({static_cast<int>(u), nu});
            parents_[u].push_back({static_cast<int>(v), nu});
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t u = 0; u < n; ++u)
            if (spaces_[u].m > spaces_[v].m && spaces_[u].contains(spaces_[v])) supersets_[v].push_back(static_cast<int>(u));
}

std::optional<int> SubspaceLattice::find(const Subspace& s) const {
    for (std::size_t i = 0; i < spaces_.size(); ++i)
        if (same_subspace(spaces_[i], s)) return static_cast<int>(i);
    return std::nullopt;
}

double CongruenceClass::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, (points[i] - points[j]).norm());
    return best;
}

ResonanceGeometry::ResonanceGeometry(const FrequencySet& support, const ScaleParams& sp, std::size_t class_cap)
    : sp_(sp), theta_k_(theta_closure(support, sp.k_tilde)), lattice_(theta_k_), class_cap_(class_cap) {
    sp_.validate();
    if (support.dim() != sp.d) fail_config("support dimension differs from d");
    for (const auto& f : theta_k_.elements()) {
        if (f.coords.norm() < 1e-12) continue;
        bool dup = false;
        for (const auto& m : moves_)
            if (same_point(m, f.coords) || same_point(m, Point(-f.coords))) dup = true;
        if (!dup) moves_.push_back(f.coords);
    }
}

bool ResonanceGeometry::in_lambda(const Point& xi, const Point& theta, double scale) const {
    return std::abs(xi.dot(theta)) / theta.norm() <= sp_.L(1) * scale;
}

std::vector<char> ResonanceGeometry::xi1_flags(const Point& xi, double scale) const {
    const std::size_t n = lattice_.size();
    std::vector<char> in1(n, 0);
    in1[0] = 1;
    for (std::size_t v = 1; v < n; ++v) {
        const int m = lattice_.at(v).m;
        const double L = sp_.L(m) * scale;
        for (const auto& c : lattice_.children(static_cast<int>(v)))
            if (in1[static_cast<std::size_t>(c.other)] && std::abs(xi.dot(c.normal)) <= L) {
                in1[v] = 1;
                break;
            }
    }
    return in1;
}

int ResonanceGeometry::region_from_flags(const std::vector<char>& in1) const {
    int found = -1;
    for (std::size_t v = 0; v < in1.size(); ++v) {
        if (!in1[v]) continue;
        bool covered = false;
        for (const auto& p : lattice_.parents(static_cast<int>(v)))
            if (in1[static_cast<std::size_t>(p.other)]) covered = true;
        if (!covered) {
            if (found >= 0) return -1;
            found = static_cast<int>(v);
        }
    }
    return found;
}

bool ResonanceGeometry::in_region(const Point& xi, int v) const {
    auto in1 = xi1_flags(xi);
    if (!in1[static_cast<std::size_t>(v)]) return false;
    for (int u : lattice_.supersets(v))
        if (in1[static_cast<std::size_t>(u)]) return false;
    return true;
}

Classification ResonanceGeometry::classify(const Point& xi) const {
    Classification c;
    auto in1 = xi1_flags(xi);
    c.region = region_from_flags(in1);
    for (std::size_t v = 0; v < in1.size(); ++v) {
        if (!in1[v]) continue;
        bool covered = false;
        for (int u : lattice_.supersets(static_cast<int>(v)))
            if (in1[static_cast<std::size_t>(u)]) covered = true;
        if (!covered) ++c.memberships;
    }
    int lo = region_from_flags(xi1_flags(xi, 1.0 - 1e-9));
    int hi = region_from_flags(xi1_flags(xi, 1.0 + 1e-9));
    c.ambiguous = lo != c.region || hi != c.region;
    return c;
}

CongruenceClass ResonanceGeometry::congruence_class(const Point& xi) const {
    CongruenceClass cls;
    cls.seed = xi;
    const double L1 = sp_.L(1);
    detail::PointIndex index(sp_.d, 1e-9 * std::max(1.0, xi.norm()));
    index.insert(xi);
    cls.points.push_back(xi);
    cls.witness.push_back({});
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        const Point p = cls.points[cur];
        for (const auto& theta : moves_) {
            const double len = theta.norm();
            const double proj = p.dot(theta) / len;
            if (std::abs(proj) > L1) continue;
            const long lo = static_cast<long>(std::ceil((-L1 - proj) / len));
            const long hi = static_cast<long>(std::floor((L1 - proj) / len));
            for (long l = lo; l <= hi; ++l) {
                if (l == 0) continue;
                Point q = p + static_cast<double>(l) * theta;
                if (std::abs(q.dot(theta) / len) > L1) continue;
                auto [idx, inserted] = index.insert(q);
                if (!inserted) continue;
                cls.points.push_back(q);
                auto w = cls.witness[cur];
                w.push_back(static_cast<double>(l) * theta);
                cls.witness.push_back(std::move(w));
                queue.push_back(idx);
                if (cls.points.size() > class_cap_)
                    fail_precondition("congruence class exceeds the cap of " + std::to_string(class_cap_) +
                                      " points; the seed is too close to Xi(R^d) or the parameters are inconsistent");
            }
        }
    }
    return cls;
}

GeometryConstants ResonanceGeometry::constants() const {
    GeometryConstants gc;
    gc.card = theta_k_.size();
    gc.r = std::numeric_limits<double>::infinity();
    for (const auto& f : theta_k_.elements()) {
        double n = f.coords.norm();
        gc.R = std::max(gc.R, n);
        if (n > 1e-12) gc.r = std::min(gc.r, n);
    }
    if (!std::isfinite(gc.r)) gc.r = 0.0;

    double s = 1.0;
    bool any = false;
    const auto& sp = lattice_.spaces();
    for (std::size_t i = 1; i < sp.size(); ++i)
        for (std::size_t j = i + 1; j < sp.size(); ++j) {
            const Subspace& V = sp[i];
            const Subspace& U = sp[j];
            if (V.contains(U) || U.contains(V)) continue;
            // V cap U: eigenvectors of B^T P_U B with eigenvalue 1.
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(V.basis.transpose() * U.projector * V.basis);
            Eigen::MatrixXd wbasis(sp_.d, 0);
            for (int k = 0; k < V.m; ++k) {
                if (es.eigenvalues()[k] > 1.0 - 1e-9) {
                    wbasis.conservativeResize(Eigen::NoChange, wbasis.cols() + 1);
                    wbasis.col(wbasis.cols() - 1) = V.basis * es.eigenvectors().col(k);
                }
            }
            Eigen::MatrixXd pw = wbasis * wbasis.transpose();
            auto ortho_part = [&](const Subspace& S) {
                Eigen::MatrixXd m = S.basis - pw * S.basis;
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
                int rank = 0;
                for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
                    if (svd.singularValues()[k] > 1e-9) ++rank;
                return Eigen::MatrixXd(svd.matrixU().leftCols(rank));
            };
            Eigen::MatrixXd qv = ortho_part(V), qu = ortho_part(U);
            if (qv.cols() == 0 || qu.cols() == 0) continue;
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(qv.transpose() * qu);
            double cosang = std::min(1.0, svd.singularValues()[0]);
            s = std::min(s, std::sqrt(std::max(0.0, 1.0 - cosang * cosang)));
            any = true;
        }
    gc.s = s;
    gc.s_vacuous = !any;
    const double bound = std::pow(sp_.rho_n, -1.0 / sp_.k);
    gc.s_ok = gc.s >= bound;
    gc.r_ok = gc.r >= bound;
    gc.card_ok = static_cast<double>(gc.card) <= std::pow(sp_.rho_n, 1.0 / sp_.k);
    return gc;
}

}  // namespace gids
