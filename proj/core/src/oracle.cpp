#include "gaugeids/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>
#include <tbb/blocked_range.h>
#include <tbb/parallel_for.h>

namespace gids {

namespace {

using BigInt = boost::multiprecision::cpp_int;
using IntVec = std::vector<long long>;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

Eigen::MatrixXd dual_lattice_basis(const FrequencySet& freqs) {
    const int d = freqs.dim();
    if (!freqs.all_exact()) fail_precondition("oracle requires a periodic operator: frequencies need exact rational coordinates (rational coords missing)");
    BigInt den = 1;
    for (const auto& f : freqs.elements())
        for (const auto& q : *f.exact) {
            BigInt dq = boost::multiprecision::denominator(q);
            den = den / boost::multiprecision::gcd(den, dq) * dq;
        }
    std::vector<std::vector<BigInt>> rows;
    for (const auto& f : freqs.elements()) {
        std::vector<BigInt> r(static_cast<std::size_t>(d));
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            const auto& q = (*f.exact)[static_cast<std::size_t>(i)];
            r[static_cast<std::size_t>(i)] = boost::multiprecision::numerator(q) * (den / boost::multiprecision::denominator(q));
            if (r[static_cast<std::size_t>(i)] != 0) zero = false;
        }
        if (!zero) rows.push_back(std::move(r));
    }
    // Integer row echelon form by repeated Euclidean reduction.
    std::size_t piv = 0;
    for (int c = 0; c < d && piv < rows.size(); ++c) {
        while (true) {
            std::size_t best = rows.size();
            for (std::size_t i = piv; i < rows.size(); ++i)
                if (rows[i][static_cast<std::size_t>(c)] != 0 &&
                    (best == rows.size() || abs(rows[i][static_cast<std::size_t>(c)]) < abs(rows[best][static_cast<std::size_t>(c)])))
                    best = i;
            if (best == rows.size()) break;
            std::swap(rows[piv], rows[best]);
            bool done = true;
            for (std::size_t i = piv + 1; i < rows.size(); ++i) {
                const BigInt f = rows[i][static_cast<std::size_t>(c)] / rows[piv][static_cast<std::size_t>(c)];
                if (f != 0)
                    for (int k = 0; k < d; ++k) rows[i][static_cast<std::size_t>(k)] -= f * rows[piv][static_cast<std::size_t>(k)];
                if (rows[i][static_cast<std::size_t>(c)] != 0) done = false;
            }
            if (done) {
                ++piv;
                break;
            }
        }
    }
    if (static_cast<int>(piv) < d) fail_precondition("frequencies do not generate a full-rank lattice");
    Eigen::MatrixXd B(d, d);
    const double dd = den.convert_to<double>();
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) B(i, j) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)].convert_to<double>() / dd;
    return B;
}

FloquetResult ids_oracle_floquet(const Symbol& b, const FrequencySet& freqs, double w, const std::vector<double>& lambdas,
                                 const FloquetOptions& opts) {
    const int d = freqs.dim();
    if (lambdas.empty()) return {};
    if (opts.grid < 1) fail_config("Brillouin-zone grid must be positive");
    const Eigen::MatrixXd B = dual_lattice_basis(freqs);
    const Eigen::MatrixXd Binv = B.inverse();
    const double lam_max = *std::max_element(lambdas.begin(), lambdas.end());
    const double required = 3.0 * std::pow(std::max(lam_max, 0.0), 1.0 / (2.0 * w));
    const double R = opts.truncation > 0 ? opts.truncation : required;
    if (R < required * (1 - 1e-12))
        fail_precondition("truncation radius " + std::to_string(R) + " below 3 lambda^{1/(2w)} = " + std::to_string(required));

    // Integer steps of every frequency of b.
    struct Step {
        IntVec k;
        Point theta;
        Coeff coeff;
    };
    std::vector<Step> steps;
    for (const auto& t : b.terms()) {
        if (!freqs.contains(t.theta)) fail_precondition("symbol frequency outside the declared frequency set");
        Eigen::VectorXd kk = Binv * t.theta;
        IntVec k(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            k[static_cast<std::size_t>(i)] = std::llround(kk[i]);
            if (std::abs(kk[i] - static_cast<double>(k[static_cast<std::size_t>(i)])) > 1e-8)
                fail_precondition("frequency not in the lattice");
        }
        steps.push_back({k, t.theta, t.coeff});
    }

    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) cells *= static_cast<std::size_t>(opts.grid);
    const std::size_t nl = lambdas.size();
    std::vector<std::vector<long>> counts(cells, std::vector<long>(nl, 0));
    std::vector<std::size_t> fiber_size(cells, 0), comp_size(cells, 0);

    auto run_cell = [&](std::size_t cell) {
        Eigen::VectorXd frac(d);
        std::size_t rem = cell;
        for (int i = 0; i < d; ++i) {
            frac[i] = (static_cast<double>(rem % static_cast<std::size_t>(opts.grid)) + 0.5) / opts.grid;
            rem /= static_cast<std::size_t>(opts.grid);
        }
        const Point q = B * frac;
        // Enumerate lattice points with |q + gamma| <= R.
        IntVec lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            const double span = Binv.row(i).norm() * (R + q.norm());
            lo[static_cast<std::size_t>(i)] = static_cast<long long>(std::floor(-span)) - 1;
            hi[static_cast<std::size_t>(i)] = static_cast<long long>(std::ceil(span)) + 1;
        }
        std::vector<IntVec> pts;
        std::map<IntVec, std::size_t> index;
        IntVec n = lo;
        while (true) {
            Eigen::VectorXd nv(d);
            for (int i = 0; i < d; ++i) nv[i] = static_cast<double>(n[static_cast<std::size_t>(i)]);
            if ((q + B * nv).norm() <= R) {
                index.emplace(n, pts.size());
                pts.push_back(n);
            }
            int ax = 0;
            while (ax < d && ++n[static_cast<std::size_t>(ax)] > hi[static_cast<std::size_t>(ax)]) {
                n[static_cast<std::size_t>(ax)] = lo[static_cast<std::size_t>(ax)];
                ++ax;
            }
            if (ax == d) break;
        }
        const std::size_t np = pts.size();
        fiber_size[cell] = np;

        struct Entry {
            std::size_t row, col;
            cplx v;
        };
        std::vector<Entry> entries;
        std::vector<double> diag(np);
        UnionFind uf(np);
        for (std::size_t j = 0; j < np; ++j) {
            Eigen::VectorXd nv(d);
            for (int i = 0; i < d; ++i) nv[i] = static_cast<double>(pts[j][static_cast<std::size_t>(i)]);
            const Point at = q + B * nv;
            diag[j] = std::pow(at.squaredNorm(), w);
            for (const auto& s : steps) {
                IntVec nn = pts[j];
                for (int i = 0; i < d; ++i) nn[static_cast<std::size_t>(i)] += s.k[static_cast<std::size_t>(i)];
                auto it = index.find(nn);
                if (it == index.end()) continue;
                const cplx v = s.coeff->eval(at);
                if (v == cplx(0.0, 0.0)) continue;
                entries.push_back({it->second, j, v});
                uf.unite(it->second, j);
            }
        }
        std::map<std::size_t, std::vector<std::size_t>> comps;
        for (std::size_t j = 0; j < np; ++j) comps[uf.find(j)].push_back(j);
        std::vector<std::size_t> local(np);
        std::map<std::size_t, std::vector<const Entry*>> comp_entries;
        for (const auto& e : entries) comp_entries[uf.find(e.col)].push_back(&e);

        for (const auto& [root, members] : comps) {
            comp_size[cell] = std::max(comp_size[cell], members.size());
            for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
            const Eigen::Index sz = static_cast<Eigen::Index>(members.size());
            Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(sz, sz);
            for (std::size_t i = 0; i < members.size(); ++i) H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag[members[i]];
            for (const Entry* e : comp_entries[root])
                H(static_cast<Eigen::Index>(local[e->row]), static_cast<Eigen::Index>(local[e->col])) += e->v;
            // Gershgorin: skip components entirely above the largest lambda.
            double lower = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 0; i < sz; ++i)
                lower = std::min(lower, H(i, i).real() - (H.row(i).cwiseAbs().sum() - std::abs(H(i, i))));
            if (lower > lam_max) continue;
            Eigen::VectorXd ev;
            if (sz == 1) {
                ev = Eigen::VectorXd::Constant(1, H(0, 0).real());
            } else if (H.imag().cwiseAbs().maxCoeff() == 0.0) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.real(), Eigen::EigenvaluesOnly);
                ev = es.eigenvalues();
            } else {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
                ev = es.eigenvalues();
            }
            for (std::size_t l = 0; l < nl; ++l)
                counts[cell][l] += static_cast<long>(std::upper_bound(ev.data(), ev.data() + ev.size(), lambdas[l]) - ev.data());
        }
    };

    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, cells), [&](const tbb::blocked_range<std::size_t>& r) {
        for (std::size_t c = r.begin(); c != r.end(); ++c) run_cell(c);
    });

    FloquetResult out;
    out.lambda = lambdas;
    out.truncation = R;
    out.N.assign(nl, 0.0);
    const double norm = std::pow(2.0 * std::numbers::pi, -d) * std::abs(B.determinant()) / static_cast<double>(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        for (std::size_t l = 0; l < nl; ++l) out.N[l] += static_cast<double>(counts[c][l]);
        out.max_fiber = std::max(out.max_fiber, fiber_size[c]);
        out.max_component = std::max(out.max_component, comp_size[c]);
    }
    for (auto& v : out.N) v *= norm;
    return out;
}

}  // namespace gids
