#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaugeids/frequency.hpp"
#include "gaugeids/scale_params.hpp"

namespace gids {

// k-fold algebraic sum Theta + ... + Theta; fails past `cap` elements.
FrequencySet theta_closure(const FrequencySet& theta, int k, std::size_t cap = 100000);

// Span of linearly independent frequencies.
struct Subspace {
    int m = 0;
    std::vector<Point> generators;
    Eigen::MatrixXd basis;      // d x m, orthonormal columns
    Eigen::MatrixXd projector;  // d x d
    Eigen::MatrixXd complement; // d x (d - m), orthonormal basis of the orthogonal complement

    Point project(const Point& p) const { return projector * p; }
    Point project_perp(const Point& p) const { return p - projector * p; }
    bool contains(const Point& p, double tol = 1e-9) const { return (p - projector * p).norm() <= tol * std::max(1.0, p.norm()); }
    bool contains(const Subspace& u) const;
    // Coordinates of a point of V in the orthonormal basis.
    Eigen::VectorXd coords(const Point& p) const { return basis.transpose() * p; }
};

Subspace make_subspace(int d, std::vector<Point> generators);

// All quasi-lattice subspaces of a frequency set, indexed by position; index 0
// is the zero space. Sorted by dimension.
class SubspaceLattice {
public:
    SubspaceLattice() = default;
    SubspaceLattice(const FrequencySet& theta_k, std::size_t cap = 20000);

    int dim() const { return d_; }
    std::size_t size() const { return spaces_.size(); }
    const Subspace& at(std::size_t i) const { return spaces_[i]; }
    const std::vector<Subspace>& spaces() const { return spaces_; }
    // Index of R^d, or -1 when the frequencies do not span it.
    int full_space() const { return full_; }

    struct Link {
        int other;
        Point normal;  // unit vector in (larger) minus (smaller)
    };
    const std::vector<Link>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
    const std::vector<Link>& parents(int v) const { return parents_[static_cast<std::size_t>(v)]; }
    // All strict supersets (transitively).
    const std::vector<int>& supersets(int v) const { return supersets_[static_cast<std::size_t>(v)]; }
    std::optional<int> find(const Subspace& s) const;

private:
    int d_ = 0;
    int full_ = -1;
    std::vector<Subspace> spaces_;
    std::vector<std::vector<Link>> children_, parents_;
    std::vector<std::vector<int>> supersets_;
};

struct Classification {
    int region = -1;
    // Number of V with xi in Xi(V) under the definition with all strict supersets.
    int memberships = 0;
    // Regions disagree when the slab widths are perturbed by a relative 1e-9.
    bool ambiguous = false;
};

struct CongruenceClass {
    Point seed;
    std::vector<Point> points;  // seed first
    std::vector<std::vector<Point>> witness;  // witness[i]: theta-steps (with multiplicity) from seed to points[i]
    bool truncated = false;

    double diameter() const;
};

struct GeometryConstants {
    double s = 1.0;
    double r = 0.0;
    double R = 0.0;
    bool s_vacuous = false;
    std::size_t card = 0;
    bool s_ok = false, r_ok = false, card_ok = false;
};

struct ConditionAReport {
    bool pass = true;
    std::size_t tuples = 0;
    std::size_t dependent = 0;
    std::vector<Point> example_tuple;     // a dependent tuple, if any
    std::vector<long long> example_integers;
    std::vector<Point> violating_tuple;
};

// Exact check: every d-tuple from Theta_{k_max} is independent or has an
// integer dependence. Requires exact rational coordinates.
ConditionAReport check_condition_A(const FrequencySet& theta, int k_max, std::size_t tuple_cap = 500000);

class ResonanceGeometry;

// Shifted cylindrical chart xi = X + a + r Phi on one component of Xi(V).
class CoordinateChart {
public:
    int space = 0;
    std::vector<int> signs;          // sign of <Phi, mu_j> for every parent normal
    std::vector<Point> facets;       // signed defining unit normals
    Point apex;
    bool minimal = false;

    struct Coords {
        Eigen::VectorXd X;  // coordinates in the orthonormal basis of V
        double r;
        Point Phi;
    };
    Coords to_coords(const Point& xi, const Subspace& v) const;
    Point from_coords(const Coords& c, const Subspace& v) const;
    bool contains_direction(const Point& Phi) const;
    // Vertices of the spherical simplex; only when facets.size() == d - m.
    std::vector<Point> vertices(const Subspace& v) const;
};

// Builds a chart from explicitly given defining unit normals in V-perp.
CoordinateChart build_chart(const Subspace& v, int space, const std::vector<Point>& normals, double level);

class ResonanceGeometry {
public:
    // `support` are the frequencies carrying nonzero coefficients (plus 0).
    ResonanceGeometry(const FrequencySet& support, const ScaleParams& sp, std::size_t class_cap = 100000);

    const ScaleParams& params() const { return sp_; }
    const FrequencySet& theta_k() const { return theta_k_; }
    const SubspaceLattice& lattice() const { return lattice_; }
    const std::vector<Point>& moves() const { return moves_; }
    int dim() const { return sp_.d; }

    bool in_lambda(const Point& xi, const Point& theta, double scale = 1.0) const;
    // Flags: in1[v] for every subspace.
    std::vector<char> xi1_flags(const Point& xi, double scale = 1.0) const;
    bool in_xi1(const Point& xi, int v) const { return xi1_flags(xi)[static_cast<std::size_t>(v)] != 0; }
    bool in_region(const Point& xi, int v) const;
    Classification classify(const Point& xi) const;
    CongruenceClass congruence_class(const Point& xi) const;
    GeometryConstants constants() const;

    // Chart for the component of Xi(V) containing rays in direction Phi (Phi in V-perp).
    const CoordinateChart& chart_for(int v, const Point& Phi) const;

private:
    int region_from_flags(const std::vector<char>& in1) const;

    ScaleParams sp_;
    FrequencySet theta_k_;
    SubspaceLattice lattice_;
    std::vector<Point> moves_;
    std::size_t class_cap_;
    mutable std::map<std::pair<int, std::vector<int>>, CoordinateChart> charts_;
    std::shared_ptr<std::mutex> chart_mutex_ = std::make_shared<std::mutex>();
};

}  // namespace gids
