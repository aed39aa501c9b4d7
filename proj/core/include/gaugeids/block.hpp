#pragma once

#include <vector>

#include <Eigen/Dense>

#include "gaugeids/geometry.hpp"
#include "gaugeids/symbol.hpp"

namespace gids {

// Orders points by modulus, ties broken lexicographically.
bool modulus_then_lex_less(const Point& a, const Point& b);
std::vector<Point> ordered_basis(std::vector<Point> points);

// Hermitian matrix of H_2 on span{e_eta : eta in the class} at a real point.
struct Block {
    std::vector<Point> basis;
    Eigen::MatrixXcd matrix;
    double invariance_defect = 0.0;
};

// Entries |eta|^{2w} delta + w(eta' - eta, eta); fails when W leaks out of the class.
Block assemble_block(const CongruenceClass& cls, const Symbol& w_symbol, double w);

// Ascending eigenvalues; rejects matrices that are not Hermitian to 1e-12 relative.
Eigen::VectorXd block_eigenvalues(const Eigen::MatrixXcd& h);

// Matrix family z -> H(z) along a complexified ray.
class BlockFamily {
public:
    BlockFamily(std::vector<Point> offsets, Point dir);
    virtual ~BlockFamily() = default;
    int size() const { return static_cast<int>(offsets_.size()); }
    const std::vector<Point>& offsets() const { return offsets_; }
    const Point& dir() const { return dir_; }
    virtual Eigen::MatrixXcd at(cplx z) const = 0;
    // Five-point central stencil unless overridden.
    virtual Eigen::MatrixXcd derivative(cplx z) const;
    Eigen::VectorXd eigenvalues(double r) const { return block_eigenvalues(at(cplx(r, 0.0))); }
    // Ray parameter where every diagonal entry is smallest; offsets share <offset, Phi>.
    double vertex() const;
    // Outer roots of |offset_i + t Phi| = rho, descending; NaN-free, entries that never reach rho omitted.
    std::vector<double> free_roots(double rho) const;

protected:
    std::vector<Point> offsets_;
    Point dir_;
};

// Class block along xi_i(z) = offset_i + z Phi with W evaluated on the ray.
class RayBlock final : public BlockFamily {
public:
    RayBlock(const Symbol& w_symbol, double w, std::vector<Point> offsets, Point dir);
    Eigen::MatrixXcd at(cplx z) const override;
    Eigen::MatrixXcd derivative(cplx z) const override;

private:
    struct Coupling {
        int row, col;
        Point theta;
        Coeff coeff;
    };
    Eigen::MatrixXcd perturbation(cplx z) const;

    double w_;
    // Entries with a W coefficient at offset_row - offset_col.
    std::vector<Coupling> coupled_;
};

// diag |offset_i + z Phi|_C^{2w} + P0 + (z - rho0) P1; P0, P1 Hermitian, P1 >= 0.
class LinearBlockFamily final : public BlockFamily {
public:
    LinearBlockFamily(double w, std::vector<Point> offsets, Point dir, Eigen::MatrixXcd p0, Eigen::MatrixXcd p1, double rho0);
    Eigen::MatrixXcd at(cplx z) const override;
    Eigen::MatrixXcd derivative(cplx z) const override;

private:
    double w_;
    Eigen::MatrixXcd p0_, p1_;
    double rho0_;
};

// |b + z Phi|_C^{2w} on the complexified ray and its z-derivative.
cplx complex_power_modulus(const Point& base, const Point& dir, cplx z, double w);
cplx complex_power_modulus_derivative(const Point& base, const Point& dir, cplx z, double w);

struct TauResult {
    std::vector<double> tau;   // roots of the branches that cross rho^{2w}, ascending
    std::vector<double> tau0;  // free roots, ascending
};

// Solves lambda_t(r) = rho^{2w} on r >= vertex() for every branch t that starts
// below rho^{2w}. The bracket starts at tau0 +- half_width and grows geometrically.
TauResult tau_solve(const BlockFamily& family, double rho, double w, double half_width);

// Number of (branch, step) pairs where lambda_t(r + delta) < lambda_t(r) - tol.
int monotonicity_violations(const BlockFamily& family, double r_lo, double r_hi, int steps, double delta, double tol = 1e-9);

}  // namespace gids
