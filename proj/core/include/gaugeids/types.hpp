#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace gids {

using cplx = std::complex<double>;

// Ambient dimensions above four are rejected; small fixed capacity keeps
// points off the heap in the inner loops.
inline constexpr int kMaxDim = 4;

using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using CPoint = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

inline Point zero_point(int d) { return Point::Zero(d); }

// Failure categories map one-to-one onto CLI exit codes.
enum class ErrorKind { config = 2, precondition = 3, convergence = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& msg) { throw Error(ErrorKind::config, msg); }
[[noreturn]] inline void fail_precondition(const std::string& msg) { throw Error(ErrorKind::precondition, msg); }
[[noreturn]] inline void fail_convergence(const std::string& msg) { throw Error(ErrorKind::convergence, msg); }

// Lexicographic comparison with a per-coordinate tolerance.
inline int compare_points(const Point& a, const Point& b, double tol = 1e-10) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - tol) return -1;
        if (a[i] > b[i] + tol) return 1;
    }
    return 0;
}

inline bool same_point(const Point& a, const Point& b, double tol = 1e-10) {
    return compare_points(a, b, tol) == 0;
}

}  // namespace gids
