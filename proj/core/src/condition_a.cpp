#include <numeric>

#include "gaugeids/geometry.hpp"

namespace gids {

namespace {

using boost::multiprecision::cpp_int;

// Exact null vector of the d x n matrix with the given columns, or nullopt when
// the columns are independent.
std::optional<std::vector<Rational>> rational_kernel(const std::vector<std::vector<Rational>>& cols) {
    const std::size_t n = cols.size();
    const std::size_t d = cols.empty() ? 0 : cols[0].size();
    std::vector<std::vector<Rational>> a(d, std::vector<Rational>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < d; ++i) a[i][j] = cols[j][i];
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < d; ++col) {
        std::size_t p = row;
        while (p < d && a[p][col] == 0) ++p;
        if (p == d) continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][col];
        for (auto& v : a[row]) v *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == row || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) a[r][c] -= f * a[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    if (pivot_col.size() == n) return std::nullopt;
    std::size_t free_col = 0;
    for (std::size_t c = 0; c < n; ++c)
        if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
            free_col = c;
            break;
        }
    std::vector<Rational> x(n, Rational(0));
    x[free_col] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = -a[r][free_col];
    return x;
}

}  // namespace

ConditionAReport check_condition_A(const FrequencySet& theta, int k_max, std::size_t tuple_cap) {
    if (!theta.all_exact()) fail_precondition("Condition A check needs exact rational coords; rational coords missing");
    FrequencySet closure = theta_closure(theta, k_max);
    const int d = closure.dim();
    std::vector<const Frequency*> reps;
    for (const auto& f : closure.elements()) {
        if (f.coords.norm() < 1e-14) continue;
        bool dup = false;
        for (const auto* r : reps)
            if (*r->exact == *f.negated().exact) dup = true;
        if (!dup) reps.push_back(&f);
    }
    ConditionAReport rep;
    const std::size_t n = reps.size();
    if (n < static_cast<std::size_t>(d)) return rep;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + d, true);
    do {
        if (++rep.tuples > tuple_cap) fail_precondition("Condition A check exceeds the tuple cap of " + std::to_string(tuple_cap));
        std::vector<std::vector<Rational>> cols;
        std::vector<Point> tuple;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) {
                cols.push_back(*reps[i]->exact);
                tuple.push_back(reps[i]->coords);
            }
        auto ker = rational_kernel(cols);
        if (!ker) continue;
        ++rep.dependent;
        cpp_int lcm = 1;
        for (const auto& q : *ker) {
            cpp_int den = boost::multiprecision::denominator(q);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
        std::vector<long long> ints;
        bool fits = true;
        for (const auto& q : *ker) {
            Rational scaled_q = q * Rational(lcm);
            cpp_int v = boost::multiprecision::numerator(scaled_q);
            if (boost::multiprecision::abs(v) > cpp_int(std::numeric_limits<long long>::max())) fits = false;
            ints.push_back(fits ? v.convert_to<long long>() : 0);
        }
        if (!fits) {
            rep.pass = false;
            rep.violating_tuple = tuple;
            return rep;
        }
        if (rep.example_tuple.empty()) {
            rep.example_tuple = tuple;
            rep.example_integers = ints;
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return rep;
}

}  // namespace gids
