#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gaugeids/types.hpp"

namespace gids {

using Rational = boost::multiprecision::cpp_rational;

// Parses "p/q", "p" or a terminating decimal such as "0.25" into an exact rational.
std::optional<Rational> parse_rational(const std::string& text);
double to_double(const Rational& q);

struct Frequency {
    Point coords;
    std::optional<std::vector<Rational>> exact;

    Frequency() = default;
    explicit Frequency(Point c) : coords(std::move(c)) {}
    Frequency(Point c, std::vector<Rational> q) : coords(std::move(c)), exact(std::move(q)) {}

    static Frequency from_rationals(const std::vector<Rational>& q);

    int dim() const { return static_cast<int>(coords.size()); }
    bool has_exact() const { return exact.has_value(); }
    Frequency negated() const;
    Frequency plus(const Frequency& other) const;
};

// Finite frequency set; deduplicated with tolerance 1e-10 (exact when both
// sides carry rationals).
class FrequencySet {
public:
    explicit FrequencySet(int d = 1) : d_(d) {}
    FrequencySet(int d, std::vector<Frequency> elements);

    int dim() const { return d_; }
    std::size_t size() const { return elements_.size(); }
    const std::vector<Frequency>& elements() const { return elements_; }
    std::vector<Point> points() const;

    // Inserts unless an equal element is already present; returns its index.
    std::size_t insert(const Frequency& f);
    // Caller guarantees f is not already present.
    void append_unchecked(Frequency f) { elements_.push_back(std::move(f)); }
    std::optional<std::size_t> find(const Point& p) const;
    bool contains(const Point& p) const { return find(p).has_value(); }

    bool contains_zero() const;
    bool is_symmetric() const;
    int rank() const;
    bool all_exact() const;

    // Empty string when the set is admissible as the frequency set of an operator.
    std::string validation_error() const;

private:
    int d_;
    std::vector<Frequency> elements_;
};

}  // namespace gids
