#include "gaugeids/frequency.hpp"

#include <cctype>

#include <Eigen/Dense>

namespace gids {

namespace {

bool exact_equal(const Frequency& a, const Frequency& b) {
    if (!a.exact || !b.exact) return false;
    return *a.exact == *b.exact;
}

bool equal(const Frequency& a, const Frequency& b) {
    if (a.exact && b.exact) return exact_equal(a, b);
    return same_point(a.coords, b.coords, 1e-10);
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
    if (text.empty()) return std::nullopt;

    auto parse_int = [](const std::string& s) -> std::optional<boost::multiprecision::cpp_int> {
        if (s.empty()) return std::nullopt;
        std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (start == s.size()) return std::nullopt;
        for (std::size_t i = start; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        return boost::multiprecision::cpp_int(s[0] == '+' ? s.substr(1) : s);
    };

    if (auto slash = text.find('/'); slash != std::string::npos) {
        auto num = parse_int(text.substr(0, slash));
        auto den = parse_int(text.substr(slash + 1));
        if (!num || !den || *den == 0) return std::nullopt;
        return Rational(*num, *den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot);
        std::string frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
        auto w = parse_int(whole);
        if (!w) return std::nullopt;
        if (frac.empty()) return Rational(*w);
        auto f = parse_int(frac);
        if (!f || frac[0] == '-' || frac[0] == '+') return std::nullopt;
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        Rational r = Rational(boost::multiprecision::abs(*w)) + Rational(*f, scale);
        return negative ? Rational(-r) : r;
    }
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Frequency Frequency::from_rationals(const std::vector<Rational>& q) {
    Point p(static_cast<Eigen::Index>(q.size()));
    for (std::size_t i = 0; i < q.size(); ++i) p[static_cast<Eigen::Index>(i)] = to_double(q[i]);
    return Frequency(p, q);
}

Frequency Frequency::negated() const {
    Frequency out(Point(-coords));
    if (exact) {
        std::vector<Rational> q(*exact);
        for (auto& v : q) v = -v;
        out.exact = std::move(q);
    }
    return out;
}

Frequency Frequency::plus(const Frequency& other) const {
    Frequency out(Point(coords + other.coords));
    if (exact && other.exact) {
        std::vector<Rational> q(*exact);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += (*other.exact)[i];
        out.exact = std::move(q);
    }
    return out;
}

FrequencySet::FrequencySet(int d, std::vector<Frequency> elements) : d_(d) {
    for (const auto& f : elements) {
        if (f.dim() != d) fail_config("frequency dimension " + std::to_string(f.dim()) + " differs from d = " + std::to_string(d));
        insert(f);
    }
}

std::vector<Point> FrequencySet::points() const {
    std::vector<Point> out;
    out.reserve(elements_.size());
    for (const auto& f : elements_) out.push_back(f.coords);
    return out;
}

std::size_t FrequencySet::insert(const Frequency& f) {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (equal(elements_[i], f)) return i;
    elements_.push_back(f);
    return elements_.size() - 1;
}

std::optional<std::size_t> FrequencySet::find(const Point& p) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (same_point(elements_[i].coords, p, 1e-10)) return i;
    return std::nullopt;
}

bool FrequencySet::contains_zero() const { return contains(Point::Zero(d_)); }

bool FrequencySet::is_symmetric() const {
    for (const auto& f : elements_)
        if (!contains(Point(-f.coords))) return false;
    return true;
}

int FrequencySet::rank() const {
    if (elements_.empty()) return 0;
    Eigen::MatrixXd m(d_, static_cast<Eigen::Index>(elements_.size()));
    for (std::size_t j = 0; j < elements_.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = elements_[j].coords;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

bool FrequencySet::all_exact() const {
    for (const auto& f : elements_)
        if (!f.exact) return false;
    return true;
}

std::string FrequencySet::validation_error() const {
    if (!contains_zero()) return "frequency set must contain the zero vector";
    if (!is_symmetric()) return "frequency set must be symmetric under negation";
    if (rank() < d_) return "frequencies must span R^" + std::to_string(d_) + " (rank " + std::to_string(rank()) + ")";
    for (const auto& f : elements_) {
        if (!f.exact) continue;
        for (Eigen::Index i = 0; i < f.coords.size(); ++i)
            if (std::abs(to_double((*f.exact)[static_cast<std::size_t>(i)]) - f.coords[i]) > 1e-12)
                return "exact and floating coordinates of a frequency disagree";
    }
    return {};
}

}  // namespace gids
