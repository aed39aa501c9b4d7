#include "gaugeids/report.hpp"

#include <cstdio>
#include <sstream>

namespace gids {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string ids_csv(const std::vector<IdsRow>& rows) {
    bool extra = false;
    for (const auto& r : rows) extra = extra || r.discrepancy.has_value();
    std::ostringstream out;
    out << "lambda,N,method,err_estimate" << (extra ? ",discrepancy" : "") << '\n';
    for (const auto& r : rows) {
        out << num(r.point.lambda) << ',' << num(r.point.N) << ',' << to_string(r.point.method) << ','
            << num(r.point.err_estimate);
        if (extra) out << ',' << (r.discrepancy ? num(*r.discrepancy) : std::string());
        out << '\n';
    }
    return out.str();
}

std::string fit_json(const ExpansionFit& fit) {
    std::ostringstream out;
    auto list = [&](const std::vector<double>& v) {
        out << '[';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << num(v[i]);
        out << ']';
    };
    out << "{\n  \"basis\": [";
    for (std::size_t i = 0; i < fit.basis.size(); ++i)
        out << (i ? ", " : "") << '[' << num(fit.basis[i].gamma) << ", " << fit.basis[i].q << ']';
    out << "],\n  \"coeffs\": ";
    list(fit.coeffs);
    out << ",\n  \"std_errors\": ";
    list(fit.std_errors);
    out << ",\n  \"residual\": " << num(fit.residual) << ",\n  \"cond\": " << num(fit.cond) << ",\n  \"window\": ["
        << num(fit.window.first) << ", " << num(fit.window.second) << "]\n}\n";
    return out.str();
}

}  // namespace gids
