#include "hpcloud/enrichment.hpp"

#include <cmath>
#include <sstream>

#include "hpcloud/errors.hpp"

namespace hpcloud {

double quartic_spline(double r) {
    if (r < 0.0) throw DomainError("quartic_spline: negative argument");
    if (r > 1.0) return 0.0;
    const double r2 = r * r;
    return 1.0 - 6.0 * r2 + 8.0 * r2 * r - 3.0 * r2 * r2;
}

double quartic_spline_deriv(double r) {
    if (r < 0.0) throw DomainError("quartic_spline_deriv: negative argument");
    if (r > 1.0) return 0.0;
    return -12.0 * r + 24.0 * r * r - 12.0 * r * r * r;
}

EnrichmentBasis::EnrichmentBasis(std::string name, std::vector<Member> members)
    : name_(std::move(name)), members_(std::move(members)) {
    if (members_.empty()) throw ConfigError("enrichment", "basis must not be empty");
}

void EnrichmentBasis::evaluate(double t, std::span<double> p) const {
    for (std::size_t k = 0; k < members_.size(); ++k) p[k] = members_[k].value(t);
}

void EnrichmentBasis::evaluate(double t, std::span<double> p, std::span<double> dp) const {
    for (std::size_t k = 0; k < members_.size(); ++k) {
        p[k] = members_[k].value(t);
        dp[k] = members_[k].derivative(t);
    }
}

namespace {

EnrichmentBasis::Member constant_member() {
    return {"1", [](double) { return 1.0; }, [](double) { return 0.0; }};
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

void check_quantum_numbers(int nr, int ell) {
    if (nr < 1) throw DomainError("laguerre: nr must be >= 1");
    if (ell < 0) throw DomainError("laguerre: ell must be >= 0");
}

}  // namespace

EnrichmentBasis sto_default_basis() {
    return EnrichmentBasis(
        "sto", {constant_member(),
                {"x(1-x/2)exp(-x/2)",
                 [](double x) { return x * (1.0 - 0.5 * x) * std::exp(-0.5 * x); },
                 [](double x) { return (1.0 - 1.5 * x + 0.25 * x * x) * std::exp(-0.5 * x); }}});
}

double laguerre(int nr, int ell, double x) {
    check_quantum_numbers(nr, ell);
    const int top = nr + ell;
    double sum = 0.0, xk = 1.0, fact = 1.0;
    for (int k = 0; k <= top; ++k) {
        if (k > 0) {
            xk *= x;
            fact *= k;
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign / fact * binomial(nr + 3 * ell + 1, top - k) * xk;
    }
    return sum;
}

double laguerre_deriv(int nr, int ell, double x) {
    check_quantum_numbers(nr, ell);
    const int top = nr + ell;
    double sum = 0.0, xk = 1.0, fact = 1.0;  // x^{k-1}, (k-1)!
    for (int k = 1; k <= top; ++k) {
        if (k > 1) {
            xk *= x;
            fact *= (k - 1);
        }
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign / fact * binomial(nr + 3 * ell + 1, top - k) * xk;
    }
    return sum;
}

EnrichmentBasis hydrogenic_basis(double Z, int nr, int ell) {
    check_quantum_numbers(nr, ell);
    if (!(Z > 0.0)) throw DomainError("hydrogenic_basis: Z must be positive");
    const double scale = 2.0 * Z / nr;  // a_0 = 1
    auto value = [=](double x) {
        const double s = scale * x;
        return std::pow(s, ell) * laguerre(nr, ell, s) * std::exp(-0.5 * s);
    };
    auto derivative = [=](double x) {
        const double s = scale * x;
        const double L = laguerre(nr, ell, s);
        const double dL = laguerre_deriv(nr, ell, s);
        const double sl = std::pow(s, ell);
        const double dsl = ell == 0 ? 0.0 : ell * std::pow(s, ell - 1);
        return scale * (dsl * L + sl * dL - 0.5 * sl * L) * std::exp(-0.5 * s);
    };
    std::ostringstream name;
    name << "hydrogenic:" << nr << "," << ell;
    return EnrichmentBasis(name.str(), {constant_member(), {"R_" + std::to_string(nr) + std::to_string(ell), value, derivative}});
}

EnrichmentBasis enrichment_by_name(const std::string& spec, double Z) {
    if (spec == "sto") return sto_default_basis();
    const std::string prefix = "hydrogenic:";
    if (spec.rfind(prefix, 0) == 0) {
        int nr = 0, ell = -1;
        char comma = 0;
        std::istringstream in(spec.substr(prefix.size()));
        if (!(in >> nr >> comma >> ell) || comma != ',' || !in.eof())
            throw ConfigError("enrichment", "expected hydrogenic:nr,ell, got '" + spec + "'");
        if (nr < 1 || ell < 0) throw ConfigError("enrichment", "hydrogenic needs nr >= 1 and ell >= 0");
        return hydrogenic_basis(Z, nr, ell);
    }
    throw ConfigError("enrichment", "unknown enrichment '" + spec + "'");
}

}  // namespace hpcloud
