#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hpcloud {

/// phi(r) = 1 - 6r^2 + 8r^3 - 3r^4 on [0, 1], zero beyond.
double quartic_spline(double r);
double quartic_spline_deriv(double r);

enum class WeightKind { quartic_spline };

struct WeightFunction {
    WeightKind kind = WeightKind::quartic_spline;

    double value(double r) const { return quartic_spline(r); }
    double derivative(double r) const { return quartic_spline_deriv(r); }
};

/// Intrinsic enrichment P(t) = [p_1 .. p_m] with analytic first derivatives.
/// p_1 is always the constant 1.
class EnrichmentBasis {
public:
    struct Member {
        std::string name;
        std::function<double(double)> value;
        std::function<double(double)> derivative;
    };

    EnrichmentBasis(std::string name, std::vector<Member> members);

    std::size_t size() const noexcept { return members_.size(); }
    const std::string& name() const noexcept { return name_; }
    const Member& member(std::size_t k) const { return members_[k]; }

    void evaluate(double t, std::span<double> p) const;
    void evaluate(double t, std::span<double> p, std::span<double> dp) const;

private:
    std::string name_;
    std::vector<Member> members_;
};

/// [1, x (1 - x/2) exp(-x/2)], the Slater-type default.
EnrichmentBasis sto_default_basis();

/// L_{nr+l}^{2l+1}(x) = sum_k (-1)^k / k! * C(nr+3l+1, nr+l-k) x^k
double laguerre(int nr, int ell, double x);
double laguerre_deriv(int nr, int ell, double x);

/// [1, R(x)] with R(x) = s^l L(s) exp(-s/2), s = 2 Z x / nr (normalization dropped).
EnrichmentBasis hydrogenic_basis(double Z, int nr, int ell);

/// "sto" or "hydrogenic:nr,ell". Z is needed by the hydrogenic form.
EnrichmentBasis enrichment_by_name(const std::string& spec, double Z);

}  // namespace hpcloud
