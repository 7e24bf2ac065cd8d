#include "skinspec/params.hpp"

#include <cmath>

#include "skinspec/error.hpp"

namespace skinspec {

bool PerturbedDimerParams::admissible() const noexcept {
    const double values[] = {alpha1, alpha2, beta1, beta2, gamma1, gamma2, a, b};
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return gamma1 * beta1 > 0.0 && gamma2 * beta2 > 0.0;
}

void PerturbedDimerParams::validate() const {
    if (!admissible()) {
        throw InvalidArgument("inadmissible 2-Toeplitz coefficients: need finite values with "
                              "gamma1*beta1 > 0 and gamma2*beta2 > 0");
    }
}

double skin_ratio(const PerturbedDimerParams& p) {
    p.validate();
    return std::sqrt((p.gamma1 * p.gamma2) / (p.beta1 * p.beta2));
}

double beta_ratio(const PerturbedDimerParams& p) {
    p.validate();
    return std::sqrt((p.gamma2 * p.beta2) / (p.gamma1 * p.beta1));
}

double coupling_scale(const PerturbedDimerParams& p) {
    p.validate();
    return std::sqrt(p.gamma1 * p.beta1) * std::sqrt(p.gamma2 * p.beta2);
}

PerturbedDimerParams mirror_params(const PerturbedDimerParams& p, std::size_t n) {
    PerturbedDimerParams r = p;
    r.a = p.b;
    r.b = p.a;
    if (n % 2 == 1) {
        r.beta1 = p.gamma2;
        r.beta2 = p.gamma1;
        r.gamma1 = p.beta2;
        r.gamma2 = p.beta1;
    } else {
        r.alpha1 = p.alpha2;
        r.alpha2 = p.alpha1;
        r.beta1 = p.gamma1;
        r.beta2 = p.gamma2;
        r.gamma1 = p.beta1;
        r.gamma2 = p.beta2;
    }
    return r;
}

}  // namespace skinspec
