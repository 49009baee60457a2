#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qgtk {

// Viscosity nu, thermal diffusivity nu', stratification F.
struct PhysicalParams {
    double nu = 1.0;
    double nu_prime = 1.0;
    double F = 1.0;

    PhysicalParams() = default;
    PhysicalParams(double nu_, double nu_prime_, double F_) : nu(nu_), nu_prime(nu_prime_), F(F_) {
        validate();
    }

    void validate() const {
        if (!(nu > 0.0) || !(nu_prime > 0.0))
            throw std::invalid_argument("viscosities must be positive");
        if (!(F > 0.0) || F > 1.0)
            throw std::invalid_argument("F must lie in (0,1]");
    }

    double nu0() const { return std::min(nu, nu_prime); }
    double nu_max() const { return std::max(nu, nu_prime); }
    double M() const { return nu / nu0(); }
    double M_prime() const { return nu_prime / nu0(); }
    double M_visc() const { return nu_max() / nu0(); }
    // coefficient (nu - nu') F^2 (1 - F^2) of Lambda^2 in Gamma
    double nonlocal_coeff() const { return (nu - nu_prime) * F * F * (1.0 - F * F); }
    // vertical coefficient of Gamma_L
    double local_vertical() const { return (1.0 - F * F) * nu + F * F * nu_prime; }

    std::string describe() const;
};

}  // namespace qgtk
