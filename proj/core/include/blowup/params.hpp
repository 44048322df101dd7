#pragma once

#include <cmath>
#include <stdexcept>

namespace blowup {

// Physical parameters: pressure law p = A * rho^gamma, Newtonian stress
// T_ij = mu (d_i u_j + d_j u_i) + lambda (div u) delta_ij, magnetic diffusivity nu.
struct Params {
    double A = 1.0;
    double gamma = 2.0;
    double mu = 0.0;
    double lambda = 0.0;
    double nu = 0.0;

    // Throws std::invalid_argument unless A > 0, gamma > 1, mu > 0,
    // lambda + (2/n) mu > 0 and nu >= 0.
    void validate(int n_dim) const {
        if (!(A > 0.0) || !std::isfinite(A)) throw std::invalid_argument("Params: A must be > 0");
        if (!(gamma > 1.0) || !std::isfinite(gamma)) throw std::invalid_argument("Params: gamma must be > 1");
        if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("Params: mu must be > 0");
        if (!(lambda + 2.0 * mu / n_dim > 0.0)) {
            throw std::invalid_argument("Params: lambda + (2/n) mu must be > 0");
        }
        if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("Params: nu must be >= 0");
    }
};

}  // namespace blowup
