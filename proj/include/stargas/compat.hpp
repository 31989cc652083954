#pragma once

#include <vector>

#include "stargas/basis.hpp"
#include "stargas/gravity.hpp"
#include "stargas/profiles.hpp"

namespace stargas {

/// Initial time derivatives u_k = d_t^k v at t = 0 on the basis grid.
struct CompatibilityData {
  int order = 0;
  double kappa = 0.0;
  std::vector<Vec> u;  // u[k], k = 0..order
};

/// First time derivative of the velocity at t = 0:
///   u1 = F - [gamma/(gamma-1)] omega0' + kappa (2 omega0' u0' + omega0 u0'').
/// The kappa term is the product-rule expansion of (kappa/omega0)(omega0^2 u0')',
/// so nothing is divided by the vanishing weight. For gamma = 2 this is the
/// familiar F - 2 rho0' + (kappa/rho0)(rho0^2 u0')' form.
Vec compute_u1(const DensityProfile& p, const VelocityProfile& u0, const ForceField& F,
               double kappa, const Basis& b);

/// u_0..u_k by differentiating the evolution law in time at t = 0. The flow
/// gradient enters only through eta'^{-gamma} and eta'' eta'^{-(gamma+1)},
/// whose initial time derivatives satisfy small Leibniz recursions in the
/// lower-order u_j. Spatial derivatives use the nodal differentiation matrix.
/// Raising k never perturbs the lower-order fields.
CompatibilityData compute_uk(const DensityProfile& p, const VelocityProfile& u0,
                             const ForceField& F, double kappa, int k, const Basis& b,
                             int k_max = 2);

}  // namespace stargas
