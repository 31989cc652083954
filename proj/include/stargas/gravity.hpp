#pragma once

#include <string>

#include "stargas/basis.hpp"
#include "stargas/profiles.hpp"

namespace stargas {

/// Time-independent self-gravity force in flow-map coordinates:
/// F(x) = C (M/2 - m(x)) with m(x) the cumulative mass. The far-field closure
/// equalizes the force magnitude at both infinities, which pins the constant
/// of integration to M/2; no alternative closure is exposed.
struct ForceField {
  Vec x;  // sample nodes (the basis grid)
  Vec F;
  Vec m;
  double total_mass = 0.0;
  double C_poisson = 1.0;

  double F_at(double xi) const;  // barycentric through the samples
};

ForceField compute_force(const DensityProfile& p, const Basis& b, double C_poisson = 1.0);

/// sup-norm of F' + C rho0 over the interior nodes; the derivative comes from
/// the nodal differentiation matrix.
double check_poisson_consistency(const ForceField& f, const DensityProfile& p, const Basis& b);

/// int rho0 F dx — vanishes identically for every profile.
double momentum_neutrality(const ForceField& f, const DensityProfile& p, const Basis& b);

/// CSV `x,F,m`.
std::string force_csv(const ForceField& f);

}  // namespace stargas
