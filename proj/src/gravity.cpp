#include "stargas/gravity.hpp"

#include <cstdio>

namespace stargas {

double ForceField::F_at(double xi) const { return Interpolant(x, F)(xi); }

ForceField compute_force(const DensityProfile& p, const Basis& b, double C_poisson) {
  ForceField out;
  out.x = b.nodes();
  out.C_poisson = C_poisson;
  auto rho = [&](double x) { return p.rho0(x); };
  // targets: the grid nodes plus the right endpoint for the total mass
  Vec targets(out.x.size() + 1);
  targets.head(out.x.size()) = out.x;
  targets[out.x.size()] = 1.0;
  Vec cum = cumulative_integral(rho, targets);
  out.m = cum.head(out.x.size());
  out.total_mass = cum[out.x.size()];
  out.F = C_poisson * (0.5 * out.total_mass - out.m.array()).matrix();
  return out;
}

double check_poisson_consistency(const ForceField& f, const DensityProfile& p, const Basis& b) {
  Vec Fp = b.D1() * f.F;
  Vec res = Fp + f.C_poisson * p.rho0_on(b.nodes());
  return res.cwiseAbs().maxCoeff();
}

double momentum_neutrality(const ForceField& f, const DensityProfile& p, const Basis& b) {
  return b.integrate(p.rho0_on(b.nodes()).cwiseProduct(f.F));
}

std::string force_csv(const ForceField& f) {
  std::string out = "x,F,m\n";
  char buf[128];
  for (Eigen::Index i = 0; i < f.x.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", f.x[i], f.F[i], f.m[i]);
    out += buf;
  }
  return out;
}

}  // namespace stargas
