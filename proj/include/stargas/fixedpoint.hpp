#pragma once

#include <vector>

#include "stargas/linearized.hpp"

namespace stargas {

/// Everything a run needs besides the iteration parameters. The density is
/// the one the dynamics actually use (the pipeline mollifies before building
/// this), and the force is precomputed once: it never re-enters the time loop.
struct Model {
  const Basis* basis = nullptr;
  DensityProfile rho;
  VelocityProfile u0;
  ForceField force;
  double kappa = 0.0;
};

struct FixedPointConfig {
  double T = 0.05;
  double dt = 1e-3;
  double tol = 1e-8;
  int max_iters = 20;
  double M_bound = 10.0;  // the admissible-set radius; sqrt(T) * M <= 1/2 is advisory
};

/// Time-indexed iterate: spectral X coefficients and recovered nodal velocity.
struct Trajectory {
  Vec t;
  std::vector<Vec> X;
  std::vector<Vec> v;
  Vec v_left, v_right;
};

/// Window start state for continuation runs: flow map and its derivatives at
/// the initial time of the window.
struct GeometryInit {
  Vec eta, eta_p, eta_pp;
  static GeometryInit identity(const Basis& b);
};

/// eta(x,t) = eta_init(x) + int v dt (trapezoidal), eta' and eta'' by nodal
/// differentiation of the accumulated displacement. Throws GeometryError with
/// the first violation time if the gradient leaves [1/2, 3/2] or the map stops
/// being monotone.
FrozenGeometry update_geometry(const Basis& b, const std::vector<Vec>& v, const Vec& tgrid,
                               const GeometryInit& init);

/// One application of the contraction map: freeze the geometry of vbar, solve
/// the linear X-problem, recover v. Pure: identical inputs give bitwise
/// identical outputs.
Trajectory picard_step(const Model& m, const Trajectory& vbar, double t0, double dt,
                       const SpectralField& X_init, const GeometryInit& geo_init);

struct IterationReport {
  std::vector<double> residuals;  // ||rho0 (v^{n+1} - v^n)||_{L2(0,T;H1)}
  std::vector<double> ratios;
  int iterations = 0;
  bool converged = false;
  double max_ratio = 0.0, geo_mean_ratio = 0.0;
  double wall_seconds = 0.0;
  bool admissible_precheck = true;  // sqrt(T) * M <= 1/2
  std::string note;
};

/// Picard iteration from the constant-in-time initial iterate. Stops at tol
/// (success), at max_iters (failure report), or throws DivergenceError when
/// the residual ratio stays >= 1 for three consecutive steps.
std::pair<Trajectory, IterationReport> iterate(const Model& m, const FixedPointConfig& cfg,
                                               double t0 = 0.0,
                                               const SpectralField* X_start = nullptr,
                                               const GeometryInit* geo_start = nullptr);

struct RatioStats {
  double max = 0.0;
  double geometric_mean = 0.0;
};
/// Successive-ratio statistics of a residual history (needs >= 3 entries).
RatioStats contraction_rate(const std::vector<double>& residuals);

/// L2(0,T;H1) distance of rho0 (a - b), exact in the coefficients.
double residual_norm(const Basis& b, const Trajectory& a, const Trajectory& c);

}  // namespace stargas
