#pragma once

#include <vector>

#include "stargas/basis.hpp"
#include "stargas/gravity.hpp"
#include "stargas/profiles.hpp"

namespace stargas {

/// Flow-map data frozen from the previous iterate, sampled on the basis grid
/// at the stored times and interpolated linearly in time between snapshots.
struct FrozenGeometry {
  Vec t;
  std::vector<Vec> eta, eta_p, eta_pp;

  /// eta' and eta'' at an intermediate time.
  void at(double time, Vec& etap, Vec& etapp) const;
  /// Throws GeometryError at the first time where 1/2 <= eta' <= 3/2 fails or
  /// eta loses strict monotonicity at the nodes.
  void check_admissible() const;
  static FrozenGeometry identity(const Basis& b, const Vec& tgrid);
};

/// One linearized evolution problem for X = omega0 v with frozen geometry.
struct LinearProblem {
  const DensityProfile* rho = nullptr;
  const Basis* basis = nullptr;
  Vec F;  // force at the grid nodes
  FrozenGeometry geom;
  double kappa = 0.0;
};

/// Source of the X-equation with frozen geometry:
///   G = F - [gamma/(gamma-1)] omega0' / eta'^gamma + gamma omega0 eta'' / eta'^{gamma+1}.
/// This is F - (1/rho0)(rho0^gamma / eta'^gamma)' with every quotient expanded,
/// so nothing differentiates a nested quotient at runtime and nothing divides
/// by the vanishing density. At gamma = 2 it reduces to
/// F - 2(rho0' eta' - rho0 eta'')/eta'^3, and at t = 0 the value pointwise
/// matches the compatibility derivative u1 (kappa terms aside).
Vec assemble_G(const DensityProfile& p, const Vec& F, const FrozenGeometry& geom,
               double t_eval, const Basis& b);

/// Time-independent Galerkin matrices of the X-problem: weighted mass
/// A_ij = (e_i/sqrt(omega0), e_j/sqrt(omega0)), stiffness S = diag((i pi)^2)
/// (exact for the eigenbasis), and the bounded reaction R_ij =
/// ((omega0''/omega0) e_i, e_j) assembled at interior nodes only.
struct GalerkinOperator {
  Mat A, R;
  Vec S;
  Eigen::LDLT<Mat> lhs;   // A + (kappa dt / 2)(S + R)
  Mat rhs_mat;            // A - (kappa dt / 2)(S + R)
  double kappa = 0.0, dt = 0.0;
  double mass_min_eig = 0.0;
};
GalerkinOperator build_operator(const DensityProfile& p, const Basis& b, double kappa,
                                double dt);

struct StepDiagnostics {
  double t = 0.0;
  double residual = 0.0;
};

/// Trajectory of the linear solve: spectral coefficients of X per time step
/// plus the recovered velocity at the nodes.
struct XSolution {
  const Basis* basis = nullptr;
  Vec t;
  std::vector<Vec> coeff;
  std::vector<Vec> v;           // nodal, filled by recover_v
  Vec v_left, v_right;          // endpoint limits of v
  std::vector<StepDiagnostics> diag;

  /// sum_i coeff_i^2 / quadrature of X^2/omega0 and H1 history are cheap
  /// Parseval expressions; kept as helpers for the energy-inequality monitor.
  double weighted_l2sq(const GalerkinOperator& op, int step) const;
  double h1sq(int step) const;
};

/// Implicit-midpoint integration of the Galerkin system
///   A dlambda/dt + kappa (S + R) lambda = (G(t), e_k).
/// The kappa X'' term is stiff (~ kappa n^2 pi^2) which is why the A-stable
/// midpoint rule is used. An external source overrides the geometry-assembled
/// G (manufactured-solution studies).
XSolution solve_X(const LinearProblem& prob, const SpectralField& X0, double t0, double T,
                  double dt,
                  const std::function<Vec(double)>* source_override = nullptr);

/// v = X / omega0 at the interior nodes (safe: nodes never touch the
/// endpoints) with endpoint limits X'(0)/omega0'(0), X'(1)/omega0'(1) when the
/// contact slope is clean, barycentric extrapolation otherwise.
void recover_v(XSolution& sol, const DensityProfile& p);

/// Exact exponential integrator for f + kappa f_t = g with piecewise-linear
/// source samples; the update is a convex combination of f and the g samples,
/// so sup|f| <= max(|f0|, sup|g|) holds exactly, independently of kappa.
struct DampingReport {
  Vec t;
  std::vector<Vec> f;
  double sup_f = 0.0;
  double bound_ratio = 0.0;  // sup|f| / max(|f(0)|, sup|g|)
};
DampingReport damping_solve(const Vec& f0, const std::vector<Vec>& g, const Vec& tgrid,
                            double kappa);

}  // namespace stargas
