#include "stargas/linearized.hpp"

#include <cmath>

#include "stargas/errors.hpp"

namespace stargas {

void FrozenGeometry::at(double time, Vec& etap, Vec& etapp) const {
  const Eigen::Index n = t.size();
  if (n == 0) throw ValidationError("FrozenGeometry: empty");
  if (time <= t[0]) {
    etap = eta_p.front();
    etapp = eta_pp.front();
    return;
  }
  if (time >= t[n - 1]) {
    etap = eta_p.back();
    etapp = eta_pp.back();
    return;
  }
  Eigen::Index k = 1;
  while (t[k] < time) ++k;
  const double w = (time - t[k - 1]) / (t[k] - t[k - 1]);
  etap = (1.0 - w) * eta_p[k - 1] + w * eta_p[k];
  etapp = (1.0 - w) * eta_pp[k - 1] + w * eta_pp[k];
}

void FrozenGeometry::check_admissible() const {
  for (size_t m = 0; m < eta_p.size(); ++m) {
    const Vec& ep = eta_p[m];
    const double lo = ep.minCoeff(), hi = ep.maxCoeff();
    if (hi >= 1.5 - 1e-13 || lo <= 0.5 + 1e-13)
      throw GeometryError("frozen geometry out of the [1/2, 3/2] gradient band", t[m]);
    const Vec& e = eta[m];
    for (Eigen::Index i = 1; i < e.size(); ++i)
      if (!(e[i] > e[i - 1]))
        throw GeometryError("flow map lost strict monotonicity", t[m]);
  }
}

FrozenGeometry FrozenGeometry::identity(const Basis& b, const Vec& tgrid) {
  FrozenGeometry g;
  g.t = tgrid;
  g.eta.assign(tgrid.size(), b.nodes());
  g.eta_p.assign(tgrid.size(), Vec::Ones(b.points()));
  g.eta_pp.assign(tgrid.size(), Vec::Zero(b.points()));
  return g;
}

Vec assemble_G(const DensityProfile& p, const Vec& F, const FrozenGeometry& geom,
               double t_eval, const Basis& b) {
  Vec etap, etapp;
  geom.at(t_eval, etap, etapp);
  const double lo = etap.minCoeff(), hi = etap.maxCoeff();
  if (hi >= 1.5 - 1e-13 || lo <= 0.5 + 1e-13)
    throw GeometryError("assemble_G: frozen gradient outside [1/2, 3/2]", t_eval);
  const double g = p.gamma;
  const double cg = g / (g - 1.0);
  Vec w = p.omega0_on(b.nodes());
  Vec wp = p.domega0_on(b.nodes());
  Vec out(b.points());
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const double ep = etap[i];
    out[i] = F[i] - cg * wp[i] / std::pow(ep, g) +
             g * w[i] * etapp[i] / std::pow(ep, g + 1.0);
  }
  return out;
}

GalerkinOperator build_operator(const DensityProfile& p, const Basis& b, double kappa,
                                double dt) {
  if (kappa <= 0.0) throw ValidationError("build_operator: kappa must be positive");
  if (dt <= 0.0) throw ValidationError("build_operator: dt must be positive");
  const int n = b.modes();
  Vec w = p.omega0_on(b.nodes());
  Vec wpp = p.ddomega0_on(b.nodes());
  Vec winv = w.cwiseInverse().cwiseProduct(b.weights());
  GalerkinOperator op;
  op.kappa = kappa;
  op.dt = dt;
  op.A = b.E().transpose() * winv.asDiagonal() * b.E();
  op.R = b.E().transpose() * winv.cwiseProduct(wpp).asDiagonal() * b.E();
  op.S.resize(n);
  for (int i = 1; i <= n; ++i) op.S[i - 1] = b.eigenvalue(i);
  Eigen::SelfAdjointEigenSolver<Mat> es(op.A, Eigen::EigenvaluesOnly);
  op.mass_min_eig = es.eigenvalues().minCoeff();
  if (!(op.mass_min_eig > 0.0))
    throw SolverError("weighted mass matrix is not positive definite (quadrature too coarse?)");
  Mat K = Mat(op.S.asDiagonal()) + op.R;
  Mat lhs = op.A + 0.5 * kappa * dt * K;
  op.rhs_mat = op.A - 0.5 * kappa * dt * K;
  op.lhs.compute(lhs);
  if (op.lhs.info() != Eigen::Success)
    throw SolverError("implicit step operator factorization failed");
  return op;
}

double XSolution::weighted_l2sq(const GalerkinOperator& op, int step) const {
  return coeff[step].dot(op.A * coeff[step]);
}

double XSolution::h1sq(int step) const {
  double s = 0.0;
  for (int i = 1; i <= basis->modes(); ++i) {
    const double c = coeff[step][i - 1];
    s += c * c * (1.0 + basis->eigenvalue(i));
  }
  return s;
}

XSolution solve_X(const LinearProblem& prob, const SpectralField& X0, double t0, double T,
                  double dt, const std::function<Vec(double)>* source_override) {
  const Basis& b = *prob.basis;
  if (T <= t0) throw ValidationError("solve_X: empty time interval");
  if (dt <= 0.0) throw ValidationError("solve_X: dt must be positive");
  const int steps = static_cast<int>(std::llround((T - t0) / dt));
  if (std::abs(t0 + steps * dt - T) > 1e-10 * std::max(1.0, std::abs(T)))
    throw ValidationError("solve_X: horizon must be an integer number of steps");

  GalerkinOperator op = build_operator(*prob.rho, b, prob.kappa, dt);

  XSolution sol;
  sol.basis = &b;
  sol.t.resize(steps + 1);
  sol.coeff.resize(steps + 1);
  sol.diag.resize(steps + 1);
  sol.t[0] = t0;
  sol.coeff[0] = X0.coeff;
  sol.diag[0] = {t0, 0.0};

  const Vec wq = b.weights();
  const Mat lhs_mat = op.A + 0.5 * prob.kappa * dt * (Mat(op.S.asDiagonal()) + op.R);
  for (int m = 0; m < steps; ++m) {
    const double tm = t0 + m * dt;
    const double tmid = tm + 0.5 * dt;
    Vec Gmid = source_override ? (*source_override)(tmid)
                               : assemble_G(*prob.rho, prob.F, prob.geom, tmid, b);
    Vec gproj = b.E().transpose() * wq.cwiseProduct(Gmid);
    Vec rhs = op.rhs_mat * sol.coeff[m] + dt * gproj;
    Vec next = op.lhs.solve(rhs);
    // implicit residual of the step equation
    Vec res = lhs_mat * next - rhs;
    const double rel = res.norm() / std::max(1e-30, rhs.norm());
    if (rel > 1e-8)
      throw SolverError("solve_X: implicit step residual stagnated at t = " +
                        std::to_string(tmid));
    sol.coeff[m + 1] = next;
    sol.t[m + 1] = t0 + (m + 1) * dt;
    sol.diag[m + 1] = {sol.t[m + 1], rel};
  }
  return sol;
}

void recover_v(XSolution& sol, const DensityProfile& p) {
  const Basis& b = *sol.basis;
  Vec w = p.omega0_on(b.nodes());
  const double wl = p.domega0(0.0), wr = p.domega0(1.0);
  const bool clean_l = std::isfinite(wl) && std::abs(wl) > 1e-8;
  const bool clean_r = std::isfinite(wr) && std::abs(wr) > 1e-8;
  const size_t M = sol.coeff.size();
  sol.v.resize(M);
  sol.v_left.resize(M);
  sol.v_right.resize(M);
  for (size_t m = 0; m < M; ++m) {
    Vec Xn = b.E() * sol.coeff[m];
    sol.v[m] = Xn.cwiseQuotient(w);
    SpectralField X{&b, sol.coeff[m]};
    if (clean_l) {
      sol.v_left[m] = X.deriv(0.0, 1) / wl;
    } else {
      sol.v_left[m] = Interpolant(b.nodes(), sol.v[m])(0.0);
    }
    if (clean_r) {
      sol.v_right[m] = X.deriv(1.0, 1) / wr;
    } else {
      sol.v_right[m] = Interpolant(b.nodes(), sol.v[m])(1.0);
    }
  }
}

DampingReport damping_solve(const Vec& f0, const std::vector<Vec>& g, const Vec& tgrid,
                            double kappa) {
  if (kappa <= 0.0) throw ValidationError("damping_solve: kappa must be positive");
  if (static_cast<Eigen::Index>(g.size()) != tgrid.size() || tgrid.size() < 2)
    throw ValidationError("damping_solve: need g sampled on the full time grid");
  DampingReport rep;
  rep.t = tgrid;
  rep.f.resize(g.size());
  rep.f[0] = f0;
  double supf = f0.cwiseAbs().maxCoeff();
  double supg = 0.0;
  for (const Vec& gi : g) supg = std::max(supg, gi.cwiseAbs().maxCoeff());
  for (size_t m = 1; m < g.size(); ++m) {
    const double dt = tgrid[m] - tgrid[m - 1];
    const double a = dt / kappa;
    const double ea = std::exp(-a);
    // exact for linear-in-time sources: f_{m} = ea f_{m-1} + c0 g_{m-1} + c1 g_m
    const double I1 = 1.0 - ea;
    const double I2 = 1.0 - I1 / a;
    rep.f[m] = ea * rep.f[m - 1] + (I1 - I2) * g[m - 1] + I2 * g[m];
    supf = std::max(supf, rep.f[m].cwiseAbs().maxCoeff());
  }
  rep.sup_f = supf;
  rep.bound_ratio = supf / std::max(1e-300, std::max(f0.cwiseAbs().maxCoeff(), supg));
  return rep;
}

}  // namespace stargas
