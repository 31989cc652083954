#include "stargas/fixedpoint.hpp"

#include <chrono>
#include <cmath>

#include "stargas/errors.hpp"

namespace stargas {

GeometryInit GeometryInit::identity(const Basis& b) {
  GeometryInit g;
  g.eta = b.nodes();
  g.eta_p = Vec::Ones(b.points());
  g.eta_pp = Vec::Zero(b.points());
  return g;
}

FrozenGeometry update_geometry(const Basis& b, const std::vector<Vec>& v, const Vec& tgrid,
                               const GeometryInit& init) {
  if (static_cast<Eigen::Index>(v.size()) != tgrid.size())
    throw ValidationError("update_geometry: v and time grid sizes differ");
  FrozenGeometry g;
  g.t = tgrid;
  g.eta.resize(v.size());
  g.eta_p.resize(v.size());
  g.eta_pp.resize(v.size());
  Vec disp = Vec::Zero(b.points());
  for (size_t m = 0; m < v.size(); ++m) {
    if (m > 0) disp += 0.5 * (tgrid[m] - tgrid[m - 1]) * (v[m - 1] + v[m]);
    g.eta[m] = init.eta + disp;
    g.eta_p[m] = init.eta_p + b.D1() * disp;
    g.eta_pp[m] = init.eta_pp + b.D2() * disp;
  }
  g.check_admissible();
  return g;
}

Trajectory picard_step(const Model& m, const Trajectory& vbar, double t0, double dt,
                       const SpectralField& X_init, const GeometryInit& geo_init) {
  const Basis& b = *m.basis;
  LinearProblem prob;
  prob.rho = &m.rho;
  prob.basis = &b;
  prob.F = m.force.F;
  prob.kappa = m.kappa;
  prob.geom = update_geometry(b, vbar.v, vbar.t, geo_init);
  const double T = vbar.t[vbar.t.size() - 1];
  XSolution xs = solve_X(prob, X_init, t0, T, dt);
  recover_v(xs, m.rho);
  Trajectory out;
  out.t = xs.t;
  out.X = std::move(xs.coeff);
  out.v = std::move(xs.v);
  out.v_left = std::move(xs.v_left);
  out.v_right = std::move(xs.v_right);
  return out;
}

double residual_norm(const Basis& b, const Trajectory& a, const Trajectory& c) {
  if (a.t.size() != c.t.size())
    throw ValidationError("residual_norm: trajectories on different grids");
  const Eigen::Index M = a.t.size();
  Vec h1(M);
  for (Eigen::Index m = 0; m < M; ++m) {
    double s = 0.0;
    for (int i = 1; i <= b.modes(); ++i) {
      const double d = a.X[m][i - 1] - c.X[m][i - 1];
      s += d * d * (1.0 + b.eigenvalue(i));
    }
    h1[m] = s;
  }
  double acc = 0.0;  // trapezoid in time
  for (Eigen::Index m = 1; m < M; ++m)
    acc += 0.5 * (a.t[m] - a.t[m - 1]) * (h1[m] + h1[m - 1]);
  return std::sqrt(acc);
}

namespace {

Trajectory constant_trajectory(const Model& m, const Vec& tgrid, const SpectralField& X0) {
  Trajectory tr;
  tr.t = tgrid;
  XSolution tmp;
  tmp.basis = m.basis;
  tmp.coeff.assign(tgrid.size(), X0.coeff);
  recover_v(tmp, m.rho);
  tr.X = std::move(tmp.coeff);
  tr.v = std::move(tmp.v);
  tr.v_left = std::move(tmp.v_left);
  tr.v_right = std::move(tmp.v_right);
  return tr;
}

}  // namespace

std::pair<Trajectory, IterationReport> iterate(const Model& m, const FixedPointConfig& cfg,
                                               double t0, const SpectralField* X_start,
                                               const GeometryInit* geo_start) {
  if (!(cfg.T > 0.0) || !(cfg.dt > 0.0) || !(cfg.tol > 0.0) || !(m.kappa > 0.0))
    throw ValidationError("iterate: T, dt, tol, kappa must be positive");
  const auto t_begin = std::chrono::steady_clock::now();
  const Basis& b = *m.basis;

  SpectralField X0;
  if (X_start) {
    X0 = *X_start;
  } else {
    Vec rho_u0 =
        m.rho.omega0_on(b.nodes()).cwiseProduct(m.u0.on(b.nodes()));
    X0 = project(b, rho_u0);
  }
  GeometryInit geo = geo_start ? *geo_start : GeometryInit::identity(b);

  const int steps = static_cast<int>(std::llround(cfg.T / cfg.dt));
  Vec tgrid(steps + 1);
  for (int i = 0; i <= steps; ++i) tgrid[i] = t0 + i * cfg.dt;

  IterationReport rep;
  rep.admissible_precheck = std::sqrt(cfg.T) * cfg.M_bound <= 0.5;

  Trajectory prev = constant_trajectory(m, tgrid, X0);
  Trajectory best;
  int stalled = 0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    Trajectory next = picard_step(m, prev, t0, cfg.dt, X0, geo);
    const double r = residual_norm(b, next, prev);
    rep.residuals.push_back(r);
    rep.iterations = it;
    if (rep.residuals.size() >= 2) {
      const double prev_r = rep.residuals[rep.residuals.size() - 2];
      const double ratio = prev_r > 0.0 ? r / prev_r : 0.0;
      rep.ratios.push_back(ratio);
      stalled = ratio >= 1.0 ? stalled + 1 : 0;
      if (stalled >= 3)
        throw DivergenceError(
            "picard iteration not contracting; shrink the horizon", cfg.T / 2.0);
    }
    prev = std::move(next);
    if (r <= cfg.tol) {
      rep.converged = true;
      best = std::move(prev);
      break;
    }
  }
  if (!rep.converged) {
    best = std::move(prev);
    rep.note = "max_iters reached before tolerance";
  }
  if (!rep.ratios.empty()) {
    double mx = 0.0, lg = 0.0;
    for (double q : rep.ratios) {
      mx = std::max(mx, q);
      lg += std::log(std::max(q, 1e-300));
    }
    rep.max_ratio = mx;
    rep.geo_mean_ratio = std::exp(lg / static_cast<double>(rep.ratios.size()));
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return {std::move(best), rep};
}

RatioStats contraction_rate(const std::vector<double>& residuals) {
  if (residuals.size() < 3)
    throw ValidationError("contraction_rate: need at least 3 residuals");
  RatioStats st;
  double lg = 0.0;
  int cnt = 0;
  for (size_t i = 1; i < residuals.size(); ++i) {
    const double q = residuals[i] / residuals[i - 1];
    st.max = std::max(st.max, q);
    lg += std::log(std::max(q, 1e-300));
    ++cnt;
  }
  st.geometric_mean = std::exp(lg / cnt);
  return st;
}

}  // namespace stargas
