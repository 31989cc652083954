#include "stargas/basis.hpp"

#include <cmath>

#include "stargas/errors.hpp"

namespace stargas {

Basis::Basis(int n_modes, int quad_points) : n_(n_modes) {
  if (n_modes < 1) throw ValidationError("Basis: n_modes must be >= 1");
  // the floor keeps mode-product quadrature at the 1e-12 orthonormality level
  // for small bases
  int nq = quad_points > 0 ? quad_points : std::max(2 * n_modes + 12, 32);
  rule_ = gauss_legendre(nq);
  split_ = split_gauss_legendre(nq);
  E_.resize(nq, n_);
  Ep_.resize(nq, n_);
  Epp_.resize(nq, n_);
  for (int i = 1; i <= n_; ++i) {
    const double k = i * M_PI;
    for (int q = 0; q < nq; ++q) {
      const double x = rule_.x[q];
      E_(q, i - 1) = std::sqrt(2.0) * std::sin(k * x);
      Ep_(q, i - 1) = std::sqrt(2.0) * k * std::cos(k * x);
      Epp_(q, i - 1) = -std::sqrt(2.0) * k * k * std::sin(k * x);
    }
  }
  D1_ = Interpolant::diff_matrix(rule_.x);
  D2_ = D1_ * D1_;
}

double Basis::eigenvalue(int i) const {
  if (i < 1 || i > n_) throw ValidationError("Basis::eigenvalue: mode out of range");
  return (i * M_PI) * (i * M_PI);
}

double Basis::mode(int i, double x) { return std::sqrt(2.0) * std::sin(i * M_PI * x); }

double Basis::mode_deriv(int i, double x, int k) {
  const double om = i * M_PI;
  const double amp = std::sqrt(2.0) * std::pow(om, k);
  switch (k % 4) {
    case 0: return amp * std::sin(om * x);
    case 1: return amp * std::cos(om * x);
    case 2: return -amp * std::sin(om * x);
    default: return -amp * std::cos(om * x);
  }
}

std::pair<double, double> Basis::endpoint_values(const Vec& f) const {
  Interpolant ip(rule_.x, f);
  return {ip(0.0), ip(1.0)};
}

double SpectralField::eval(double x) const {
  double s = 0.0;
  for (int i = 1; i <= basis->modes(); ++i) s += coeff[i - 1] * Basis::mode(i, x);
  return s;
}

double SpectralField::deriv(double x, int order) const {
  double s = 0.0;
  for (int i = 1; i <= basis->modes(); ++i)
    s += coeff[i - 1] * Basis::mode_deriv(i, x, order);
  return s;
}

double SpectralField::sobolev(int s) const {
  double total = 0.0;
  for (int i = 1; i <= basis->modes(); ++i) {
    const double lam = basis->eigenvalue(i);
    double wsum = 0.0, pw = 1.0;
    for (int j = 0; j <= s; ++j) {
      wsum += pw;
      pw *= lam;
    }
    total += coeff[i - 1] * coeff[i - 1] * wsum;
  }
  return std::sqrt(total);
}

SpectralField project(const Basis& b, const Vec& nodal) {
  SpectralField f;
  f.basis = &b;
  f.coeff = b.E().transpose() * nodal.cwiseProduct(b.weights());
  return f;
}

SpectralField project(const Basis& b, const std::function<double(double)>& f) {
  return project(b, b.rule().sample(f));
}

AffineSplit affine_split(const Basis& b, const Vec& f) {
  auto [f0, f1] = b.endpoint_values(f);
  AffineSplit s;
  s.at0 = f0;
  s.at1 = f1;
  s.remainder = f - (f0 * (Vec::Ones(f.size()) - b.nodes()) + f1 * b.nodes());
  return s;
}

double sobolev_norm(const Basis& b, const Vec& f, double order) {
  const int k = static_cast<int>(std::floor(order + 1e-9));
  const bool half = (order - k) > 0.25;
  double total = 0.0;
  Vec g = f;
  for (int j = 0; j <= k; ++j) {
    total += b.integrate(g.cwiseProduct(g));
    if (j < k) g = b.D1() * g;
  }
  if (half) {
    AffineSplit s = affine_split(b, g);
    SpectralField mu = project(b, s.remainder);
    for (int i = 1; i <= b.modes(); ++i) {
      const double wi = std::sqrt(1.0 + b.eigenvalue(i)) - 1.0;
      total += mu.coeff[i - 1] * mu.coeff[i - 1] * wi;
    }
  }
  return std::sqrt(total);
}

WeightedNorm WeightedNorm::distance_power(const Basis& b, int p, int sobolev_order) {
  WeightedNorm wn;
  wn.sobolev_order = sobolev_order;
  wn.distance_power_p = p;
  wn.weight = b.nodes().array().min(1.0 - b.nodes().array()).pow(p).matrix();
  return wn;
}

WeightedNorm WeightedNorm::field(Vec w, int sobolev_order) {
  WeightedNorm wn;
  wn.sobolev_order = sobolev_order;
  wn.weight = std::move(w);
  return wn;
}

double weighted_norm(const Basis& b, const Vec& f, const WeightedNorm& wn) {
  if ((wn.weight.array() < 0).any())
    throw ValidationError("weighted_norm: weight must be nonnegative");
  double total = 0.0;
  Vec g = f;
  for (int j = 0; j <= wn.sobolev_order; ++j) {
    if (wn.distance_power_p > 0) {
      // d^p has a kink at 1/2: integrate on the two-panel rule
      Interpolant ig(b.nodes(), g);
      const QuadRule& sp = b.split_rule();
      for (Eigen::Index q = 0; q < sp.x.size(); ++q) {
        const double d = std::min(sp.x[q], 1.0 - sp.x[q]);
        const double v = ig(sp.x[q]);
        total += sp.w[q] * std::pow(d, wn.distance_power_p) * v * v;
      }
    } else {
      total += b.integrate(wn.weight.cwiseProduct(g).cwiseProduct(g));
    }
    if (j < wn.sobolev_order) g = b.D1() * g;
  }
  return std::sqrt(total);
}

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Shared theta rule for the quotient representation; the integrand in theta is
// as oscillatory as the field itself, so scale points with the mode count.
QuadRule theta_rule(int n_modes) {
  return gauss_legendre(std::max(48, n_modes + 24));
}

QuotientField quotient_impl(const std::function<double(double)>& du_m1, int m,
                            const Basis& b) {
  QuadRule th = theta_rule(b.modes());
  const double sgn_l = (m % 2 == 0) ? 1.0 : -1.0;
  const double mfac = factorial(m);
  QuotientField out;
  out.panels = b.split_rule();
  out.values.resize(out.panels.x.size());
  for (Eigen::Index q = 0; q < out.panels.x.size(); ++q) {
    const double x = out.panels.x[q];
    double s = 0.0;
    if (x <= 0.5) {
      for (Eigen::Index j = 0; j < th.x.size(); ++j)
        s += th.w[j] * du_m1(th.x[j] * x) * std::pow(th.x[j], m);
      out.values[q] = sgn_l * mfac * s;
    } else {
      for (Eigen::Index j = 0; j < th.x.size(); ++j)
        s += th.w[j] * du_m1(1.0 - th.x[j] * (1.0 - x)) * std::pow(th.x[j], m);
      out.values[q] = -sgn_l * mfac * s;
    }
  }
  out.left_limit = sgn_l * mfac * du_m1(0.0) / (m + 1);
  out.right_limit = -sgn_l * mfac * du_m1(1.0) / (m + 1);
  return out;
}

}  // namespace

QuotientField hardy_quotient(const SpectralField& u, int m) {
  const SpectralField* up = &u;
  return quotient_impl([up, m](double x) { return up->deriv(x, m + 1); }, m,
                       *up->basis);
}

QuotientField hardy_quotient(const std::function<double(double)>& u,
                             const std::function<double(double)>& du_m1, int m,
                             const Basis& b) {
  const double scale = std::max({1.0, std::abs(u(0.5)), std::abs(du_m1(0.5))});
  if (std::abs(u(0.0)) > 1e-12 * scale || std::abs(u(1.0)) > 1e-12 * scale)
    throw ContractViolation("hardy_quotient: field must vanish at both endpoints");
  return quotient_impl(du_m1, m, b);
}

double hardy_constant(const SpectralField& u, int s) {
  if (s != 1 && s != 2)
    throw ValidationError("hardy_constant: s must be 1 or 2");
  double qn2 = hardy_quotient(u, 0).l2sq();
  if (s == 2) qn2 += hardy_quotient(u, 1).l2sq();
  return std::sqrt(qn2) / u.sobolev(s);
}

double embedding_check(const Basis& b, const Vec& R, const Vec& Rp, int p) {
  if (p != 1 && p != 2) throw ValidationError("embedding_check: p must be 1 or 2");
  const double lhs_norm = (p == 1) ? sobolev_norm(b, R, 0.5) : sobolev_norm(b, R, 0.0);
  const double lhs = lhs_norm * lhs_norm;

  Interpolant iR(b.nodes(), R), iRp(b.nodes(), Rp);
  const QuadRule& sp = b.split_rule();
  double rhs = 0.0;
  for (Eigen::Index q = 0; q < sp.x.size(); ++q) {
    const double x = sp.x[q];
    const double d = std::min(x, 1.0 - x);
    const double vr = iR(x), vp = iRp(x);
    rhs += sp.w[q] * std::pow(d, p) * (vr * vr + vp * vp);
  }
  if (rhs < 1e-30) {
    if (lhs < 1e-14) return 0.0;  // zero field, by convention
    throw ContractViolation("embedding_check: vanishing weighted norm with nonzero field");
  }
  return lhs / rhs;
}

double embedding_check(const Basis& b, const Vec& R, int p) {
  return embedding_check(b, R, b.D1() * R, p);
}

}  // namespace stargas
