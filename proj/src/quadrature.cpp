#include "stargas/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace stargas {

double QuadRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += w[i] * f(x[i]);
  return s;
}

Vec QuadRule::sample(const std::function<double(double)>& f) const {
  Vec out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  return out;
}

QuadRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Vec xs(n), ws(n);
  // Newton iteration on Legendre polynomials, standard reference nodes on [-1,1].
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double wref = 2.0 / ((1.0 - z * z) * pp * pp);
    xs[i] = -z;
    xs[n - 1 - i] = z;
    ws[i] = wref;
    ws[n - 1 - i] = wref;
  }
  // map [-1,1] -> [a,b]
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  QuadRule r;
  r.x = (xs.array() * half + mid).matrix();
  r.w = ws * half;
  return r;
}

QuadRule split_gauss_legendre(int n_per_panel) {
  QuadRule left = gauss_legendre(n_per_panel, 0.0, 0.5);
  QuadRule right = gauss_legendre(n_per_panel, 0.5, 1.0);
  QuadRule r;
  r.x.resize(2 * n_per_panel);
  r.w.resize(2 * n_per_panel);
  r.x << left.x, right.x;
  r.w << left.w, right.w;
  return r;
}

Vec cumulative_integral(const std::function<double(double)>& f, const Vec& x,
                        double a, int pts_per_panel) {
  Vec out(x.size());
  double acc = 0.0, lo = a;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lo)
      throw std::invalid_argument("cumulative_integral: targets must be ascending");
    if (x[i] > lo) acc += gauss_legendre(pts_per_panel, lo, x[i]).integrate(f);
    out[i] = acc;
    lo = x[i];
  }
  return out;
}

Interpolant::Interpolant(Vec nodes, Vec values)
    : x_(std::move(nodes)), f_(std::move(values)) {
  const Eigen::Index n = x_.size();
  if (n != f_.size() || n < 2)
    throw std::invalid_argument("Interpolant: need matching nodes/values, n >= 2");
  // log-magnitude accumulation keeps the products representable
  Vec logw(n);
  Eigen::VectorXi sign(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double ls = 0.0;
    int sg = 1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = x_[i] - x_[j];
      ls += std::log(std::abs(d));
      if (d < 0) sg = -sg;
    }
    logw[i] = -ls;
    sign[i] = sg;
  }
  const double shift = logw.maxCoeff();
  w_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) w_[i] = sign[i] * std::exp(logw[i] - shift);
}

double Interpolant::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < x_.size(); ++i) {
    const double d = x - x_[i];
    if (d == 0.0) return f_[i];
    const double c = w_[i] / d;
    num += c * f_[i];
    den += c;
  }
  return num / den;
}

Vec Interpolant::at(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

Mat Interpolant::diff_matrix(const Vec& nodes) {
  Interpolant tmp(nodes, Vec::Zero(nodes.size()));
  const Vec& x = tmp.x_;
  const Vec& w = tmp.w_;
  const Eigen::Index n = x.size();
  Mat D(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
      diag -= D(i, j);
    }
    D(i, i) = diag;
  }
  return D;
}

Vec chebyshev_lobatto(int n) {
  if (n < 2) throw std::invalid_argument("chebyshev_lobatto: n >= 2");
  Vec x(n);
  for (int i = 0; i < n; ++i)
    x[i] = 0.5 * (1.0 - std::cos(M_PI * i / (n - 1)));
  x[0] = 0.0;
  x[n - 1] = 1.0;
  return x;
}

}  // namespace stargas
