#pragma once

#include <Eigen/Dense>
#include <functional>

namespace stargas {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// A fixed quadrature rule: nodes x and weights w on some interval.
struct QuadRule {
  Vec x;
  Vec w;

  double integrate(const Vec& f) const { return w.dot(f); }
  double integrate(const std::function<double(double)>& f) const;
  Vec sample(const std::function<double(double)>& f) const;
};

/// Gauss-Legendre rule with n points on [a, b]. Nodes are strictly interior.
QuadRule gauss_legendre(int n, double a = 0.0, double b = 1.0);

/// Two-panel Gauss-Legendre rule on [0, 1/2] and [1/2, 1], n points per panel.
/// Integrands involving the boundary-distance weight d(x) = min(x, 1-x) have a
/// kink at 1/2; a single panel loses most of its accuracy there.
QuadRule split_gauss_legendre(int n_per_panel);

/// Values of int_a^{x_i} f for increasing x_i, by composite Gauss panels
/// between consecutive targets.
Vec cumulative_integral(const std::function<double(double)>& f, const Vec& x,
                        double a = 0.0, int pts_per_panel = 16);

/// Barycentric Lagrange interpolation through distinct nodes. Weights are
/// computed in log space, so node counts up to a few hundred are fine.
class Interpolant {
 public:
  Interpolant() = default;
  Interpolant(Vec nodes, Vec values);

  double operator()(double x) const;
  Vec at(const Vec& xs) const;
  const Vec& nodes() const { return x_; }
  const Vec& values() const { return f_; }

  /// Differentiation matrix for a node set (Schneider-Werner formula).
  static Mat diff_matrix(const Vec& nodes);

 private:
  Vec x_, f_, w_;
};

/// Chebyshev-Lobatto points on [0,1] (endpoints included), ascending.
Vec chebyshev_lobatto(int n);

}  // namespace stargas
