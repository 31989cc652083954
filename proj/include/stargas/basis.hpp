#pragma once

#include <functional>
#include <utility>

#include "stargas/quadrature.hpp"

namespace stargas {

/// Eigenbasis of the Dirichlet Laplacian on (0,1): e_i(x) = sqrt(2) sin(i pi x),
/// i = 1..n, eigenvalue (i pi)^2, together with the interior Gauss-Legendre
/// grid shared by every field operation. Quadrature nodes never include the
/// endpoints, so integrands that are bounded-but-0/0 there (e.g. e_i e_j / rho0)
/// are safe to sample.
class Basis {
 public:
  explicit Basis(int n_modes, int quad_points = -1);

  int modes() const { return n_; }
  int points() const { return static_cast<int>(rule_.x.size()); }
  const QuadRule& rule() const { return rule_; }
  const Vec& nodes() const { return rule_.x; }
  const Vec& weights() const { return rule_.w; }
  const QuadRule& split_rule() const { return split_; }

  double eigenvalue(int i) const;  // (i pi)^2, i = 1..n

  const Mat& E() const { return E_; }      // e_i at nodes, (n_q x n)
  const Mat& Ep() const { return Ep_; }    // e_i'
  const Mat& Epp() const { return Epp_; }  // e_i''
  const Mat& D1() const { return D1_; }    // nodal differentiation
  const Mat& D2() const { return D2_; }

  static double mode(int i, double x);          // e_i(x)
  static double mode_deriv(int i, double x, int k);  // e_i^{(k)}(x)

  double integrate(const Vec& f) const { return rule_.w.dot(f); }
  /// Barycentric extrapolation of a nodal field to the endpoints {0, 1}.
  std::pair<double, double> endpoint_values(const Vec& f) const;

 private:
  int n_;
  QuadRule rule_;
  QuadRule split_;
  Mat E_, Ep_, Epp_, D1_, D2_;
};

/// Coefficients of a field in the sine eigenbasis. Vanishes at the endpoints
/// by construction.
struct SpectralField {
  const Basis* basis = nullptr;
  Vec coeff;

  Vec values() const { return basis->E() * coeff; }
  double eval(double x) const;
  double deriv(double x, int order = 1) const;

  double l2() const { return coeff.norm(); }  // Parseval
  /// Integer Sobolev norm via eigenvalue powers (exact for this basis).
  double sobolev(int s) const;
};

SpectralField project(const Basis& b, const Vec& nodal);
SpectralField project(const Basis& b, const std::function<double(double)>& f);

/// Affine endpoint interpolant of a nodal field and the vanishing remainder.
struct AffineSplit {
  double at0, at1;
  Vec remainder;  // f - [(1-x) f(0) + x f(1)] on the grid
};
AffineSplit affine_split(const Basis& b, const Vec& f);

/// Sobolev norm of a nodal field, order in {0, 1/2, 1, 3/2, 2, ...}.
/// Integer part by quadrature of nodal derivatives; the half-order increment
/// is spectral: split off the affine endpoint interpolant and weight the sine
/// coefficients of the remainder's k-th derivative by (1+(i pi)^2)^{1/2} - 1.
/// For endpoint-vanishing fields this reduces to the plain sine-coefficient
/// weighting (1+(i pi)^2)^s.
double sobolev_norm(const Basis& b, const Vec& f, double order);

/// Weighted norm descriptor: sqrt( int w * sum_{j<=s} (D^j f)^2 ).
/// Weight is either a power of the boundary distance d(x) = min(x, 1-x) or an
/// arbitrary nodal field (rho0 powers in practice).
struct WeightedNorm {
  int sobolev_order = 0;
  Vec weight;            // on the basis grid (field weights)
  int distance_power_p = 0;  // > 0: weight is d(x)^p, integrated on the split rule
  static WeightedNorm distance_power(const Basis& b, int p, int sobolev_order = 0);
  static WeightedNorm field(Vec w, int sobolev_order = 0);
};
double weighted_norm(const Basis& b, const Vec& f, const WeightedNorm& wn);

/// d^m/dx^m of the boundary quotient u/d evaluated stably from the integral
/// representation of the quotient's derivatives: on the left half
///   d^m(u/d)(x) = (-1)^m m! int_0^1 u^{(m+1)}(theta x) theta^m dtheta,
/// mirrored on the right half. Values live on a two-panel Gauss grid matching
/// the kink of d at 1/2; endpoint limits are included.
struct QuotientField {
  QuadRule panels;  // split rule
  Vec values;       // d^m(u/d) at panel nodes
  double left_limit = 0.0, right_limit = 0.0;
  double l2sq() const { return panels.w.dot(values.cwiseProduct(values)); }
};

QuotientField hardy_quotient(const SpectralField& u, int m = 0);
QuotientField hardy_quotient(const std::function<double(double)>& u,
                             const std::function<double(double)>& du_m1, int m,
                             const Basis& b);

/// Measured constant ||u/d||_{H^{s-1}} / ||u||_{H^s} for s in {1, 2}.
double hardy_constant(const SpectralField& u, int s);

/// Quotient ||R||^2_{1-p/2} / int d^p (R^2 + R'^2) for p in {1, 2}.
/// Both fields live on the basis grid; the right-hand side is evaluated on the
/// two-panel rule through barycentric interpolants.
double embedding_check(const Basis& b, const Vec& R, const Vec& Rp, int p);
double embedding_check(const Basis& b, const Vec& R, int p);

}  // namespace stargas
