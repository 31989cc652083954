#pragma once

#include <memory>
#include <string>

#include "stargas/basis.hpp"
#include "stargas/quadrature.hpp"

namespace stargas {

/// Initial density rho0 on [0,1] plus the adiabatic index. The sole physical
/// parameter field of the model: everything else (force, weights, operator
/// coefficients) is derived from it. Immutable after construction.
class DensityProfile {
 public:
  enum class Kind { Parabolic, Polytropic, Tabulated };

  double gamma = 2.0;
  Vec sample_x, sample_rho;  // includes endpoints, exact zeros there
  double left_slope = 0.0, right_slope = 0.0;  // one-sided rho0' at 0+, 1-
  std::string closed_form;  // symbolic tag ("parabolic", "polytropic", "")

  double rho0(double x) const;
  double drho0(double x) const;
  double ddrho0(double x) const;

  /// Weight field omega0 = rho0^{gamma-1} and derivatives. Exact closed form
  /// for built-ins (for the polytropic family omega0 is the parabola itself);
  /// interior evaluation only for tabulated data when gamma != 2.
  double omega0(double x) const;
  double domega0(double x) const;
  double ddomega0(double x) const;

  Vec rho0_on(const Vec& xs) const;
  Vec omega0_on(const Vec& xs) const;
  Vec domega0_on(const Vec& xs) const;
  Vec ddomega0_on(const Vec& xs) const;

  Kind kind() const { return kind_; }

  // construction goes through make_profile / tabulated_profile
  static DensityProfile parabolic(double gamma, double amplitude);
  static DensityProfile polytropic(double gamma, double amplitude);
  static DensityProfile tabulated(Vec x, Vec rho, double gamma, bool validate = true);

 private:
  Kind kind_ = Kind::Tabulated;
  double amp_ = 1.0;
  std::shared_ptr<Interpolant> interp_, dinterp_, ddinterp_;
  void build_interpolants();
};

struct VelocityProfile {
  Vec sample_x, sample_u;
  std::string tag;  // "constant", "mollified", ...
  std::shared_ptr<Interpolant> interp, dinterp, ddinterp;

  double u0(double x) const;
  double du0(double x) const;
  double ddu0(double x) const;
  Vec on(const Vec& xs) const;

  static VelocityProfile constant(double c);
  static VelocityProfile from_function(const std::function<double(double)>& f,
                                       const std::string& tag = "", int n_samples = 129);
};

struct VacuumWitness {
  double alpha = 0.25;
  double C = 0.0;       // lower bound on |omega0'| where dist <= alpha
  double C_alpha = 0.0; // lower bound on omega0 where dist >= alpha
};

struct VacuumReport {
  double c2_slope_left = 0.0;   // slope of c0^2 = gamma rho0^{gamma-1} at x = 0
  double c2_slope_right = 0.0;  // (signed) slope at x = 1
  VacuumWitness witness;
  bool pass = false;
  bool slope_left_unbounded = false, slope_right_unbounded = false;
  std::string detail;
};

/// Built-in kinds: "parabolic" rho0 = A x(1-x), and "polytropic"
/// rho0 = (A x(1-x))^{1/(gamma-1)} whose sound speed squared vanishes linearly
/// at both ends for every admissible gamma.
DensityProfile make_profile(const std::string& kind, double gamma, double amplitude = 1.0);

/// Tabulated profile from CSV with header `x,rho0`; nodes strictly increasing,
/// first x = 0, last x = 1, endpoint densities exactly zero.
DensityProfile load_profile_csv(const std::string& path, double gamma);

/// Physical-vacuum check: the boundary slope of c0^2 must be finite and
/// nonzero, with an (alpha, C, C_alpha) witness evaluated on probe nodes.
/// Degenerate contact (slope 0) or a super-linear sound-speed profile
/// (slope unbounded) fails the report rather than throwing.
VacuumReport validate_vacuum(const DensityProfile& p);

/// True if the supplied witness triple certifies the vacuum conditions on a
/// dense probe set (used to accept externally proposed witnesses).
bool witness_valid(const DensityProfile& p, const VacuumWitness& w);

/// Mollification at scale 1/|ln kappa| with the compactly supported bump,
/// normalized by the same quadrature used for the convolution so constants
/// are reproduced exactly. Velocity uses even reflection at the endpoints.
VelocityProfile mollify_velocity(const VelocityProfile& u0, double kappa);

/// Density smoothing: odd (slope-preserving) reflection at the endpoints,
/// then the affine endpoint interpolant is subtracted so the result vanishes
/// exactly on the boundary. Even reflection would flatten the contact slope
/// to zero and destroy the linear vacuum contact, so the density path
/// reflects odd. Throws if positivity is lost (kappa too large).
DensityProfile mollify_density(const DensityProfile& p, double kappa);

double mollifier_width(double kappa);

}  // namespace stargas
