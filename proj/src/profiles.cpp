#include "stargas/profiles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <limits>
#include <vector>

#include "stargas/errors.hpp"

namespace stargas {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 1.0 && gamma < 3.0))
    throw ValidationError("adiabatic index gamma must lie in the open interval (1,3)");
}

constexpr int kSampleCount = 129;

}  // namespace

void DensityProfile::build_interpolants() {
  interp_ = std::make_shared<Interpolant>(sample_x, sample_rho);
  Mat D = Interpolant::diff_matrix(sample_x);
  Vec d1 = D * sample_rho;
  Vec d2 = D * d1;
  dinterp_ = std::make_shared<Interpolant>(sample_x, d1);
  ddinterp_ = std::make_shared<Interpolant>(sample_x, d2);
}

double DensityProfile::rho0(double x) const {
  switch (kind_) {
    case Kind::Parabolic: return amp_ * x * (1.0 - x);
    case Kind::Polytropic: {
      const double w = amp_ * x * (1.0 - x);
      return w <= 0.0 ? 0.0 : std::pow(w, 1.0 / (gamma - 1.0));
    }
    default: return (*interp_)(x);
  }
}

double DensityProfile::drho0(double x) const {
  switch (kind_) {
    case Kind::Parabolic: return amp_ * (1.0 - 2.0 * x);
    case Kind::Polytropic: {
      const double p = 1.0 / (gamma - 1.0);
      const double w = amp_ * x * (1.0 - x);
      return p * std::pow(w, p - 1.0) * amp_ * (1.0 - 2.0 * x);
    }
    default: return (*dinterp_)(x);
  }
}

double DensityProfile::ddrho0(double x) const {
  switch (kind_) {
    case Kind::Parabolic: return -2.0 * amp_;
    case Kind::Polytropic: {
      const double p = 1.0 / (gamma - 1.0);
      const double w = amp_ * x * (1.0 - x);
      const double wp = amp_ * (1.0 - 2.0 * x);
      return p * (p - 1.0) * std::pow(w, p - 2.0) * wp * wp -
             2.0 * amp_ * p * std::pow(w, p - 1.0);
    }
    default: return (*ddinterp_)(x);
  }
}

double DensityProfile::omega0(double x) const {
  if (kind_ == Kind::Polytropic) return amp_ * x * (1.0 - x);
  if (gamma == 2.0) return rho0(x);
  const double r = rho0(x);
  return r <= 0.0 ? 0.0 : std::pow(r, gamma - 1.0);
}

double DensityProfile::domega0(double x) const {
  if (kind_ == Kind::Polytropic) return amp_ * (1.0 - 2.0 * x);
  if (gamma == 2.0) return drho0(x);
  return (gamma - 1.0) * std::pow(rho0(x), gamma - 2.0) * drho0(x);
}

double DensityProfile::ddomega0(double x) const {
  if (kind_ == Kind::Polytropic) return -2.0 * amp_;
  if (gamma == 2.0) return ddrho0(x);
  const double r = rho0(x), rp = drho0(x);
  return (gamma - 1.0) * ((gamma - 2.0) * std::pow(r, gamma - 3.0) * rp * rp +
                          std::pow(r, gamma - 2.0) * ddrho0(x));
}

Vec DensityProfile::rho0_on(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = rho0(xs[i]);
  return out;
}
Vec DensityProfile::omega0_on(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = omega0(xs[i]);
  return out;
}
Vec DensityProfile::domega0_on(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = domega0(xs[i]);
  return out;
}
Vec DensityProfile::ddomega0_on(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = ddomega0(xs[i]);
  return out;
}

DensityProfile DensityProfile::parabolic(double gamma, double amplitude) {
  require_gamma(gamma);
  if (amplitude <= 0.0) throw ValidationError("parabolic profile: amplitude must be positive");
  DensityProfile p;
  p.kind_ = Kind::Parabolic;
  p.gamma = gamma;
  p.amp_ = amplitude;
  p.closed_form = "parabolic";
  p.sample_x = chebyshev_lobatto(kSampleCount);
  p.sample_rho = p.sample_x.unaryExpr([&](double x) { return amplitude * x * (1.0 - x); });
  p.left_slope = amplitude;
  p.right_slope = -amplitude;
  return p;
}

DensityProfile DensityProfile::polytropic(double gamma, double amplitude) {
  require_gamma(gamma);
  if (amplitude <= 0.0) throw ValidationError("polytropic profile: amplitude must be positive");
  DensityProfile p;
  p.kind_ = Kind::Polytropic;
  p.gamma = gamma;
  p.amp_ = amplitude;
  p.closed_form = "polytropic";
  p.sample_x = chebyshev_lobatto(kSampleCount);
  p.sample_rho.resize(kSampleCount);
  for (int i = 0; i < kSampleCount; ++i) p.sample_rho[i] = p.rho0(p.sample_x[i]);
  const double expo = 1.0 / (gamma - 1.0);
  // one-sided rho0 slope: finite only when the exponent is 1 (gamma = 2)
  p.left_slope = expo > 1.0 ? 0.0 : (expo == 1.0 ? amplitude : std::numeric_limits<double>::infinity());
  p.right_slope = -p.left_slope;
  return p;
}

DensityProfile DensityProfile::tabulated(Vec x, Vec rho, double gamma, bool validate) {
  require_gamma(gamma);
  if (x.size() != rho.size() || x.size() < 8)
    throw ValidationError("tabulated profile: need >= 8 matching nodes");
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (!(x[i] > x[i - 1])) throw ValidationError("tabulated profile: nodes must be strictly increasing");
  if (x[0] != 0.0 || x[x.size() - 1] != 1.0)
    throw ValidationError("tabulated profile: first node must be 0 and last node 1");
  if (rho[0] != 0.0 || rho[rho.size() - 1] != 0.0)
    throw ValidationError("tabulated profile: density must vanish exactly at the endpoints");
  if (validate)
    for (Eigen::Index i = 1; i + 1 < rho.size(); ++i)
      if (!(rho[i] > 0.0)) throw ValidationError("tabulated profile: interior density must be positive");
  DensityProfile p;
  p.kind_ = Kind::Tabulated;
  p.gamma = gamma;
  p.sample_x = std::move(x);
  p.sample_rho = std::move(rho);
  p.build_interpolants();
  p.left_slope = (*p.dinterp_)(0.0);
  p.right_slope = (*p.dinterp_)(1.0);
  return p;
}

namespace {

// two-scale probe of omega0/d near a boundary: returns {limit, unbounded, degenerate}
struct ContactProbe {
  double slope;
  bool unbounded, degenerate;
};

ContactProbe probe_contact(const DensityProfile& p, bool left) {
  const double d1 = 1e-4, d2 = d1 / 16.0;
  auto q = [&](double d) {
    const double x = left ? d : 1.0 - d;
    return p.omega0(x) / d;
  };
  const double q1 = q(d1), q2 = q(d2);
  ContactProbe out{};
  out.unbounded = q2 > 2.0 * q1;
  out.degenerate = q2 < 0.5 * q1 || q2 <= 0.0;
  out.slope = q2;
  return out;
}

}  // namespace

DensityProfile make_profile(const std::string& kind, double gamma, double amplitude) {
  if (kind == "parabolic") return DensityProfile::parabolic(gamma, amplitude);
  if (kind == "polytropic") return DensityProfile::polytropic(gamma, amplitude);
  throw ValidationError("make_profile: unknown kind '" + kind + "'");
}

DensityProfile load_profile_csv(const std::string& path, double gamma) {
  std::ifstream in(path);
  if (!in) throw ValidationError("load_profile_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("load_profile_csv: empty file");
  // accept optional header `x,rho0`
  std::vector<double> xs, rs;
  auto parse = [&](const std::string& s) {
    std::istringstream ls(s);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b)) return false;
    try {
      xs.push_back(std::stod(a));
      rs.push_back(std::stod(b));
    } catch (...) {
      return false;
    }
    return true;
  };
  parse(line);  // first line is either data or a header; a header fails to parse
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!parse(line)) throw ValidationError("load_profile_csv: bad row '" + line + "'");
  }
  Vec x = Eigen::Map<Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  Vec r = Eigen::Map<Vec>(rs.data(), static_cast<Eigen::Index>(rs.size()));
  return DensityProfile::tabulated(std::move(x), std::move(r), gamma);
}

VacuumReport validate_vacuum(const DensityProfile& p) {
  if (p.sample_x.size() < 8) throw ValidationError("validate_vacuum: need >= 8 sample nodes");
  VacuumReport rep;
  ContactProbe left = probe_contact(p, true);
  ContactProbe right = probe_contact(p, false);
  rep.slope_left_unbounded = left.unbounded;
  rep.slope_right_unbounded = right.unbounded;
  rep.c2_slope_left = p.gamma * left.slope;
  rep.c2_slope_right = -p.gamma * right.slope;

  // witness on a dense probe grid, alpha = 1/4
  const Vec probes = chebyshev_lobatto(257);
  VacuumWitness w;
  w.alpha = 0.25;
  double cmin = std::numeric_limits<double>::infinity();
  double camin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i + 1 < probes.size(); ++i) {
    const double x = probes[i];
    const double dist = std::min(x, 1.0 - x);
    if (dist <= w.alpha) cmin = std::min(cmin, std::abs(p.domega0(x)));
    if (dist >= w.alpha) camin = std::min(camin, p.omega0(x));
  }
  w.C = cmin;
  w.C_alpha = camin;
  rep.witness = w;

  const bool slopes_ok = !left.unbounded && !right.unbounded && !left.degenerate &&
                         !right.degenerate && left.slope > 0.0 && right.slope > 0.0;
  rep.pass = slopes_ok && w.C > 0.0 && w.C_alpha > 0.0;
  if (!rep.pass) {
    rep.detail = left.degenerate || right.degenerate
                     ? "degenerate vacuum contact: sound-speed slope vanishes at a boundary"
                     : (left.unbounded || right.unbounded
                            ? "sound-speed slope unbounded at a boundary"
                            : "witness constants not positive");
  }
  return rep;
}

bool witness_valid(const DensityProfile& p, const VacuumWitness& w) {
  if (!(w.alpha > 0.0) || !(w.C > 0.0) || !(w.C_alpha > 0.0)) return false;
  const Vec probes = chebyshev_lobatto(257);
  const double tol = 1e-12;
  for (Eigen::Index i = 1; i + 1 < probes.size(); ++i) {
    const double x = probes[i];
    const double dist = std::min(x, 1.0 - x);
    if (dist <= w.alpha && std::abs(p.domega0(x)) < w.C - tol) return false;
    if (dist >= w.alpha && p.omega0(x) < w.C_alpha - tol) return false;
  }
  return true;
}

double mollifier_width(double kappa) {
  if (!(kappa > 0.0 && kappa < 1.0))
    throw ValidationError("mollifier width undefined: kappa must lie in (0,1)");
  const double h = 1.0 / std::abs(std::log(kappa));
  if (!(h < 0.5))
    throw ValidationError("mollifier width 1/|ln kappa| must be < 1/2; kappa too large");
  return h;
}

namespace {

// bump kernel on [-1,1], normalized against the supplied rule so the
// convolution reproduces constants exactly
struct Kernel {
  QuadRule rule;
  Vec phi;
  explicit Kernel(int pts) : rule(gauss_legendre(pts, -1.0, 1.0)) {
    phi = rule.sample([](double s) { return std::exp(-1.0 / (1.0 - s * s)); });
    phi /= rule.w.dot(phi);
  }
  template <typename F>
  double convolve(F&& f_ext, double x, double h) const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < rule.x.size(); ++j)
      acc += rule.w[j] * phi[j] * f_ext(x - h * rule.x[j]);
    return acc;
  }
};

constexpr int kKernelPts = 96;
constexpr int kMollifySamples = 385;

}  // namespace

VelocityProfile mollify_velocity(const VelocityProfile& u0, double kappa) {
  const double h = mollifier_width(kappa);
  Kernel ker(kKernelPts);
  auto ext = [&](double z) {  // even reflection
    if (z < 0.0) return u0.u0(-z);
    if (z > 1.0) return u0.u0(2.0 - z);
    return u0.u0(z);
  };
  Vec xs = chebyshev_lobatto(kMollifySamples);
  Vec us(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) us[i] = ker.convolve(ext, xs[i], h);
  VelocityProfile out;
  out.sample_x = std::move(xs);
  out.sample_u = std::move(us);
  out.tag = "mollified";
  out.interp = std::make_shared<Interpolant>(out.sample_x, out.sample_u);
  Mat D = Interpolant::diff_matrix(out.sample_x);
  Vec d1 = D * out.sample_u;
  out.dinterp = std::make_shared<Interpolant>(out.sample_x, d1);
  out.ddinterp = std::make_shared<Interpolant>(out.sample_x, Vec(D * d1));
  return out;
}

DensityProfile mollify_density(const DensityProfile& p, double kappa) {
  const double h = mollifier_width(kappa);
  Kernel ker(kKernelPts);
  auto ext = [&](double z) {  // odd reflection preserves the contact slope
    if (z < 0.0) return -p.rho0(-z);
    if (z > 1.0) return -p.rho0(2.0 - z);
    return p.rho0(z);
  };
  Vec xs = chebyshev_lobatto(kMollifySamples);
  Vec rs(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) rs[i] = ker.convolve(ext, xs[i], h);
  // Dirichlet correction: subtract the affine interpolant of the endpoint values
  const double r0 = rs[0], r1 = rs[rs.size() - 1];
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    rs[i] -= (1.0 - xs[i]) * r0 + xs[i] * r1;
  rs[0] = 0.0;
  rs[rs.size() - 1] = 0.0;
  for (Eigen::Index i = 1; i + 1 < rs.size(); ++i)
    if (!(rs[i] > 0.0))
      throw ValidationError("mollify_density: positivity lost; kappa too large for this profile");
  return DensityProfile::tabulated(std::move(xs), std::move(rs), p.gamma);
}

double VelocityProfile::u0(double x) const { return (*interp)(x); }
double VelocityProfile::du0(double x) const { return (*dinterp)(x); }
double VelocityProfile::ddu0(double x) const { return (*ddinterp)(x); }

Vec VelocityProfile::on(const Vec& xs) const {
  Vec out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = u0(xs[i]);
  return out;
}

VelocityProfile VelocityProfile::constant(double c) {
  return from_function([c](double) { return c; }, "constant", 17);
}

VelocityProfile VelocityProfile::from_function(const std::function<double(double)>& f,
                                               const std::string& tag, int n_samples) {
  VelocityProfile v;
  v.sample_x = chebyshev_lobatto(n_samples);
  v.sample_u = v.sample_x.unaryExpr([&](double x) { return f(x); });
  v.tag = tag;
  v.interp = std::make_shared<Interpolant>(v.sample_x, v.sample_u);
  Mat D = Interpolant::diff_matrix(v.sample_x);
  Vec d1 = D * v.sample_u;
  v.dinterp = std::make_shared<Interpolant>(v.sample_x, d1);
  v.ddinterp = std::make_shared<Interpolant>(v.sample_x, Vec(D * d1));
  return v;
}

}  // namespace stargas
