#include "stargas/compat.hpp"

#include "stargas/errors.hpp"

namespace stargas {

namespace {

double binom(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

Vec compute_u1(const DensityProfile& p, const VelocityProfile& u0, const ForceField& F,
               double kappa, const Basis& b) {
  const Vec& x = b.nodes();
  Vec w = p.omega0_on(x);
  Vec wp = p.domega0_on(x);
  Vec u0p(x.size()), u0pp(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    u0p[i] = u0.du0(x[i]);
    u0pp[i] = u0.ddu0(x[i]);
  }
  const double cg = p.gamma / (p.gamma - 1.0);
  return F.F + kappa * (2.0 * wp.cwiseProduct(u0p) + w.cwiseProduct(u0pp)) - cg * wp;
}

CompatibilityData compute_uk(const DensityProfile& p, const VelocityProfile& u0,
                             const ForceField& F, double kappa, int k, const Basis& b,
                             int k_max) {
  if (k < 0) throw ValidationError("compute_uk: order must be >= 0");
  if (k > k_max) throw ValidationError("compute_uk: unsupported order (raise K_max)");

  const Vec& x = b.nodes();
  const Eigen::Index nq = x.size();
  const double g = p.gamma;
  const double cg = g / (g - 1.0);
  Vec w = p.omega0_on(x);
  Vec wp = p.domega0_on(x);

  CompatibilityData out;
  out.order = k;
  out.kappa = kappa;
  out.u.resize(k + 1);
  out.u[0] = u0.on(x);

  std::vector<Vec> up(k + 1), upp(k + 1);
  up[0].resize(nq);
  upp[0].resize(nq);
  for (Eigen::Index i = 0; i < nq; ++i) {
    up[0][i] = u0.du0(x[i]);
    upp[0][i] = u0.ddu0(x[i]);
  }

  const Vec ones = Vec::Ones(nq);
  const Vec zeros = Vec::Zero(nq);
  // initial time derivatives of eta'^{-1}, eta'^{-g}, eta'^{-(g+1)},
  // of r = d_t(ln eta'), and of z = eta'' eta'^{-(g+1)}
  std::vector<Vec> s{ones}, r{up[0]}, pg{ones}, y{ones}, z{zeros};

  for (int m = 1; m <= k; ++m) {
    // u_m from order m-1 data
    if (m == 1) {
      out.u[1] = F.F + kappa * (2.0 * wp.cwiseProduct(up[0]) + w.cwiseProduct(upp[0])) -
                 cg * wp;
    } else {
      out.u[m] = kappa * (2.0 * wp.cwiseProduct(up[m - 1]) + w.cwiseProduct(upp[m - 1])) -
                 cg * wp.cwiseProduct(pg[m - 1]) + g * w.cwiseProduct(z[m - 1]);
    }
    if (m == k) break;
    up[m] = b.D1() * out.u[m];
    upp[m] = b.D1() * up[m];

    // extend the geometry recursions to order m using u_0..u_m
    Vec sm = Vec::Zero(nq);
    for (int j = 1; j <= m; ++j)  // d_t^j eta' = u_{j-1}'
      sm -= binom(m, j) * up[j - 1].cwiseProduct(s[m - j]);
    s.push_back(sm);

    Vec rm = Vec::Zero(nq);
    for (int j = 0; j <= m; ++j) rm += binom(m, j) * up[j].cwiseProduct(s[m - j]);
    r.push_back(rm);

    Vec pm = Vec::Zero(nq);
    for (int j = 0; j <= m - 1; ++j) pm -= g * binom(m - 1, j) * pg[j].cwiseProduct(r[m - 1 - j]);
    pg.push_back(pm);

    Vec ym = Vec::Zero(nq);
    for (int j = 0; j <= m - 1; ++j)
      ym -= (g + 1.0) * binom(m - 1, j) * y[j].cwiseProduct(r[m - 1 - j]);
    y.push_back(ym);

    Vec zm = Vec::Zero(nq);
    for (int j = 1; j <= m; ++j) zm += binom(m, j) * upp[j - 1].cwiseProduct(y[m - j]);
    z.push_back(zm);
  }
  return out;
}

}  // namespace stargas
