#include "wgquant/motion.hpp"

#include <algorithm>
#include <cmath>

#include "wgquant/constants.hpp"
#include "wgquant/error.hpp"
#include "wgquant/gauge.hpp"
#include "wgquant/numerics.hpp"

namespace wgquant {

using constants::c;
using constants::epsilon0;

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;

// Integrals over [0, L] of cos/sin(phi - a z) and z cos/sin(phi - a z).
struct TrigMoments {
  double C0, S0, C1, S1;
};

TrigMoments trig_moments(double phi, double a, double L) {
  TrigMoments m;
  const double end = phi - a * L;
  m.C0 = (std::sin(phi) - std::sin(end)) / a;
  m.S0 = (std::cos(end) - std::cos(phi)) / a;
  m.C1 = -L * std::sin(end) / a + m.S0 / a;
  m.S1 = L * std::cos(end) / a - m.C0 / a;
  return m;
}

int panels_along(const Mode& mode) {
  return std::max(1, static_cast<int>(std::ceil(mode.guide.L / mode.wavelength() - 1e-9)));
}

Vec7 pack(double H, const Vec3& P, const Vec3& J) {
  Vec7 v;
  v << H, P, J;
  return v;
}

}  // namespace

Pair canonical_pair(const Mode& mode) {
  return mode.cls == FamilyClass::TEn ? Pair::LeftRight : Pair::TopBottom;
}

ModalCoefficients modal_coefficients(const Mode& mode, Pair pair) {
  if (!pair_canonical(mode, pair)) {
    throw Error(ErrorCode::UndefinedElectrode,
                "no modal coefficients for the " + to_string(pair) + " pair of " + to_string(mode.id));
  }
  ModalCoefficients mc;
  mc.pair = pair;
  mc.h_eff = h_eff(mode, pair);
  mc.C_d = epsilon0 / mc.h_eff;
  mc.L_d_inv = 1.0 / (constants::mu0 * mc.h_eff);
  mc.k_c = mode.kc();
  const Parity par = parity(mode);
  mc.sigma = *(pair == Pair::TopBottom ? par.sigma : par.sigma_prime);
  const double w = mode.guide.w;
  const double d = mode.guide.d;
  const double L = mode.guide.L;
  const double kb2 = std::pow(mode.k() / mode.beta(), 2);
  double area = 0.0;  // transverse length times L
  bool tm = false;
  switch (mode.cls) {
    case FamilyClass::TEM: area = w * L; break;
    case FamilyClass::TMn:
      area = w * L;
      tm = true;
      break;
    case FamilyClass::TEn: area = 0.5 * d * L; break;
    case FamilyClass::TE0m: area = 0.5 * w * L; break;
    case FamilyClass::TMnm: {
      const double r = std::pow(mode.kcx() / mode.kcy(), 2);
      area = pair == Pair::TopBottom ? 0.5 * w * (1 + r) * L : 0.5 * d * (1 + 1 / r) * L;
      tm = true;
      break;
    }
    case FamilyClass::TEnm: {
      const double r = std::pow(mode.kcy() / mode.kcx(), 2);
      area = pair == Pair::TopBottom ? 0.5 * w * (1 + r) * L : 0.5 * d * (1 + 1 / r) * L;
      break;
    }
  }
  mc.C_H = mc.C_d * area;
  mc.C_P = tm ? mc.C_H * kb2 : mc.C_H;
  mc.L_H_inv = tm ? mc.L_d_inv * area * kb2 * kb2 : mc.L_d_inv * area;
  mc.velocity = tm ? mode.disp.v_phi : c;
  return mc;
}

MotionGrid default_motion_grid(const Mode& mode) {
  MotionGrid g;
  g.nx = 8 * (mode.id.m + 1);
  g.ny = 8 * (mode.id.n + 1);
  g.nz = 16;
  return g;
}

MotionConstants motion_by_quadrature(const Mode& mode, const Quadratures& q, double E_m, const MotionGrid& grid,
                                     double t) {
  const double w = mode.guide.w;
  const double d = mode.guide.d;
  const double L = mode.guide.L;
  if (grid.nx < 4 * std::max(mode.id.m, 1) || grid.ny < 4 * std::max(mode.id.n, 1) || grid.nz < 4) {
    throw Error(ErrorCode::GridTooCoarse, "quadrature needs 4 nodes per half-oscillation and per wavelength");
  }
  const auto rx = composite_gauss<double>(-0.5 * w, 0.5 * w, grid.nx);
  const auto ry = composite_gauss<double>(-0.5 * d, 0.5 * d, grid.ny);
  const double half_e0 = 0.5 * epsilon0;
  Vec7 total;
  if (!grid.exact_z) {
    const auto rz = composite_gauss<double>(0.0, L, grid.nz, panels_along(mode));
    TensorRule<double, 3> rule{{rx, ry, rz}};
    total = integrate(
        [&](const Eigen::Vector3d& r) {
          const FieldSample s = eval_fields(mode, Frame::TopBottom, q, E_m, r, t);
          const double u = half_e0 * (s.E.squaredNorm() + c * c * s.B.squaredNorm());
          const Vec3 p = epsilon0 * s.E.cross(s.B);
          return pack(u, p, r.cross(p));
        },
        rule);
  } else {
    // f^2, f~^2 and f f~ expanded in cos/sin(2 theta), theta = omega t + theta0 - beta z.
    const double A0 = 0.5 * (q.X * q.X + q.Y * q.Y);
    const double A1 = 0.5 * (q.X * q.X - q.Y * q.Y);
    const double A2 = q.X * q.Y;
    const TrigMoments tm = trig_moments(2.0 * (mode.omega() * t + q.theta0), 2.0 * mode.beta(), L);
    const double ff0 = A0 * L + A1 * tm.C0 + A2 * tm.S0;
    const double tt0 = A0 * L - A1 * tm.C0 - A2 * tm.S0;
    const double ft0 = A1 * tm.S0 - A2 * tm.C0;
    const double ft1 = A1 * tm.S1 - A2 * tm.C1;
    const double e2 = E_m * E_m;
    TensorRule<double, 2> rule{{rx, ry}};
    total = integrate(
        [&](const Eigen::Vector2d& r) {
          const GVector g = eval_g(mode, Frame::TopBottom, r.x(), r.y());
          const double u = half_e0 * e2 *
                           ((g.e.x() * g.e.x() + g.e.y() * g.e.y() + g.b.x() * g.b.x() + g.b.y() * g.b.y()) * ff0 +
                            (g.e.z() * g.e.z() + g.b.z() * g.b.z()) * tt0);
          const double k = epsilon0 * e2 / c;
          const double px = k * (g.e.y() * g.b.z() - g.e.z() * g.b.y());
          const double py = k * (g.e.z() * g.b.x() - g.e.x() * g.b.z());
          const double pz = k * (g.e.x() * g.b.y() - g.e.y() * g.b.x());
          const Vec3 P(px * ft0, py * ft0, pz * ff0);
          const Vec3 J(r.y() * pz * ff0 - py * ft1, px * ft1 - r.x() * pz * ff0, (r.x() * py - r.y() * px) * ft0);
          return pack(u, P, J);
        },
        rule);
  }
  MotionConstants mc;
  mc.H = total[0];
  mc.P = total.segment<3>(1);
  mc.J = total.segment<3>(4);
  return mc;
}

MotionConstants motion_by_quadrature(const Mode& mode, const Quadratures& q, double E_m, double t) {
  return motion_by_quadrature(mode, q, E_m, default_motion_grid(mode), t);
}

FluxFormEnergy energy_by_flux_form(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double t) {
  const ModalCoefficients mc = modal_coefficients(mode, pair);
  const FluxField fl = flux_field(mode, pair, q, E_m);
  const double Cd = mc.C_d;
  const double Li = mc.L_d_inv;
  const double kb2 = std::pow(mode.k() / mode.beta(), 2);
  const double ckc2 = std::pow(c * mode.kc(), 2);
  const double width = pair == Pair::TopBottom ? mode.guide.w : mode.guide.d;
  const int index = pair == Pair::TopBottom ? mode.id.m : mode.id.n;
  double quarter = 0.0;  // coefficient of the two-pair addendum
  if (mode.cls == FamilyClass::TMnm || mode.cls == FamilyClass::TEnm) {
    const double r = std::pow(mode.kcx() / mode.kcy(), 2);
    const double own = pair == Pair::TopBottom ? r : 1.0 / r;
    quarter = mode.cls == FamilyClass::TMnm ? 0.25 * (1 + own) : 0.25 * std::pow(1 + 1.0 / own, 2);
  }
  TensorRule<double, 2> rule{{composite_gauss<double>(-0.5 * width, 0.5 * width, 8 * (index + 1)),
                              composite_gauss<double>(0.0, mode.guide.L, 16, panels_along(mode))}};
  const Eigen::Vector3d sum = integrate(
      [&](const Eigen::Vector2d& p) {
        const double s = p.x();
        const double z = p.y();
        const double phi = fl.value(s, z, t);
        const double pt = fl.d_dt(s, z, t);
        const double pz = fl.d_dz(s, z, t);
        const double ps = fl.d_ds(s, z, t);
        double main = 0.5 * Cd * pt * pt;
        double add = 0.0;
        double mom = -Cd * pt * pz;
        switch (mode.cls) {
          case FamilyClass::TEM: main += 0.5 * Li * pz * pz; break;
          case FamilyClass::TMn:
            main += 0.5 * Li * kb2 * kb2 * pz * pz;
            add = 0.5 * Cd * kb2 * ckc2 * phi * phi;
            mom *= kb2;
            break;
          case FamilyClass::TEn:
          case FamilyClass::TE0m:
            main += 0.5 * Li * pz * pz;
            add = 0.5 * Li * ps * ps;
            break;
          case FamilyClass::TMnm:
            main += 0.5 * Li * kb2 * kb2 * pz * pz;
            add = quarter * Cd * kb2 * ckc2 * phi * phi;
            mom *= kb2;
            break;
          case FamilyClass::TEnm:
            main += 0.5 * Li * pz * pz;
            add = quarter * Li * ps * ps;
            break;
        }
        return Eigen::Vector3d(main, add, mom);
      },
      rule);
  return {sum[0], sum[1], sum[2]};
}

FluxFormEnergy flux_form_total(const Mode& mode, const Quadratures& q, double E_m, double t) {
  FluxFormEnergy total;
  for (Pair pair : {Pair::TopBottom, Pair::LeftRight}) {
    if (!pair_canonical(mode, pair)) continue;
    const FluxFormEnergy e = energy_by_flux_form(mode, pair, q, E_m, t);
    total.H_main += e.H_main;
    total.H_addendum += e.H_addendum;
    total.P_z += e.P_z;
  }
  return total;
}

FluxFormEnergy energy_by_modal_line(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double t) {
  return modal_line_energy(mode, modal_coefficients(mode, pair), flux_field(mode, pair, q, E_m).phi_m, q, t);
}

FluxFormEnergy modal_line_energy(const Mode& mode, const ModalCoefficients& mc, double phi_m, const Quadratures& q,
                                 double t) {
  const double ckc2 = std::pow(c * mode.kc(), 2);
  const double L = mode.guide.L;
  const double beta = mode.beta();
  const double omega = mode.omega();
  TensorRule<double, 1> rule{{composite_gauss<double>(0.0, L, 16, panels_along(mode))}};
  const Eigen::Vector3d sum = integrate(
      [&](const Eigen::Matrix<double, 1, 1>& z) {
        const Traveling tr = traveling(q, beta, omega, z[0], t);
        const double phi = phi_m * tr.f_tilde;
        const double pt = phi_m * omega * tr.f;
        const double pz = -phi_m * beta * tr.f;
        return Eigen::Vector3d(0.5 * mc.C_H * pt * pt + 0.5 * mc.L_H_inv * pz * pz, 0.5 * mc.C_P * ckc2 * phi * phi,
                               -mc.C_P * pt * pz);
      },
      rule);
  return {sum[0] / L, sum[1] / L, sum[2] / L};
}

FluxFormEnergy closed_form_energy(const Mode& mode, const Quadratures& q, double E_m) {
  const Pair pair = canonical_pair(mode);
  const ModalCoefficients mc = modal_coefficients(mode, pair);
  const double phi_m = flux_field(mode, pair, q, E_m).phi_m;
  const double prefactor = 2.0 * mc.C_P * mode.omega() * phi_m * phi_m;
  const double quad = 0.25 * (q.X * q.X + q.Y * q.Y);
  const double H = prefactor * mode.omega() * quad;
  const double add = H * 0.5 * std::pow(mode.kc() / mode.k(), 2);
  return {H - add, add, prefactor * mode.beta() * quad};
}

std::string to_string(PropagationLaw law) {
  switch (law) {
    case PropagationLaw::Wave: return "wave";
    case PropagationLaw::PhaseVelocity: return "phase-velocity";
    case PropagationLaw::KleinGordon: return "klein-gordon";
  }
  return "?";
}

PropagationLaw propagation_law(const Mode& mode) {
  if (mode.cls == FamilyClass::TEM) return PropagationLaw::Wave;
  return is_tm(mode.cls) ? PropagationLaw::PhaseVelocity : PropagationLaw::KleinGordon;
}

PropagationResidual flux_propagation_residual(const Mode& mode, Pair pair, PropagationLaw law, const Quadratures& q,
                                              double E_m, const SurfaceGrid& grid, double t) {
  if (!pair_canonical(mode, pair)) {
    throw Error(ErrorCode::UndefinedElectrode,
                "no flux equation on the " + to_string(pair) + " pair of " + to_string(mode.id));
  }
  if (grid.ns < 1 || grid.nz < 1) throw Error(ErrorCode::GridTooCoarse, "empty sample grid");
  const FluxField fl = flux_field(mode, pair, q, E_m);
  const double lam = mode.wavelength();
  Stencil<double> st = Stencil<double>::uniform(lam / 1000.0, lam / 1000.0 / mode.disp.v_phi);
  st.order = 4;
  double time_coeff = 1.0 / (c * c);
  double mass = 0.0;
  if (law == PropagationLaw::PhaseVelocity) time_coeff *= std::pow(mode.beta() / mode.k(), 2);
  if (law == PropagationLaw::KleinGordon) mass = mode.kc() * mode.kc();
  const double width = pair == Pair::TopBottom ? mode.guide.w : mode.guide.d;
  PropagationResidual out;
  for (int i = 0; i < grid.ns; ++i) {
    const double s = -0.5 * width + width * (i + 0.5) / grid.ns;
    auto phi = [&](const Vec3& p, double tt) { return fl.value(s, p.z(), tt); };
    for (int k = 0; k < grid.nz; ++k) {
      const Vec3 p(0.0, 0.0, lam * k / grid.nz);
      const double v = phi(p, t);
      const double res = fd_second_scalar(phi, p, t, 2, st) - time_coeff * fd_second_scalar(phi, p, t, 3, st) - mass * v;
      out.absolute = std::max(out.absolute, std::abs(res));
      out.phi_max = std::max(out.phi_max, std::abs(v));
    }
  }
  const double scale = mode.k() * mode.k() * out.phi_max;
  out.relative = scale > 0.0 ? out.absolute / scale : 0.0;
  return out;
}

}  // namespace wgquant
