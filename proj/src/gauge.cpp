#include "wgquant/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "wgquant/constants.hpp"
#include "wgquant/error.hpp"

namespace wgquant {

using constants::c;

namespace {

double parity_sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

bool has_freedom(FamilyClass cls) { return cls != FamilyClass::TEn && cls != FamilyClass::TE0m; }

// Free gauge profile p(x, y) and its transverse gradient.
struct Profile {
  double p = 0.0;
  double px = 0.0;
  double py = 0.0;
};

Profile free_profile(const Mode& mode, double u, double v) {
  switch (mode.cls) {
    case FamilyClass::TEM: return {1.0, 0.0, 0.0};
    case FamilyClass::TMn: {
      const double kc = mode.kc();
      return {std::sin(kc * v), 0.0, kc * std::cos(kc * v)};
    }
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: {
      const double kx = mode.kcx();
      const double ky = mode.kcy();
      return {std::sin(kx * u) * std::sin(ky * v), kx * std::cos(kx * u) * std::sin(ky * v),
              ky * std::sin(kx * u) * std::cos(ky * v)};
    }
    default: return {};
  }
}

}  // namespace

GaugeLedger gauge_ledger(const Mode& mode) {
  switch (mode.cls) {
    case FamilyClass::TEM:
    case FamilyClass::TMn: return {{"a_pi", "a~_pi"}, {"b_pi", "b~_pi"}};
    case FamilyClass::TEn:
    case FamilyClass::TE0m: return {{"a_pi", "b_pi", "a~_pi", "b~_pi"}, {}};
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: return {{"a_pi", "a~_pi", "c_pi", "c~_pi", "d_pi", "d~_pi"}, {"b_pi", "b~_pi"}};
  }
  return {};
}

Parity parity(const Mode& mode) {
  const int sn = static_cast<int>(parity_sign(mode.id.n));
  const int sm = static_cast<int>(parity_sign(mode.id.m));
  switch (mode.cls) {
    case FamilyClass::TEM: return {-1, std::nullopt};
    case FamilyClass::TMn: return {sn, std::nullopt};
    case FamilyClass::TEn: return {std::nullopt, 1};
    case FamilyClass::TE0m: return {1, std::nullopt};
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: return {sn, sm};
  }
  return {};
}

PotentialSample eval_potentials(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t,
                                const GaugeFreedom& freedom) {
  require_inside(mode.guide, r.x(), r.y());
  if (!freedom.is_zero() && !has_freedom(mode.cls)) {
    throw Error(ErrorCode::InvalidMode, "the gauge of " + to_string(mode.id) + " is fully fixed");
  }
  const double w = mode.guide.w;
  const double d = mode.guide.d;
  const double u = r.x() + 0.5 * w;
  const double v = r.y() + 0.5 * d;
  const double beta = mode.beta();
  const double omega = mode.omega();
  const double kc = mode.kc();
  const double kcx = mode.kcx();
  const double kcy = mode.kcy();
  const Traveling tr = traveling(q, beta, omega, r.z(), t);
  const double f = tr.f;
  const double ft = tr.f_tilde;
  const double sn = parity_sign(mode.id.n);
  const double sm = parity_sign(mode.id.m);

  PotentialSample out;
  Vec3& A = out.A;
  double& V = out.V;
  switch (mode.cls) {
    case FamilyClass::TEM: {
      const double phi = flux_field(mode, Pair::TopBottom, q, E_m).phi_m;
      A = Vec3(0.0, 0.0, phi * beta * (r.y() / d) * f);
      V = phi * omega * (r.y() / d) * f;
      break;
    }
    case FamilyClass::TMn: {
      const double phi = flux_field(mode, Pair::TopBottom, q, E_m).phi_m;
      const double cv = std::cos(kc * v);
      const double sv = std::sin(kc * v);
      A.y() = phi * sn * beta * (cv / (d * beta) + kc / (2 * beta) * sv) * ft;
      A.z() = phi * sn * beta * (0.5 * cv + (2 * kc * kc + beta * beta) / (d * kc * beta * beta) * sv) * f;
      V = phi * sn * omega * (0.5 * cv + sv / (d * kc)) * f;
      break;
    }
    case FamilyClass::TEn: {
      const double phi = flux_field(mode, Pair::LeftRight, q, E_m).phi_m;
      const double cv = std::cos(kc * v);
      const double sv = std::sin(kc * v);
      A.x() = phi * beta * (sv / (w * beta)) * ft;
      A.y() = -phi * beta * (kc / (2 * beta) * cv) * ft;
      A.z() = phi * beta * 0.5 * sv * f;
      V = phi * omega * 0.5 * sv * f;
      break;
    }
    case FamilyClass::TE0m: {
      const double phi = flux_field(mode, Pair::TopBottom, q, E_m).phi_m;
      const double cu = std::cos(kcx * u);
      const double su = std::sin(kcx * u);
      A.x() = -phi * beta * (kcx / (2 * beta) * cu) * ft;
      A.y() = phi * beta * (su / (d * beta)) * ft;
      A.z() = phi * beta * 0.5 * su * f;
      V = phi * omega * 0.5 * su * f;
      break;
    }
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: {
      const double phi = flux_field(mode, Pair::TopBottom, q, E_m).phi_m;
      const double phip = flux_field(mode, Pair::LeftRight, q, E_m).phi_m;
      const double cu = std::cos(kcx * u);
      const double su = std::sin(kcx * u);
      const double cv = std::cos(kcy * v);
      const double sv = std::sin(kcy * v);
      const double CC = cu * cv;
      const double CS = cu * sv;
      const double SC = su * cv;
      const double SS = su * sv;
      const double b2 = beta * beta;
      // Top/bottom part is shared by both families.
      A.x() = sn * phi * beta * (-kcx / (2 * beta) * CC) * ft;
      A.y() = sn * phi * beta * (kcy / (2 * beta) * SS) * ft;
      A.z() = sn * phi * beta * 0.5 * SC * f;
      V = sn * phi * omega * 0.5 * SC * f;
      if (mode.cls == FamilyClass::TMnm) {
        const double kc2 = kc * kc;
        A.x() += sm * phip * beta * (4 / (w * beta) * CS + kcx / (2 * beta) * SS) * ft;
        A.y() += sm * phip * beta * (4 * kcy / (w * kcx * beta) * SC - kcy / (2 * beta) * CC) * ft;
        A.z() += sm * phip * beta * (0.5 * CS + (2 * kc2 - 2 * b2) / (w * kcx * b2) * SS) * f;
        V += sm * phip * omega * (0.5 * CS - 2 / (w * kcx) * SS) * f;
      } else {
        A.x() += sm * phip * beta * ((2 * kcx * kcx + 2 * kcy * beta) / (w * kcy * b2) * CS + kcx / (2 * beta) * SS) * ft;
        A.y() += sm * phip * beta * (2 * kcx * (kcy - beta) / (w * kcy * b2) * SC - kcy / (2 * beta) * CC) * ft;
        A.z() += sm * phip * beta * (0.5 * CS - 2 * kcx / (w * kcy * beta) * SS) * f;
        V += sm * phip * omega * (0.5 * CS - 2 * kcx / (w * kcy * beta) * SS) * f;
      }
      break;
    }
  }
  if (!freedom.is_zero()) {
    // A += grad Pi, V -= dPi/dt with df/dz = beta f~, df~/dz = -beta f, df/dt = -omega f~, df~/dt = omega f.
    const Profile p = free_profile(mode, u, v);
    const double gf = freedom.b * f + freedom.b_tilde * ft;
    A.x() += p.px * gf;
    A.y() += p.py * gf;
    A.z() += p.p * beta * (freedom.b * ft - freedom.b_tilde * f);
    V += p.p * omega * (freedom.b * ft - freedom.b_tilde * f);
  }
  return out;
}

Residual lorenz_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t,
                         const Stencil<double>& st, const GaugeFreedom& freedom) {
  const auto box = std::optional<Box<double>>(cross_section_box(mode.guide));
  auto A = [&](const Vec3& p, double tt) { return eval_potentials(mode, q, E_m, p, tt, freedom).A; };
  auto V = [&](const Vec3& p, double tt) { return eval_potentials(mode, q, E_m, p, tt, freedom).V; };
  double worst = 0.0;
  double vmax = 0.0;
  for (const Vec3& p : interior_points(mode, grid)) {
    vmax = std::max(vmax, std::abs(V(p, t)));
    const double res = fd_div(A, p, t, st, box) + fd_partial_scalar(V, p, t, 3, st) / (c * c);
    worst = std::max(worst, std::abs(res));
  }
  const double scale = mode.omega() * vmax / (c * c);
  return {worst, scale > 0.0 ? worst / scale : 0.0};
}

Residual lorenz_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t) {
  return lorenz_residual(mode, grid, q, E_m, t, default_stencil(mode));
}

FieldSample reconstruct_fields(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t,
                               const Stencil<double>& st, const GaugeFreedom& freedom) {
  const auto box = std::optional<Box<double>>(cross_section_box(mode.guide));
  auto A = [&](const Vec3& p, double tt) { return eval_potentials(mode, q, E_m, p, tt, freedom).A; };
  auto V = [&](const Vec3& p, double tt) { return eval_potentials(mode, q, E_m, p, tt, freedom).V; };
  FieldSample out;
  out.B = fd_curl(A, r, t, st, box);
  out.E = -fd_dt(A, r, t, st) - fd_grad(V, r, t, st, box);
  return out;
}

FieldSample reconstruct_fields(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t) {
  return reconstruct_fields(mode, q, E_m, r, t, default_stencil(mode));
}

Residual reconstruction_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t,
                                 const Stencil<double>& st, const GaugeFreedom& freedom) {
  double emax = 0.0;
  double bmax = 0.0;
  double de = 0.0;
  double db = 0.0;
  for (const Vec3& p : interior_points(mode, grid)) {
    const FieldSample ref = eval_fields(mode, Frame::TopBottom, q, E_m, p, t);
    const FieldSample rec = reconstruct_fields(mode, q, E_m, p, t, st, freedom);
    emax = std::max(emax, ref.E.norm());
    bmax = std::max(bmax, ref.B.norm());
    de = std::max(de, (rec.E - ref.E).norm());
    db = std::max(db, (rec.B - ref.B).norm());
  }
  Residual r;
  r.absolute = std::max(de, db * c);
  r.relative = std::max(emax > 0.0 ? de / emax : 0.0, bmax > 0.0 ? db / bmax : 0.0);
  return r;
}

DeltaPotentials delta_potentials(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double s, double z,
                                 double t, const GaugeFreedom& freedom) {
  const Parity par = parity(mode);
  const std::optional<int>& sig = pair == Pair::TopBottom ? par.sigma : par.sigma_prime;
  if (!sig) {
    throw Error(ErrorCode::UndefinedElectrode,
                "no potential difference on the " + to_string(pair) + " pair of " + to_string(mode.id));
  }
  const ElectrodeId first = pair == Pair::TopBottom ? ElectrodeId::Top : ElectrodeId::Left;
  const ElectrodeId second = pair == Pair::TopBottom ? ElectrodeId::Bottom : ElectrodeId::Right;
  const PotentialSample a = eval_potentials(mode, q, E_m, electrode_point(mode, first, s, z), t, freedom);
  const PotentialSample b = eval_potentials(mode, q, E_m, electrode_point(mode, second, s, z), t, freedom);
  return {a.V + *sig * b.V, a.A.z() + *sig * b.A.z()};
}

Residual flux_link_residual(const Mode& mode, const Quadratures& q, double E_m, int samples,
                            const GaugeFreedom& freedom) {
  const Parity par = parity(mode);
  double worst_t = 0.0;
  double worst_z = 0.0;
  double max_t = 0.0;
  double max_z = 0.0;
  for (Pair pair : {Pair::TopBottom, Pair::LeftRight}) {
    if (!(pair == Pair::TopBottom ? par.sigma : par.sigma_prime)) continue;
    const FluxField fl = flux_field(mode, pair, q, E_m);
    const double width = pair == Pair::TopBottom ? mode.guide.w : mode.guide.d;
    for (int i = 0; i < samples; ++i) {
      // Deterministic quasi-random layout over the electrode, one wavelength and one period.
      const double s = width * (std::fmod(0.5 + i * 0.6180339887498949, 1.0) - 0.5);
      const double z = mode.wavelength() * std::fmod(0.25 + i * 0.7548776662466927, 1.0);
      const double t = std::fmod(0.1 + i * 0.5698402909980532, 1.0) * 2 * constants::pi / mode.omega();
      const DeltaPotentials dp = delta_potentials(mode, pair, q, E_m, s, z, t, freedom);
      const double pt = fl.d_dt(s, z, t);
      const double pz = fl.d_dz(s, z, t);
      max_t = std::max(max_t, std::abs(pt));
      max_z = std::max(max_z, std::abs(pz));
      worst_t = std::max(worst_t, std::abs(pt - dp.dV));
      worst_z = std::max(worst_z, std::abs(pz + dp.dA));
    }
  }
  Residual r;
  r.absolute = std::max(worst_t, worst_z);
  r.relative = std::max(max_t > 0.0 ? worst_t / max_t : 0.0, max_z > 0.0 ? worst_z / max_z : 0.0);
  return r;
}

}  // namespace wgquant
