#include "wgquant/boundary.hpp"

#include <algorithm>
#include <cmath>

#include "wgquant/constants.hpp"
#include "wgquant/error.hpp"

namespace wgquant {

using constants::epsilon0;
using constants::mu0;

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

bool lateral_defined(const Mode& mode) {
  return mode.guide.kind == GuideKind::Rectangular || mode.cls == FamilyClass::TEn;
}

double span(const Mode& mode, Pair pair) { return pair == Pair::TopBottom ? mode.guide.w : mode.guide.d; }

}  // namespace

std::string to_string(ElectrodeId e) {
  switch (e) {
    case ElectrodeId::Top: return "Top";
    case ElectrodeId::Bottom: return "Bottom";
    case ElectrodeId::Left: return "Left";
    case ElectrodeId::Right: return "Right";
  }
  return "?";
}

Pair pair_of(ElectrodeId e) {
  return (e == ElectrodeId::Top || e == ElectrodeId::Bottom) ? Pair::TopBottom : Pair::LeftRight;
}

Electrode electrode(const Mode& mode, ElectrodeId id) {
  Electrode e;
  e.id = id;
  switch (id) {
    case ElectrodeId::Top: e.normal = Vec3(0, -1, 0); break;
    case ElectrodeId::Bottom: e.normal = Vec3(0, 1, 0); break;
    case ElectrodeId::Left: e.normal = Vec3(-1, 0, 0); break;
    case ElectrodeId::Right: e.normal = Vec3(1, 0, 0); break;
  }
  if (pair_of(id) == Pair::LeftRight) {
    if (!lateral_defined(mode)) {
      throw Error(ErrorCode::UndefinedElectrode, to_string(id) + " electrode is ill-defined for " + to_string(mode.id));
    }
    if (mode.guide.kind == GuideKind::ParallelPlates) e.reality = Reality::Virtual;
  }
  return e;
}

Vec3 electrode_point(const Mode& mode, ElectrodeId id, double s, double z) {
  const double hw = 0.5 * mode.guide.w;
  const double hd = 0.5 * mode.guide.d;
  switch (id) {
    case ElectrodeId::Top: return {s, hd, z};
    case ElectrodeId::Bottom: return {s, -hd, z};
    case ElectrodeId::Left: return {hw, s, z};
    case ElectrodeId::Right: return {-hw, s, z};
  }
  return {s, hd, z};
}

SurfaceDensity surface_density_from_fields(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                           double s, double z, double t) {
  const Electrode e = electrode(mode, id);
  const FieldSample fs = eval_fields(mode, Frame::TopBottom, q, E_m, electrode_point(mode, id, s, z), t);
  const Vec3 J = e.normal.cross(fs.B) / mu0;
  SurfaceDensity out;
  out.sigma = epsilon0 * e.normal.dot(fs.E);
  out.j = Vec2(pair_of(id) == Pair::TopBottom ? J.x() : J.y(), J.z());
  return out;
}

double facing_factor(const Mode& mode, Pair pair) {
  return -parity(pair == Pair::TopBottom ? mode.id.n : mode.id.m);
}

bool pair_defined(const Mode& mode, Pair pair) { return pair == Pair::TopBottom || lateral_defined(mode); }

bool pair_canonical(const Mode& mode, Pair pair) {
  switch (mode.cls) {
    case FamilyClass::TEM:
    case FamilyClass::TMn:
    case FamilyClass::TE0m: return pair == Pair::TopBottom;
    case FamilyClass::TEn: return pair == Pair::LeftRight;
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: return true;
  }
  return false;
}

double h_eff(const Mode& mode, Pair pair) {
  if (!pair_defined(mode, pair)) {
    throw Error(ErrorCode::UndefinedElectrode, to_string(pair) + " pair is ill-defined for " + to_string(mode.id));
  }
  const double w = mode.guide.w;
  const double d = mode.guide.d;
  switch (mode.cls) {
    case FamilyClass::TEM: return d;
    case FamilyClass::TMn: return d / 2;
    case FamilyClass::TEn: return pair == Pair::LeftRight ? w : d;
    case FamilyClass::TE0m: return pair == Pair::TopBottom ? d : w;
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: return pair == Pair::TopBottom ? d / 2 : w / 2;
  }
  return d;
}

FluxField flux_field(const Mode& mode, Pair pair, const Quadratures& q, double E_m) {
  FluxField fl;
  fl.mode = mode;
  fl.pair = pair;
  fl.q = q;
  fl.h_eff = h_eff(mode, pair);
  double amplitude = E_m;
  if (pair == Pair::LeftRight && frame_valid(mode, Frame::LeftRight)) {
    amplitude = convert_frame(mode, E_m, Frame::TopBottom, Frame::LeftRight);
  }
  fl.phi_m = amplitude * fl.h_eff / mode.omega();
  switch (mode.cls) {
    case FamilyClass::TEM:
    case FamilyClass::TMn: fl.kg = 0.0; break;
    case FamilyClass::TEn: fl.kg = pair == Pair::LeftRight ? mode.kc() : 0.0; break;
    case FamilyClass::TE0m: fl.kg = pair == Pair::TopBottom ? mode.kcx() : 0.0; break;
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: fl.kg = pair == Pair::TopBottom ? mode.kcx() : mode.kcy(); break;
  }
  return fl;
}

double FluxField::g_phi(double s) const {
  if (kg == 0.0) return 1.0;
  return std::sin(kg * (s + 0.5 * span(mode, pair)));
}

double FluxField::dg_phi(double s) const {
  if (kg == 0.0) return 0.0;
  return kg * std::cos(kg * (s + 0.5 * span(mode, pair)));
}

double FluxField::value(double s, double z, double t) const {
  return phi_m * g_phi(s) * traveling(q, mode.beta(), mode.omega(), z, t).f_tilde;
}

double FluxField::d_dt(double s, double z, double t) const {
  return phi_m * g_phi(s) * mode.omega() * traveling(q, mode.beta(), mode.omega(), z, t).f;
}

double FluxField::d_dz(double s, double z, double t) const {
  return -phi_m * g_phi(s) * mode.beta() * traveling(q, mode.beta(), mode.omega(), z, t).f;
}

double FluxField::d_ds(double s, double z, double t) const {
  return phi_m * dg_phi(s) * traveling(q, mode.beta(), mode.omega(), z, t).f_tilde;
}

double FluxField::C_d() const { return epsilon0 / h_eff; }

double FluxField::L_d_inv() const { return 1.0 / (mu0 * h_eff); }

SurfaceDensity surface_density_from_flux(const Mode& mode, ElectrodeId id, const FluxField& flux, double s, double z,
                                         double t) {
  electrode(mode, id);
  const Pair pair = pair_of(id);
  if (flux.pair != pair) {
    throw Error(ErrorCode::UndefinedElectrode, to_string(id) + " electrode does not belong to the flux pair");
  }
  const double Cd = flux.C_d();
  const double Linv = flux.L_d_inv();
  const double kb2 = std::pow(mode.k() / mode.beta(), 2);
  SurfaceDensity ref;
  bool reference_is_first = true;  // Top or Left
  if (!pair_canonical(mode, pair)) {
    // Auxiliary pairs carry only a transverse current, given on Bottom/Right.
    reference_is_first = false;
    ref.j = Vec2(-Linv * mode.kc() * flux.value(s, z, t), 0.0);
  } else {
    ref.sigma = Cd * flux.d_dt(s, z, t);
    switch (mode.cls) {
      case FamilyClass::TEM: ref.j = Vec2(0.0, -Linv * flux.d_dz(s, z, t)); break;
      case FamilyClass::TMn:
      case FamilyClass::TMnm: ref.j = Vec2(0.0, -Linv * kb2 * flux.d_dz(s, z, t)); break;
      case FamilyClass::TEn:
      case FamilyClass::TE0m: ref.j = Vec2(-Linv * flux.d_ds(s, z, t), -Linv * flux.d_dz(s, z, t)); break;
      case FamilyClass::TEnm: {
        const double r = std::pow(pair == Pair::TopBottom ? mode.kcy() / mode.kcx() : mode.kcx() / mode.kcy(), 2);
        ref.j = Vec2(-Linv * (1.0 + r) * flux.d_ds(s, z, t), -Linv * flux.d_dz(s, z, t));
        break;
      }
    }
  }
  const bool first = id == ElectrodeId::Top || id == ElectrodeId::Left;
  if (first == reference_is_first) return ref;
  const double ff = facing_factor(mode, pair);
  return {ff * ref.sigma, ff * ref.j};
}

Residual charge_conservation_residual(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                      const SurfaceGrid& grid, double t) {
  if (grid.ns < 3 || grid.nz < 2) throw Error(ErrorCode::GridTooCoarse, "surface grid needs ns >= 3 and nz >= 2");
  const double width = span(mode, pair_of(id));
  const double hs = width / (grid.ns - 1);
  const double hz = mode.wavelength() / (grid.nz - 1);
  Stencil<double> st;
  st.h = Vec3(hs, hz, hz);
  st.ht = hz / mode.disp.v_phi;
  return charge_conservation_residual(mode, id, q, E_m, grid, t, st);
}

Residual charge_conservation_residual(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                      const SurfaceGrid& grid, double t, const Stencil<double>& st) {
  electrode(mode, id);
  if (grid.ns < 3 || grid.nz < 2) throw Error(ErrorCode::GridTooCoarse, "surface grid needs ns >= 3 and nz >= 2");
  const Pair pair = pair_of(id);
  const FluxField flux = flux_field(mode, pair, q, E_m);
  const double width = span(mode, pair);
  const double step_s = width / (grid.ns - 1);
  const double step_z = mode.wavelength() / (grid.nz - 1);
  const double hs = st.h.x();
  const double hz = st.h.z();
  const double ht = st.ht;
  auto dens = [&](double s, double z, double tt) { return surface_density_from_flux(mode, id, flux, s, z, tt); };
  double worst = 0.0;
  double smax = 0.0;
  double jmax = 0.0;
  for (int k = 0; k < grid.nz; ++k) {
    const double z = k * step_z;
    for (int i = 0; i < grid.ns; ++i) {
      const double s = -0.5 * width + i * step_s;
      const SurfaceDensity here = dens(s, z, t);
      smax = std::max(smax, std::abs(here.sigma));
      jmax = std::max(jmax, here.j.cwiseAbs().maxCoeff());
      if (i == 0 || i == grid.ns - 1) continue;
      const double djs = (dens(s + hs, z, t).j.x() - dens(s - hs, z, t).j.x()) / (2 * hs);
      const double djz = (dens(s, z + hz, t).j.y() - dens(s, z - hz, t).j.y()) / (2 * hz);
      const double dsig = (dens(s, z, t + ht).sigma - dens(s, z, t - ht).sigma) / (2 * ht);
      worst = std::max(worst, std::abs(djs + djz + dsig));
    }
  }
  double scale = mode.omega() * smax;
  if (scale == 0.0) scale = mode.k() * jmax;
  return {worst, scale > 0.0 ? worst / scale : 0.0};
}

ContinuityReport peripheral_current_continuity(const Mode& mode, const Quadratures& q, double E_m, double t) {
  if (!is_te(mode.cls)) {
    throw Error(ErrorCode::InvalidMode, "peripheral current is defined for TE modes only");
  }
  const double hw = 0.5 * mode.guide.w;
  const double hd = 0.5 * mode.guide.d;
  const FluxField tb = flux_field(mode, Pair::TopBottom, q, E_m);
  const FluxField lr = flux_field(mode, Pair::LeftRight, q, E_m);
  // Current along the counter-clockwise circulation (x to the right, y up).
  auto along = [&](ElectrodeId id, double s, double z, double tt) {
    const FluxField& fl = pair_of(id) == Pair::TopBottom ? tb : lr;
    const double js = surface_density_from_flux(mode, id, fl, s, z, tt).j.x();
    return (id == ElectrodeId::Top || id == ElectrodeId::Right) ? -js : js;
  };
  struct Corner {
    ElectrodeId a;
    double sa;
    ElectrodeId b;
    double sb;
  };
  const Corner corners[] = {{ElectrodeId::Top, hw, ElectrodeId::Left, hd},
                            {ElectrodeId::Left, -hd, ElectrodeId::Bottom, hw},
                            {ElectrodeId::Bottom, -hw, ElectrodeId::Right, -hd},
                            {ElectrodeId::Right, hd, ElectrodeId::Top, -hw}};
  ContinuityReport rep;
  const double lam = mode.wavelength();
  const double period = 2.0 * constants::pi / mode.omega();
  for (int iz = 0; iz < 16; ++iz) {
    for (int it = 0; it < 4; ++it) {
      const double z = lam * iz / 16.0;
      const double tt = t + period * it / 4.0;
      for (const Corner& cr : corners) {
        const double ia = along(cr.a, cr.sa, z, tt);
        const double ib = along(cr.b, cr.sb, z, tt);
        rep.max_mismatch = std::max(rep.max_mismatch, std::abs(ia - ib));
        rep.max_current = std::max({rep.max_current, std::abs(ia), std::abs(ib)});
      }
    }
  }
  return rep;
}

}  // namespace wgquant
