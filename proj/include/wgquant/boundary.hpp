#pragma once

#include <string>

#include "wgquant/fields.hpp"

namespace wgquant {

// Top/Bottom sit at y = +d/2 / -d/2, Left/Right at x = +w/2 / -w/2.
enum class ElectrodeId { Top, Bottom, Left, Right };
enum class Reality { Real, Virtual };

std::string to_string(ElectrodeId e);
Pair pair_of(ElectrodeId e);

struct Electrode {
  ElectrodeId id = ElectrodeId::Top;
  Reality reality = Reality::Real;
  Vec3 normal = Vec3::Zero();  // points into the guide
};

// Throws UndefinedElectrode for lateral planes of TEM and plate TM modes.
Electrode electrode(const Mode& mode, ElectrodeId id);

// s is the in-plane transverse coordinate: x on Top/Bottom, y on Left/Right.
Vec3 electrode_point(const Mode& mode, ElectrodeId id, double s, double z);

// j = (transverse, z) components of the surface current.
struct SurfaceDensity {
  double sigma = 0.0;
  Vec2 j = Vec2::Zero();
};

SurfaceDensity surface_density_from_fields(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                           double s, double z, double t);

// -(-1)^n for the top/bottom pair, -(-1)^m for the left/right pair.
double facing_factor(const Mode& mode, Pair pair);

// A pair carries a flux if both of its electrodes are defined. The canonical pairs are those
// with a modal-coefficient row; the others (plate-TE top/bottom, TE(0,m) left/right) are auxiliary.
bool pair_defined(const Mode& mode, Pair pair);
bool pair_canonical(const Mode& mode, Pair pair);

// phi(s, z, t) = phi_m g_phi(s) f_tilde(z, t).
struct FluxField {
  Mode mode;
  Pair pair = Pair::TopBottom;
  Quadratures q;
  double h_eff = 0.0;
  double phi_m = 0.0;
  double kg = 0.0;  // g_phi(s) = sin(kg (s + span/2)), or 1 when kg == 0

  double g_phi(double s) const;
  double dg_phi(double s) const;
  double value(double s, double z, double t) const;
  double d_dt(double s, double z, double t) const;
  double d_dz(double s, double z, double t) const;
  double d_ds(double s, double z, double t) const;
  double C_d() const;
  double L_d_inv() const;
};

double h_eff(const Mode& mode, Pair pair);

// E_m is always the top/bottom-referenced amplitude; it is converted for the left/right pair.
FluxField flux_field(const Mode& mode, Pair pair, const Quadratures& q, double E_m);

SurfaceDensity surface_density_from_flux(const Mode& mode, ElectrodeId id, const FluxField& flux, double s, double z,
                                         double t);

// ns points across the electrode and nz along one wavelength, both including the end points;
// residuals are taken at interior nodes with the grid spacing as difference step.
struct SurfaceGrid {
  int ns = 65;
  int nz = 65;
};

// Relative value is scaled by omega max|sigma|, or by k max|j| on charge-free electrodes.
Residual charge_conservation_residual(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                      const SurfaceGrid& grid, double t);
// Same samples with explicit steps: h.x() across the electrode, h.z() along z, ht in time.
// Interior samples keep the stencil on the electrode only when h.x() <= the grid spacing.
Residual charge_conservation_residual(const Mode& mode, ElectrodeId id, const Quadratures& q, double E_m,
                                      const SurfaceGrid& grid, double t, const Stencil<double>& st);

struct ContinuityReport {
  double max_mismatch = 0.0;
  double max_current = 0.0;
};

// Peripheral current along the four edges of a TE mode, sampled over z and t.
ContinuityReport peripheral_current_continuity(const Mode& mode, const Quadratures& q, double E_m, double t);

}  // namespace wgquant
