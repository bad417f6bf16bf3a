#pragma once

#include "wgquant/boundary.hpp"
#include "wgquant/fields.hpp"

namespace wgquant {

// Modal coefficients of one electrode pair. velocity is the propagation speed of the flux:
// c for TEM and TE branches, the phase velocity for TM branches.
struct ModalCoefficients {
  Pair pair = Pair::TopBottom;
  double C_H = 0.0;
  double C_P = 0.0;
  double L_H_inv = 0.0;
  double h_eff = 0.0;
  int sigma = 0;
  double k_c = 0.0;
  double velocity = 0.0;
  double C_d = 0.0;
  double L_d_inv = 0.0;
};

// Top/bottom unless the mode is a plate-like TE branch.
Pair canonical_pair(const Mode& mode);

ModalCoefficients modal_coefficients(const Mode& mode, Pair pair);

struct MotionConstants {
  double H = 0.0;
  Vec3 P = Vec3::Zero();
  Vec3 J = Vec3::Zero();
};

// Gauss-Legendre orders per axis; z uses one panel per wavelength with nz nodes each.
// With exact_z the longitudinal integral is done in closed form.
struct MotionGrid {
  int nx = 0;
  int ny = 0;
  int nz = 16;
  bool exact_z = false;
};

// nx = 8 (m + 1), ny = 8 (n + 1), nz = 16.
MotionGrid default_motion_grid(const Mode& mode);

// Volume integrals of the energy, momentum and angular momentum densities at time t.
// Origin on the guide axis at z = 0. Throws GridTooCoarse below 4 nodes per half-oscillation.
MotionConstants motion_by_quadrature(const Mode& mode, const Quadratures& q, double E_m, const MotionGrid& grid,
                                     double t = 0.0);
MotionConstants motion_by_quadrature(const Mode& mode, const Quadratures& q, double E_m, double t = 0.0);

struct FluxFormEnergy {
  double H_main = 0.0;      // charge and longitudinal-current terms
  double H_addendum = 0.0;  // potential term (TM) or transverse-current term (TE)
  double P_z = 0.0;

  double H() const { return H_main + H_addendum; }
};

// Surface integral over one electrode pair. For two-pair rectangular modes this is the pair's
// share; flux_form_total adds the pairs.
FluxFormEnergy energy_by_flux_form(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double t = 0.0);
FluxFormEnergy flux_form_total(const Mode& mode, const Quadratures& q, double E_m, double t = 0.0);

// Line integral of the modal Hamiltonian with the pair's coefficients; each pair gives the full H.
FluxFormEnergy energy_by_modal_line(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double t = 0.0);
FluxFormEnergy modal_line_energy(const Mode& mode, const ModalCoefficients& mc, double phi_m, const Quadratures& q,
                                 double t = 0.0);

// Closed form 2 C_P omega phi_m^2 (X^2 + Y^2)/4 times omega (energy) and beta (momentum).
FluxFormEnergy closed_form_energy(const Mode& mode, const Quadratures& q, double E_m);

enum class PropagationLaw { Wave, PhaseVelocity, KleinGordon };

std::string to_string(PropagationLaw law);
PropagationLaw propagation_law(const Mode& mode);

struct PropagationResidual {
  double absolute = 0.0;
  double relative = 0.0;  // to k^2 max|phi|
  double phi_max = 0.0;
};

// Five-point differences in z and t (h = wavelength / 1000, ht = h / v_phi) over an
// electrode x one-wavelength grid.
PropagationResidual flux_propagation_residual(const Mode& mode, Pair pair, PropagationLaw law, const Quadratures& q,
                                              double E_m, const SurfaceGrid& grid = {9, 17}, double t = 0.0);

}  // namespace wgquant
