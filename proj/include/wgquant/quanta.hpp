#pragma once

#include <vector>

#include "wgquant/constants.hpp"
#include "wgquant/motion.hpp"

namespace wgquant {

// Amplitudes fixed by one quantum of action per mode: 2 C_P omega phi_m^2 = hbar.
struct QuantumAmplitudes {
  Pair pair = Pair::TopBottom;
  double phi_m = 0.0;
  double E_m = 0.0;  // amplitude in the frame of `pair`, positive
  double B_m = 0.0;
  double Q_scale = 0.0;  // C_P omega phi_m
  double dH_per_photon = 0.0;
  double photon_mass = 0.0;  // TE branches only
  double E_zpf = 0.0;
  // Signed top/bottom-referenced amplitude that reproduces the same field; feed this to the
  // fields, boundary, gauge and motion functions.
  double E_m_reference = 0.0;
  double C_P = 0.0;
  double h_eff = 0.0;

  // 2 C_P omega phi_m^2, in J s.
  double action(double omega) const { return 2.0 * C_P * omega * phi_m * phi_m; }
};

// Throws InvalidFrame when the pair has no modal-coefficient row for this mode.
QuantumAmplitudes quantize(const Mode& mode, Pair pair);
QuantumAmplitudes quantize(const Mode& mode);

// sqrt((hbar omega / 2) / (epsilon0 d w L)).
double zero_point_field(const Mode& mode);

struct ZpfPoint {
  double l = 0.0;  // longitudinal index, or beta for the continuous sweep
  double ratio = 0.0;
};

double zpf_ratio(const Mode& mode);

// E_m / E_zpf for each l (l = 0 throws InvalidMode). The l field of `base` is ignored.
std::vector<ZpfPoint> zpf_ratio_sweep(const Geometry& g, const ModeId& base, const std::vector<long>& ls);
std::vector<ZpfPoint> zpf_ratio_sweep_beta(const Geometry& g, const ModeId& base, const std::vector<double>& betas);

struct ClassicalConstants {
  double H = 0.0;
  double P_z = 0.0;
};

// hbar omega (X^2 + Y^2)/4 and hbar beta (X^2 + Y^2)/4.
ClassicalConstants closed_form_constants(const Mode& mode, const Quadratures& q);
// (X^2 + Y^2)/4 replaced by n + 1/2.
ClassicalConstants closed_form_constants(const Mode& mode, int photons);

// Largest deviations from the quadrature identities on the states untouched by truncation.
struct LadderReport {
  int fock_dim = 0;
  double commutator = 0.0;          // [X, Y] - 2i
  double number = 0.0;              // X^2 + Y^2 - 4(n + 1/2)
  double rotated_commutator = 0.0;  // same after rotating by theta0
  double rotated_number = 0.0;
  double mirrored_commutator = 0.0;  // [X, -Y] + 2i
  double tolerance = 0.0;

  double worst() const;
  bool passed() const { return worst() <= tolerance; }
};

LadderReport ladder_algebra_check(int fock_dim = 16, double theta0 = constants::pi / 3.0);

struct ScalingReport {
  double alpha = 1.0;
  double H = 0.0;  // relative changes
  double P = 0.0;
  double action = 0.0;
  double charge = 0.0;  // Q alpha against Q

  double worst() const;
};

// phi_m -> alpha phi_m, C -> C / alpha^2, L_H -> L_H alpha^2. Throws DegenerateScale for alpha = 0.
ScalingReport scaling_invariance_check(const Mode& mode, double alpha, const Quadratures& q = {1.0, 0.5, 0.3});

}  // namespace wgquant
