#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgquant/boundary.hpp"
#include "wgquant/fields.hpp"

namespace wgquant {

struct PotentialSample {
  Vec3 A = Vec3::Zero();
  double V = 0.0;
};

// Coefficients of the residual gauge term Pi = p(x, y) (b f + b_tilde f_tilde) [V s].
struct GaugeFreedom {
  double b = 0.0;
  double b_tilde = 0.0;

  bool is_zero() const { return b == 0.0 && b_tilde == 0.0; }
};

struct GaugeLedger {
  std::vector<std::string> fixed;
  std::vector<std::string> free;
};

GaugeLedger gauge_ledger(const Mode& mode);

struct Parity {
  std::optional<int> sigma;        // top/bottom
  std::optional<int> sigma_prime;  // left/right
};

Parity parity(const Mode& mode);

// Tabulated potentials; a nonzero freedom on a fully fixed family throws InvalidMode.
PotentialSample eval_potentials(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t,
                                const GaugeFreedom& freedom = {});

// max |div A + (1/c^2) dV/dt|, relative to omega max|V| / c^2.
Residual lorenz_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t,
                         const Stencil<double>& st, const GaugeFreedom& freedom = {});
Residual lorenz_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t);

// E = -dA/dt - grad V and B = curl A by central differences.
FieldSample reconstruct_fields(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t,
                               const Stencil<double>& st, const GaugeFreedom& freedom = {});
FieldSample reconstruct_fields(const Mode& mode, const Quadratures& q, double E_m, const Vec3& r, double t);

// Largest deviation from eval_fields over the grid, relative to the peak field magnitudes.
Residual reconstruction_residual(const Mode& mode, const VolumeGrid& grid, const Quadratures& q, double E_m, double t,
                                 const Stencil<double>& st, const GaugeFreedom& freedom = {});

struct DeltaPotentials {
  double dV = 0.0;
  double dA = 0.0;
};

// dV = V(first) + sigma V(second) with first = Top (y = d/2) or Left (x = w/2); likewise dA with A_z.
DeltaPotentials delta_potentials(const Mode& mode, Pair pair, const Quadratures& q, double E_m, double s, double z,
                                 double t, const GaugeFreedom& freedom = {});

// Max over samples of |dphi/dt - dV| and |dphi/dz + dA| on every pair with a parity coefficient,
// each relative to the peak of the analytic derivative.
Residual flux_link_residual(const Mode& mode, const Quadratures& q, double E_m, int samples = 64,
                            const GaugeFreedom& freedom = {});

}  // namespace wgquant
