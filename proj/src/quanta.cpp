#include "wgquant/quanta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace wgquant {

using constants::c;
using constants::epsilon0;
using constants::hbar;

QuantumAmplitudes quantize(const Mode& mode, Pair pair) {
  if (!pair_canonical(mode, pair)) {
    throw Error(ErrorCode::InvalidFrame, "no modal coefficients on the " + to_string(pair) + " pair of " +
                                             to_string(mode.id));
  }
  const ModalCoefficients mc = modal_coefficients(mode, pair);
  const double omega = mode.omega();
  QuantumAmplitudes qa;
  qa.pair = pair;
  qa.C_P = mc.C_P;
  qa.h_eff = mc.h_eff;
  qa.phi_m = std::sqrt(hbar / (2.0 * mc.C_P * omega));
  qa.E_m = omega * qa.phi_m / mc.h_eff;
  qa.B_m = qa.E_m / c;
  qa.Q_scale = mc.C_P * omega * qa.phi_m;
  const double kc = mode.kc();
  qa.dH_per_photon = hbar * c * kc * kc / mode.k();
  qa.photon_mass = is_te(mode.cls) ? hbar * kc / c : 0.0;
  qa.E_zpf = zero_point_field(mode);
  qa.E_m_reference = pair == Pair::TopBottom ? qa.E_m : qa.E_m / convert_frame(mode, 1.0, Pair::TopBottom, pair);
  return qa;
}

QuantumAmplitudes quantize(const Mode& mode) { return quantize(mode, canonical_pair(mode)); }

double zero_point_field(const Mode& mode) {
  const Geometry& g = mode.guide;
  return std::sqrt(0.5 * hbar * mode.omega() / (epsilon0 * g.d * g.w * g.L));
}

double zpf_ratio(const Mode& mode) {
  const QuantumAmplitudes qa = quantize(mode);
  return qa.E_m / qa.E_zpf;
}

std::vector<ZpfPoint> zpf_ratio_sweep(const Geometry& g, const ModeId& base, const std::vector<long>& ls) {
  std::vector<ZpfPoint> out;
  out.reserve(ls.size());
  for (long l : ls) {
    ModeId id = base;
    id.l = l;
    out.push_back({static_cast<double>(l), zpf_ratio(make_mode(g, id))});
  }
  return out;
}

std::vector<ZpfPoint> zpf_ratio_sweep_beta(const Geometry& g, const ModeId& base, const std::vector<double>& betas) {
  std::vector<ZpfPoint> out;
  out.reserve(betas.size());
  for (double beta : betas) out.push_back({beta, zpf_ratio(make_mode_at_beta(g, base, beta))});
  return out;
}

ClassicalConstants closed_form_constants(const Mode& mode, const Quadratures& q) {
  const double quad = 0.25 * (q.X * q.X + q.Y * q.Y);
  return {hbar * mode.omega() * quad, hbar * mode.beta() * quad};
}

ClassicalConstants closed_form_constants(const Mode& mode, int photons) {
  if (photons < 0) throw Error(ErrorCode::InvalidMode, "photon number must be non-negative");
  const double quad = photons + 0.5;
  return {hbar * mode.omega() * quad, hbar * mode.beta() * quad};
}

double LadderReport::worst() const {
  return std::max({commutator, number, rotated_commutator, rotated_number, mirrored_commutator});
}

namespace {

using Matrix = Eigen::MatrixXcd;

double block_error(const Matrix& a, const Matrix& b, int keep) {
  return (a - b).topLeftCorner(keep, keep).cwiseAbs().maxCoeff();
}

struct Identities {
  double commutator;
  double number;
};

Identities check(const Matrix& X, const Matrix& Y, const Matrix& number_op, int keep) {
  const std::complex<double> i2(0.0, 2.0);
  const auto id = Matrix::Identity(X.rows(), X.cols());
  const Matrix comm = X * Y - Y * X;
  const Matrix sum = X * X + Y * Y;
  return {block_error(comm, i2 * id, keep), block_error(sum, 4.0 * (number_op + 0.5 * id), keep)};
}

}  // namespace

LadderReport ladder_algebra_check(int fock_dim, double theta0) {
  if (fock_dim < 3) throw Error(ErrorCode::InvalidMode, "Fock dimension must be at least 3");
  const int N = fock_dim;
  Matrix b = Matrix::Zero(N, N);
  for (int k = 1; k < N; ++k) b(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix bd = b.adjoint();
  const std::complex<double> i(0.0, 1.0);
  const Matrix X = b + bd;
  const Matrix Y = i * (bd - b);
  const Matrix n = bd * b;
  // [X, Y] and X^2 + Y^2 pick up the truncation only in the last row and column.
  const int keep = N - 1;

  LadderReport r;
  r.fock_dim = N;
  const Identities plain = check(X, Y, n, keep);
  r.commutator = plain.commutator;
  r.number = plain.number;

  const double cs = std::cos(theta0);
  const double sn = std::sin(theta0);
  const Matrix Xr = cs * X - sn * Y;
  const Matrix Yr = sn * X + cs * Y;
  const Identities rotated = check(Xr, Yr, n, keep);
  r.rotated_commutator = rotated.commutator;
  r.rotated_number = rotated.number;

  const Matrix Ym = -Y;
  const Matrix comm = X * Ym - Ym * X;
  r.mirrored_commutator = block_error(comm, Matrix(std::complex<double>(0.0, -2.0) * Matrix::Identity(N, N)), keep);
  r.tolerance = 1e-13 * N;
  return r;
}

double ScalingReport::worst() const { return std::max({H, P, action, charge}); }

ScalingReport scaling_invariance_check(const Mode& mode, double alpha, const Quadratures& q) {
  if (alpha == 0.0) throw Error(ErrorCode::DegenerateScale, "scaling factor must be non-zero");
  const QuantumAmplitudes qa = quantize(mode);
  const ModalCoefficients mc = modal_coefficients(mode, qa.pair);
  ModalCoefficients scaled = mc;
  const double a2 = alpha * alpha;
  scaled.C_H /= a2;
  scaled.C_P /= a2;
  scaled.L_H_inv /= a2;
  const double phi_scaled = alpha * qa.phi_m;

  const FluxFormEnergy before = modal_line_energy(mode, mc, qa.phi_m, q);
  const FluxFormEnergy after = modal_line_energy(mode, scaled, phi_scaled, q);
  const double omega = mode.omega();
  const double action_before = 2.0 * mc.C_P * omega * qa.phi_m * qa.phi_m;
  const double action_after = 2.0 * scaled.C_P * omega * phi_scaled * phi_scaled;
  const double Q_after = scaled.C_P * omega * phi_scaled;

  auto relchange = [](double a, double b) { return b == a ? 0.0 : std::abs(a - b) / std::abs(a); };
  ScalingReport r;
  r.alpha = alpha;
  r.H = relchange(before.H(), after.H());
  r.P = relchange(before.P_z, after.P_z);
  r.action = relchange(action_before, action_after);
  r.charge = relchange(qa.Q_scale, Q_after * alpha);
  return r;
}

}  // namespace wgquant
