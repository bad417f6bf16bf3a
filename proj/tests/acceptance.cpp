// Acceptance run: one PASS/FAIL line per criterion, details after the colon.
// Exit status is non-zero when any criterion fails, except those in `known_infeasible`.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>

#include "random_modes.hpp"
#include "wgquant/constants.hpp"
#include "wgquant/gauge.hpp"
#include "wgquant/quanta.hpp"

using namespace wgquant;
using constants::hbar;

namespace {

// Any monochromatic gapped flux satisfies both the phase-velocity and the Klein-Gordon form,
// and TEM has all three forms coincide, so "violates the other two" cannot hold.
const std::set<int> known_infeasible{6};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double rel(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome zpf_curve() {
  const auto t0 = std::chrono::steady_clock::now();
  const double d = 0.01;
  const auto g = Geometry::rectangular(d, d, 100.0 * d);
  std::vector<long> ls;
  for (long l = 1; l <= 10000; ++l) ls.push_back(l);
  ls.push_back(100000);
  const auto sweep = zpf_ratio_sweep(g, ModeId::tm_rect(1, 1, 1), ls);
  const double first = sweep.front().ratio;
  const double far = sweep.back().ratio;
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = std::abs(first / 0.02 - 1.0) <= 0.02 && std::abs(far / std::sqrt(2.0) - 1.0) <= 1e-3 && secs < 1.0;
  o.detail = "l=1 ratio " + sci(first) + " (0.02 +-2%), l=1e5 ratio " + sci(far) + " (sqrt2 +-0.1%), " +
             sci(secs) + " s";
  return o;
}

Outcome zero_point_amplitudes() {
  double worst_def = 0.0;
  double worst_ratio = 0.0;
  double tem_dev = 0.0;
  auto record = [&](const Mode& mode, double expected) {
    const Pair pair = canonical_pair(mode);
    const QuantumAmplitudes qa = quantize(mode, pair);
    const ModalCoefficients mc = modal_coefficients(mode, pair);
    const double independent = std::sqrt(hbar * mode.omega() / (2.0 * mc.C_P * mc.h_eff * mc.h_eff));
    worst_def = std::max(worst_def, rel(qa.E_m, independent));
    worst_ratio = std::max(worst_ratio, rel(qa.E_m / qa.E_zpf, expected));
  };
  for (double L : {0.05, 0.3, 2.0}) {
    for (long l : {1L, 2L, 7L, -3L}) {
      const auto plates = Geometry::plates(0.2, 0.01, L);
      const Mode tem = make_mode(plates, ModeId::tem(l));
      tem_dev = std::max(tem_dev, std::abs(quantize(tem).E_m / quantize(tem).E_zpf - 1.0));
      record(tem, 1.0);
      for (int n = 1; n <= 3; ++n) record(make_mode(plates, ModeId::te_plates(n, l)), std::sqrt(2.0));
      for (double w : {0.013, 0.02, 0.031}) {
        const auto rect = Geometry::rectangular(w, 0.01, L);
        for (int m = 1; m <= 3; ++m) record(make_mode(rect, ModeId::te_rect(0, m, l)), std::sqrt(2.0));
        for (int n = 1; n <= 3; ++n) {
          for (int m = 1; m <= 3; ++m) {
            const Mode te = make_mode(rect, ModeId::te_rect(n, m, l));
            record(te, std::sqrt(4.0 / (1.0 + std::pow(te.kcy() / te.kcx(), 2))));
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = tem_dev <= 4 * std::numeric_limits<double>::epsilon() && worst_ratio <= 1e-12 && worst_def <= 1e-12;
  o.detail = "TEM |ratio-1| " + sci(tem_dev) + ", ratios " + sci(worst_ratio) + ", vs definition " +
             sci(worst_def);
  return o;
}

Outcome maxwell_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  double worst = 0.0;
  double min_order = 1e9;
  double max_order = -1e9;
  for (auto cls : wgtest::all_classes()) {
    for (int draw = 0; draw < 5; ++draw) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const double t = phase(rng) / mode.omega();
      for (Frame frame : {Frame::TopBottom, Frame::LeftRight}) {
        if (!frame_valid(mode, frame)) continue;
        const double E = frame == Frame::TopBottom ? 1.0 : convert_frame(mode, 1.0, Frame::TopBottom, frame);
        worst = std::max(worst, maxwell_residual(mode, frame, q, E, VolumeGrid{}, t, default_stencil(mode)).relative);
      }
      const auto study = convergence_study(
          [&](double h) {
            return maxwell_residual(mode, Frame::TopBottom, q, 1.0, {5, 5, 5}, t,
                                    stencil_with_divisions(mode, 1.0 / h, 0.5))
                .relative;
          },
          1.0 / 16.0, 3);
      min_order = std::min(min_order, study.observed_order());
      max_order = std::max(max_order, study.observed_order());
    }
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = worst < 1e-6 && min_order >= 1.9 && max_order <= 2.1 && secs < 30.0;
  o.detail = "30 draws, max residual " + sci(worst) + " (< 1e-6), observed order in [" + sci(min_order) + ", " +
             sci(max_order) + "], " + sci(secs) + " s";
  return o;
}

Outcome constants_of_motion() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> when(0.0, 20.0);
  double worst_H = 0.0;
  double worst_P = 0.0;
  double worst_J = 0.0;
  double worst_t = 0.0;
  for (auto cls : wgtest::all_classes()) {
    for (int draw = 0; draw < 5; ++draw) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const double E = quantize(mode).E_m_reference;
      const ClassicalConstants cf = closed_form_constants(mode, q);
      const MotionConstants ref = motion_by_quadrature(mode, q, E, 0.0);
      worst_H = std::max(worst_H, rel(ref.H, cf.H));
      worst_P = std::max(worst_P, rel(ref.P.z(), cf.P_z));
      worst_J = std::max(worst_J, ref.J.norm() * mode.omega() / ref.H);
      for (int i = 0; i < 8; ++i) {
        const MotionConstants at = motion_by_quadrature(mode, q, E, when(rng) / mode.omega());
        worst_t = std::max({worst_t, rel(at.H, ref.H), rel(at.P.z(), ref.P.z())});
        worst_J = std::max(worst_J, at.J.norm() * mode.omega() / at.H);
      }
    }
  }
  Outcome o;
  o.pass = worst_H <= 1e-8 && worst_P <= 1e-8 && worst_J <= 1e-10 && worst_t <= 1e-10;
  o.detail = "H " + sci(worst_H) + ", P_z " + sci(worst_P) + " (1e-8), |J| w/H " + sci(worst_J) +
             " (1e-10), drift over 8 t " + sci(worst_t) + " (1e-10)";
  return o;
}

Outcome gauge_suite() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  double lorenz = 0.0;
  double recon = 0.0;
  double links = 0.0;
  for (auto cls : wgtest::all_classes()) {
    for (int draw = 0; draw < 5; ++draw) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const double t = phase(rng) / mode.omega();
      lorenz = std::max(lorenz, lorenz_residual(mode, VolumeGrid{}, q, 1.0, t).relative);
      recon = std::max(recon,
                       reconstruction_residual(mode, VolumeGrid{9, 9, 9}, q, 1.0, t, default_stencil(mode)).relative);
      links = std::max(links, flux_link_residual(mode, q, 1.0).relative);
    }
  }
  Outcome o;
  o.pass = lorenz <= 1e-6 && recon <= 1e-6 && links <= 1e-10;
  o.detail = "Lorenz " + sci(lorenz) + ", reconstruction " + sci(recon) + " (1e-6), flux links " + sci(links) +
             " (1e-10)";
  return o;
}

Outcome propagation_discrimination() {
  std::mt19937_64 rng(61);
  const PropagationLaw laws[] = {PropagationLaw::Wave, PropagationLaw::PhaseVelocity, PropagationLaw::KleinGordon};
  bool own_ok = true;
  std::string violations;
  std::set<std::string> reported;
  for (auto cls : wgtest::all_classes()) {
    for (int draw = 0; draw < 3; ++draw) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const Pair pair = canonical_pair(mode);
      const PropagationLaw own = propagation_law(mode);
      own_ok = own_ok && flux_propagation_residual(mode, pair, own, q, 1.0).relative < 1e-8;
      for (PropagationLaw other : laws) {
        if (other == own) continue;
        const auto r = flux_propagation_residual(mode, pair, other, q, 1.0);
        // A residual at rounding level is not a violation, whatever k_c is.
        const bool violated = r.absolute > 0.1 * mode.kc() * mode.kc() * r.phi_max && r.relative > 1e-8;
        const std::string key = to_string(cls) + " " + to_string(other);
        if (!violated && reported.insert(key).second) {
          violations += (violations.empty() ? "" : "; ") + key + " residual " + sci(r.relative);
        }
      }
    }
  }
  Outcome o;
  o.pass = own_ok && violations.empty();
  o.detail = std::string("own law < 1e-8: ") + (own_ok ? "yes" : "no") +
             (violations.empty() ? "" : "; also satisfied: " + violations);
  return o;
}

Outcome quantum_algebra() {
  const LadderReport base = ladder_algebra_check(16, constants::pi / 3.0);
  const LadderReport small = ladder_algebra_check(10, 0.0);
  double rotations = 0.0;
  for (double theta0 : {0.1, 1.0, 2.0, -2.5}) rotations = std::max(rotations, ladder_algebra_check(16, theta0).worst());
  std::mt19937_64 rng(9);
  double scaling = 0.0;
  for (auto cls : wgtest::all_classes()) {
    const Mode mode = wgtest::random_mode(cls, rng);
    for (double alpha : {0.5, -0.5, 2.0, -2.0}) scaling = std::max(scaling, scaling_invariance_check(mode, alpha).worst());
  }
  Outcome o;
  o.pass = base.passed() && small.passed() && rotations <= base.tolerance && scaling <= 1e-12;
  o.detail = "ladder identities " + sci(base.worst()) + " (tol " + sci(base.tolerance) + "), mirrored commutator " +
             sci(base.mirrored_commutator) + ", theta0 sweep " + sci(rotations) + ", alpha scaling " + sci(scaling);
  return o;
}

Outcome cross_pair() {
  std::mt19937_64 rng(88);
  double fields = 0.0;
  double energy = 0.0;
  double closure = 0.0;
  for (auto cls : {FamilyClass::TMnm, FamilyClass::TEnm}) {
    for (int draw = 0; draw < 10; ++draw) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const double Ep = convert_frame(mode, 1.0, Frame::TopBottom, Frame::LeftRight);
      double peak = 0.0;
      double diff = 0.0;
      for (const Vec3& r : interior_points(mode, VolumeGrid{7, 7, 7})) {
        const FieldSample a = eval_fields(mode, Frame::TopBottom, q, 1.0, r, 0.0);
        const FieldSample b = eval_fields(mode, Frame::LeftRight, q, Ep, r, 0.0);
        peak = std::max({peak, a.E.norm(), constants::c * a.B.norm()});
        diff = std::max({diff, (a.E - b.E).norm(), constants::c * (a.B - b.B).norm()});
      }
      fields = std::max(fields, diff / peak);
      const MotionConstants vol = motion_by_quadrature(mode, q, 1.0);
      for (Pair pair : {Pair::TopBottom, Pair::LeftRight}) {
        const FluxFormEnergy line = energy_by_modal_line(mode, pair, q, 1.0);
        energy = std::max({energy, rel(line.H(), vol.H), rel(line.P_z, vol.P.z())});
        const QuantumAmplitudes qa = quantize(mode, pair);
        closure = std::max(closure, rel(qa.action(mode.omega()), hbar));
        const MotionConstants quantum = motion_by_quadrature(mode, q, qa.E_m_reference);
        closure = std::max(closure, rel(quantum.H, closed_form_constants(mode, q).H));
      }
    }
  }
  Outcome o;
  o.pass = fields <= 1e-8 && energy <= 1e-8 && closure <= 1e-8;
  o.detail = "fields " + sci(fields) + ", H and P per pair " + sci(energy) + ", hbar closure " + sci(closure) +
             " (1e-8)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"zero-point ratio curve of the square TM(1,1) guide", zpf_curve},
      {"zero-point amplitudes by family", zero_point_amplitudes},
      {"Maxwell residuals and convergence", maxwell_suite},
      {"constants of motion", constants_of_motion},
      {"potentials and flux links", gauge_suite},
      {"propagation-law discrimination", propagation_discrimination},
      {"quadrature algebra and scaling", quantum_algebra},
      {"electrode-pair equivalence", cross_pair},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const bool excused = !o.pass && known_infeasible.count(id) > 0;
    std::printf("%s %d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.detail.c_str(),
                excused ? " [not attainable]" : "");
    if (!o.pass && !excused) ++failures;
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
