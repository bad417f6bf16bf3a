#include "wgquant/fields.hpp"

#include <algorithm>
#include <cmath>

#include "wgquant/constants.hpp"
#include "wgquant/error.hpp"

namespace wgquant {

using constants::c;

namespace {

double parity(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

std::string to_string(Frame f) { return f == Frame::TopBottom ? "TopBottom" : "LeftRight"; }

double phase(const Quadratures& q, double beta, double omega, double z, double t) {
  return omega * t - beta * z + q.theta0;
}

Traveling traveling(const Quadratures& q, double beta, double omega, double z, double t) {
  const double th = phase(q, beta, omega, z, t);
  const double cs = std::cos(th);
  const double sn = std::sin(th);
  return {q.X * cs + q.Y * sn, q.X * sn - q.Y * cs};
}

bool frame_valid(const Mode& mode, Frame frame) {
  if (frame == Frame::TopBottom) return true;
  return mode.cls == FamilyClass::TEn || mode.cls == FamilyClass::TMnm || mode.cls == FamilyClass::TEnm;
}

void require_frame(const Mode& mode, Frame frame) {
  if (!frame_valid(mode, frame)) {
    throw Error(ErrorCode::InvalidFrame, to_string(frame) + " frame is not defined for " + to_string(mode.id));
  }
}

void require_inside(const Geometry& g, double x, double y) {
  const double tx = 0.5 * g.w * (1.0 + 1e-12);
  const double ty = 0.5 * g.d * (1.0 + 1e-12);
  if (!(std::abs(x) <= tx) || !(std::abs(y) <= ty)) {
    throw Error(ErrorCode::OutOfCrossSection, "point outside the guide cross-section");
  }
}

GVector eval_g(const Mode& mode, Frame frame, double x, double y) {
  require_frame(mode, frame);
  require_inside(mode.guide, x, y);
  const double beta = mode.beta();
  const double k = mode.k();
  const double kc = mode.kc();
  const double kcx = mode.kcx();
  const double kcy = mode.kcy();
  const double u = x + 0.5 * mode.guide.w;
  const double v = y + 0.5 * mode.guide.d;
  GVector g;
  switch (mode.cls) {
    case FamilyClass::TEM:
      g.e = Vec3(0.0, -1.0, 0.0);
      g.b = Vec3(beta > 0.0 ? 1.0 : -1.0, 0.0, 0.0);
      break;
    case FamilyClass::TMn: {
      const double s = parity(mode.id.n);
      const double cv = std::cos(kc * v);
      const double sv = std::sin(kc * v);
      g.e = Vec3(0.0, -s * cv, s * (kc / beta) * sv);
      g.b = Vec3(s * (k / beta) * cv, 0.0, 0.0);
      break;
    }
    case FamilyClass::TEn: {
      const double sv = std::sin(kc * v);
      const double cv = std::cos(kc * v);
      g.e = Vec3(-sv, 0.0, 0.0);
      g.b = Vec3(0.0, -(beta / k) * sv, -(kc / k) * cv);
      break;
    }
    case FamilyClass::TE0m: {
      const double su = std::sin(kcx * u);
      const double cu = std::cos(kcx * u);
      g.e = Vec3(0.0, -su, 0.0);
      g.b = Vec3((beta / k) * su, 0.0, (kcx / k) * cu);
      break;
    }
    case FamilyClass::TMnm:
    case FamilyClass::TEnm: {
      const double cu = std::cos(kcx * u);
      const double su = std::sin(kcx * u);
      const double cv = std::cos(kcy * v);
      const double sv = std::sin(kcy * v);
      const double CS = cu * sv;
      const double SC = su * cv;
      const double SS = su * sv;
      const double CC = cu * cv;
      const double sn = parity(mode.id.n);
      const double sm = parity(mode.id.m);
      const double kc2 = kc * kc;
      if (mode.cls == FamilyClass::TMnm) {
        if (frame == Frame::TopBottom) {
          g.e = Vec3(-sn * (kcx / kcy) * CS, -sn * SC, sn * kc2 / (kcy * beta) * SS);
          g.b = Vec3(sn * (k / beta) * SC, -sn * (k * kcx / (kcy * beta)) * CS, 0.0);
        } else {
          g.e = Vec3(-sm * CS, -sm * (kcy / kcx) * SC, sm * kc2 / (kcx * beta) * SS);
          g.b = Vec3(sm * (k * kcy / (kcx * beta)) * SC, -sm * (k / beta) * CS, 0.0);
        }
      } else {
        if (frame == Frame::TopBottom) {
          g.e = Vec3(sn * (kcy / kcx) * CS, -sn * SC, 0.0);
          g.b = Vec3(sn * (beta / k) * SC, sn * (kcy * beta / (kcx * k)) * CS, sn * kc2 / (kcx * k) * CC);
        } else {
          g.e = Vec3(-sm * CS, sm * (kcx / kcy) * SC, 0.0);
          g.b = Vec3(-sm * (kcx * beta / (kcy * k)) * SC, -sm * (beta / k) * CS, -sm * kc2 / (kcy * k) * CC);
        }
      }
      break;
    }
  }
  return g;
}

FieldSample eval_fields(const Mode& mode, Frame frame, const Quadratures& q, double E_m, const Vec3& r, double t) {
  const GVector g = eval_g(mode, frame, r.x(), r.y());
  const Traveling tr = traveling(q, mode.beta(), mode.omega(), r.z(), t);
  const Vec3 shape(tr.f, tr.f, tr.f_tilde);
  FieldSample s;
  s.E = E_m * g.e.cwiseProduct(shape);
  s.B = (E_m / c) * g.b.cwiseProduct(shape);
  return s;
}

double convert_frame(const Mode& mode, double E_m, Frame from, Frame to) {
  require_frame(mode, from);
  require_frame(mode, to);
  if (from == to || mode.cls == FamilyClass::TEn) return E_m;
  const double snm = parity(mode.id.n + mode.id.m);
  const double ratio = mode.kcx() / mode.kcy();
  const bool forward = from == Frame::TopBottom;
  if (mode.cls == FamilyClass::TMnm) return forward ? snm * E_m * ratio : snm * E_m / ratio;
  return forward ? -snm * E_m / ratio : -snm * E_m * ratio;
}

Stencil<double> stencil_with_divisions(const Mode& mode, double divisions, double time_ratio) {
  const double transverse = std::min(mode.guide.w, mode.guide.d) / mode.index_scale();
  const double h = std::min(transverse, 0.5 * mode.wavelength()) / divisions;
  return Stencil<double>::uniform(h, time_ratio * h / mode.disp.v_phi);
}

Stencil<double> default_stencil(const Mode& mode) {
  // Potentials of the plate-like modes grow across the long side, so differences of them cancel
  // by a factor that scales with the aspect ratio; the step shrinks to keep the error fixed.
  const double aspect = std::max(mode.guide.w, mode.guide.d) / std::min(mode.guide.w, mode.guide.d);
  return stencil_with_divisions(mode, 4096.0 * std::sqrt(aspect));
}

Box<double> cross_section_box(const Geometry& g) {
  const double inf = std::numeric_limits<double>::infinity();
  return {Vec3(-0.5 * g.w, -0.5 * g.d, -inf), Vec3(0.5 * g.w, 0.5 * g.d, inf)};
}

std::vector<Vec3> interior_points(const Mode& mode, const VolumeGrid& grid) {
  if (grid.nx < 1 || grid.ny < 1 || grid.nz < 1) throw Error(ErrorCode::GridTooCoarse, "empty sample grid");
  const double w = mode.guide.w;
  const double d = mode.guide.d;
  const double lam = mode.wavelength();
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(grid.nx) * grid.ny * grid.nz);
  for (int k = 0; k < grid.nz; ++k) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        pts.emplace_back(-0.5 * w + w * (i + 1) / (grid.nx + 1), -0.5 * d + d * (j + 1) / (grid.ny + 1),
                         lam * (k + 0.5) / grid.nz);
      }
    }
  }
  return pts;
}

Residual maxwell_residual(const Mode& mode, Frame frame, const Quadratures& q, double E_m, const VolumeGrid& grid,
                          double t, const Stencil<double>& st) {
  const auto box = std::optional<Box<double>>(cross_section_box(mode.guide));
  auto E = [&](const Vec3& p, double tt) { return eval_fields(mode, frame, q, E_m, p, tt).E; };
  auto B = [&](const Vec3& p, double tt) { return eval_fields(mode, frame, q, E_m, p, tt).B; };
  double emax = 0.0;
  double bmax = 0.0;
  double res_e = 0.0;
  double res_b = 0.0;
  for (const Vec3& p : interior_points(mode, grid)) {
    const FieldSample s = eval_fields(mode, frame, q, E_m, p, t);
    emax = std::max(emax, s.E.norm());
    bmax = std::max(bmax, s.B.norm());
    const double divE = fd_div(E, p, t, st, box);
    const double divB = fd_div(B, p, t, st, box);
    const Vec3 faraday = fd_curl(E, p, t, st, box) + fd_dt(B, p, t, st);
    const Vec3 ampere = fd_curl(B, p, t, st, box) - fd_dt(E, p, t, st) / (c * c);
    res_e = std::max({res_e, std::abs(divE), faraday.cwiseAbs().maxCoeff()});
    res_b = std::max({res_b, std::abs(divB), ampere.cwiseAbs().maxCoeff()});
  }
  const double k = mode.k();
  Residual r;
  r.absolute = std::max(res_e, res_b);
  r.relative = std::max(emax > 0.0 ? res_e / (k * emax) : 0.0, bmax > 0.0 ? res_b / (k * bmax) : 0.0);
  return r;
}

}  // namespace wgquant

namespace wgquant {

Residual wall_residual(const Mode& mode, const Quadratures& q, double E_m, double t, int ns, int nz) {
  if (ns < 2 || nz < 1) throw Error(ErrorCode::GridTooCoarse, "wall sampling needs ns >= 2 and nz >= 1");
  double peakE = 0.0;
  double peakB = 0.0;
  for (const Vec3& r : interior_points(mode, VolumeGrid{})) {
    const FieldSample fs = eval_fields(mode, Frame::TopBottom, q, E_m, r, t);
    peakE = std::max(peakE, fs.E.norm());
    peakB = std::max(peakB, fs.B.norm());
  }
  const double hw = 0.5 * mode.guide.w;
  const double hd = 0.5 * mode.guide.d;
  const double lam = mode.wavelength();
  double eworst = 0.0;
  double bworst = 0.0;
  for (int k = 0; k < nz; ++k) {
    const double z = lam * k / nz;
    for (int i = 0; i < ns; ++i) {
      const double u = -0.5 + static_cast<double>(i) / (ns - 1);
      for (double y : {hd, -hd}) {
        const FieldSample fs = eval_fields(mode, Frame::TopBottom, q, E_m, Vec3(u * 2 * hw, y, z), t);
        eworst = std::max({eworst, std::abs(fs.E.x()), std::abs(fs.E.z())});
        bworst = std::max(bworst, std::abs(fs.B.y()));
      }
      if (mode.guide.kind != GuideKind::Rectangular) continue;
      for (double x : {hw, -hw}) {
        const FieldSample fs = eval_fields(mode, Frame::TopBottom, q, E_m, Vec3(x, u * 2 * hd, z), t);
        eworst = std::max({eworst, std::abs(fs.E.y()), std::abs(fs.E.z())});
        bworst = std::max(bworst, std::abs(fs.B.x()));
      }
    }
  }
  const double rel = std::max(peakE > 0.0 ? eworst / peakE : 0.0, peakB > 0.0 ? bworst / peakB : 0.0);
  return {std::max(eworst, constants::c * bworst), rel};
}

}  // namespace wgquant
