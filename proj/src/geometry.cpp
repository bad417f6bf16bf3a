#include "wgquant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "wgquant/constants.hpp"
#include "wgquant/error.hpp"

namespace wgquant {

using constants::c;
using constants::pi;

void validate(const Geometry& g) {
  if (!(g.w > 0.0) || !(g.d > 0.0) || !(g.L > 0.0) || !std::isfinite(g.w) || !std::isfinite(g.d) ||
      !std::isfinite(g.L)) {
    throw Error(ErrorCode::InvalidGeometry, "w, d and L must be positive and finite");
  }
}

std::string validity_warning(const Geometry& g, double factor) {
  if (g.kind == GuideKind::ParallelPlates && !g.wide(factor)) {
    return "parallel plates with w < " + std::to_string(factor) + "*d: fringing fields are not modelled";
  }
  return {};
}

FamilyClass classify(const ModeId& id) {
  switch (id.family) {
    case Family::TEM: return FamilyClass::TEM;
    case Family::TMplates: return FamilyClass::TMn;
    case Family::TEplates: return FamilyClass::TEn;
    case Family::TMrect: return FamilyClass::TMnm;
    case Family::TErect:
      if (id.m == 0) return FamilyClass::TEn;
      if (id.n == 0) return FamilyClass::TE0m;
      return FamilyClass::TEnm;
  }
  throw Error(ErrorCode::InvalidMode, "unknown family");
}

bool is_te(FamilyClass cls) {
  return cls == FamilyClass::TEn || cls == FamilyClass::TE0m || cls == FamilyClass::TEnm;
}

bool is_tm(FamilyClass cls) { return cls == FamilyClass::TMn || cls == FamilyClass::TMnm; }

std::string to_string(Family f) {
  switch (f) {
    case Family::TEM: return "TEM";
    case Family::TMplates: return "TMplates";
    case Family::TEplates: return "TEplates";
    case Family::TMrect: return "TMrect";
    case Family::TErect: return "TErect";
  }
  return "?";
}

std::string to_string(FamilyClass cls) {
  switch (cls) {
    case FamilyClass::TEM: return "TEM";
    case FamilyClass::TMn: return "TM_n";
    case FamilyClass::TEn: return "TE_n";
    case FamilyClass::TE0m: return "TE_0m";
    case FamilyClass::TMnm: return "TM_nm";
    case FamilyClass::TEnm: return "TE_nm";
  }
  return "?";
}

std::string to_string(const ModeId& id) {
  std::string s = to_string(id.family);
  switch (id.family) {
    case Family::TEM: break;
    case Family::TMplates:
    case Family::TEplates: s += "(" + std::to_string(id.n) + ")"; break;
    case Family::TMrect:
    case Family::TErect: s += "(" + std::to_string(id.n) + "," + std::to_string(id.m) + ")"; break;
  }
  return s + " l=" + std::to_string(id.l);
}

Family parse_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "tem") return Family::TEM;
  if (s == "tmplates" || s == "tm_plates") return Family::TMplates;
  if (s == "teplates" || s == "te_plates") return Family::TEplates;
  if (s == "tmrect" || s == "tm_rect") return Family::TMrect;
  if (s == "terect" || s == "te_rect") return Family::TErect;
  throw Error(ErrorCode::InvalidMode, "unknown family '" + name + "'");
}

void validate(const Geometry& g, const ModeId& id) {
  validate(g);
  const bool plates = g.kind == GuideKind::ParallelPlates;
  switch (id.family) {
    case Family::TEM:
      if (!plates) throw Error(ErrorCode::InvalidMode, "TEM exists only between parallel plates");
      if (id.n != 0 || id.m != 0) throw Error(ErrorCode::InvalidMode, "TEM takes no transverse index");
      break;
    case Family::TMplates:
    case Family::TEplates:
      if (!plates) throw Error(ErrorCode::InvalidMode, "plate families need a parallel-plate guide");
      if (id.n < 1 || id.m != 0) throw Error(ErrorCode::InvalidMode, "plate modes need n >= 1 and m = 0");
      break;
    case Family::TMrect:
      if (plates) throw Error(ErrorCode::InvalidMode, "rectangular families need a rectangular guide");
      if (id.n < 1 || id.m < 1) throw Error(ErrorCode::InvalidMode, "TM rectangular modes need n, m >= 1");
      break;
    case Family::TErect:
      if (plates) throw Error(ErrorCode::InvalidMode, "rectangular families need a rectangular guide");
      if (id.n < 0 || id.m < 0 || (id.n == 0 && id.m == 0)) {
        throw Error(ErrorCode::InvalidMode, "TE rectangular modes need n, m >= 0, not both zero");
      }
      break;
  }
  if (id.l == 0) throw Error(ErrorCode::InvalidMode, "l = 0 is not a propagating solution");
}

Cutoff cutoff(const Geometry& g, const ModeId& id) {
  validate(g, id);
  Cutoff k;
  if (id.family != Family::TEM) {
    k.kcx = id.m * pi / g.w;
    k.kcy = id.n * pi / g.d;
    k.kc = std::hypot(k.kcx, k.kcy);
  }
  return k;
}

double cutoff_wavenumber(const Geometry& g, const ModeId& id) { return cutoff(g, id).kc; }

namespace {

DispersionPoint point_at(double beta, double kc) {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw Error(ErrorCode::DegenerateWavevector, "beta must be finite and nonzero");
  }
  DispersionPoint p;
  p.beta = beta;
  p.k_c = kc;
  p.k = std::sqrt(beta * beta + kc * kc);
  p.omega = c * p.k;
  p.v_phi = kc == 0.0 ? c : c * p.k / std::abs(beta);
  return p;
}

}  // namespace

DispersionPoint dispersion(const Geometry& g, const ModeId& id) {
  const double kc = cutoff_wavenumber(g, id);
  return point_at(2.0 * pi * static_cast<double>(id.l) / g.L, kc);
}

DispersionPoint dispersion_at_beta(const Geometry& g, const ModeId& id, double beta) {
  ModeId probe = id;
  if (probe.l == 0) probe.l = 1;
  return point_at(beta, cutoff_wavenumber(g, probe));
}

int Mode::index_scale() const { return std::max({id.n, id.m, 1}); }

double Mode::wavelength() const { return 2.0 * pi / std::abs(disp.beta); }

Mode make_mode(const Geometry& g, const ModeId& id) {
  Mode mode;
  mode.guide = g;
  mode.id = id;
  mode.cut = cutoff(g, id);
  mode.cls = classify(id);
  mode.disp = dispersion(g, id);
  return mode;
}

Mode make_mode_at_beta(const Geometry& g, const ModeId& id, double beta) {
  Mode mode;
  mode.guide = g;
  mode.id = id;
  if (mode.id.l == 0) mode.id.l = 1;
  mode.cut = cutoff(g, mode.id);
  mode.cls = classify(mode.id);
  mode.disp = point_at(beta, mode.cut.kc);
  return mode;
}

std::vector<Branch> enumerate_modes(const Geometry& g, double omega_max, int index_cap) {
  validate(g);
  std::vector<Branch> out;
  auto consider = [&](Family f, int n, int m) {
    const double kc = std::hypot(m * pi / g.w, n * pi / g.d);
    const double wc = c * kc;
    if (wc <= omega_max) out.push_back({f, n, m, kc, wc});
  };
  if (g.kind == GuideKind::ParallelPlates) {
    consider(Family::TEM, 0, 0);
    for (int n = 1; n <= index_cap; ++n) {
      consider(Family::TMplates, n, 0);
      consider(Family::TEplates, n, 0);
    }
  } else {
    for (int n = 0; n <= index_cap; ++n) {
      for (int m = 0; m <= index_cap; ++m) {
        if (n >= 1 && m >= 1) consider(Family::TMrect, n, m);
        if (n + m > 0) consider(Family::TErect, n, m);
      }
    }
  }
  // Cutoffs equal up to rounding (e.g. square guides) count as ties: snap each run of
  // near-equal values to its first member before the lexicographic sort.
  std::sort(out.begin(), out.end(), [](const Branch& a, const Branch& b) { return a.omega_c < b.omega_c; });
  std::vector<std::pair<double, Branch>> keyed;
  keyed.reserve(out.size());
  double rep = -1.0;
  for (const auto& b : out) {
    if (keyed.empty() || std::abs(b.omega_c - rep) > 1e-12 * std::max(b.omega_c, rep)) rep = b.omega_c;
    keyed.emplace_back(rep, b);
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first, a.second.family, a.second.n, a.second.m) <
           std::tie(b.first, b.second.family, b.second.n, b.second.m);
  });
  for (std::size_t i = 0; i < keyed.size(); ++i) out[i] = keyed[i].second;
  return out;
}

}  // namespace wgquant
