#pragma once

#include <string>
#include <vector>

namespace wgquant {

enum class GuideKind { ParallelPlates, Rectangular };

// Cross-section x in [-w/2, w/2], y in [-d/2, d/2]; periodic in z with period L.
struct Geometry {
  GuideKind kind = GuideKind::Rectangular;
  double w = 1.0;
  double d = 1.0;
  double L = 1.0;

  static Geometry plates(double w, double d, double L) { return {GuideKind::ParallelPlates, w, d, L}; }
  static Geometry rectangular(double w, double d, double L) { return {GuideKind::Rectangular, w, d, L}; }

  // Fringing is negligible only for plates much wider than their gap.
  bool wide(double factor = 10.0) const { return w >= factor * d; }
};

void validate(const Geometry& g);
// Non-fatal model-validity note (narrow plates), empty when none applies.
std::string validity_warning(const Geometry& g, double factor = 10.0);

enum class Family { TEM, TMplates, TEplates, TMrect, TErect };

// n counts half-oscillations along y (gap d), m along x (width w).
struct ModeId {
  Family family = Family::TEM;
  int n = 0;
  int m = 0;
  long l = 1;

  static ModeId tem(long l = 1) { return {Family::TEM, 0, 0, l}; }
  static ModeId tm_plates(int n, long l = 1) { return {Family::TMplates, n, 0, l}; }
  static ModeId te_plates(int n, long l = 1) { return {Family::TEplates, n, 0, l}; }
  static ModeId tm_rect(int n, int m, long l = 1) { return {Family::TMrect, n, m, l}; }
  static ModeId te_rect(int n, int m, long l = 1) { return {Family::TErect, n, m, l}; }

  bool operator==(const ModeId&) const = default;
};

// The six field/potential layouts. TE(n,0) shares the plate TE layout.
enum class FamilyClass { TEM, TMn, TEn, TE0m, TMnm, TEnm };

FamilyClass classify(const ModeId& id);
bool is_te(FamilyClass c);
bool is_tm(FamilyClass c);

std::string to_string(Family f);
std::string to_string(FamilyClass c);
std::string to_string(const ModeId& id);
Family parse_family(const std::string& name);

void validate(const Geometry& g, const ModeId& id);

struct Cutoff {
  double kcx = 0.0;
  double kcy = 0.0;
  double kc = 0.0;
};

Cutoff cutoff(const Geometry& g, const ModeId& id);
double cutoff_wavenumber(const Geometry& g, const ModeId& id);

struct DispersionPoint {
  double beta = 0.0;
  double k = 0.0;
  double omega = 0.0;
  double k_c = 0.0;
  double v_phi = 0.0;
};

DispersionPoint dispersion(const Geometry& g, const ModeId& id);
// Continuous-beta variant for plotting and sweeps; beta = 0 is rejected.
DispersionPoint dispersion_at_beta(const Geometry& g, const ModeId& id, double beta);

// A validated mode with its derived wavenumbers.
struct Mode {
  Geometry guide;
  ModeId id;
  FamilyClass cls = FamilyClass::TEM;
  Cutoff cut;
  DispersionPoint disp;

  double beta() const { return disp.beta; }
  double k() const { return disp.k; }
  double omega() const { return disp.omega; }
  double kc() const { return cut.kc; }
  double kcx() const { return cut.kcx; }
  double kcy() const { return cut.kcy; }
  // Largest transverse index, at least 1.
  int index_scale() const;
  double wavelength() const;
};

Mode make_mode(const Geometry& g, const ModeId& id);
Mode make_mode_at_beta(const Geometry& g, const ModeId& id, double beta);

struct Branch {
  Family family;
  int n = 0;
  int m = 0;
  double k_c = 0.0;
  double omega_c = 0.0;
};

// All branches with omega_c <= omega_max, ascending in omega_c; ties broken by (family, n, m).
std::vector<Branch> enumerate_modes(const Geometry& g, double omega_max, int index_cap = 50);

}  // namespace wgquant
