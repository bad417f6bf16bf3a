#pragma once

#include "wgquant/geometry.hpp"
#include "wgquant/numerics.hpp"
#include "wgquant/types.hpp"

namespace wgquant {

// Electrode pair an amplitude (or a flux) is referenced to.
enum class Frame { TopBottom, LeftRight };
using Pair = Frame;

std::string to_string(Frame f);

struct Quadratures {
  double X = 1.0;
  double Y = 0.0;
  double theta0 = 0.0;
};

// f = X cos(theta) + Y sin(theta), f_tilde = X sin(theta) - Y cos(theta), theta = omega t - beta z + theta0.
struct Traveling {
  double f = 0.0;
  double f_tilde = 0.0;
};

double phase(const Quadratures& q, double beta, double omega, double z, double t);
Traveling traveling(const Quadratures& q, double beta, double omega, double z, double t);
inline double f(const Quadratures& q, double beta, double omega, double z, double t) {
  return traveling(q, beta, omega, z, t).f;
}
inline double f_tilde(const Quadratures& q, double beta, double omega, double z, double t) {
  return traveling(q, beta, omega, z, t).f_tilde;
}

// Modal amplitudes: e = (g_Ex, g_Ey, g_Ez), b = (g_Bx, g_By, g_Bz).
struct GVector {
  Vec3 e = Vec3::Zero();
  Vec3 b = Vec3::Zero();
};

struct FieldSample {
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
};

bool frame_valid(const Mode& mode, Frame frame);
void require_frame(const Mode& mode, Frame frame);
void require_inside(const Geometry& g, double x, double y);

GVector eval_g(const Mode& mode, Frame frame, double x, double y);
FieldSample eval_fields(const Mode& mode, Frame frame, const Quadratures& q, double E_m, const Vec3& r, double t);

double convert_frame(const Mode& mode, double E_m, Frame from, Frame to);

// Central-difference step: about 4096 sqrt(aspect ratio) steps per fastest half-oscillation,
// ht = h / v_phi.
Stencil<double> default_stencil(const Mode& mode);
Stencil<double> stencil_with_divisions(const Mode& mode, double divisions, double time_ratio = 1.0);

// Cross-section as a finite-difference domain (z unbounded).
Box<double> cross_section_box(const Geometry& g);

// Strictly interior sample points; z covers one wavelength.
struct VolumeGrid {
  int nx = 17;
  int ny = 17;
  int nz = 17;
};

std::vector<Vec3> interior_points(const Mode& mode, const VolumeGrid& grid);

struct Residual {
  double absolute = 0.0;
  double relative = 0.0;
};

// Max over the grid of the four Maxwell residuals, each scaled by k times the peak field magnitude.
Residual maxwell_residual(const Mode& mode, Frame frame, const Quadratures& q, double E_m, const VolumeGrid& grid,
                          double t, const Stencil<double>& st);

// Tangential E and normal B on the conducting walls (y = +-d/2, and x = +-w/2 for a closed guide),
// sampled over ns points per wall and nz points along one wavelength. Relative to the peak |E|
// and c|B| on the volume grid.
Residual wall_residual(const Mode& mode, const Quadratures& q, double E_m, double t, int ns = 33, int nz = 17);

}  // namespace wgquant
