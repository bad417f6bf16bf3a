#include <cmath>
#include <random>

#include "support.hpp"
#include "wgquant/constants.hpp"
#include "wgquant/gauge.hpp"

using namespace wgquant;
using wgtest::code_of;

TEST_CASE("TEM potentials") {
  const auto tem = make_mode(Geometry::plates(20.0, 1.0, 2.0), ModeId::tem(1));
  const Quadratures q{1.0, 0.0, 0.0};
  const auto mid = eval_potentials(tem, q, 1.0, Vec3(0.4, 0.0, 0.3), 0.1);
  CHECK(mid.A.z() == 0.0);
  CHECK(mid.V == 0.0);
  const double phi_m = 1.0 * 1.0 / tem.omega();
  const auto top = eval_potentials(tem, q, 1.0, Vec3(0.0, 0.5, 0.0), 0.0);
  CHECK(top.V == doctest::Approx(phi_m * tem.omega() / 2).epsilon(1e-15));
}

TEST_CASE("plate TE scalar potential") {
  const auto te = make_mode(Geometry::plates(20.0, 1.0, 2.0), ModeId::te_plates(1, 1));
  const Quadratures q{0.3, -0.7, 0.2};
  const double phip = 1.0 * 20.0 / te.omega();
  for (double y : {-0.4, 0.0, 0.33}) {
    const double z = 0.7;
    const double t = 1e-10;
    const double expected = phip * te.omega() * 0.5 * std::sin(te.kc() * (y + 0.5)) * f(q, te.beta(), te.omega(), z, t);
    CHECK(eval_potentials(te, q, 1.0, Vec3(1.0, y, z), t).V == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("gauge ledgers and parity coefficients") {
  const auto plates = Geometry::plates(20.0, 1.0, 2.0);
  const auto rect = Geometry::rectangular(2.0, 1.0, 2.0);
  CHECK(gauge_ledger(make_mode(plates, ModeId::tem())).free.size() == 2);
  CHECK(gauge_ledger(make_mode(plates, ModeId::te_plates(1))).free.empty());
  CHECK(gauge_ledger(make_mode(rect, ModeId::te_rect(0, 2))).free.empty());
  CHECK(gauge_ledger(make_mode(rect, ModeId::tm_rect(1, 1))).fixed.size() == 6);

  CHECK(parity(make_mode(plates, ModeId::tem())).sigma == -1);
  CHECK(parity(make_mode(plates, ModeId::tm_plates(1))).sigma == -1);
  CHECK(parity(make_mode(plates, ModeId::tm_plates(2))).sigma == 1);
  CHECK_FALSE(parity(make_mode(plates, ModeId::te_plates(1))).sigma.has_value());
  CHECK(parity(make_mode(plates, ModeId::te_plates(1))).sigma_prime == 1);
  CHECK(parity(make_mode(rect, ModeId::te_rect(0, 3))).sigma == 1);
  const auto p = parity(make_mode(rect, ModeId::te_rect(2, 3)));
  CHECK(p.sigma == 1);
  CHECK(p.sigma_prime == -1);
}

TEST_CASE("potential differences") {
  const auto plates = Geometry::plates(20.0, 1.0, 2.0);
  const Quadratures q{0.9, 0.2, 0.0};
  const auto tem = make_mode(plates, ModeId::tem(1));
  const auto dp = delta_potentials(tem, Pair::TopBottom, q, 1.0, 0.0, 0.2, 0.0);
  const double vt = eval_potentials(tem, q, 1.0, Vec3(0, 0.5, 0.2), 0.0).V;
  const double vb = eval_potentials(tem, q, 1.0, Vec3(0, -0.5, 0.2), 0.0).V;
  CHECK(dp.dV == doctest::Approx(vt - vb));

  const auto tm2 = make_mode(plates, ModeId::tm_plates(2, 1));
  const auto d2 = delta_potentials(tm2, Pair::TopBottom, q, 1.0, 0.0, 0.2, 0.0);
  const double v2t = eval_potentials(tm2, q, 1.0, Vec3(0, 0.5, 0.2), 0.0).V;
  const double v2b = eval_potentials(tm2, q, 1.0, Vec3(0, -0.5, 0.2), 0.0).V;
  CHECK(d2.dV == doctest::Approx(v2t + v2b));

  const auto te = make_mode(Geometry::rectangular(2.0, 1.0, 2.0), ModeId::te_rect(1, 1, 1));
  CHECK_NOTHROW(delta_potentials(te, Pair::TopBottom, q, 1.0, 0.1, 0.2, 0.0));
  CHECK_NOTHROW(delta_potentials(te, Pair::LeftRight, q, 1.0, 0.1, 0.2, 0.0));
  CHECK(code_of([&] { delta_potentials(tem, Pair::LeftRight, q, 1.0, 0.0, 0.0, 0.0); }) ==
        ErrorCode::UndefinedElectrode);
  const auto tep = make_mode(plates, ModeId::te_plates(1, 1));
  CHECK(code_of([&] { delta_potentials(tep, Pair::TopBottom, q, 1.0, 0.0, 0.0, 0.0); }) ==
        ErrorCode::UndefinedElectrode);
}

TEST_CASE("Lorenz residual examples") {
  const Quadratures q{0.5, 0.8, 0.3};
  const auto tem = make_mode(Geometry::plates(20.0, 1.0, 2.0), ModeId::tem(1));
  CHECK(lorenz_residual(tem, {9, 9, 9}, q, 1.0, 0.0).relative < 1e-10);
  const auto te21 = make_mode(Geometry::rectangular(1.5, 1.0, 4.0), ModeId::te_rect(2, 1, 1));
  CHECK(lorenz_residual(te21, {9, 9, 9}, q, 1.0, 0.0).relative < 1e-6);
  const auto tm11 = make_mode(Geometry::rectangular(1.5, 1.0, 4.0), ModeId::tm_rect(1, 1, 1));
  const auto study = convergence_study(
      [&](double h) { return lorenz_residual(tm11, {5, 5, 5}, q, 1.0, 0.0, stencil_with_divisions(tm11, 1.0 / h, 0.5)).relative; },
      1.0 / 16, 3);
  CHECK(study.observed_order() > 1.9);
  CHECK(study.observed_order() < 2.1);
}

TEST_CASE("field reconstruction examples") {
  const Quadratures q{0.5, 0.8, 0.3};
  const auto tem = make_mode(Geometry::plates(20.0, 1.0, 2.0), ModeId::tem(1));
  CHECK(reconstruction_residual(tem, {7, 7, 7}, q, 1.0, 0.0, default_stencil(tem)).relative <= 1e-8);
  const auto tm = make_mode(Geometry::plates(20.0, 1.0, 2.0), ModeId::tm_plates(1, 1));
  CHECK(reconstruction_residual(tm, {7, 7, 7}, q, 1.0, 0.0, default_stencil(tm)).relative <= 1e-6);
  const auto te = make_mode(Geometry::rectangular(2.0, 1.0, 2.0), ModeId::te_rect(1, 1, 1));
  CHECK(reconstruction_residual(te, {7, 7, 7}, q, 1.0, 0.0, default_stencil(te)).relative <= 1e-6);
  CHECK(code_of([&] { reconstruct_fields(te, q, 1.0, Vec3(0.0, 0.5, 0.0), 0.0); }) == ErrorCode::StencilOutOfBounds);
  CHECK(code_of([&] { eval_potentials(te, q, 1.0, Vec3(1.2, 0.0, 0.0), 0.0); }) == ErrorCode::OutOfCrossSection);
}

TEST_CASE("property: gauge suite over every family") {
  std::mt19937_64 rng(1312);
  for (auto cls : wgtest::all_classes()) {
    for (int trial = 0; trial < 4; ++trial) {
      const Mode mode = wgtest::random_mode(cls, rng);
      const auto q = wgtest::random_quadratures(rng);
      const double t = 0.37 / mode.omega();
      INFO(to_string(mode.id));
      CHECK(lorenz_residual(mode, {5, 5, 5}, q, 1.0, t).relative < 1e-6);
      CHECK(reconstruction_residual(mode, {5, 5, 5}, q, 1.0, t, default_stencil(mode)).relative < 1e-6);
      CHECK(flux_link_residual(mode, q, 1.0).relative < 1e-10);
    }
  }
}

TEST_CASE("property: residual gauge freedom changes no observable") {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto cls : {FamilyClass::TEM, FamilyClass::TMn, FamilyClass::TMnm, FamilyClass::TEnm}) {
    const Mode mode = wgtest::random_mode(cls, rng);
    const auto q = wgtest::random_quadratures(rng);
    // Free coefficients of the same size as the tabulated flux amplitude.
    const double scale = flux_field(mode, Pair::TopBottom, q, 1.0).phi_m;
    const auto st = default_stencil(mode);
    for (int i = 0; i < 10; ++i) {
      const GaugeFreedom fr{u(rng) * scale, u(rng) * scale};
      INFO(to_string(mode.id));
      double de = 0.0;
      double db = 0.0;
      double emax = 0.0;
      double bmax = 0.0;
      for (const Vec3& p : interior_points(mode, {3, 3, 3})) {
        const auto fixed = reconstruct_fields(mode, q, 1.0, p, 0.0, st);
        const auto shifted = reconstruct_fields(mode, q, 1.0, p, 0.0, st, fr);
        const auto exact = eval_fields(mode, Frame::TopBottom, q, 1.0, p, 0.0);
        de = std::max(de, (fixed.E - shifted.E).norm());
        db = std::max(db, (fixed.B - shifted.B).norm());
        emax = std::max(emax, exact.E.norm());
        bmax = std::max(bmax, exact.B.norm());
      }
      CHECK(de / emax < 1e-6);
      CHECK(db / bmax < 1e-6);
      CHECK(lorenz_residual(mode, {3, 3, 3}, q, 1.0, 0.0, st, fr).relative < 1e-6);
      CHECK(flux_link_residual(mode, q, 1.0, 16, fr).relative < 1e-10);
      // The potentials themselves do change.
      const Vec3 r(0.1 * mode.guide.w, 0.1 * mode.guide.d, 0.3);
      const auto a = eval_potentials(mode, q, 1.0, r, 0.0);
      const auto b = eval_potentials(mode, q, 1.0, r, 0.0, fr);
      CHECK((a.A - b.A).norm() + std::abs(a.V - b.V) > 0.0);
    }
  }
  const Mode te = wgtest::random_mode(FamilyClass::TEn, rng);
  CHECK(code_of([&] { eval_potentials(te, {}, 1.0, Vec3::Zero(), 0.0, {1.0, 0.0}); }) == ErrorCode::InvalidMode);
}
