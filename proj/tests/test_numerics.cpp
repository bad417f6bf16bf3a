#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "wgquant/numerics.hpp"

using namespace wgquant;

TEST_CASE("gauss-legendre three-point rule matches the closed form") {
  const auto r = gauss_legendre<double>(3);
  REQUIRE(r.size() == 3);
  CHECK(r.nodes[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(0.0));
  CHECK(r.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre is exact through degree 2n-1") {
  for (int n : {1, 2, 5, 8, 17, 64, 200}) {
    const auto r = gauss_legendre<double>(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-13));
    for (int deg = 0; deg <= std::min(2 * n - 1, 40); deg += 2) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      CHECK(s == doctest::Approx(2.0 / (deg + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-legendre instantiates for long double") {
  const auto r = gauss_legendre<long double>(6);
  long double s = 0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * r.nodes[i] * r.nodes[i] * r.nodes[i] * r.nodes[i];
  CHECK(static_cast<double>(s) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("composite rule integrates sin over a half period") {
  const auto r = composite_gauss<double>(0.0, std::numbers::pi, 6, 4);
  TensorRule<double, 1> rule{{r}};
  const double v = integrate([](const Eigen::Matrix<double, 1, 1>& p) { return std::sin(p[0]); }, rule);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("tensor integration is independent of the worker count") {
  TensorRule<double, 3> rule{{composite_gauss<double>(0, 1, 7, 3), composite_gauss<double>(-1, 2, 5, 2),
                              composite_gauss<double>(0, 3, 9, 1)}};
  auto fn = [](const Eigen::Vector3d& p) {
    return Eigen::Vector3d(p.x() * p.x() * p.y(), std::sin(p.z()) * p.x(), std::exp(-p.y() * p.z()));
  };
  const Eigen::Vector3d one = integrate(fn, rule, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    const Eigen::Vector3d many = integrate(fn, rule, w);
    CHECK(many[0] == one[0]);
    CHECK(many[1] == one[1]);
    CHECK(many[2] == one[2]);
  }
  // x^2 y over [0,1]x[-1,2]x[0,3]: (1/3)(3/2)(3) = 3/2
  CHECK(one[0] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("thread cap reads the environment") {
  ::setenv("WGQUANT_THREADS", "4", 1);
  CHECK(thread_cap() == 4u);
  ::setenv("WGQUANT_THREADS", "junk", 1);
  CHECK(thread_cap() == 1u);
  ::unsetenv("WGQUANT_THREADS");
  CHECK(thread_cap() == 1u);
}

TEST_CASE("finite-difference operators on polynomial fields are exact") {
  const Eigen::Vector3d p(0.3, -0.2, 0.7);
  const auto st = Stencil<double>::uniform(1e-3, 1e-3);
  auto rot = [](const Eigen::Vector3d& r, double) { return Eigen::Vector3d(-r.y(), r.x(), 0.0); };
  auto radial = [](const Eigen::Vector3d& r, double) { return r; };
  auto scalar = [](const Eigen::Vector3d& r, double t) { return r.x() * r.y() + 2.0 * r.z() + t * t; };
  const Eigen::Vector3d curl = fd_curl(rot, p, 0.0, st);
  CHECK(curl.z() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(curl.x()) < 1e-12);
  CHECK(fd_div(radial, p, 0.0, st) == doctest::Approx(3.0).epsilon(1e-12));
  const Eigen::Vector3d g = fd_grad(scalar, p, 0.5, st);
  CHECK(g.x() == doctest::Approx(-0.2).epsilon(1e-10));
  CHECK(g.y() == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(g.z() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fd_partial_scalar(scalar, p, 0.5, 3, st) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fd_second_scalar(scalar, p, 0.5, 3, st) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("central differences converge at second order") {
  const Eigen::Vector3d p(0.4, 0.0, 0.0);
  auto err = [&](double h) {
    const auto st = Stencil<double>::uniform(h, h);
    auto fn = [](const Eigen::Vector3d& r, double) { return std::sin(3.0 * r.x()); };
    return std::abs(fd_partial_scalar(fn, p, 0.0, 0, st) - 3.0 * std::cos(1.2));
  };
  const auto study = convergence_study(err, 0.05, 4);
  CHECK(study.observed_order() == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("stencils leaving the domain are rejected") {
  const Box<double> box{Eigen::Vector3d(-1, -1, -1), Eigen::Vector3d(1, 1, 1)};
  const auto st = Stencil<double>::uniform(0.1, 0.1);
  auto fn = [](const Eigen::Vector3d& r, double) { return r.x(); };
  CHECK_NOTHROW(fd_grad(fn, Eigen::Vector3d(0.5, 0, 0), 0.0, st, std::optional(box)));
  try {
    fd_grad(fn, Eigen::Vector3d(0.95, 0, 0), 0.0, st, std::optional(box));
    FAIL("expected StencilOutOfBounds");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::StencilOutOfBounds);
  }
}

TEST_CASE("five-point second difference converges at fourth order") {
  const Eigen::Vector3d p(0.0, 0.0, 0.3);
  auto err = [&](double h) {
    Stencil<double> st = Stencil<double>::uniform(h, h);
    st.order = 4;
    auto fn = [](const Eigen::Vector3d& r, double) { return std::sin(2.0 * r.z()); };
    return std::abs(fd_second_scalar(fn, p, 0.0, 2, st) + 4.0 * std::sin(0.6));
  };
  const auto study = convergence_study(err, 0.2, 3);
  CHECK(study.observed_order() > 3.8);
}

TEST_CASE("sin over one period and a separable cross-section product") {
  TensorRule<double, 1> one{{composite_gauss<double>(0.0, 2 * std::numbers::pi, 12, 2)}};
  CHECK(integrate([](const Eigen::Matrix<double, 1, 1>& x) { return std::sin(x[0]) * std::sin(x[0]); }, one) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));
  TensorRule<double, 1> poly{{gauss_legendre<double>(2)}};
  poly.axes[0] = composite_gauss<double>(0.0, 1.0, 2, 1);
  CHECK(integrate([](const Eigen::Matrix<double, 1, 1>& x) { return x[0] * x[0]; }, poly) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const double w = 1.7;
  const double d = 0.6;
  const double kx = 2 * std::numbers::pi / w;
  const double ky = 3 * std::numbers::pi / d;
  TensorRule<double, 2> rule{{composite_gauss<double>(-w / 2, w / 2, 24), composite_gauss<double>(-d / 2, d / 2, 32)}};
  const double v = integrate(
      [&](const Eigen::Vector2d& r) {
        return std::pow(std::cos(kx * (r.x() + w / 2)), 2) * std::pow(std::sin(ky * (r.y() + d / 2)), 2);
      },
      rule);
  CHECK(v == doctest::Approx(w * d / 4).epsilon(1e-14));
}

TEST_CASE("divergence of (sin x, 0, 0) at the origin meets the Taylor bound") {
  for (double h : {0.1, 0.01}) {
    const auto st = Stencil<double>::uniform(h, h);
    auto fn = [](const Eigen::Vector3d& r, double) { return Eigen::Vector3d(std::sin(r.x()), 0.0, 0.0); };
    CHECK(std::abs(fd_div(fn, Eigen::Vector3d(Eigen::Vector3d::Zero()), 0.0, st) - 1.0) <= h * h / 6.0);
  }
}
