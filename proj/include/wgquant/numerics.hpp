#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "wgquant/error.hpp"
#include "wgquant/types.hpp"

namespace wgquant {

// Zero of the result type of a sampled function: arithmetic scalars or fixed-size Eigen objects.
template <typename T>
T zero_like() {
  if constexpr (std::is_arithmetic_v<T>) {
    return T(0);
  } else {
    return T::Zero();
  }
}

// ---------------------------------------------------------------------------
// Finite differences. Sampled functions are called as F(p, t) with p a 3-vector.
// Axis 0..2 are x, y, z; axis 3 is time.

template <typename Scalar>
struct Stencil {
  Vector3<Scalar> h = Vector3<Scalar>::Constant(Scalar(1e-6));
  Scalar ht = Scalar(1e-15);
  int order = 2;

  static Stencil uniform(Scalar hx, Scalar t_step) {
    Stencil s;
    s.h = Vector3<Scalar>::Constant(hx);
    s.ht = t_step;
    return s;
  }
};

template <typename Scalar>
struct Box {
  Vector3<Scalar> lo;
  Vector3<Scalar> hi;

  bool contains(const Vector3<Scalar>& p) const {
    for (int i = 0; i < 3; ++i) {
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    }
    return true;
  }
};

namespace detail {

template <typename Scalar>
void require_inside(const std::optional<Box<Scalar>>& domain, const Vector3<Scalar>& p) {
  if (domain && !domain->contains(p)) {
    throw Error(ErrorCode::StencilOutOfBounds, "finite-difference stencil leaves the domain");
  }
}

}  // namespace detail

template <typename Scalar, typename F>
auto fd_partial(F&& f, const Vector3<Scalar>& p, Scalar t, int axis, const Stencil<Scalar>& st,
                const std::optional<Box<Scalar>>& domain = std::nullopt) {
  if (axis == 3) {
    return ((f(p, t + st.ht) - f(p, t - st.ht)) / (Scalar(2) * st.ht)).eval();
  }
  Vector3<Scalar> plus = p;
  Vector3<Scalar> minus = p;
  plus[axis] += st.h[axis];
  minus[axis] -= st.h[axis];
  detail::require_inside(domain, plus);
  detail::require_inside(domain, minus);
  return ((f(plus, t) - f(minus, t)) / (Scalar(2) * st.h[axis])).eval();
}

template <typename Scalar, typename F>
auto fd_second(F&& f, const Vector3<Scalar>& p, Scalar t, int axis, const Stencil<Scalar>& st,
               const std::optional<Box<Scalar>>& domain = std::nullopt) {
  if (axis == 3) {
    const Scalar h = st.ht;
    return ((f(p, t + h) - Scalar(2) * f(p, t) + f(p, t - h)) / (h * h)).eval();
  }
  Vector3<Scalar> plus = p;
  Vector3<Scalar> minus = p;
  const Scalar h = st.h[axis];
  plus[axis] += h;
  minus[axis] -= h;
  detail::require_inside(domain, plus);
  detail::require_inside(domain, minus);
  return ((f(plus, t) - Scalar(2) * f(p, t) + f(minus, t)) / (h * h)).eval();
}

// Scalar-valued variants; Eigen's .eval() is not available on plain doubles.
template <typename Scalar, typename F>
Scalar fd_partial_scalar(F&& f, const Vector3<Scalar>& p, Scalar t, int axis, const Stencil<Scalar>& st,
                         const std::optional<Box<Scalar>>& domain = std::nullopt) {
  if (axis == 3) return (f(p, t + st.ht) - f(p, t - st.ht)) / (Scalar(2) * st.ht);
  Vector3<Scalar> plus = p;
  Vector3<Scalar> minus = p;
  plus[axis] += st.h[axis];
  minus[axis] -= st.h[axis];
  detail::require_inside(domain, plus);
  detail::require_inside(domain, minus);
  return (f(plus, t) - f(minus, t)) / (Scalar(2) * st.h[axis]);
}

// order 4 selects the five-point rule (error O(h^4)); anything else is the three-point rule.
template <typename Scalar, typename F>
Scalar fd_second_scalar(F&& f, const Vector3<Scalar>& p, Scalar t, int axis, const Stencil<Scalar>& st,
                        const std::optional<Box<Scalar>>& domain = std::nullopt) {
  const Scalar h = axis == 3 ? st.ht : st.h[axis];
  const int reach = st.order == 4 ? 2 : 1;
  auto at = [&](int k) {
    if (axis == 3) return f(p, t + Scalar(k) * h);
    Vector3<Scalar> q = p;
    q[axis] += Scalar(k) * h;
    return f(q, t);
  };
  if (axis != 3) {
    Vector3<Scalar> lo = p;
    Vector3<Scalar> hi = p;
    lo[axis] -= Scalar(reach) * h;
    hi[axis] += Scalar(reach) * h;
    detail::require_inside(domain, lo);
    detail::require_inside(domain, hi);
  }
  if (reach == 2) {
    return (-at(2) + Scalar(16) * at(1) - Scalar(30) * at(0) + Scalar(16) * at(-1) - at(-2)) / (Scalar(12) * h * h);
  }
  return (at(1) - Scalar(2) * at(0) + at(-1)) / (h * h);
}

template <typename Scalar, typename F>
Vector3<Scalar> fd_grad(F&& f, const Vector3<Scalar>& p, Scalar t, const Stencil<Scalar>& st,
                        const std::optional<Box<Scalar>>& domain = std::nullopt) {
  Vector3<Scalar> g;
  for (int i = 0; i < 3; ++i) g[i] = fd_partial_scalar(f, p, t, i, st, domain);
  return g;
}

// Jacobian J(i, j) = d f_i / d x_j of a 3-vector field.
template <typename Scalar, typename F>
Eigen::Matrix<Scalar, 3, 3> fd_jacobian(F&& f, const Vector3<Scalar>& p, Scalar t, const Stencil<Scalar>& st,
                                        const std::optional<Box<Scalar>>& domain = std::nullopt) {
  Eigen::Matrix<Scalar, 3, 3> J;
  for (int j = 0; j < 3; ++j) J.col(j) = fd_partial(f, p, t, j, st, domain);
  return J;
}

template <typename Scalar, typename F>
Scalar fd_div(F&& f, const Vector3<Scalar>& p, Scalar t, const Stencil<Scalar>& st,
              const std::optional<Box<Scalar>>& domain = std::nullopt) {
  return fd_jacobian(f, p, t, st, domain).trace();
}

template <typename Scalar, typename F>
Vector3<Scalar> fd_curl(F&& f, const Vector3<Scalar>& p, Scalar t, const Stencil<Scalar>& st,
                        const std::optional<Box<Scalar>>& domain = std::nullopt) {
  const auto J = fd_jacobian(f, p, t, st, domain);
  return Vector3<Scalar>(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
}

template <typename Scalar, typename F>
auto fd_dt(F&& f, const Vector3<Scalar>& p, Scalar t, const Stencil<Scalar>& st) {
  return fd_partial(f, p, t, 3, st);
}

// ---------------------------------------------------------------------------
// Gauss-Legendre quadrature.

template <typename Scalar>
struct AxisRule {
  std::vector<Scalar> nodes;
  std::vector<Scalar> weights;

  std::size_t size() const { return nodes.size(); }
};

// Nodes and weights on [-1, 1] by Newton iteration on the Legendre recurrence.
template <typename Scalar>
AxisRule<Scalar> gauss_legendre(int order) {
  if (order < 1) throw Error(ErrorCode::GridTooCoarse, "Gauss-Legendre order must be positive");
  AxisRule<Scalar> rule;
  if (order == 1) {
    rule.nodes = {Scalar(0)};
    rule.weights = {Scalar(2)};
    return rule;
  }
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Scalar x = std::cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(order) + Scalar(0.5)));
    Scalar dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Scalar p0 = 1;
      Scalar p1 = x;
      for (int k = 2; k <= order; ++k) {
        const Scalar p2 = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
        p0 = p1;
        p1 = p2;
      }
      dp = Scalar(order) * (x * p1 - p0) / (x * x - Scalar(1));
      const Scalar dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4)) break;
    }
    // Recompute the derivative at the converged node.
    Scalar p0 = 1;
    Scalar p1 = x;
    for (int k = 2; k <= order; ++k) {
      const Scalar p2 = ((Scalar(2 * k - 1)) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
      p0 = p1;
      p1 = p2;
    }
    dp = Scalar(order) * (x * p1 - p0) / (x * x - Scalar(1));
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0;
  return rule;
}

// Composite Gauss-Legendre rule on [a, b] with equal panels.
template <typename Scalar>
AxisRule<Scalar> composite_gauss(Scalar a, Scalar b, int order, int panels = 1) {
  if (panels < 1) throw Error(ErrorCode::GridTooCoarse, "panel count must be positive");
  const auto ref = gauss_legendre<Scalar>(order);
  AxisRule<Scalar> rule;
  rule.nodes.reserve(static_cast<std::size_t>(order) * panels);
  rule.weights.reserve(static_cast<std::size_t>(order) * panels);
  const Scalar width = (b - a) / Scalar(panels);
  for (int p = 0; p < panels; ++p) {
    const Scalar lo = a + width * Scalar(p);
    const Scalar mid = lo + width / Scalar(2);
    for (int i = 0; i < order; ++i) {
      rule.nodes.push_back(mid + width / Scalar(2) * ref.nodes[i]);
      rule.weights.push_back(width / Scalar(2) * ref.weights[i]);
    }
  }
  return rule;
}

template <typename Scalar, std::size_t Dim>
struct TensorRule {
  std::array<AxisRule<Scalar>, Dim> axes;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
  }
};

// Worker cap from WGQUANT_THREADS (default 1). Results never depend on it.
inline unsigned thread_cap() {
  const char* env = std::getenv("WGQUANT_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  return static_cast<unsigned>(std::min<long>(v, 256));
}

namespace detail {

template <typename Scalar, std::size_t Dim, typename F, typename Result>
Result integrate_slice(F& f, const TensorRule<Scalar, Dim>& rule, std::size_t i0) {
  Result acc = zero_like<Result>();
  Eigen::Matrix<Scalar, static_cast<int>(Dim), 1> point;
  point[0] = rule.axes[0].nodes[i0];
  const Scalar w0 = rule.axes[0].weights[i0];
  if constexpr (Dim == 1) {
    acc += w0 * f(point);
  } else {
    std::array<std::size_t, Dim> idx{};
    idx[0] = i0;
    while (true) {
      Scalar w = w0;
      for (std::size_t d = 1; d < Dim; ++d) {
        point[d] = rule.axes[d].nodes[idx[d]];
        w *= rule.axes[d].weights[idx[d]];
      }
      acc += w * f(point);
      std::size_t d = Dim - 1;
      while (d >= 1) {
        if (++idx[d] < rule.axes[d].size()) break;
        idx[d] = 0;
        --d;
      }
      if (d == 0) break;
    }
  }
  return acc;
}

}  // namespace detail

// Tensor-product quadrature of f(point). One partial sum per node of the first axis,
// combined in index order, so the result is bit-identical for any worker count.
template <typename Scalar, std::size_t Dim, typename F>
auto integrate(F&& f, const TensorRule<Scalar, Dim>& rule, unsigned workers = thread_cap()) {
  using Point = Eigen::Matrix<Scalar, static_cast<int>(Dim), 1>;
  using Result = std::decay_t<decltype(f(std::declval<Point>()))>;
  const std::size_t n0 = rule.axes[0].size();
  std::vector<Result> partial(n0, zero_like<Result>());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n0)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n0; ++i) partial[i] = detail::integrate_slice<Scalar, Dim, F, Result>(f, rule, i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n0; i += workers) {
          partial[i] = detail::integrate_slice<Scalar, Dim, F, Result>(f, rule, i);
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  Result total = zero_like<Result>();
  for (const auto& p : partial) total += p;
  return total;
}

// ---------------------------------------------------------------------------
// Convergence-order measurement.

struct ConvergenceStudy {
  std::vector<double> steps;
  std::vector<double> errors;

  // Smallest observed order between successive refinements.
  double observed_order() const {
    double order = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < steps.size(); ++i) {
      order = std::min(order, std::log(errors[i - 1] / errors[i]) / std::log(steps[i - 1] / steps[i]));
    }
    return order;
  }
};

// Evaluates error_at(h) for h0, h0/2, ... (levels values).
template <typename F>
ConvergenceStudy convergence_study(F&& error_at, double h0, int levels) {
  ConvergenceStudy study;
  double h = h0;
  for (int i = 0; i < levels; ++i) {
    study.steps.push_back(h);
    study.errors.push_back(error_at(h));
    h /= 2.0;
  }
  return study;
}

}  // namespace wgquant
