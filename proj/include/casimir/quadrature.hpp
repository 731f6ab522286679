#pragma once

// Adaptive quadrature on a 7-point Gauss / 15-point Kronrod pair.
//
// The worst interval (largest error estimate) is bisected until the summed
// estimate meets max(abs_tol, rel_tol * |value|) or the evaluation budget is
// exhausted. Infinite domains are folded onto (0,1) or (-1,1) with rational
// compactifications; the Kronrod nodes are open, so endpoints are never
// sampled and integrable endpoint singularities are tolerated.

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_evals = 1'000'000;
};

struct Result {
  double value = 0.0;
  double error = 0.0; // estimated absolute error
  std::size_t evaluations = 0;
};

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights sit on
// the odd-index Kronrod nodes. Standard QUADPACK tables.
inline constexpr double kronrod_x[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kronrod_w[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gauss_w[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0, b = 0.0;
  double value = 0.0;
  double error = 0.0;
  bool splittable = true;
};

struct WorseError {
  bool operator()(const Panel& p, const Panel& q) const { return p.error < q.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kronrod_x[i]);
    fv[14 - i] = f(c + h * kronrod_x[i]);
  }
  fv[7] = f(c);

  double resk = 0.0, resg = 0.0, resabs = 0.0;
  for (int i = 0; i < 7; ++i) {
    resk += kronrod_w[i] * (fv[i] + fv[14 - i]);
    resabs += kronrod_w[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
  }
  resk += kronrod_w[7] * fv[7];
  resabs += kronrod_w[7] * std::abs(fv[7]);
  for (int i = 0; i < 3; ++i)
    resg += gauss_w[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  resg += gauss_w[3] * fv[7];

  const double mean = 0.5 * resk;
  double resasc = kronrod_w[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i)
    resasc += kronrod_w[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));

  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  const double ah = std::abs(h);
  resasc *= ah;
  resabs *= ah;
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    const double scaled = std::pow(200.0 * err / resasc, 1.5);
    err = resasc * std::min(1.0, scaled);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double tiny = std::numeric_limits<double>::min();
  if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
  p.error = err;
  return p;
}

} // namespace detail

// Integrate f over the finite interval (a, b).
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  Result res;
  if (a == b) return res;
  if (!(a < b)) throw std::invalid_argument("quad::integrate: requires a < b");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("quad::integrate: bounds must be finite");

  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::WorseError> queue;
  auto first = detail::gk15(f, a, b);
  res.evaluations = 15;
  double total = first.value;
  double err = first.error;
  double stuck_err = 0.0;
  queue.push(first);

  const double eps = std::numeric_limits<double>::epsilon();
  auto converged = [&] { return err + stuck_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };

  while (!converged()) {
    if (queue.empty() || res.evaluations + 30 > opt.max_evals)
      throw convergence_error("quad::integrate: tolerance not reached within budget");
    detail::Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width_floor = 50.0 * eps * std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
    if (!(worst.b - worst.a > width_floor) || mid <= worst.a || mid >= worst.b) {
      // Cannot subdivide further; its error becomes a hard floor.
      err -= worst.error;
      stuck_err += worst.error;
      continue;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  res.value = total;
  res.error = err + stuck_err;
  return res;
}

// Integrate f over (a, +inf) via x = a + scale*u/(1-u), u in (0,1).
template <class F>
Result integrate_to_infinity(F&& f, double a, double scale, const Options& opt = {}) {
  if (!(scale > 0.0)) throw std::invalid_argument("quad::integrate_to_infinity: scale must be > 0");
  auto mapped = [&f, a, scale](double u) {
    const double om = 1.0 - u;
    return f(a + scale * u / om) * scale / (om * om);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

// Integrate f over (-inf, b) by mirroring.
template <class F>
Result integrate_from_minus_infinity(F&& f, double b, double scale, const Options& opt = {}) {
  auto mirrored = [&f, b](double u) { return f(2.0 * b - u); };
  return integrate_to_infinity(mirrored, b, scale, opt);
}

// Integrate f over the whole real line via x = scale*t/(1-t^2), t in (-1,1).
// The map is odd, so the two tails are paired symmetrically (the limit
// int_{-R}^{R} with R -> inf).
template <class F>
Result integrate_real_line(F&& f, double scale, const Options& opt = {}) {
  if (!(scale > 0.0)) throw std::invalid_argument("quad::integrate_real_line: scale must be > 0");
  auto mapped = [&f, scale](double t) {
    const double om = 1.0 - t * t;
    return f(scale * t / om) * scale * (1.0 + t * t) / (om * om);
  };
  return integrate(mapped, -1.0, 1.0, opt);
}

} // namespace casimir::quad
