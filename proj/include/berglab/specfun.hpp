#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "berglab/errors.hpp"

// Scalar numeric kernels: Gauss hypergeometric 2F1, Gamma, adaptive
// Gauss-Kronrod quadrature and monotone inversion. Everything here is a
// pure function of its arguments and safe to call concurrently.

namespace berglab {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute, same units as value
};

/// Parameters (a, b; c) of the Gauss hypergeometric function. c must not
/// be zero or a negative integer.
struct HypParams {
  double a;
  double b;
  double c;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 1e-12 && std::abs(x - std::round(x)) < 1e-12;
}

// Power-series sum of 2F1 with Kahan compensation. Valid for |z| < 1 and
// for terminating series at any z. Caps at 1e6 terms.
inline double hyp_series(double a, double b, double c, double z) {
  constexpr std::size_t kMaxTerms = 1000000;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  int small_streak = 0;
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    const double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    if (term == 0.0) return sum;  // terminating series (or z = 0)
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_streak >= 2) return sum;
    } else {
      small_streak = 0;
    }
  }
  throw ConvergenceError("gauss_2f1: series did not converge within term cap");
}

// Series terms decay like z^k; estimated number of terms to reach the
// stopping threshold. Used to decide when the direct sum would bust the cap.
inline double hyp_series_cost(double z) {
  if (z <= 0.0) return 1.0;
  if (z >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(1e-17) / std::log(z);
}

// z -> 1-z connection formula, valid when c-a-b is not an integer.
double hyp_at(double a, double b, double c, double z);

inline double hyp_connection(double a, double b, double c, double z) {
  const double mu = c - a - b;
  const double w = 1.0 - z;
  const double g1 =
      std::tgamma(c) * std::tgamma(mu) / (std::tgamma(c - a) * std::tgamma(c - b));
  const double g2 =
      std::tgamma(c) * std::tgamma(-mu) / (std::tgamma(a) * std::tgamma(b));
  return g1 * hyp_series(a, b, 1.0 - mu, w) +
         g2 * std::pow(w, mu) * hyp_series(c - a, c - b, 1.0 + mu, w);
}

// Dispatch on z for parameters already validated. Routes negative z
// through the Pfaff transformation, arguments near 1 through the
// connection formula when the direct sum would exceed the iteration cap.
inline double hyp_at(double a, double b, double c, double z) {
  if (z == 0.0) return 1.0;
  if (z < 0.0) {
    // Pfaff: 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), argument in [0,1)
    return std::pow(1.0 - z, -a) * hyp_at(a, c - b, c, z / (z - 1.0));
  }
  // z in (0,1)
  if (a == c) return std::pow(1.0 - z, -b);
  if (b == c) return std::pow(1.0 - z, -a);
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    return hyp_series(a, b, c, z);  // polynomial, exact
  }
  const double mu = c - a - b;
  const bool mu_integer = std::abs(mu - std::round(mu)) < 1e-12;
  if (hyp_series_cost(z) > 250000.0 && !mu_integer) {
    return hyp_connection(a, b, c, z);
  }
  return hyp_series(a, b, c, z);
}

}  // namespace detail

/// True when z = 1 is admissible (Gauss-summable endpoint).
inline bool gauss_summable(const HypParams& p) { return p.c - p.a - p.b > 0.0; }

/// Largest admissible argument for the given parameters.
inline double z_max(const HypParams& p) {
  return gauss_summable(p) ? 1.0 : std::nextafter(1.0, 0.0);
}

/// Gauss hypergeometric function 2F1(a,b;c;z) for real parameters and
/// z <= z_max(p). Negative arguments are routed through the Pfaff
/// transformation; arguments near 1 through the z -> 1-z connection
/// formula when direct summation would exceed the term cap.
inline double gauss_2f1(const HypParams& p, double z) {
  if (detail::is_nonpositive_integer(p.c)) {
    throw DomainError("gauss_2f1: c must not be a non-positive integer");
  }
  if (z > 1.0) throw DomainError("gauss_2f1: argument beyond z = 1");
  if (z == 1.0) {
    if (detail::is_nonpositive_integer(p.a) || detail::is_nonpositive_integer(p.b)) {
      return detail::hyp_series(p.a, p.b, p.c, 1.0);  // polynomial
    }
    if (!gauss_summable(p)) {
      throw DomainError("gauss_2f1: z = 1 requires c - a - b > 0");
    }
    return std::tgamma(p.c) * std::tgamma(p.c - p.a - p.b) /
           (std::tgamma(p.c - p.a) * std::tgamma(p.c - p.b));
  }
  return detail::hyp_at(p.a, p.b, p.c, z);
}

inline double gauss_2f1(double a, double b, double c, double z) {
  return gauss_2f1(HypParams{a, b, c}, z);
}

/// Gamma function restricted to the positive half line.
inline double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: requires x > 0");
  return std::tgamma(x);
}

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK constants).
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkEstimate {
  double value;
  double error;
};

template <class F>
GkEstimate gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    double fsum;
    if (i == 7) {
      fsum = f(mid);
    } else {
      fsum = f(mid - dx) + f(mid + dx);
    }
    kronrod += kKronrodWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  kronrod *= half;
  gauss *= half;
  const double diff = std::abs(kronrod - gauss);
  // QUADPACK-style sharpened estimate; never below machine noise.
  double err = diff;
  if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {kronrod, err};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b]. An infinite upper
/// limit is mapped onto [0, 1) by the rational change of variables
/// r = a + t/(1-t), dr = dt/(1-t)^2; the integrand must decay integrably
/// (caller contract). The stopping tolerance is the hybrid
/// abs_tol * max(1, |value|). Throws ToleranceNotMet (carrying the best
/// value and estimate) when the subdivision budget is exhausted.
inline QuadResult adaptive_quad(const std::function<double(double)>& f, double a,
                                double b, double abs_tol) {
  if (std::isinf(b)) {
    auto mapped = [&f, a](double t) {
      const double om = 1.0 - t;
      return f(a + t / om) / (om * om);
    };
    return adaptive_quad(mapped, 0.0, 1.0, abs_tol);
  }

  struct Segment {
    double a, b, value, error;
  };
  constexpr std::size_t kMaxSegments = 4096;

  auto first = detail::gk15(f, a, b);
  std::vector<Segment> segs{{a, b, first.value, first.error}};
  double total = first.value;
  double err = first.error;

  while (err > abs_tol * std::max(1.0, std::abs(total))) {
    if (segs.size() >= kMaxSegments) {
      throw ToleranceNotMet("adaptive_quad: subdivision budget exhausted", total, err);
    }
    std::size_t worst = 0;
    for (std::size_t i = 1; i < segs.size(); ++i) {
      if (segs[i].error > segs[worst].error) worst = i;
    }
    const Segment s = segs[worst];
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) {
      throw ToleranceNotMet("adaptive_quad: interval collapsed", total, err);
    }
    auto left = detail::gk15(f, s.a, mid);
    auto right = detail::gk15(f, mid, s.b);
    segs[worst] = {s.a, mid, left.value, left.error};
    segs.push_back({mid, s.b, right.value, right.error});
    total = 0.0;
    err = 0.0;
    for (const auto& seg : segs) {
      total += seg.value;
      err += seg.error;
    }
  }
  return {total, err};
}

/// Inverts a strictly monotone f on [lo, hi]: returns r with
/// |f(r) - target| <= tol * max(1, |target|). Brent iteration on
/// f(x) - target; throws BracketError when the target is not enclosed.
inline double invert_monotone(const std::function<double(double)>& f, double target,
                              double lo, double hi, double tol) {
  double a = lo, b = hi;
  double fa = f(a) - target;
  double fb = f(b) - target;
  const double ftol = tol * std::max(1.0, std::abs(target));
  if (std::abs(fa) <= ftol && std::abs(fa) <= std::abs(fb)) return a;
  if (std::abs(fb) <= ftol && std::abs(fb) < std::abs(fa)) return b;
  if (fa * fb > 0.0) {
    throw BracketError("invert_monotone: target not enclosed by [lo, hi]");
  }

  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, s = b, fs = fb;
  bool mflag = true;
  for (int iter = 0; iter < 200; ++iter) {
    if (fa != fc && fb != fc) {
      // inverse quadratic interpolation
      s = a * fb * fc / ((fa - fb) * (fa - fc)) +
          b * fa * fc / ((fb - fa) * (fb - fc)) +
          c * fa * fb / ((fc - fa) * (fc - fb));
    } else {
      s = b - fb * (b - a) / (fb - fa);  // secant
    }
    const double lo34 = 0.25 * (3.0 * a + b);
    const double xtol =
        2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b));
    const bool bad = !((s > lo34 && s < b) || (s < lo34 && s > b)) ||
                     (mflag && std::abs(s - b) >= 0.5 * std::abs(b - c)) ||
                     (!mflag && std::abs(s - b) >= 0.5 * std::abs(c - d)) ||
                     (mflag && std::abs(b - c) < xtol) ||
                     (!mflag && std::abs(c - d) < xtol);
    if (bad) {
      s = 0.5 * (a + b);
      mflag = true;
    } else {
      mflag = false;
    }
    fs = f(s) - target;
    d = c;
    c = b;
    fc = fb;
    if (fa * fs < 0.0) {
      b = s;
      fb = fs;
    } else {
      a = s;
      fa = fs;
    }
    if (std::abs(fa) < std::abs(fb)) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    if (std::abs(fb) <= ftol || std::abs(b - a) <= xtol) return b;
  }
  if (std::abs(fb) <= ftol) return b;
  throw ConvergenceError("invert_monotone: Brent iteration cap reached");
}

/// Ordinary least squares line fit y = slope * x + intercept.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t m = x.size();
  if (m < 2 || y.size() != m) throw ParameterError("fit_line: need matching sizes >= 2");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace berglab
