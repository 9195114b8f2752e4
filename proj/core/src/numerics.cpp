// Copyright 2026 The fadecap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fadecap/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fadecap/error.hpp"

namespace fadecap::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae and weights; the odd entries (and the centre) are the
// 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gauss_kronrod15(const ScalarFn& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));
  }
  const double scale = std::abs(half);
  resasc *= scale;
  resabs *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * resabs, err);
  }
  const double value = resk * half;
  if (!std::isfinite(value) || !std::isfinite(err)) {
    std::ostringstream os;
    os << "integrand not finite on [" << a << ", " << b << "]";
    throw DomainError(os.str());
  }
  return {a, b, value, err};
}

double adaptive(const ScalarFn& f, const std::vector<double>& breaks,
                const QuadratureSpec& spec) {
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) {
      panels.push_back(gauss_kronrod15(f, breaks[i], breaks[i + 1]));
    }
  }
  if (panels.empty()) return 0.0;

  int subdivisions = static_cast<int>(panels.size());
  while (true) {
    double value = 0.0;
    double error = 0.0;
    for (const auto& p : panels) {
      value += p.value;
      error += p.error;
    }
    if (error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
      return value;
    }
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream os;
      os << "quadrature did not reach tolerance after " << subdivisions
         << " subdivisions (value " << value << ", error " << error << ")";
      throw NonConvergence(os.str());
    }
    auto worst = std::max_element(
        panels.begin(), panels.end(),
        [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double a = worst->a;
    const double b = worst->b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) {
      // Panel at machine resolution; what is left is roundoff.
      return value;
    }
    *worst = gauss_kronrod15(f, a, mid);
    panels.push_back(gauss_kronrod15(f, mid, b));
    ++subdivisions;
  }
}

// Geometric (lo > 0) or arithmetic bisection point.
double split_point(double lo, double hi, bool geometric) {
  if (geometric && lo > 0.0 && hi / lo > 4.0) return std::sqrt(lo) * std::sqrt(hi);
  return 0.5 * (lo + hi);
}

double tail_cutoff_impl(const ScalarFn& tail, double start, double threshold,
                        double rel_width) {
  if (tail(start) < threshold) return start;
  double lo = start;
  double hi = 0.0;
  if (start == 0.0) {
    double h = 1.0;
    if (tail(h) < threshold) {
      while (tail(h) < threshold) {
        h *= 0.5;
        if (h < 1e-300) return h;
      }
      lo = h;
      hi = 2.0 * h;
    } else {
      lo = h;
      hi = 2.0 * h;
    }
  } else {
    hi = 2.0 * start;
  }
  int guard = 0;
  while (!(tail(hi) < threshold)) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2100 || !std::isfinite(hi)) {
      throw BracketFailure("tail does not fall below the truncation threshold");
    }
  }
  for (int it = 0; it < 200 && hi - lo > rel_width * hi; ++it) {
    const double mid = split_point(lo, hi, true);
    if (tail(mid) < threshold) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double refine_bracketed(const ScalarFn& h, double a, double b, double fa,
                        double fb, double tol, const RootSpec& spec,
                        bool geometric) {
  // Invariant: fa < 0 < fb.
  int side = 0;
  double width = b - a;
  for (int it = 0; it < spec.max_iterations; ++it) {
    double c = (a * fb - b * fa) / (fb - fa);
    const bool stalled = (it % 3 == 2) && (b - a) > 0.5 * width;
    if (stalled || !(c > a && c < b)) {
      c = split_point(a, b, geometric);
      if (it % 3 == 2) width = b - a;
    }
    if (!(c > a && c < b)) {
      return std::abs(fa) < std::abs(fb) ? a : b;
    }
    const double fc = h(c);
    if (std::isnan(fc)) throw DomainError("root function returned NaN");
    if (std::abs(fc) <= tol) return c;
    if (fc < 0.0) {
      a = c;
      fa = fc;
      if (side == -1) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = fc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
    if (b - a <= 4.0 * kEps * std::max(std::abs(a), std::abs(b))) {
      return 0.5 * (a + b);
    }
  }
  throw NonConvergence("root finder exceeded max_iterations");
}

double solve(const ScalarFn& g, double target, Bracket bracket,
             Monotonicity direction, const RootSpec& spec, bool positive) {
  spec.validate();
  if (!(bracket.lo < bracket.hi)) {
    throw DomainError("initial bracket must satisfy lo < hi");
  }
  if (positive && !(bracket.lo > 0.0)) {
    throw DomainError("positive root search needs lo > 0");
  }
  const double sign = direction == Monotonicity::kIncreasing ? 1.0 : -1.0;
  auto h = [&](double x) {
    const double v = g(x);
    if (std::isnan(v)) throw DomainError("root function returned NaN");
    return sign * (v - target);
  };
  const double tol = spec.rel_tol * std::max(std::abs(target), spec.abs_floor);
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = h(lo);
  double fhi = h(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;

  int expansions = 0;
  while (flo > 0.0) {
    // Target lies below the bracket.
    if (++expansions > spec.max_expansions) {
      throw BracketFailure("could not straddle target below the bracket");
    }
    const double width = hi - lo;
    hi = lo;
    fhi = flo;
    lo = positive ? lo / spec.bracket_expansion_factor
                  : lo - width * spec.bracket_expansion_factor;
    if (positive && !(lo > 0.0)) {
      throw BracketFailure("bracket expansion underflowed toward zero");
    }
    flo = h(lo);
    if (flo == 0.0) return lo;
  }
  expansions = 0;
  while (fhi < 0.0) {
    if (++expansions > spec.max_expansions) {
      throw BracketFailure("could not straddle target above the bracket");
    }
    const double width = hi - lo;
    lo = hi;
    flo = fhi;
    hi = positive ? hi * spec.bracket_expansion_factor
                  : hi + width * spec.bracket_expansion_factor;
    if (!std::isfinite(hi)) {
      throw BracketFailure("bracket expansion overflowed");
    }
    fhi = h(hi);
    if (fhi == 0.0) return hi;
  }
  if (std::abs(flo) <= tol && std::abs(fhi) <= tol) {
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
  }
  return refine_bracketed(h, lo, hi, flo, fhi, tol, spec, positive);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || !(tail_mass_cutoff > 0.0) ||
      tail_mass_cutoff > 1e-10 || max_subdivisions < 32) {
    throw DomainError("invalid QuadratureSpec");
  }
}

void RootSpec::validate() const {
  if (!(rel_tol > 0.0) || max_iterations < 64 ||
      !(bracket_expansion_factor > 1.0) || !(abs_floor > 0.0)) {
    throw DomainError("invalid RootSpec");
  }
}

double integrate(const ScalarFn& f, double a, double b,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);
  return adaptive(f, {a, b}, spec);
}

double tail_cutoff_abscissa(const ScalarFn& tail, double start,
                            double threshold) {
  return tail_cutoff_impl(tail, start, threshold, 1e-6);
}

double integrate_semiinf(const ScalarFn& f, double lower,
                         const ScalarFn& weight_tail,
                         const QuadratureSpec& spec) {
  spec.validate();
  if (!(lower >= 0.0)) throw DomainError("integrate_semiinf: lower < 0");
  const double mass = weight_tail(lower);
  if (!(mass > 0.0)) return 0.0;
  const double end =
      tail_cutoff_impl(weight_tail, lower, spec.tail_mass_cutoff * mass, 1e-6);

  // One panel per factor-8 drop of tail mass.
  constexpr double kDrop = 0.125;
  constexpr int kMaxPanels = 96;
  std::vector<double> breaks{lower};
  double x = lower;
  double level = mass;
  while (x < end && static_cast<int>(breaks.size()) < kMaxPanels) {
    level *= kDrop;
    const double next = std::min(end, tail_cutoff_impl(weight_tail, x, level, 1e-3));
    if (!(next > x)) break;
    breaks.push_back(next);
    x = next;
  }
  if (breaks.back() < end) breaks.push_back(end);
  return adaptive(f, breaks, spec);
}

double find_root_monotone(const ScalarFn& g, double target,
                          Bracket initial_bracket, Monotonicity direction,
                          const RootSpec& spec) {
  return solve(g, target, initial_bracket, direction, spec, false);
}

double find_root_positive(const ScalarFn& g, double target,
                          Bracket initial_bracket, Monotonicity direction,
                          const RootSpec& spec) {
  return solve(g, target, initial_bracket, direction, spec, true);
}

}  // namespace fadecap::numerics
