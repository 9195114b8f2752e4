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

#include "oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fadecap::oracle {

namespace {

// e^x E1(x) by Lentz's continued fraction, x >= 1.
double scaled_e1_cf(double x) {
  constexpr double kEps = 1e-17;
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double expint_e1(double x) {
  if (!(x > 0.0)) throw std::domain_error("E1 needs x > 0");
  constexpr double kEuler = 0.57721566490153286061;
  constexpr double kEps = 1e-17;
  if (x < 1.0) {
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::abs(add) < kEps * std::abs(sum)) break;
    }
    return -kEuler - std::log(x) - sum;
  }
  return scaled_e1_cf(x) * std::exp(-x);
}

double rayleigh_g(double lambda) {
  return std::exp(-lambda) / lambda - expint_e1(lambda);
}

double rayleigh_capacity(double lambda) { return expint_e1(lambda); }

double rayleigh_csir(double budget) {
  const double s = 1.0 / budget;
  return s < 1.0 ? std::exp(s) * expint_e1(s) : scaled_e1_cf(s);
}

double loglogistic_g(double lambda) {
  return 1.0 / (lambda * (1.0 + lambda)) + 1.0 / (1.0 + lambda) -
         std::log1p(1.0 / lambda);
}

double loglogistic_capacity(double lambda) { return std::log1p(1.0 / lambda); }

}  // namespace fadecap::oracle
