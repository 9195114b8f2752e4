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

#pragma once

// Reference values computed without touching the library: the exponential
// integral and the closed forms it yields for the two fading laws with
// elementary water-filling integrals.
namespace fadecap::oracle {

// E1(x) for x > 0. Power series below 1, modified Lentz continued fraction
// above.
double expint_e1(double x);

// Unit-mean Rayleigh.
double rayleigh_g(double lambda);         // e^-l / l - E1(l)
double rayleigh_capacity(double lambda);  // E1(l)
double rayleigh_csir(double budget);      // e^(1/P) E1(1/P)

// f(x) = 1/(1+x)^2.
double loglogistic_g(double lambda);
double loglogistic_capacity(double lambda);  // ln(1 + 1/l)

}  // namespace fadecap::oracle
