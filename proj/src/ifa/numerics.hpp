// Copyright 2026 The ifa Authors.
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

#ifndef IFA_NUMERICS_HPP_
#define IFA_NUMERICS_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>

namespace ifa::numerics {

// Composite Simpson on equally spaced samples; samples.size() must be odd.
inline double SimpsonSamples(std::span<const double> samples, double step) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("Simpson needs an odd number (>= 3) of samples");
  }
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    (i % 2 == 1 ? odd : even) += samples[i];
  }
  return step / 3.0 * (samples.front() + samples.back() + 4.0 * odd + 2.0 * even);
}

// Composite Simpson of f over [lo, hi] with `nodes` equally spaced nodes.
template <typename F>
double Simpson(F&& f, double lo, double hi, int nodes) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw std::invalid_argument("Simpson needs an odd number (>= 3) of nodes");
  }
  if (hi == lo) return 0.0;
  const double h = (hi - lo) / (nodes - 1);
  double odd = 0.0, even = 0.0;
  for (int i = 1; i + 1 < nodes; ++i) {
    const double x = lo + i * h;
    (i % 2 == 1 ? odd : even) += f(x);
  }
  return h / 3.0 * (f(lo) + f(hi) + 4.0 * odd + 2.0 * even);
}

// Bisection for a sign change of f on [lo, hi]; f(lo) and f(hi) must not share
// a sign. Returns the midpoint of the final bracket.
template <typename F>
double Bisect(F&& f, double lo, double hi, double tol, int max_iter = 200) {
  double flo = f(lo);
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Golden-section search for the minimum of a unimodal f on [lo, hi].
// Returns {argmin, f(argmin)}.
template <typename F>
std::pair<double, double> GoldenMinimize(F&& f, double lo, double hi,
                                         double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace ifa::numerics

#endif  // IFA_NUMERICS_HPP_
