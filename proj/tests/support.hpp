// Copyright 2026 The qgame Authors
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

// Seeded generators shared by the test suites.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "qgame/channels.hpp"

namespace qgame::testing {

/// Runs f and reports the kind of qgame::Error it throws.
inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a qgame::Error");
  return ErrorKind::InvalidArgument;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t seed() { return engine_(); }

  ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    ComplexMatrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) {
        const double re = normal();
        const double im = normal();
        g(i, j) = Complex(re, im);
      }
    return g;
  }

  ComplexMatrix hermitian(Eigen::Index d) { return hermitian_part(gaussian(d, d)); }

  ComplexMatrix psd(Eigen::Index d) {
    const ComplexMatrix g = gaussian(d, integer(1, static_cast<int>(d)));
    return g * g.adjoint();
  }

  ComplexMatrix density(Eigen::Index d) {
    ComplexMatrix r = psd(d);
    return r / r.trace().real();
  }

  KrausChannel channel(int n) { return random_cptp(n, integer(1, n * n), seed()); }

  std::vector<double> simplex(int size) {
    std::vector<double> p(size);
    double total = 0.0;
    for (double& v : p) total += (v = -std::log(uniform(1e-300, 1.0)));
    for (double& v : p) v /= total;
    return p;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace qgame::testing
