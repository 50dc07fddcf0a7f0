// Copyright 2026 The fgelab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fgelab/common/rng.h"
#include "fgelab/kernels/kernels.h"

namespace fgelab::kernels {
namespace {

std::vector<double> RandomVector(Rng& rng, size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.Uniform(-2.0, 2.0);
  return v;
}

TEST_CASE("dispatch reports a supported ISA") {
  CHECK(IsaSupported(Isa::kScalar));
  CHECK(IsaSupported(ActiveIsa()));
  Isa saved = ActiveIsa();
  SetActiveIsa(Isa::kScalar);
  CHECK(ActiveIsa() == Isa::kScalar);
  SetActiveIsa(saved);
}

TEST_CASE("AVX2 kernels agree with scalar reference") {
  if (!IsaSupported(Isa::kAvx2)) {
    MESSAGE("AVX2 unavailable on this host; equivalence test skipped");
    return;
  }
  const KernelTable& ref = Table(Isa::kScalar);
  const KernelTable& simd = Table(Isa::kAvx2);
  Rng rng(11, 0);
  for (size_t n : {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 64, 129, 1000}) {
    auto a = RandomVector(rng, n);
    auto b = RandomVector(rng, n);
    double d_ref = ref.dot(a.data(), b.data(), n);
    double d_simd = simd.dot(a.data(), b.data(), n);
    CHECK(d_simd == doctest::Approx(d_ref).epsilon(1e-12));

    auto y_ref = RandomVector(rng, n);
    auto y_simd = y_ref;
    ref.axpy(0.37, a.data(), y_ref.data(), n);
    simd.axpy(0.37, a.data(), y_simd.data(), n);
    for (size_t i = 0; i < n; ++i) {
      CHECK(y_simd[i] == doctest::Approx(y_ref[i]).epsilon(1e-14));
    }

    AdamCoeffs c{0.01, 0.9, 0.999, 1e-8, 1.0 - 0.9, 1.0 - 0.999};
    auto p_ref = RandomVector(rng, n);
    auto p_simd = p_ref;
    std::vector<double> m_ref(n, 0.1), v_ref(n, 0.2);
    auto m_simd = m_ref;
    auto v_simd = v_ref;
    ref.adam(p_ref.data(), m_ref.data(), v_ref.data(), b.data(), n, c);
    simd.adam(p_simd.data(), m_simd.data(), v_simd.data(), b.data(), n, c);
    for (size_t i = 0; i < n; ++i) {
      CHECK(p_simd[i] == doctest::Approx(p_ref[i]).epsilon(1e-12));
      CHECK(m_simd[i] == doctest::Approx(m_ref[i]).epsilon(1e-14));
      CHECK(v_simd[i] == doctest::Approx(v_ref[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("dense forward matches a naive product") {
  Rng rng(5, 0);
  Matrix in(3, 4);
  for (double& x : in.data()) x = rng.Uniform(-1.0, 1.0);
  auto w = RandomVector(rng, 5 * 4);
  auto bias = RandomVector(rng, 5);
  Matrix out;
  DenseForward(in, w, bias, out);
  REQUIRE(out.rows() == 3);
  REQUIRE(out.cols() == 5);
  for (size_t r = 0; r < 3; ++r) {
    for (size_t o = 0; o < 5; ++o) {
      double s = bias[o];
      for (size_t i = 0; i < 4; ++i) s += w[o * 4 + i] * in(r, i);
      CHECK(out(r, o) == doctest::Approx(s).epsilon(1e-13));
    }
  }
}

}  // namespace
}  // namespace fgelab::kernels
