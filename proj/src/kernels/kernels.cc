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

#include "fgelab/kernels/kernels.h"

#include <atomic>
#include <string>

#include "fgelab/common/errors.h"

namespace fgelab::kernels {

namespace {

constexpr KernelTable kScalarTable{&scalar::Dot, &scalar::Axpy,
                                   &scalar::Adam};
#if defined(FGELAB_HAVE_AVX2)
constexpr KernelTable kAvx2Table{&avx2::Dot, &avx2::Axpy, &avx2::Adam};
#endif

std::atomic<const KernelTable*>& ActivePointer() {
  static std::atomic<const KernelTable*> active{&Table(DetectBestIsa())};
  return active;
}

const KernelTable& Active() { return *ActivePointer().load(); }

}  // namespace

bool IsaSupported(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(FGELAB_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

Isa DetectBestIsa() {
  return IsaSupported(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
}

const KernelTable& Table(Isa isa) {
#if defined(FGELAB_HAVE_AVX2)
  if (isa == Isa::kAvx2) return kAvx2Table;
#endif
  (void)isa;
  return kScalarTable;
}

Isa ActiveIsa() {
  return ActivePointer().load() == &kScalarTable ? Isa::kScalar : Isa::kAvx2;
}

void SetActiveIsa(Isa isa) {
  Require(IsaSupported(isa),
          std::string("kernel ISA not supported on this CPU: ") +
              IsaName(isa));
  ActivePointer().store(&Table(isa));
}

const char* IsaName(Isa isa) {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

double Dot(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), "Dot: length mismatch");
  return Active().dot(a.data(), b.data(), a.size());
}

void Axpy(double alpha, std::span<const double> x, std::span<double> y) {
  Require(x.size() == y.size(), "Axpy: length mismatch");
  Active().axpy(alpha, x.data(), y.data(), x.size());
}

void AdamUpdate(std::span<double> params, std::span<double> m,
                std::span<double> v, std::span<const double> grad,
                const AdamCoeffs& c) {
  Require(params.size() == m.size() && params.size() == v.size() &&
              params.size() == grad.size(),
          "AdamUpdate: length mismatch");
  Active().adam(params.data(), m.data(), v.data(), grad.data(), params.size(),
                c);
}

void DenseForward(const Matrix& in, std::span<const double> weights,
                  std::span<const double> bias, Matrix& out) {
  const size_t in_dim = in.cols();
  const size_t out_dim = bias.size();
  Require(weights.size() == in_dim * out_dim, "DenseForward: weight shape");
  if (out.rows() != in.rows() || out.cols() != out_dim) {
    out.Resize(in.rows(), out_dim);
  }
  const KernelTable& k = Active();
  for (size_t r = 0; r < in.rows(); ++r) {
    const double* x = in.Row(r).data();
    double* y = out.Row(r).data();
    for (size_t o = 0; o < out_dim; ++o) {
      y[o] = bias[o] + k.dot(weights.data() + o * in_dim, x, in_dim);
    }
  }
}

void DenseBackwardParams(const Matrix& in, const Matrix& d_out,
                         std::span<double> grad_w, std::span<double> grad_b) {
  const size_t in_dim = in.cols();
  const size_t out_dim = d_out.cols();
  Require(in.rows() == d_out.rows(), "DenseBackwardParams: batch mismatch");
  Require(grad_w.size() == in_dim * out_dim && grad_b.size() == out_dim,
          "DenseBackwardParams: gradient shape");
  const KernelTable& k = Active();
  for (size_t r = 0; r < in.rows(); ++r) {
    const double* x = in.Row(r).data();
    const double* g = d_out.Row(r).data();
    for (size_t o = 0; o < out_dim; ++o) {
      if (g[o] == 0.0) continue;
      k.axpy(g[o], x, grad_w.data() + o * in_dim, in_dim);
    }
    k.axpy(1.0, g, grad_b.data(), out_dim);
  }
}

void DenseBackwardInput(const Matrix& d_out, std::span<const double> weights,
                        size_t in_dim, Matrix& d_in) {
  const size_t out_dim = d_out.cols();
  Require(weights.size() == in_dim * out_dim,
          "DenseBackwardInput: weight shape");
  d_in.Resize(d_out.rows(), in_dim);
  const KernelTable& k = Active();
  for (size_t r = 0; r < d_out.rows(); ++r) {
    const double* g = d_out.Row(r).data();
    double* dx = d_in.Row(r).data();
    for (size_t o = 0; o < out_dim; ++o) {
      if (g[o] == 0.0) continue;
      k.axpy(g[o], weights.data() + o * in_dim, dx, in_dim);
    }
  }
}

}  // namespace fgelab::kernels
