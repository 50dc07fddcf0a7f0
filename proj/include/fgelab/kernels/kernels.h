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

#ifndef FGELAB_KERNELS_KERNELS_H_
#define FGELAB_KERNELS_KERNELS_H_

// Dense arithmetic kernels behind the nn substrate. Each primitive has a
// scalar reference implementation and, on x86-64 builds, an AVX2+FMA variant.
// The active variant is chosen once at startup from CPUID and can be pinned
// with SetActiveIsa (tests use this to compare the two paths).

#include <cstddef>
#include <span>

#include "fgelab/common/matrix.h"

namespace fgelab::kernels {

enum class Isa { kScalar, kAvx2 };

struct AdamCoeffs {
  double lr;
  double beta1;
  double beta2;
  double eps;
  double bias_correction1;  // 1 - beta1^t
  double bias_correction2;  // 1 - beta2^t
};

struct KernelTable {
  double (*dot)(const double* a, const double* b, size_t n);
  void (*axpy)(double alpha, const double* x, double* y, size_t n);
  void (*adam)(double* params, double* m, double* v, const double* grad,
               size_t n, const AdamCoeffs& c);
};

namespace scalar {
double Dot(const double* a, const double* b, size_t n);
void Axpy(double alpha, const double* x, double* y, size_t n);
void Adam(double* params, double* m, double* v, const double* grad, size_t n,
          const AdamCoeffs& c);
}  // namespace scalar

#if defined(FGELAB_HAVE_AVX2)
namespace avx2 {
double Dot(const double* a, const double* b, size_t n);
void Axpy(double alpha, const double* x, double* y, size_t n);
void Adam(double* params, double* m, double* v, const double* grad, size_t n,
          const AdamCoeffs& c);
}  // namespace avx2
#endif

bool IsaSupported(Isa isa);
Isa DetectBestIsa();
Isa ActiveIsa();
// Throws ContractViolation when the ISA is not available on this machine.
void SetActiveIsa(Isa isa);
const char* IsaName(Isa isa);
const KernelTable& Table(Isa isa);

// Dispatching wrappers over the active table.
double Dot(std::span<const double> a, std::span<const double> b);
void Axpy(double alpha, std::span<const double> x, std::span<double> y);
void AdamUpdate(std::span<double> params, std::span<double> m,
                std::span<double> v, std::span<const double> grad,
                const AdamCoeffs& c);

// out(r, o) = bias[o] + <in.Row(r), weights row o>; weights are out x in.
void DenseForward(const Matrix& in, std::span<const double> weights,
                  std::span<const double> bias, Matrix& out);
// grad_w row o += sum_r d_out(r, o) * in.Row(r); grad_b[o] += sum_r d_out(r, o)
void DenseBackwardParams(const Matrix& in, const Matrix& d_out,
                         std::span<double> grad_w, std::span<double> grad_b);
// d_in.Row(r) = sum_o d_out(r, o) * weights row o
void DenseBackwardInput(const Matrix& d_out, std::span<const double> weights,
                        size_t in_dim, Matrix& d_in);

}  // namespace fgelab::kernels

#endif  // FGELAB_KERNELS_KERNELS_H_
