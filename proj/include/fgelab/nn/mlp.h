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

#ifndef FGELAB_NN_MLP_H_
#define FGELAB_NN_MLP_H_

// Dense feed-forward networks with hand-written reverse-mode gradients.
//
// All parameters of a network live in one flat array so that optimizers,
// checkpoints and gradient buffers share a single layout:
//   [W_0, b_0, W_1, b_1, ..., W_{L-1}, b_{L-1}, (log_std)]
// W_l is stored out x in, row-major. The trailing log_std block exists only
// for the diagonal-Gaussian head.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fgelab/common/matrix.h"
#include "fgelab/common/rng.h"

namespace fgelab::nn {

enum class Activation { kTanh, kRelu };
enum class HeadKind { kLinear, kCategorical, kSigmoid, kGaussian };

inline constexpr double kLogStdMin = -5.0;
inline constexpr double kLogStdMax = 2.0;

std::string ToString(Activation a);
std::string ToString(HeadKind h);
Activation ActivationFromString(const std::string& s);
HeadKind HeadKindFromString(const std::string& s);

class MlpParams {
 public:
  MlpParams() = default;
  // layer_sizes = {input, hidden..., output}. Parameters start at zero.
  MlpParams(std::vector<int> layer_sizes, Activation activation,
            HeadKind head);

  // Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases.
  static MlpParams Initialized(std::vector<int> layer_sizes,
                               Activation activation, HeadKind head, Rng& rng,
                               double initial_log_std = 0.0);

  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  Activation activation() const { return activation_; }
  HeadKind head() const { return head_; }

  size_t num_layers() const { return layer_sizes_.size() - 1; }
  size_t input_dim() const { return layer_sizes_.front(); }
  // Width of the last dense layer.
  size_t raw_output_dim() const { return layer_sizes_.back(); }
  // Width of the head output: twice the raw width for the Gaussian head
  // (mean followed by log-std), otherwise the raw width.
  size_t output_dim() const;
  size_t num_params() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  std::span<double> weights(size_t layer);
  std::span<const double> weights(size_t layer) const;
  std::span<double> bias(size_t layer);
  std::span<const double> bias(size_t layer) const;
  std::span<double> log_std();
  std::span<const double> log_std() const;

  size_t weight_offset(size_t layer) const { return offsets_[layer]; }
  size_t bias_offset(size_t layer) const;
  size_t log_std_offset() const { return log_std_offset_; }

 private:
  std::vector<int> layer_sizes_;
  Activation activation_ = Activation::kTanh;
  HeadKind head_ = HeadKind::kLinear;
  std::vector<size_t> offsets_;
  size_t log_std_offset_ = 0;
  std::vector<double> values_;
};

// Per-batch intermediate values kept for the backward pass.
struct ForwardCache {
  std::vector<Matrix> inputs;  // inputs[l] feeds layer l
  std::vector<Matrix> pre;     // pre-activation of layer l
  Matrix raw;                  // output of the last dense layer
};

// Raw (pre-head) outputs for a batch of inputs, one sample per row.
const Matrix& ForwardRaw(const MlpParams& params, const Matrix& input,
                         ForwardCache& cache);

// Accumulates d(loss)/d(params) into grad given d(loss)/d(raw). When d_input
// is non-null it receives d(loss)/d(input).
void BackwardRaw(const MlpParams& params, const ForwardCache& cache,
                 const Matrix& d_raw, std::span<double> grad,
                 Matrix* d_input = nullptr);

// Head transform of one raw row.
std::vector<double> ApplyHead(const MlpParams& params,
                              std::span<const double> raw);

// Vector-Jacobian product through the head. Writes d_raw; for the Gaussian
// head the log-std part of upstream is accumulated into grad.
void HeadVjp(const MlpParams& params, std::span<const double> raw,
             std::span<const double> upstream, std::span<double> d_raw,
             std::span<double> grad);

std::vector<double> Forward(const MlpParams& params,
                            std::span<const double> input);

struct Gradients {
  std::vector<double> params;
  std::vector<double> input;
};

// Gradient of <upstream, Forward(params, input)> w.r.t. parameters and input.
Gradients Backward(const MlpParams& params, std::span<const double> input,
                   std::span<const double> upstream);

double Sigmoid(double z);
double Softplus(double z);

// ---------------------------------------------------------------------------
// Optimizer.

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class OptimState {
 public:
  OptimState() = default;
  OptimState(size_t num_params, AdamConfig config);

  const AdamConfig& config() const { return config_; }
  AdamConfig& config() { return config_; }
  int64_t step_count() const { return step_count_; }
  std::span<const double> first_moment() const { return m_; }
  std::span<const double> second_moment() const { return v_; }

 private:
  friend void OptimStep(OptimState&, MlpParams&, std::span<const double>);
  AdamConfig config_;
  int64_t step_count_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
};

// Bias-corrected Adam step. Throws NumericError on non-finite gradients and
// leaves both state and parameters untouched in that case.
void OptimStep(OptimState& state, MlpParams& params,
               std::span<const double> grads);

// Scales grads in place so that their L2 norm is at most max_norm. Returns
// the norm before clipping.
double ClipGradNorm(std::span<double> grads, double max_norm);

// ---------------------------------------------------------------------------
// Checkpoints: JSON object
//   {"format": "fgelab.mlp", "version": 1, "layer_sizes": [...],
//    "activation": "tanh", "head": "sigmoid", "values": [...]}

std::string ToJsonString(const MlpParams& params);
MlpParams FromJsonString(const std::string& text);
void SaveCheckpoint(const MlpParams& params, const std::filesystem::path& path);
MlpParams LoadCheckpoint(const std::filesystem::path& path);

}  // namespace fgelab::nn

#endif  // FGELAB_NN_MLP_H_
