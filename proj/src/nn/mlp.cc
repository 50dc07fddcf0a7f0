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

#include "fgelab/nn/mlp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fgelab/common/errors.h"
#include "fgelab/kernels/kernels.h"
#include "json.hpp"

namespace fgelab::nn {

namespace {

constexpr const char* kFormat = "fgelab.mlp";
constexpr int kFormatVersion = 1;

double Activate(Activation a, double z) {
  return a == Activation::kTanh ? std::tanh(z) : (z > 0.0 ? z : 0.0);
}

// Derivative expressed through the pre-activation z and its image y.
double ActivateDerivative(Activation a, double z, double y) {
  return a == Activation::kTanh ? 1.0 - y * y : (z > 0.0 ? 1.0 : 0.0);
}

}  // namespace

std::string ToString(Activation a) {
  return a == Activation::kTanh ? "tanh" : "relu";
}

std::string ToString(HeadKind h) {
  switch (h) {
    case HeadKind::kLinear:
      return "linear";
    case HeadKind::kCategorical:
      return "categorical";
    case HeadKind::kSigmoid:
      return "sigmoid";
    case HeadKind::kGaussian:
      return "gaussian";
  }
  return "linear";
}

Activation ActivationFromString(const std::string& s) {
  if (s == "tanh") return Activation::kTanh;
  if (s == "relu") return Activation::kRelu;
  throw ContractViolation("unknown activation: " + s);
}

HeadKind HeadKindFromString(const std::string& s) {
  if (s == "linear") return HeadKind::kLinear;
  if (s == "categorical") return HeadKind::kCategorical;
  if (s == "sigmoid") return HeadKind::kSigmoid;
  if (s == "gaussian") return HeadKind::kGaussian;
  throw ContractViolation("unknown head kind: " + s);
}

MlpParams::MlpParams(std::vector<int> layer_sizes, Activation activation,
                     HeadKind head)
    : layer_sizes_(std::move(layer_sizes)),
      activation_(activation),
      head_(head) {
  Require(layer_sizes_.size() >= 2, "MlpParams: need at least two sizes");
  for (int s : layer_sizes_) Require(s > 0, "MlpParams: sizes must be > 0");
  size_t offset = 0;
  for (size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    offsets_.push_back(offset);
    offset += static_cast<size_t>(layer_sizes_[l]) * layer_sizes_[l + 1] +
              layer_sizes_[l + 1];
  }
  log_std_offset_ = offset;
  if (head_ == HeadKind::kGaussian) offset += layer_sizes_.back();
  values_.assign(offset, 0.0);
}

MlpParams MlpParams::Initialized(std::vector<int> layer_sizes,
                                 Activation activation, HeadKind head,
                                 Rng& rng, double initial_log_std) {
  MlpParams p(std::move(layer_sizes), activation, head);
  for (size_t l = 0; l < p.num_layers(); ++l) {
    double bound = 1.0 / std::sqrt(static_cast<double>(p.layer_sizes_[l]));
    for (double& w : p.weights(l)) w = rng.Uniform(-bound, bound);
  }
  for (double& s : p.log_std()) s = initial_log_std;
  return p;
}

size_t MlpParams::output_dim() const {
  return head_ == HeadKind::kGaussian ? 2 * raw_output_dim()
                                      : raw_output_dim();
}

size_t MlpParams::bias_offset(size_t layer) const {
  return offsets_[layer] +
         static_cast<size_t>(layer_sizes_[layer]) * layer_sizes_[layer + 1];
}

std::span<double> MlpParams::weights(size_t layer) {
  return {values_.data() + offsets_[layer],
          static_cast<size_t>(layer_sizes_[layer]) * layer_sizes_[layer + 1]};
}
std::span<const double> MlpParams::weights(size_t layer) const {
  return {values_.data() + offsets_[layer],
          static_cast<size_t>(layer_sizes_[layer]) * layer_sizes_[layer + 1]};
}
std::span<double> MlpParams::bias(size_t layer) {
  return {values_.data() + bias_offset(layer),
          static_cast<size_t>(layer_sizes_[layer + 1])};
}
std::span<const double> MlpParams::bias(size_t layer) const {
  return {values_.data() + bias_offset(layer),
          static_cast<size_t>(layer_sizes_[layer + 1])};
}
std::span<double> MlpParams::log_std() {
  if (head_ != HeadKind::kGaussian) return {};
  return {values_.data() + log_std_offset_, raw_output_dim()};
}
std::span<const double> MlpParams::log_std() const {
  if (head_ != HeadKind::kGaussian) return {};
  return {values_.data() + log_std_offset_, raw_output_dim()};
}

const Matrix& ForwardRaw(const MlpParams& params, const Matrix& input,
                         ForwardCache& cache) {
  if (input.cols() != params.input_dim()) {
    throw ContractViolation("Forward: input width " +
                            std::to_string(input.cols()) +
                            " does not match network input " +
                            std::to_string(params.input_dim()));
  }
  const size_t layers = params.num_layers();
  cache.inputs.resize(layers);
  cache.pre.resize(layers);
  cache.inputs[0] = input;
  for (size_t l = 0; l < layers; ++l) {
    kernels::DenseForward(cache.inputs[l], params.weights(l), params.bias(l),
                          cache.pre[l]);
    if (l + 1 < layers) {
      Matrix& next = cache.inputs[l + 1];
      if (next.rows() != cache.pre[l].rows() ||
          next.cols() != cache.pre[l].cols()) {
        next.Resize(cache.pre[l].rows(), cache.pre[l].cols());
      }
      auto src = cache.pre[l].data();
      auto dst = next.data();
      for (size_t i = 0; i < src.size(); ++i) {
        dst[i] = Activate(params.activation(), src[i]);
      }
    }
  }
  cache.raw = cache.pre[layers - 1];
  return cache.raw;
}

void BackwardRaw(const MlpParams& params, const ForwardCache& cache,
                 const Matrix& d_raw, std::span<double> grad,
                 Matrix* d_input) {
  Require(grad.size() == params.num_params(), "Backward: gradient size");
  Require(d_raw.rows() == cache.raw.rows() && d_raw.cols() == cache.raw.cols(),
          "Backward: upstream shape");
  if (!AllFinite(d_raw.data())) {
    throw NumericError("Backward: non-finite upstream gradient");
  }
  const size_t layers = params.num_layers();
  Matrix d = d_raw;
  Matrix d_in;
  for (size_t li = layers; li-- > 0;) {
    const size_t w_off = params.weight_offset(li);
    const size_t b_off = params.bias_offset(li);
    const size_t w_size = params.weights(li).size();
    kernels::DenseBackwardParams(cache.inputs[li], d, grad.subspan(w_off, w_size),
                                 grad.subspan(b_off, params.bias(li).size()));
    if (li == 0 && d_input == nullptr) break;
    kernels::DenseBackwardInput(d, params.weights(li),
                                params.layer_sizes()[li], d_in);
    if (li > 0) {
      auto z = cache.pre[li - 1].data();
      auto y = cache.inputs[li].data();
      auto g = d_in.data();
      for (size_t i = 0; i < g.size(); ++i) {
        g[i] *= ActivateDerivative(params.activation(), z[i], y[i]);
      }
      std::swap(d, d_in);
    } else {
      *d_input = std::move(d_in);
    }
  }
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

std::vector<double> ApplyHead(const MlpParams& params,
                              std::span<const double> raw) {
  Require(raw.size() == params.raw_output_dim(), "ApplyHead: raw width");
  std::vector<double> out(raw.begin(), raw.end());
  switch (params.head()) {
    case HeadKind::kLinear:
      break;
    case HeadKind::kSigmoid:
      for (double& v : out) v = Sigmoid(v);
      break;
    case HeadKind::kCategorical: {
      double mx = *std::max_element(out.begin(), out.end());
      double sum = 0.0;
      for (double& v : out) {
        v = std::exp(v - mx);
        sum += v;
      }
      for (double& v : out) v /= sum;
      break;
    }
    case HeadKind::kGaussian:
      for (double s : params.log_std()) {
        out.push_back(std::clamp(s, kLogStdMin, kLogStdMax));
      }
      break;
  }
  return out;
}

void HeadVjp(const MlpParams& params, std::span<const double> raw,
             std::span<const double> upstream, std::span<double> d_raw,
             std::span<double> grad) {
  const size_t n = params.raw_output_dim();
  Require(raw.size() == n && d_raw.size() == n, "HeadVjp: raw width");
  Require(upstream.size() == params.output_dim(), "HeadVjp: upstream width");
  switch (params.head()) {
    case HeadKind::kLinear:
      std::copy_n(upstream.begin(), n, d_raw.begin());
      break;
    case HeadKind::kSigmoid:
      for (size_t i = 0; i < n; ++i) {
        double s = Sigmoid(raw[i]);
        d_raw[i] = upstream[i] * s * (1.0 - s);
      }
      break;
    case HeadKind::kCategorical: {
      std::vector<double> p = ApplyHead(params, raw);
      double dotp = 0.0;
      for (size_t i = 0; i < n; ++i) dotp += upstream[i] * p[i];
      for (size_t i = 0; i < n; ++i) d_raw[i] = p[i] * (upstream[i] - dotp);
      break;
    }
    case HeadKind::kGaussian: {
      std::copy_n(upstream.begin(), n, d_raw.begin());
      auto ls = params.log_std();
      for (size_t i = 0; i < n; ++i) {
        if (ls[i] > kLogStdMin && ls[i] < kLogStdMax) {
          grad[params.log_std_offset() + i] += upstream[n + i];
        }
      }
      break;
    }
  }
}

std::vector<double> Forward(const MlpParams& params,
                            std::span<const double> input) {
  Require(input.size() == params.input_dim(), "Forward: input length");
  Matrix in(1, input.size());
  std::copy(input.begin(), input.end(), in.data().begin());
  ForwardCache cache;
  const Matrix& raw = ForwardRaw(params, in, cache);
  return ApplyHead(params, raw.Row(0));
}

Gradients Backward(const MlpParams& params, std::span<const double> input,
                   std::span<const double> upstream) {
  Require(input.size() == params.input_dim(), "Backward: input length");
  Require(upstream.size() == params.output_dim(), "Backward: upstream length");
  if (!AllFinite(upstream)) {
    throw NumericError("Backward: non-finite upstream gradient");
  }
  Matrix in(1, input.size());
  std::copy(input.begin(), input.end(), in.data().begin());
  ForwardCache cache;
  const Matrix& raw = ForwardRaw(params, in, cache);
  Gradients g;
  g.params.assign(params.num_params(), 0.0);
  Matrix d_raw(1, params.raw_output_dim());
  HeadVjp(params, raw.Row(0), upstream, d_raw.Row(0), g.params);
  Matrix d_in;
  BackwardRaw(params, cache, d_raw, g.params, &d_in);
  g.input.assign(d_in.data().begin(), d_in.data().end());
  return g;
}

OptimState::OptimState(size_t num_params, AdamConfig config)
    : config_(config), m_(num_params, 0.0), v_(num_params, 0.0) {}

void OptimStep(OptimState& state, MlpParams& params,
               std::span<const double> grads) {
  Require(grads.size() == params.num_params() &&
              state.m_.size() == params.num_params(),
          "OptimStep: gradient/state shape mismatch");
  if (!AllFinite(grads)) throw NumericError("OptimStep: non-finite gradient");
  const AdamConfig& c = state.config_;
  const int64_t t = state.step_count_ + 1;
  kernels::AdamCoeffs coeffs{c.lr,
                             c.beta1,
                             c.beta2,
                             c.eps,
                             1.0 - std::pow(c.beta1, static_cast<double>(t)),
                             1.0 - std::pow(c.beta2, static_cast<double>(t))};
  kernels::AdamUpdate(params.values(), state.m_, state.v_, grads, coeffs);
  state.step_count_ = t;
}

double ClipGradNorm(std::span<double> grads, double max_norm) {
  double sq = kernels::Dot(grads, grads);
  double norm = std::sqrt(sq);
  if (norm > max_norm && norm > 0.0) {
    double scale = max_norm / norm;
    for (double& g : grads) g *= scale;
  }
  return norm;
}

std::string ToJsonString(const MlpParams& params) {
  nlohmann::json j;
  j["format"] = kFormat;
  j["version"] = kFormatVersion;
  j["layer_sizes"] = params.layer_sizes();
  j["activation"] = ToString(params.activation());
  j["head"] = ToString(params.head());
  j["values"] = std::vector<double>(params.values().begin(),
                                    params.values().end());
  return j.dump();
}

MlpParams FromJsonString(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Require(j.value("format", "") == kFormat, "checkpoint: wrong format tag");
  Require(j.value("version", 0) == kFormatVersion,
          "checkpoint: unsupported version");
  MlpParams p(j.at("layer_sizes").get<std::vector<int>>(),
              ActivationFromString(j.at("activation").get<std::string>()),
              HeadKindFromString(j.at("head").get<std::string>()));
  auto values = j.at("values").get<std::vector<double>>();
  Require(values.size() == p.num_params(),
          "checkpoint: parameter count does not match layer sizes");
  std::copy(values.begin(), values.end(), p.values().begin());
  return p;
}

void SaveCheckpoint(const MlpParams& params,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  Require(static_cast<bool>(out), "cannot write " + path.string());
  out << ToJsonString(params);
}

MlpParams LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  Require(static_cast<bool>(in), "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return FromJsonString(ss.str());
}

}  // namespace fgelab::nn
