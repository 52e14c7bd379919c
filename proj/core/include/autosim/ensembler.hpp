// Copyright 2026 The Autosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recurrent action optimizer. One tanh recurrent layer feeds three heads:
// softmax gates over the controller bank, a bounded continuous residual, and
// per-kind discrete logits. Discrete actions are only ever taken from proposals.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "autosim/actions.hpp"
#include "autosim/common.hpp"

namespace autosim {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixView = Eigen::Map<RowMajorMatrix>;
using ConstMatrixView = Eigen::Map<const RowMajorMatrix>;

/// Per-controller block of the ensembler input: heading_rate, speed_cmd,
/// confidence, then one flag per action kind.
inline constexpr std::size_t kProposalFeatures = kNumContinuous + 1 + kNumActionKinds;

struct EnsemblerDims {
  std::size_t d_in = 0;
  std::size_t d_h = 16;
  std::size_t n_controllers = 5;
  bool operator==(const EnsemblerDims&) const = default;
};

/// Ensembler weights. Storage is one flat vector in the order
/// W_in (d_h × d_in), b (d_h), W_h (d_h × d_h), W_gate (n × d_h),
/// W_res (2 × d_h), W_disc (9 × d_h); δ_max is held separately.
class EnsemblerParams {
 public:
  EnsemblerParams() = default;
  explicit EnsemblerParams(EnsemblerDims dims, double delta_max = 0.25, std::uint64_t seed = 0);

  [[nodiscard]] const EnsemblerDims& dims() const { return dims_; }
  [[nodiscard]] double delta_max() const { return delta_max_; }
  void set_delta_max(double d) { delta_max_ = d; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t s) { seed_ = s; }

  [[nodiscard]] Eigen::VectorXd& flat() { return flat_; }
  [[nodiscard]] const Eigen::VectorXd& flat() const { return flat_; }

  [[nodiscard]] ConstMatrixView w_in() const { return view(off_in_, dims_.d_h, dims_.d_in); }
  [[nodiscard]] ConstMatrixView w_h() const { return view(off_h_, dims_.d_h, dims_.d_h); }
  [[nodiscard]] ConstMatrixView w_gate() const { return view(off_gate_, dims_.n_controllers, dims_.d_h); }
  [[nodiscard]] ConstMatrixView w_res() const { return view(off_res_, kNumContinuous, dims_.d_h); }
  [[nodiscard]] ConstMatrixView w_disc() const { return view(off_disc_, kNumActionKinds, dims_.d_h); }
  [[nodiscard]] Eigen::Map<const Eigen::VectorXd> bias() const {
    return {flat_.data() + off_b_, static_cast<Eigen::Index>(dims_.d_h)};
  }
  MatrixView w_in() { return mview(off_in_, dims_.d_h, dims_.d_in); }
  MatrixView w_h() { return mview(off_h_, dims_.d_h, dims_.d_h); }
  MatrixView w_gate() { return mview(off_gate_, dims_.n_controllers, dims_.d_h); }
  MatrixView w_res() { return mview(off_res_, kNumContinuous, dims_.d_h); }
  MatrixView w_disc() { return mview(off_disc_, kNumActionKinds, dims_.d_h); }
  Eigen::Map<Eigen::VectorXd> bias() { return {flat_.data() + off_b_, static_cast<Eigen::Index>(dims_.d_h)}; }

  /// Trainable weights plus δ_max.
  [[nodiscard]] std::size_t param_count() const { return static_cast<std::size_t>(flat_.size()) + 1; }
  [[nodiscard]] bool all_finite() const { return flat_.allFinite() && std::isfinite(delta_max_); }

  bool operator==(const EnsemblerParams& o) const {
    return dims_ == o.dims_ && delta_max_ == o.delta_max_ && seed_ == o.seed_ && flat_ == o.flat_;
  }

  static std::size_t flat_size(const EnsemblerDims& d);

 private:
  [[nodiscard]] ConstMatrixView view(std::size_t off, std::size_t r, std::size_t c) const {
    return {flat_.data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)};
  }
  MatrixView mview(std::size_t off, std::size_t r, std::size_t c) {
    return {flat_.data() + off, static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)};
  }

  EnsemblerDims dims_;
  double delta_max_ = 0.25;
  std::uint64_t seed_ = 0;
  Eigen::VectorXd flat_;
  std::size_t off_in_ = 0, off_b_ = 0, off_h_ = 0, off_gate_ = 0, off_res_ = 0, off_disc_ = 0;
};

struct EnsemblerState {
  Eigen::VectorXd hidden;
  static EnsemblerState zeros(std::size_t d_h) { return {Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d_h))}; }
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Entries i.i.d. uniform in [-scale, scale]; δ_max is set to `delta_max`.
EnsemblerParams init_params(std::uint64_t seed, std::size_t d_h, std::size_t n_controllers, std::size_t d_in,
                            double scale, double delta_max = 0.25);

/// Hand-set weights that gate by reported controller confidence and emit every
/// proposed discrete action. Used when no trained personality is supplied.
EnsemblerParams confidence_gated_params(std::size_t d_in, std::size_t env_len, std::size_t n_controllers,
                                        std::size_t d_h = 16, double sharpness = 6.0);

/// Input width for a given environment and map encoding length.
inline std::size_t ensembler_input_size(std::size_t env_len, std::size_t n_controllers, std::size_t map_len) {
  return env_len + n_controllers * kProposalFeatures + map_len;
}

/// x = [env_vec, per-controller proposal features, map_vec].
Eigen::VectorXd assemble_input(std::span<const double> env_vec, std::span<const ControllerProposal> proposals,
                               std::span<const double> map_vec);

using EligibleMask = std::array<bool, kNumActionKinds>;

/// Raw network outputs for one step.
struct EnsemblerStep {
  Eigen::VectorXd hidden;         // h'
  Eigen::VectorXd gates;          // softmax over controllers
  std::array<double, kNumContinuous> mean{};  // Σ g·a + δ tanh(W_res h'), before clipping
  std::array<double, kNumActionKinds> logits{};
  EligibleMask eligible{};
};

/// Computes the step outputs from a pre-assembled input and the controller
/// continuous proposals (row c, column k).
EnsemblerStep ensembler_step(const EnsemblerParams& params, const Eigen::VectorXd& prev_hidden,
                             const Eigen::VectorXd& input, const Eigen::MatrixXd& proposal_continuous,
                             const EligibleMask& eligible);

struct ForwardResult {
  ActionVector action;
  std::vector<double> gates;
  EnsemblerState state;
  EnsemblerStep step;
};

/// Clips continuous channels to [-1, 1] × [0, 1].
ContinuousCommand clip_continuous(double heading_rate, double speed_cmd);

/// Builds the ActionVector: the given continuous pre-clip values, and for each
/// kind with emit[k] set, the instances proposed by the highest-gated
/// proposer of that kind (ties to the lower controller index).
ActionVector compose_action(std::span<const ControllerProposal> proposals, std::span<const double> gates,
                            double heading_rate, double speed_cmd, const std::array<bool, kNumActionKinds>& emit);

/// Deterministic forward pass. Throws DimensionError on any shape mismatch.
ForwardResult forward(const EnsemblerParams& params, const EnsemblerState& state, std::span<const double> env_vec,
                      std::span<const ControllerProposal> proposals, std::span<const double> map_vec);

// ---------------------------------------------------------------------------
// Stochastic policy used during training, and its score function.

/// Everything needed to re-evaluate log π for one decision.
struct PolicyStep {
  Eigen::VectorXd input;
  Eigen::MatrixXd proposal_continuous;  // kNumContinuous × n
  EligibleMask eligible{};
  std::array<double, kNumContinuous> sample{};           // pre-clamp sampled values
  std::array<std::int8_t, kNumActionKinds> emitted{};    // 1/0 for eligible kinds, -1 otherwise
};

/// One asset's decision sequence within an episode; hidden state starts at 0.
using PolicySequence = std::vector<PolicyStep>;

struct ExplorationParams {
  double sigma = 0.0;    // Gaussian std on continuous means, pre-clamp
  double epsilon = 0.0;  // weight of the Bernoulli(sigmoid(logit)) branch
};

/// Emission probability of an eligible discrete kind:
/// (1 - ε)·[logit > 0] + ε·sigmoid(logit).
double emit_probability(double logit, double epsilon);

/// Forward pass with exploration noise drawn from `rng`. Draws nothing when
/// σ = 0 and ε = 0, so the result then equals forward(). When `record` is
/// non-null the decision is written to it.
ForwardResult stochastic_forward(const EnsemblerParams& params, const EnsemblerState& state,
                                 std::span<const double> env_vec, std::span<const ControllerProposal> proposals,
                                 std::span<const double> map_vec, const ExplorationParams& explore, Rng& rng,
                                 PolicyStep* record);

/// Log-probability of a recorded sequence under `params`. Continuous terms
/// are Gaussian densities of the pre-clamp samples (omitted when σ = 0).
double sequence_log_prob(const EnsemblerParams& params, const PolicySequence& seq, const ExplorationParams& explore);

/// Adds ∇ log π of the sequence (by backpropagation through time) to `grad`,
/// which must have the size of params.flat(). Returns log π.
double accumulate_log_prob_grad(const EnsemblerParams& params, const PolicySequence& seq,
                                const ExplorationParams& explore, Eigen::VectorXd& grad);

// ---------------------------------------------------------------------------
// Checkpoint container: magic "ASPK", u32 version, u32 d_in, d_h, n, n_cont,
// n_disc, u64 seed, u32 metadata length + bytes, u64 weight count, f64
// weights (flat order, δ_max last), u32 CRC-32 of everything before it.
// All integers and floats little-endian.

inline constexpr std::uint32_t kCheckpointVersion = 1;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> serialize_params(const EnsemblerParams& params, std::string_view metadata = {});

struct DecodedCheckpoint {
  EnsemblerParams params;
  std::string metadata;
};

/// Throws CheckpointError on truncation, bad magic/version, or checksum mismatch.
DecodedCheckpoint deserialize_params(std::span<const std::uint8_t> bytes);

}  // namespace autosim
