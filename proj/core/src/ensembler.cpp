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

#include "autosim/ensembler.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>

#include "autosim/bytes.hpp"

namespace autosim {

namespace {

constexpr std::uint8_t kMagic[4] = {'A', 'S', 'P', 'K'};

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Eigen::VectorXd softmax(const Eigen::VectorXd& s) {
  const double m = s.maxCoeff();
  Eigen::VectorXd e = (s.array() - m).exp().matrix();
  return e / e.sum();
}

void check_dims(const EnsemblerParams& params, Eigen::Index input_size, Eigen::Index n_props) {
  const auto& d = params.dims();
  if (static_cast<std::size_t>(input_size) != d.d_in) {
    throw DimensionError("ensembler: input size " + std::to_string(input_size) + " != d_in " +
                         std::to_string(d.d_in));
  }
  if (static_cast<std::size_t>(n_props) != d.n_controllers) {
    throw DimensionError("ensembler: " + std::to_string(n_props) + " proposals for " +
                         std::to_string(d.n_controllers) + " controllers");
  }
}

Eigen::MatrixXd continuous_matrix(std::span<const ControllerProposal> proposals) {
  Eigen::MatrixXd a(kNumContinuous, static_cast<Eigen::Index>(proposals.size()));
  for (std::size_t k = 0; k < proposals.size(); ++k) {
    a(0, static_cast<Eigen::Index>(k)) = proposals[k].continuous.heading_rate;
    a(1, static_cast<Eigen::Index>(k)) = proposals[k].continuous.speed_cmd;
  }
  return a;
}

EligibleMask eligible_mask(std::span<const ControllerProposal> proposals) {
  EligibleMask m{};
  for (const auto& p : proposals) {
    for (const auto& a : p.discrete) m[static_cast<std::size_t>(a.action.kind)] = true;
  }
  return m;
}

}  // namespace

std::size_t EnsemblerParams::flat_size(const EnsemblerDims& d) {
  return d.d_h * d.d_in + d.d_h + d.d_h * d.d_h + d.n_controllers * d.d_h + kNumContinuous * d.d_h +
         kNumActionKinds * d.d_h;
}

EnsemblerParams::EnsemblerParams(EnsemblerDims dims, double delta_max, std::uint64_t seed)
    : dims_(dims), delta_max_(delta_max), seed_(seed) {
  if (dims.d_in == 0 || dims.d_h == 0 || dims.n_controllers == 0) {
    throw DimensionError("ensembler: dimensions must be positive");
  }
  off_in_ = 0;
  off_b_ = off_in_ + dims.d_h * dims.d_in;
  off_h_ = off_b_ + dims.d_h;
  off_gate_ = off_h_ + dims.d_h * dims.d_h;
  off_res_ = off_gate_ + dims.n_controllers * dims.d_h;
  off_disc_ = off_res_ + kNumContinuous * dims.d_h;
  flat_ = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(flat_size(dims)));
}

EnsemblerParams init_params(std::uint64_t seed, std::size_t d_h, std::size_t n_controllers, std::size_t d_in,
                            double scale, double delta_max) {
  if (!(scale > 0.0)) throw PreconditionError("init_params: scale must be positive");
  EnsemblerParams p({d_in, d_h, n_controllers}, delta_max, seed);
  Rng rng = make_rng(seed, Stream::kInit);
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (Eigen::Index i = 0; i < p.flat().size(); ++i) p.flat()[i] = dist(rng);
  return p;
}

EnsemblerParams confidence_gated_params(std::size_t d_in, std::size_t env_len, std::size_t n_controllers,
                                        std::size_t d_h, double sharpness) {
  if (d_h < n_controllers + 1) throw DimensionError("confidence_gated_params: d_h must exceed controller count");
  EnsemblerParams p({d_in, d_h, n_controllers}, 0.25, 0);
  auto w_in = p.w_in();
  auto w_gate = p.w_gate();
  for (std::size_t k = 0; k < n_controllers; ++k) {
    const std::size_t conf_idx = env_len + k * kProposalFeatures + kNumContinuous;
    w_in(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(conf_idx)) = 3.0;
    w_gate(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = sharpness;
  }
  // A constant unit drives every discrete logit positive.
  p.bias()[static_cast<Eigen::Index>(n_controllers)] = 1.0;
  auto w_disc = p.w_disc();
  for (std::size_t d = 0; d < kNumActionKinds; ++d) {
    w_disc(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n_controllers)) = 1.0;
  }
  return p;
}

Eigen::VectorXd assemble_input(std::span<const double> env_vec, std::span<const ControllerProposal> proposals,
                               std::span<const double> map_vec) {
  const std::size_t n = env_vec.size() + proposals.size() * kProposalFeatures + map_vec.size();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  std::size_t i = 0;
  for (double v : env_vec) x[static_cast<Eigen::Index>(i++)] = v;
  for (const auto& p : proposals) {
    x[static_cast<Eigen::Index>(i)] = p.continuous.heading_rate;
    x[static_cast<Eigen::Index>(i + 1)] = p.continuous.speed_cmd;
    x[static_cast<Eigen::Index>(i + 2)] = p.confidence;
    for (const auto& a : p.discrete) {
      x[static_cast<Eigen::Index>(i + 3 + static_cast<std::size_t>(a.action.kind))] = 1.0;
    }
    i += kProposalFeatures;
  }
  for (double v : map_vec) x[static_cast<Eigen::Index>(i++)] = v;
  return x;
}

EnsemblerStep ensembler_step(const EnsemblerParams& params, const Eigen::VectorXd& prev_hidden,
                             const Eigen::VectorXd& input, const Eigen::MatrixXd& proposal_continuous,
                             const EligibleMask& eligible) {
  check_dims(params, input.size(), proposal_continuous.cols());
  if (static_cast<std::size_t>(prev_hidden.size()) != params.dims().d_h) {
    throw DimensionError("ensembler: hidden state size mismatch");
  }
  EnsemblerStep s;
  s.hidden = (params.w_in() * input + params.w_h() * prev_hidden + params.bias()).array().tanh().matrix();
  s.gates = softmax(params.w_gate() * s.hidden);
  const Eigen::VectorXd mix = proposal_continuous * s.gates;
  const Eigen::VectorXd res = (params.w_res() * s.hidden).array().tanh().matrix();
  for (std::size_t c = 0; c < kNumContinuous; ++c) {
    s.mean[c] = mix[static_cast<Eigen::Index>(c)] + params.delta_max() * res[static_cast<Eigen::Index>(c)];
  }
  const Eigen::VectorXd logits = params.w_disc() * s.hidden;
  for (std::size_t d = 0; d < kNumActionKinds; ++d) s.logits[d] = logits[static_cast<Eigen::Index>(d)];
  s.eligible = eligible;
  return s;
}

ContinuousCommand clip_continuous(double heading_rate, double speed_cmd) {
  return {std::clamp(heading_rate, -1.0, 1.0), std::clamp(speed_cmd, 0.0, 1.0)};
}

ActionVector compose_action(std::span<const ControllerProposal> proposals, std::span<const double> gates,
                            double heading_rate, double speed_cmd, const std::array<bool, kNumActionKinds>& emit) {
  ActionVector out;
  out.continuous = clip_continuous(heading_rate, speed_cmd);
  for (std::size_t d = 0; d < kNumActionKinds; ++d) {
    if (!emit[d]) continue;
    const auto kind = static_cast<ActionKind>(d);
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < proposals.size(); ++k) {
      if (!proposals[k].proposes(kind)) continue;
      if (!best || gates[k] > gates[*best]) best = k;
    }
    if (!best) continue;
    for (const auto& pa : proposals[*best].discrete) {
      if (pa.action.kind != kind) continue;
      EmittedAction e;
      e.action = pa.action;
      for (std::size_t k = 0; k < proposals.size(); ++k) {
        for (const auto& other : proposals[k].discrete) {
          if (other.action != pa.action) continue;
          if (e.controllers.empty() || e.controllers.back() != proposals[k].controller_id) {
            e.controllers.push_back(proposals[k].controller_id);
          }
          e.justifications.insert(e.justifications.end(), other.justifications.begin(), other.justifications.end());
        }
      }
      std::sort(e.justifications.begin(), e.justifications.end());
      e.justifications.erase(std::unique(e.justifications.begin(), e.justifications.end()), e.justifications.end());
      out.discrete.push_back(std::move(e));
    }
  }
  return out;
}

ForwardResult forward(const EnsemblerParams& params, const EnsemblerState& state, std::span<const double> env_vec,
                      std::span<const ControllerProposal> proposals, std::span<const double> map_vec) {
  const Eigen::VectorXd x = assemble_input(env_vec, proposals, map_vec);
  ForwardResult r;
  r.step = ensembler_step(params, state.hidden, x, continuous_matrix(proposals), eligible_mask(proposals));
  std::array<bool, kNumActionKinds> emit{};
  for (std::size_t d = 0; d < kNumActionKinds; ++d) emit[d] = r.step.eligible[d] && r.step.logits[d] > 0.0;
  r.gates.assign(r.step.gates.data(), r.step.gates.data() + r.step.gates.size());
  r.action = compose_action(proposals, r.gates, r.step.mean[0], r.step.mean[1], emit);
  r.state.hidden = r.step.hidden;
  return r;
}

ForwardResult stochastic_forward(const EnsemblerParams& params, const EnsemblerState& state,
                                 std::span<const double> env_vec, std::span<const ControllerProposal> proposals,
                                 std::span<const double> map_vec, const ExplorationParams& explore, Rng& rng,
                                 PolicyStep* record) {
  const Eigen::VectorXd x = assemble_input(env_vec, proposals, map_vec);
  const Eigen::MatrixXd cont = continuous_matrix(proposals);
  ForwardResult r;
  r.step = ensembler_step(params, state.hidden, x, cont, eligible_mask(proposals));
  std::array<double, kNumContinuous> sample = r.step.mean;
  if (explore.sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, explore.sigma);
    for (auto& v : sample) v += noise(rng);
  }
  std::array<bool, kNumActionKinds> emit{};
  std::array<std::int8_t, kNumActionKinds> emitted{};
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (std::size_t d = 0; d < kNumActionKinds; ++d) {
    emitted[d] = -1;
    if (!r.step.eligible[d]) continue;
    emit[d] = explore.epsilon > 0.0 ? u01(rng) < emit_probability(r.step.logits[d], explore.epsilon)
                                    : r.step.logits[d] > 0.0;
    emitted[d] = emit[d] ? 1 : 0;
  }
  r.gates.assign(r.step.gates.data(), r.step.gates.data() + r.step.gates.size());
  r.action = compose_action(proposals, r.gates, sample[0], sample[1], emit);
  r.state.hidden = r.step.hidden;
  if (record != nullptr) {
    record->input = x;
    record->proposal_continuous = cont;
    record->eligible = r.step.eligible;
    record->sample = sample;
    record->emitted = emitted;
  }
  return r;
}

double emit_probability(double logit, double epsilon) {
  return (1.0 - epsilon) * (logit > 0.0 ? 1.0 : 0.0) + epsilon * sigmoid(logit);
}

namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178;

// Per-step log-probability and, when `want_grad`, dℓ/d(mean) and dℓ/d(logits).
double step_log_prob(const EnsemblerStep& s, const PolicyStep& rec, const ExplorationParams& ex,
                     std::array<double, kNumContinuous>* d_mean, std::array<double, kNumActionKinds>* d_logit) {
  double lp = 0.0;
  if (ex.sigma > 0.0) {
    const double inv_var = 1.0 / (ex.sigma * ex.sigma);
    for (std::size_t c = 0; c < kNumContinuous; ++c) {
      const double diff = rec.sample[c] - s.mean[c];
      lp += -0.5 * diff * diff * inv_var - std::log(ex.sigma) - kLogSqrtTwoPi;
      if (d_mean) (*d_mean)[c] = diff * inv_var;
    }
  } else if (d_mean) {
    d_mean->fill(0.0);
  }
  for (std::size_t d = 0; d < kNumActionKinds; ++d) {
    if (d_logit) (*d_logit)[d] = 0.0;
    if (rec.emitted[d] < 0) continue;
    const double p1 = emit_probability(s.logits[d], ex.epsilon);
    const double p = rec.emitted[d] == 1 ? p1 : 1.0 - p1;
    lp += std::log(p);
    if (d_logit && ex.epsilon > 0.0) {
      const double sg = sigmoid(s.logits[d]);
      const double dp1 = ex.epsilon * sg * (1.0 - sg);
      (*d_logit)[d] = (rec.emitted[d] == 1 ? dp1 : -dp1) / p;
    }
  }
  return lp;
}

}  // namespace

double sequence_log_prob(const EnsemblerParams& params, const PolicySequence& seq, const ExplorationParams& ex) {
  Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(params.dims().d_h));
  double total = 0.0;
  for (const auto& rec : seq) {
    const EnsemblerStep s = ensembler_step(params, h, rec.input, rec.proposal_continuous, rec.eligible);
    total += step_log_prob(s, rec, ex, nullptr, nullptr);
    h = s.hidden;
  }
  return total;
}

double accumulate_log_prob_grad(const EnsemblerParams& params, const PolicySequence& seq,
                                const ExplorationParams& ex, Eigen::VectorXd& grad) {
  if (grad.size() != params.flat().size()) throw DimensionError("gradient buffer size mismatch");
  const auto& dims = params.dims();
  const auto dh = static_cast<Eigen::Index>(dims.d_h);

  std::vector<EnsemblerStep> steps;
  steps.reserve(seq.size());
  Eigen::VectorXd h = Eigen::VectorXd::Zero(dh);
  for (const auto& rec : seq) {
    steps.push_back(ensembler_step(params, h, rec.input, rec.proposal_continuous, rec.eligible));
    h = steps.back().hidden;
  }

  // Gradient views share the flat layout of the parameters.
  EnsemblerParams gview(dims, 0.0, 0);
  gview.flat().setZero();
  auto g_in = gview.w_in();
  auto g_b = gview.bias();
  auto g_h = gview.w_h();
  auto g_gate = gview.w_gate();
  auto g_res = gview.w_res();
  auto g_disc = gview.w_disc();

  double total = 0.0;
  Eigen::VectorXd carry = Eigen::VectorXd::Zero(dh);
  for (std::size_t t = seq.size(); t-- > 0;) {
    const EnsemblerStep& s = steps[t];
    const PolicyStep& rec = seq[t];
    std::array<double, kNumContinuous> d_mean{};
    std::array<double, kNumActionKinds> d_logit{};
    total += step_log_prob(s, rec, ex, &d_mean, &d_logit);

    Eigen::Map<const Eigen::VectorXd> dm(d_mean.data(), kNumContinuous);
    Eigen::Map<const Eigen::VectorXd> dl(d_logit.data(), kNumActionKinds);

    // Softmax gate path.
    const Eigen::VectorXd dg = rec.proposal_continuous.transpose() * dm;
    const Eigen::VectorXd ds = (s.gates.array() * (dg.array() - s.gates.dot(dg))).matrix();
    // Residual path.
    const Eigen::VectorXd r = (params.w_res() * s.hidden).array().tanh().matrix();
    const Eigen::VectorXd dr = (dm.array() * params.delta_max() * (1.0 - r.array().square())).matrix();

    g_gate += ds * s.hidden.transpose();
    g_res += dr * s.hidden.transpose();
    g_disc += dl * s.hidden.transpose();

    const Eigen::VectorXd dhid =
        params.w_gate().transpose() * ds + params.w_res().transpose() * dr + params.w_disc().transpose() * dl + carry;
    const Eigen::VectorXd dz = (dhid.array() * (1.0 - s.hidden.array().square())).matrix();
    const Eigen::VectorXd prev = t > 0 ? steps[t - 1].hidden : Eigen::VectorXd::Zero(dh);
    g_in += dz * rec.input.transpose();
    g_b += dz;
    g_h += dz * prev.transpose();
    carry = params.w_h().transpose() * dz;
  }
  grad += gview.flat();
  return total;
}

std::vector<std::uint8_t> serialize_params(const EnsemblerParams& params, std::string_view metadata) {
  ByteWriter w;
  w.bytes(kMagic);
  w.u32(kCheckpointVersion);
  w.u32(static_cast<std::uint32_t>(params.dims().d_in));
  w.u32(static_cast<std::uint32_t>(params.dims().d_h));
  w.u32(static_cast<std::uint32_t>(params.dims().n_controllers));
  w.u32(static_cast<std::uint32_t>(kNumContinuous));
  w.u32(static_cast<std::uint32_t>(kNumActionKinds));
  w.u64(params.seed());
  w.str(metadata);
  w.u64(params.param_count());
  for (Eigen::Index i = 0; i < params.flat().size(); ++i) w.f64(params.flat()[i]);
  w.f64(params.delta_max());
  const auto& body = w.data();
  const auto crc = static_cast<std::uint32_t>(crc32(0L, body.data(), static_cast<uInt>(body.size())));
  w.u32(crc);
  return w.take();
}

DecodedCheckpoint deserialize_params(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 + 4 + 4) throw CheckpointError("checkpoint truncated: " + std::to_string(bytes.size()) + " bytes");
  if (!std::equal(kMagic, kMagic + 4, bytes.begin())) throw CheckpointError("checkpoint: bad magic");
  const auto body = bytes.first(bytes.size() - 4);
  const std::uint32_t stored = ByteReader(bytes.last(4)).u32();
  try {
    ByteReader r(body);
    r.bytes(4);
    const std::uint32_t version = r.u32();
    if (version != kCheckpointVersion) {
      throw CheckpointError("checkpoint: unsupported format version " + std::to_string(version));
    }
    const auto crc = static_cast<std::uint32_t>(crc32(0L, body.data(), static_cast<uInt>(body.size())));
    if (crc != stored) throw CheckpointError("checkpoint: checksum mismatch");
    EnsemblerDims dims;
    dims.d_in = r.u32();
    dims.d_h = r.u32();
    dims.n_controllers = r.u32();
    if (r.u32() != kNumContinuous || r.u32() != kNumActionKinds) {
      throw CheckpointError("checkpoint: unsupported head dimensions");
    }
    const std::uint64_t seed = r.u64();
    DecodedCheckpoint out;
    out.metadata = r.str();
    const std::uint64_t count = r.u64();
    out.params = EnsemblerParams(dims, 0.0, seed);
    if (count != out.params.param_count()) throw CheckpointError("checkpoint: weight count does not match dims");
    for (Eigen::Index i = 0; i < out.params.flat().size(); ++i) out.params.flat()[i] = r.f64();
    out.params.set_delta_max(r.f64());
    if (!r.done()) throw CheckpointError("checkpoint: trailing bytes");
    return out;
  } catch (const DecodeError& e) {
    throw CheckpointError(std::string("checkpoint truncated: ") + e.what());
  } catch (const DimensionError& e) {
    throw CheckpointError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace autosim
