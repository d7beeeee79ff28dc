#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "viphon/vocab.hpp"

namespace viphon::head {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// The vowel head predicts rhyme tokens: its vocabulary is the rhyme space.
enum class Head : std::uint8_t { kInit, kVowel, kTone };
inline constexpr std::array<Head, 3> kAllHeads = {Head::kInit, Head::kVowel, Head::kTone};
std::string_view head_name(Head head);

inline constexpr double kLayerNormEpsilon = 1e-5;

enum class ResidualMode : std::uint8_t {
  // f + W_dᵀ ReLU(W_uᵀ f) with f already layer-normalized.
  kNormalized,
  // The residual branch skips the normalization.
  kRaw,
};
std::string_view residual_mode_name(ResidualMode mode);
std::optional<ResidualMode> residual_mode_from_name(std::string_view name);

struct Dims {
  int d = 4;
  int v_init = 4;
  int v_rhyme = 4;
  int v_tone = 6;

  int vocab(Head head) const;
  friend bool operator==(const Dims&, const Dims&) = default;
};

struct FfnParams {
  VectorXd ln_gain;  // d
  VectorXd ln_bias;  // d
  MatrixXd w_up;     // d x 2d
  MatrixXd w_down;   // 2d x d
  MatrixXd w_out;    // d x V
  VectorXd b_out;    // V
};

// Named view of one parameter tensor. Vectors are single columns.
struct TensorRef {
  std::string name;
  double* data;  // column-major
  Eigen::Index rows;
  Eigen::Index cols;

  double& at(Eigen::Index r, Eigen::Index c) const { return data[c * rows + r]; }
  Eigen::Index size() const { return rows * cols; }
};

struct HeadParams {
  Dims dims;
  std::array<FfnParams, 3> heads;
  MatrixXd e_init;   // V_init x d
  MatrixXd e_rhyme;  // V_rhyme x d
  MatrixXd e_tone;   // V_tone x d
  MatrixXd w_e;      // 3d x d

  static HeadParams zeros(const Dims& dims);
  // Every entry uniform in [-scale, scale], from a 64-bit Mersenne Twister.
  static HeadParams random(const Dims& dims, std::uint64_t seed, double scale = 0.1);

  FfnParams& head(Head h) { return heads[static_cast<std::size_t>(h)]; }
  const FfnParams& head(Head h) const { return heads[static_cast<std::size_t>(h)]; }

  // Fixed order: per head (ln_gain, ln_bias, w_up, w_down, w_out, b_out), then
  // the embedding tables, then w_e.
  std::vector<TensorRef> tensors();
  std::size_t parameter_count() const;

  // Throws ShapeMismatch.
  void check_shapes() const;
};

// Fills `out` with uniform values in [lo, hi] from `seed`; the mapping from
// generator output is fixed so values are identical across standard libraries.
void fill_uniform(std::span<double> out, std::uint64_t seed, double lo, double hi);

VectorXd layer_norm(const VectorXd& x, const VectorXd& gain, const VectorXd& bias);

// Layer norm followed by the residual rectified two-layer map. Throws
// NonFiniteInput and ShapeMismatch.
VectorXd ffn_forward(const VectorXd& f, const FfnParams& p, ResidualMode mode = ResidualMode::kNormalized);

struct HeadLogits {
  std::array<VectorXd, 3> logits;
  const VectorXd& operator[](Head h) const { return logits[static_cast<std::size_t>(h)]; }
};

// Per head: ffn_forward then W_outᵀ x + b_out.
HeadLogits head_logits(const VectorXd& f_dec, const HeadParams& params,
                       ResidualMode mode = ResidualMode::kNormalized);

// W_eᵀ [E_init[i]; E_rhyme[r]; E_tone[t]]. Throws IdOutOfRange.
VectorXd embed_prev(const TokenIds& ids, const HeadParams& params);

VectorXd softmax(const VectorXd& logits);
// -log softmax(logits)[target], computed with log-sum-exp.
double cross_entropy(const VectorXd& logits, int target);

struct LossValue {
  std::array<double, 3> per_head{};
  double total = 0.0;
  double operator[](Head h) const { return per_head[static_cast<std::size_t>(h)]; }
};

// CE_p is the mean over the sequence; total is CE_init + CE_vowel + CE_tone.
// Throws LengthMismatch when sequence lengths differ or are zero, and
// IdOutOfRange for targets outside a head's vocabulary.
LossValue composite_loss(const std::array<std::vector<VectorXd>, 3>& logits,
                         const std::array<std::vector<int>, 3>& targets);

// One decoding step of a toy model. The decoder trunk is replaced by a fixed
// vector so that gradients reach the embeddings:
//   f_dec = trunk + embed_prev(previous).
struct Step {
  VectorXd trunk;
  TokenIds previous;
  TokenIds target;  // initial id for init, rhyme id for vowel, tone id for tone
};

LossValue batch_loss(const HeadParams& params, const std::vector<Step>& batch,
                     ResidualMode mode = ResidualMode::kNormalized);

struct LossAndGradient {
  LossValue loss;
  HeadParams gradient;  // same shapes as the parameters
};

// Analytic gradient of the total loss.
LossAndGradient loss_and_gradient(const HeadParams& params, const std::vector<Step>& batch,
                                  ResidualMode mode = ResidualMode::kNormalized);

// Ids uniform over each space; trunk entries uniform in [-1, 1].
std::vector<Step> random_batch(const Dims& dims, int steps, std::uint64_t seed);

// Sign of every rectifier input, over steps and heads in order.
std::vector<bool> relu_pattern(const HeadParams& params, const std::vector<Step>& batch,
                               ResidualMode mode = ResidualMode::kNormalized);

// Random toy problem: d in [2, 8], V_init and V_rhyme in [2, 10], V_tone = 6,
// 1 to 5 steps, parameters from HeadParams::random.
struct ToyConfig {
  HeadParams params;
  std::vector<Step> batch;
};
ToyConfig toy_config(std::uint64_t seed);

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Lower bound of the relative-error denominator. Central differences of a
  // loss near 5 carry about 2.2e-16 * 5 / 1e-5 ~ 1e-10 of rounding error, so
  // near-zero partials need a floor well above 1e-6 to stay under 1e-4.
  double denominator_floor = 1e-5;
};

// Entries whose +-step perturbation flips the sign of some rectifier input
// are counted in kink_entries and left out of the maxima; the *_with_kinks
// figure includes them.
struct TensorCheck {
  std::string name;
  double max_relative_error = 0.0;
  double max_relative_error_with_kinks = 0.0;
  std::size_t kink_entries = 0;
  double max_absolute_error = 0.0;
  Eigen::Index worst_row = 0;
  Eigen::Index worst_col = 0;
  double analytic_at_worst = 0.0;
  double numeric_at_worst = 0.0;
  bool ok = true;
};

struct GradCheckReport {
  std::vector<TensorCheck> tensors;
  double max_relative_error = 0.0;
  double max_relative_error_with_kinks = 0.0;
  std::size_t checked_entries = 0;
  std::size_t kink_entries = 0;
  bool ok = true;
  std::string to_json() const;
};

// Compares `analytic` with central differences of batch_loss, entry by entry:
// |a - n| / max(|a|, |n|, floor).
GradCheckReport grad_check_against(const HeadParams& params, const std::vector<Step>& batch,
                                   HeadParams analytic, ResidualMode mode = ResidualMode::kNormalized,
                                   const GradCheckOptions& options = {});
GradCheckReport grad_check(const HeadParams& params, const std::vector<Step>& batch,
                           ResidualMode mode = ResidualMode::kNormalized, const GradCheckOptions& options = {});

// Text format:
//   viphon-head-params 1
//   dims <d> <v_init> <v_rhyme> <v_tone>
//   tensor <name> <rows> <cols>
//   <one line per row, values in %.17g>
// Tensors appear in HeadParams::tensors() order. load_params throws Error.
void save_params(const HeadParams& params, std::ostream& out);
HeadParams load_params(std::istream& in);

}  // namespace viphon::head
