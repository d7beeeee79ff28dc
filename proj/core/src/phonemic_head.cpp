#include "viphon/phonemic_head.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "viphon/error.hpp"

namespace viphon::head {
namespace {

constexpr std::array<std::string_view, 3> kHeadNames = {"init", "vowel", "tone"};
constexpr std::string_view kMagic = "viphon-head-params";

std::size_t slot(Head h) { return static_cast<std::size_t>(h); }

void expect_shape(std::string_view name, Eigen::Index rows, Eigen::Index cols, Eigen::Index want_rows,
                  Eigen::Index want_cols) {
  if (rows != want_rows || cols != want_cols) {
    throw ShapeMismatch(std::string(name) + " is " + std::to_string(rows) + "x" + std::to_string(cols) +
                        ", expected " + std::to_string(want_rows) + "x" + std::to_string(want_cols));
  }
}

// Intermediate values of one head kept for the backward pass.
struct FfnTrace {
  VectorXd xhat;
  double inv_std = 0.0;
  VectorXd normalized;
  VectorXd pre_relu;
  VectorXd hidden;
  VectorXd out;
  VectorXd logits;
};

FfnTrace ffn_trace(const VectorXd& f, const FfnParams& p, ResidualMode mode) {
  FfnTrace t;
  const double mean = f.mean();
  const VectorXd centered = f.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(f.size());
  t.inv_std = 1.0 / std::sqrt(var + kLayerNormEpsilon);
  t.xhat = centered * t.inv_std;
  t.normalized = p.ln_gain.cwiseProduct(t.xhat) + p.ln_bias;
  t.pre_relu = p.w_up.transpose() * t.normalized;
  t.hidden = t.pre_relu.cwiseMax(0.0);
  const VectorXd& residual = mode == ResidualMode::kNormalized ? t.normalized : f;
  t.out = residual + p.w_down.transpose() * t.hidden;
  t.logits = p.w_out.transpose() * t.out + p.b_out;
  return t;
}

VectorXd concat_embeddings(const TokenIds& ids, const HeadParams& params) {
  const auto row = [](const MatrixXd& table, int id, std::string_view name) {
    if (id < 0 || id >= table.rows()) {
      throw IdOutOfRange(std::string(name) + " id " + std::to_string(id) + " outside [0, " +
                         std::to_string(table.rows()) + ")");
    }
    return table.row(id).transpose();
  };
  const int d = params.dims.d;
  VectorXd c(3 * d);
  c.segment(0, d) = row(params.e_init, ids.initial, "initial");
  c.segment(d, d) = row(params.e_rhyme, ids.rhyme, "rhyme");
  c.segment(2 * d, d) = row(params.e_tone, ids.tone, "tone");
  return c;
}

int target_for(const Step& s, Head h) {
  switch (h) {
    case Head::kInit: return s.target.initial;
    case Head::kVowel: return s.target.rhyme;
    case Head::kTone: return s.target.tone;
  }
  return 0;
}

std::uint64_t next_u64(std::mt19937_64& gen) { return gen(); }

}  // namespace

std::string_view head_name(Head head) { return kHeadNames[slot(head)]; }

std::string_view residual_mode_name(ResidualMode mode) {
  return mode == ResidualMode::kNormalized ? "normalized" : "raw";
}

std::optional<ResidualMode> residual_mode_from_name(std::string_view name) {
  if (name == "normalized") return ResidualMode::kNormalized;
  if (name == "raw") return ResidualMode::kRaw;
  return std::nullopt;
}

int Dims::vocab(Head head) const {
  switch (head) {
    case Head::kInit: return v_init;
    case Head::kVowel: return v_rhyme;
    case Head::kTone: return v_tone;
  }
  return 0;
}

HeadParams HeadParams::zeros(const Dims& dims) {
  if (dims.d <= 0 || dims.v_init <= 0 || dims.v_rhyme <= 0 || dims.v_tone <= 0) {
    throw ShapeMismatch("dimensions must be positive");
  }
  HeadParams p;
  p.dims = dims;
  const int d = dims.d;
  for (Head h : kAllHeads) {
    FfnParams& f = p.head(h);
    const int v = dims.vocab(h);
    f.ln_gain = VectorXd::Zero(d);
    f.ln_bias = VectorXd::Zero(d);
    f.w_up = MatrixXd::Zero(d, 2 * d);
    f.w_down = MatrixXd::Zero(2 * d, d);
    f.w_out = MatrixXd::Zero(d, v);
    f.b_out = VectorXd::Zero(v);
  }
  p.e_init = MatrixXd::Zero(dims.v_init, d);
  p.e_rhyme = MatrixXd::Zero(dims.v_rhyme, d);
  p.e_tone = MatrixXd::Zero(dims.v_tone, d);
  p.w_e = MatrixXd::Zero(3 * d, d);
  return p;
}

HeadParams HeadParams::random(const Dims& dims, std::uint64_t seed, double scale) {
  HeadParams p = zeros(dims);
  std::uint64_t stream = seed;
  for (TensorRef& t : p.tensors()) {
    fill_uniform(std::span<double>(t.data, static_cast<std::size_t>(t.size())), stream++, -scale, scale);
  }
  return p;
}

std::vector<TensorRef> HeadParams::tensors() {
  std::vector<TensorRef> out;
  const auto add = [&](std::string name, auto& m) { out.push_back({std::move(name), m.data(), m.rows(), m.cols()}); };
  for (Head h : kAllHeads) {
    const std::string prefix = std::string(head_name(h)) + ".";
    FfnParams& f = head(h);
    add(prefix + "ln_gain", f.ln_gain);
    add(prefix + "ln_bias", f.ln_bias);
    add(prefix + "w_up", f.w_up);
    add(prefix + "w_down", f.w_down);
    add(prefix + "w_out", f.w_out);
    add(prefix + "b_out", f.b_out);
  }
  add("emb.init", e_init);
  add("emb.rhyme", e_rhyme);
  add("emb.tone", e_tone);
  add("fusion.w_e", w_e);
  return out;
}

std::size_t HeadParams::parameter_count() const {
  std::size_t n = 0;
  for (const TensorRef& t : const_cast<HeadParams*>(this)->tensors()) n += static_cast<std::size_t>(t.size());
  return n;
}

void HeadParams::check_shapes() const {
  const int d = dims.d;
  for (Head h : kAllHeads) {
    const FfnParams& f = head(h);
    const std::string prefix = std::string(head_name(h)) + ".";
    const int v = dims.vocab(h);
    expect_shape(prefix + "ln_gain", f.ln_gain.rows(), f.ln_gain.cols(), d, 1);
    expect_shape(prefix + "ln_bias", f.ln_bias.rows(), f.ln_bias.cols(), d, 1);
    expect_shape(prefix + "w_up", f.w_up.rows(), f.w_up.cols(), d, 2 * d);
    expect_shape(prefix + "w_down", f.w_down.rows(), f.w_down.cols(), 2 * d, d);
    expect_shape(prefix + "w_out", f.w_out.rows(), f.w_out.cols(), d, v);
    expect_shape(prefix + "b_out", f.b_out.rows(), f.b_out.cols(), v, 1);
  }
  expect_shape("emb.init", e_init.rows(), e_init.cols(), dims.v_init, d);
  expect_shape("emb.rhyme", e_rhyme.rows(), e_rhyme.cols(), dims.v_rhyme, d);
  expect_shape("emb.tone", e_tone.rows(), e_tone.cols(), dims.v_tone, d);
  expect_shape("fusion.w_e", w_e.rows(), w_e.cols(), 3 * d, d);
}

void fill_uniform(std::span<double> out, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  for (double& x : out) {
    // Top 53 bits give a double in [0, 1).
    const double u = static_cast<double>(next_u64(gen) >> 11) * 0x1.0p-53;
    x = lo + (hi - lo) * u;
  }
}

VectorXd layer_norm(const VectorXd& x, const VectorXd& gain, const VectorXd& bias) {
  const double mean = x.mean();
  const VectorXd centered = x.array() - mean;
  const double var = centered.squaredNorm() / static_cast<double>(x.size());
  return gain.cwiseProduct(centered / std::sqrt(var + kLayerNormEpsilon)) + bias;
}

VectorXd ffn_forward(const VectorXd& f, const FfnParams& p, ResidualMode mode) {
  if (f.size() != p.ln_gain.size()) {
    throw ShapeMismatch("input has " + std::to_string(f.size()) + " entries, model dimension is " +
                        std::to_string(p.ln_gain.size()));
  }
  if (!f.allFinite()) throw NonFiniteInput("ffn input contains NaN or infinity");
  return ffn_trace(f, p, mode).out;
}

HeadLogits head_logits(const VectorXd& f_dec, const HeadParams& params, ResidualMode mode) {
  params.check_shapes();
  if (f_dec.size() != params.dims.d) {
    throw ShapeMismatch("decoder feature has " + std::to_string(f_dec.size()) + " entries, expected " +
                        std::to_string(params.dims.d));
  }
  if (!f_dec.allFinite()) throw NonFiniteInput("decoder feature contains NaN or infinity");
  HeadLogits out;
  for (Head h : kAllHeads) out.logits[slot(h)] = ffn_trace(f_dec, params.head(h), mode).logits;
  return out;
}

VectorXd embed_prev(const TokenIds& ids, const HeadParams& params) {
  params.check_shapes();
  return params.w_e.transpose() * concat_embeddings(ids, params);
}

VectorXd softmax(const VectorXd& logits) {
  const VectorXd e = (logits.array() - logits.maxCoeff()).exp();
  return e / e.sum();
}

double cross_entropy(const VectorXd& logits, int target) {
  if (target < 0 || target >= logits.size()) {
    throw IdOutOfRange("target " + std::to_string(target) + " outside [0, " + std::to_string(logits.size()) + ")");
  }
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());
  return lse - logits[target];
}

LossValue composite_loss(const std::array<std::vector<VectorXd>, 3>& logits,
                         const std::array<std::vector<int>, 3>& targets) {
  const std::size_t n = logits[0].size();
  for (std::size_t h = 0; h < 3; ++h) {
    if (logits[h].size() != n || targets[h].size() != n) {
      throw LengthMismatch("every head needs " + std::to_string(n) + " logit vectors and targets");
    }
  }
  if (n == 0) throw LengthMismatch("empty sequence");

  LossValue out;
  for (std::size_t h = 0; h < 3; ++h) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += cross_entropy(logits[h][i], targets[h][i]);
    out.per_head[h] = sum / static_cast<double>(n);
  }
  out.total = out.per_head[0] + out.per_head[1] + out.per_head[2];
  return out;
}

LossValue batch_loss(const HeadParams& params, const std::vector<Step>& batch, ResidualMode mode) {
  std::array<std::vector<VectorXd>, 3> logits;
  std::array<std::vector<int>, 3> targets;
  for (const Step& s : batch) {
    const VectorXd f = s.trunk + embed_prev(s.previous, params);
    const HeadLogits hl = head_logits(f, params, mode);
    for (Head h : kAllHeads) {
      logits[slot(h)].push_back(hl[h]);
      targets[slot(h)].push_back(target_for(s, h));
    }
  }
  return composite_loss(logits, targets);
}

std::vector<bool> relu_pattern(const HeadParams& params, const std::vector<Step>& batch, ResidualMode mode) {
  std::vector<bool> pattern;
  for (const Step& s : batch) {
    const VectorXd f = s.trunk + embed_prev(s.previous, params);
    for (Head h : kAllHeads) {
      const FfnTrace t = ffn_trace(f, params.head(h), mode);
      for (Eigen::Index i = 0; i < t.pre_relu.size(); ++i) pattern.push_back(t.pre_relu[i] > 0.0);
    }
  }
  return pattern;
}

LossAndGradient loss_and_gradient(const HeadParams& params, const std::vector<Step>& batch, ResidualMode mode) {
  params.check_shapes();
  if (batch.empty()) throw LengthMismatch("empty sequence");
  const int d = params.dims.d;
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  LossAndGradient out{{}, HeadParams::zeros(params.dims)};
  HeadParams& g = out.gradient;

  for (const Step& s : batch) {
    if (s.trunk.size() != d) throw ShapeMismatch("trunk vector has the wrong size");
    const VectorXd c = concat_embeddings(s.previous, params);
    const VectorXd f = s.trunk + params.w_e.transpose() * c;
    VectorXd df = VectorXd::Zero(d);

    for (Head h : kAllHeads) {
      const FfnParams& p = params.head(h);
      FfnParams& gp = g.head(h);
      const FfnTrace t = ffn_trace(f, p, mode);
      const int target = target_for(s, h);
      out.loss.per_head[slot(h)] += cross_entropy(t.logits, target) * inv_n;

      VectorXd dz = softmax(t.logits);
      dz[target] -= 1.0;
      dz *= inv_n;

      gp.w_out.noalias() += t.out * dz.transpose();
      gp.b_out += dz;
      const VectorXd d_out = p.w_out * dz;

      gp.w_down.noalias() += t.hidden * d_out.transpose();
      const VectorXd d_hidden = p.w_down * d_out;
      const VectorXd d_pre = d_hidden.cwiseProduct((t.pre_relu.array() > 0.0).cast<double>().matrix());
      gp.w_up.noalias() += t.normalized * d_pre.transpose();
      VectorXd d_norm = p.w_up * d_pre;
      if (mode == ResidualMode::kNormalized) {
        d_norm += d_out;
      } else {
        df += d_out;
      }

      gp.ln_gain += d_norm.cwiseProduct(t.xhat);
      gp.ln_bias += d_norm;
      const VectorXd d_xhat = d_norm.cwiseProduct(p.ln_gain);
      const double mean_dx = d_xhat.mean();
      const double mean_dx_xhat = d_xhat.cwiseProduct(t.xhat).mean();
      df += t.inv_std * (d_xhat.array() - mean_dx - t.xhat.array() * mean_dx_xhat).matrix();
    }

    g.w_e.noalias() += c * df.transpose();
    const VectorXd dc = params.w_e * df;
    g.e_init.row(s.previous.initial) += dc.segment(0, d).transpose();
    g.e_rhyme.row(s.previous.rhyme) += dc.segment(d, d).transpose();
    g.e_tone.row(s.previous.tone) += dc.segment(2 * d, d).transpose();
  }
  out.loss.total = out.loss.per_head[0] + out.loss.per_head[1] + out.loss.per_head[2];
  return out;
}

std::vector<Step> random_batch(const Dims& dims, int steps, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto pick = [&](int n) { return static_cast<int>(next_u64(gen) % static_cast<std::uint64_t>(n)); };
  std::vector<Step> batch;
  for (int i = 0; i < steps; ++i) {
    Step s;
    s.trunk = VectorXd(dims.d);
    fill_uniform(std::span<double>(s.trunk.data(), static_cast<std::size_t>(dims.d)), next_u64(gen), -1.0, 1.0);
    s.previous = {pick(dims.v_init), pick(dims.v_rhyme), pick(dims.v_tone)};
    s.target = {pick(dims.v_init), pick(dims.v_rhyme), pick(dims.v_tone)};
    batch.push_back(std::move(s));
  }
  return batch;
}

ToyConfig toy_config(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const auto between = [&](int lo, int hi) {
    return lo + static_cast<int>(next_u64(gen) % static_cast<std::uint64_t>(hi - lo + 1));
  };
  Dims dims;
  dims.d = between(2, 8);
  dims.v_init = between(2, 10);
  dims.v_rhyme = between(2, 10);
  dims.v_tone = static_cast<int>(kToneCount);
  const int steps = between(1, 5);
  ToyConfig c{HeadParams::random(dims, next_u64(gen)), {}};
  c.batch = random_batch(dims, steps, next_u64(gen));
  return c;
}

GradCheckReport grad_check_against(const HeadParams& params, const std::vector<Step>& batch, HeadParams analytic,
                                   ResidualMode mode, const GradCheckOptions& options) {
  HeadParams probe = params;
  auto probe_tensors = probe.tensors();
  auto analytic_tensors = analytic.tensors();
  if (analytic.dims != params.dims) throw ShapeMismatch("gradient dimensions differ from the parameters");
  analytic.check_shapes();

  const std::vector<bool> base_pattern = relu_pattern(params, batch, mode);
  GradCheckReport report;
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    const TensorRef& t = probe_tensors[k];
    const TensorRef& a = analytic_tensors[k];
    TensorCheck check;
    check.name = t.name;
    bool have_worst = false;
    for (Eigen::Index c = 0; c < t.cols; ++c) {
      for (Eigen::Index r = 0; r < t.rows; ++r) {
        double& x = t.at(r, c);
        const double saved = x;
        x = saved + options.step;
        const double plus = batch_loss(probe, batch, mode).total;
        const bool kink_plus = relu_pattern(probe, batch, mode) != base_pattern;
        x = saved - options.step;
        const double minus = batch_loss(probe, batch, mode).total;
        const bool kink_minus = relu_pattern(probe, batch, mode) != base_pattern;
        x = saved;
        const double numeric = (plus - minus) / (2.0 * options.step);
        const double exact = a.at(r, c);
        const double abs_err = std::abs(exact - numeric);
        const double denom = std::max({std::abs(exact), std::abs(numeric), options.denominator_floor});
        const double rel = abs_err / denom;
        check.max_relative_error_with_kinks = std::max(check.max_relative_error_with_kinks, rel);
        if (kink_plus || kink_minus) {
          // A rectifier changes sign inside the stencil: the difference
          // quotient straddles a kink and is not a derivative estimate.
          ++check.kink_entries;
          continue;
        }
        check.max_absolute_error = std::max(check.max_absolute_error, abs_err);
        if (!have_worst || rel > check.max_relative_error) {
          have_worst = true;
          check.max_relative_error = rel;
          check.worst_row = r;
          check.worst_col = c;
          check.analytic_at_worst = exact;
          check.numeric_at_worst = numeric;
        }
      }
    }
    check.ok = check.max_relative_error < options.tolerance;
    report.max_relative_error = std::max(report.max_relative_error, check.max_relative_error);
    report.max_relative_error_with_kinks =
        std::max(report.max_relative_error_with_kinks, check.max_relative_error_with_kinks);
    report.kink_entries += check.kink_entries;
    report.checked_entries += static_cast<std::size_t>(t.size()) - check.kink_entries;
    report.ok = report.ok && check.ok;
    report.tensors.push_back(std::move(check));
  }
  return report;
}

GradCheckReport grad_check(const HeadParams& params, const std::vector<Step>& batch, ResidualMode mode,
                           const GradCheckOptions& options) {
  return grad_check_against(params, batch, loss_and_gradient(params, batch, mode).gradient, mode, options);
}

std::string GradCheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  j["max_relative_error"] = max_relative_error;
  j["checked_entries"] = checked_entries;
  j["kink_entries"] = kink_entries;
  j["max_relative_error_with_kinks"] = max_relative_error_with_kinks;
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const TensorCheck& t : tensors) {
    list.push_back({{"name", t.name},
                    {"ok", t.ok},
                    {"max_relative_error", t.max_relative_error},
                    {"max_absolute_error", t.max_absolute_error},
                    {"kink_entries", t.kink_entries},
                    {"worst", {t.worst_row, t.worst_col}},
                    {"analytic", t.analytic_at_worst},
                    {"numeric", t.numeric_at_worst}});
  }
  j["tensors"] = list;
  return j.dump(2);
}

void save_params(const HeadParams& params, std::ostream& out) {
  params.check_shapes();
  HeadParams copy = params;
  const Dims& dm = params.dims;
  out << kMagic << " 1\n";
  out << "dims " << dm.d << ' ' << dm.v_init << ' ' << dm.v_rhyme << ' ' << dm.v_tone << '\n';
  char buf[32];
  for (const TensorRef& t : copy.tensors()) {
    out << "tensor " << t.name << ' ' << t.rows << ' ' << t.cols << '\n';
    for (Eigen::Index r = 0; r < t.rows; ++r) {
      for (Eigen::Index c = 0; c < t.cols; ++c) {
        std::snprintf(buf, sizeof buf, "%.17g", t.at(r, c));
        if (c > 0) out << ' ';
        out << buf;
      }
      out << '\n';
    }
  }
}

HeadParams load_params(std::istream& in) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != kMagic || version != 1) throw Error("not a head parameter file");
  Dims dm;
  if (!(in >> word >> dm.d >> dm.v_init >> dm.v_rhyme >> dm.v_tone) || word != "dims") {
    throw Error("missing dims line");
  }
  HeadParams p = HeadParams::zeros(dm);
  for (TensorRef& t : p.tensors()) {
    std::string name;
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(in >> word >> name >> rows >> cols) || word != "tensor") throw Error("expected tensor " + t.name);
    if (name != t.name) throw Error("expected tensor " + t.name + ", found " + name);
    expect_shape(name, rows, cols, t.rows, t.cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        std::string token;
        if (!(in >> token)) throw Error("truncated values for " + name);
        std::istringstream value(token);
        double x = 0.0;
        if (!(value >> x)) throw Error("bad value '" + token + "' in " + name);
        t.at(r, c) = x;
      }
    }
  }
  if (in >> word) throw Error("trailing data after the last tensor");
  return p;
}

}  // namespace viphon::head
