// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/verifier/encoder.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vforge/core/error.hpp"
#include "vforge/core/random.hpp"
#include "vforge/verifier/losses.hpp"

namespace vforge {
namespace {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using ConstMatMap = Eigen::Map<const Mat>;
using ConstVecMap = Eigen::Map<const RowVec>;
using MatMap = Eigen::Map<Mat>;
using VecMap = Eigen::Map<RowVec>;

constexpr double kLayerNormEps = 1e-5;
constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

struct NormCache {
  Mat xhat;
  Eigen::VectorXd rstd;
};

Mat layer_norm(const Mat& x, const ConstVecMap& gain, const ConstVecMap& bias, NormCache& cache) {
  const Eigen::Index rows = x.rows();
  cache.xhat.resize(rows, x.cols());
  cache.rstd.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double mean = x.row(i).mean();
    const RowVec centered = x.row(i).array() - mean;
    const double var = centered.squaredNorm() / static_cast<double>(x.cols());
    cache.rstd(i) = 1.0 / std::sqrt(var + kLayerNormEps);
    cache.xhat.row(i) = centered * cache.rstd(i);
  }
  Mat y = cache.xhat.array().rowwise() * gain.array();
  y.rowwise() += bias;
  return y;
}

Mat layer_norm_backward(const Mat& dy, const NormCache& cache, const ConstVecMap& gain,
                        VecMap dgain, VecMap dbias) {
  dgain += (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  dbias += dy.colwise().sum();
  const Mat dxhat = dy.array().rowwise() * gain.array();
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double m1 = dxhat.row(i).mean();
    const double m2 = dxhat.row(i).dot(cache.xhat.row(i)) / static_cast<double>(dy.cols());
    dx.row(i) = cache.rstd(i) * (dxhat.row(i).array() - m1 - cache.xhat.row(i).array() * m2).matrix();
  }
  return dx;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x * kInvSqrt2)); }
double gelu_grad(double x) {
  return 0.5 * (1.0 + std::erf(x * kInvSqrt2)) + x * kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

void softmax_rows(Mat& s) {
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double peak = s.row(i).maxCoeff();
    s.row(i) = (s.row(i).array() - peak).exp().matrix();
    s.row(i) /= s.row(i).sum();
  }
}

struct LayerState {
  Eigen::Index rows_out = 0;
  Mat x_in;
  NormCache ln1;
  Mat a;
  Mat q, k, v;
  std::vector<Mat> probs;
  Mat o;
  Mat x_mid;
  NormCache ln2;
  Mat b;
  Mat h;
  Mat g;
};

struct ForwardState {
  std::vector<LayerState> layers;
  NormCache lnf;
  RowVec pooled;
  double logit = 0.0;
};

class Encoder {
 public:
  Encoder(const EncoderConfig& config, const ParamLayout& layout, std::span<const double> params)
      : config_(config), layout_(layout), p_(params.data()) {}

  ConstMatMap mat(std::size_t offset, Eigen::Index rows, Eigen::Index cols) const {
    return ConstMatMap(p_ + offset, rows, cols);
  }
  ConstVecMap vec(std::size_t offset, Eigen::Index n) const { return ConstVecMap(p_ + offset, n); }

  void forward(std::span<const int> ids, ForwardState& state) const {
    const Eigen::Index n = static_cast<Eigen::Index>(ids.size());
    const Eigen::Index d = config_.dim;
    const Eigen::Index f = config_.ff_dim;
    const Eigen::Index heads = config_.heads;
    const Eigen::Index dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    const ConstMatMap tok = mat(layout_.token_embedding, vocab_rows(), d);
    const ConstMatMap pos = mat(layout_.position_embedding, config_.max_tokens + 1, d);
    Mat x(n, d);
    for (Eigen::Index i = 0; i < n; ++i) x.row(i) = tok.row(ids[i]) + pos.row(i);

    state.layers.resize(layout_.layers.size());
    for (std::size_t l = 0; l < layout_.layers.size(); ++l) {
      const auto& off = layout_.layers[l];
      LayerState& ls = state.layers[l];
      // Only position 0 feeds the head, so the last layer computes just that row.
      const Eigen::Index rows = (l + 1 == layout_.layers.size()) ? 1 : n;
      ls.rows_out = rows;
      ls.x_in = std::move(x);
      ls.a = layer_norm(ls.x_in, vec(off.ln1_g, d), vec(off.ln1_b, d), ls.ln1);
      ls.q = ls.a.topRows(rows) * mat(off.wq, d, d);
      ls.q.rowwise() += vec(off.bq, d);
      ls.k = ls.a * mat(off.wk, d, d);
      ls.k.rowwise() += vec(off.bk, d);
      ls.v = ls.a * mat(off.wv, d, d);
      ls.v.rowwise() += vec(off.bv, d);
      ls.probs.resize(static_cast<std::size_t>(heads));
      ls.o.resize(rows, d);
      for (Eigen::Index hd = 0; hd < heads; ++hd) {
        Mat s = ls.q.middleCols(hd * dh, dh) * ls.k.middleCols(hd * dh, dh).transpose() * scale;
        softmax_rows(s);
        ls.o.middleCols(hd * dh, dh) = s * ls.v.middleCols(hd * dh, dh);
        ls.probs[static_cast<std::size_t>(hd)] = std::move(s);
      }
      Mat attn = ls.o * mat(off.wo, d, d);
      attn.rowwise() += vec(off.bo, d);
      ls.x_mid = ls.x_in.topRows(rows) + attn;
      ls.b = layer_norm(ls.x_mid, vec(off.ln2_g, d), vec(off.ln2_b, d), ls.ln2);
      ls.h = ls.b * mat(off.w1, d, f);
      ls.h.rowwise() += vec(off.b1, f);
      ls.g = ls.h.unaryExpr(&gelu);
      Mat ffn = ls.g * mat(off.w2, f, d);
      ffn.rowwise() += vec(off.b2, d);
      x = ls.x_mid + ffn;
    }
    const Mat first = x.topRows(1);
    state.pooled = layer_norm(first, vec(layout_.lnf_g, d), vec(layout_.lnf_b, d), state.lnf).row(0);
    state.logit = state.pooled.dot(vec(layout_.head_w, d)) + p_[layout_.head_b];
  }

  void backward(std::span<const int> ids, const ForwardState& state, double dlogit,
                std::span<double> grad) const {
    const Eigen::Index d = config_.dim;
    const Eigen::Index f = config_.ff_dim;
    const Eigen::Index heads = config_.heads;
    const Eigen::Index dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    double* g = grad.data();
    auto gmat = [&](std::size_t offset, Eigen::Index rows, Eigen::Index cols) {
      return MatMap(g + offset, rows, cols);
    };
    auto gvec = [&](std::size_t offset, Eigen::Index n) { return VecMap(g + offset, n); };

    gvec(layout_.head_w, d) += dlogit * state.pooled;
    g[layout_.head_b] += dlogit;
    const Mat dpooled = dlogit * vec(layout_.head_w, d);
    Mat dx = layer_norm_backward(dpooled, state.lnf, vec(layout_.lnf_g, d),
                                 gvec(layout_.lnf_g, d), gvec(layout_.lnf_b, d));

    for (std::size_t l = layout_.layers.size(); l-- > 0;) {
      const auto& off = layout_.layers[l];
      const LayerState& ls = state.layers[l];
      const Eigen::Index rows = ls.rows_out;
      const Eigen::Index n = ls.x_in.rows();

      // Feed-forward block.
      gmat(off.w2, f, d).noalias() += ls.g.transpose() * dx;
      gvec(off.b2, d) += dx.colwise().sum();
      const Mat dg = dx * mat(off.w2, f, d).transpose();
      const Mat dh_pre = dg.array() * ls.h.unaryExpr(&gelu_grad).array();
      gmat(off.w1, d, f).noalias() += ls.b.transpose() * dh_pre;
      gvec(off.b1, f) += dh_pre.colwise().sum();
      const Mat db = dh_pre * mat(off.w1, d, f).transpose();
      const Mat dx_mid = dx + layer_norm_backward(db, ls.ln2, vec(off.ln2_g, d),
                                                  gvec(off.ln2_g, d), gvec(off.ln2_b, d));

      // Attention block.
      gmat(off.wo, d, d).noalias() += ls.o.transpose() * dx_mid;
      gvec(off.bo, d) += dx_mid.colwise().sum();
      const Mat d_o = dx_mid * mat(off.wo, d, d).transpose();
      Mat dq(rows, d);
      Mat dk(n, d);
      Mat dv(n, d);
      for (Eigen::Index hd = 0; hd < heads; ++hd) {
        const Mat& p = ls.probs[static_cast<std::size_t>(hd)];
        const auto d_oh = d_o.middleCols(hd * dh, dh);
        const Mat dp = d_oh * ls.v.middleCols(hd * dh, dh).transpose();
        dv.middleCols(hd * dh, dh) = p.transpose() * d_oh;
        const Eigen::VectorXd row_dot = (dp.array() * p.array()).rowwise().sum();
        const Mat ds = p.array() * (dp.colwise() - row_dot).array();
        dq.middleCols(hd * dh, dh) = ds * ls.k.middleCols(hd * dh, dh) * scale;
        dk.middleCols(hd * dh, dh) = ds.transpose() * ls.q.middleCols(hd * dh, dh) * scale;
      }
      const auto a_rows = ls.a.topRows(rows);
      gmat(off.wq, d, d).noalias() += a_rows.transpose() * dq;
      gvec(off.bq, d) += dq.colwise().sum();
      gmat(off.wk, d, d).noalias() += ls.a.transpose() * dk;
      gvec(off.bk, d) += dk.colwise().sum();
      gmat(off.wv, d, d).noalias() += ls.a.transpose() * dv;
      gvec(off.bv, d) += dv.colwise().sum();
      Mat da = dk * mat(off.wk, d, d).transpose() + dv * mat(off.wv, d, d).transpose();
      da.topRows(rows) += dq * mat(off.wq, d, d).transpose();

      Mat dx_in = layer_norm_backward(da, ls.ln1, vec(off.ln1_g, d), gvec(off.ln1_g, d),
                                      gvec(off.ln1_b, d));
      dx_in.topRows(rows) += dx_mid;
      dx = std::move(dx_in);
    }

    MatMap gtok = gmat(layout_.token_embedding, vocab_rows(), d);
    MatMap gpos = gmat(layout_.position_embedding, config_.max_tokens + 1, d);
    for (Eigen::Index i = 0; i < dx.rows(); ++i) {
      gtok.row(ids[static_cast<std::size_t>(i)]) += dx.row(i);
      gpos.row(i) += dx.row(i);
    }
  }

 private:
  Eigen::Index vocab_rows() const {
    return static_cast<Eigen::Index>((layout_.position_embedding - layout_.token_embedding) /
                                     static_cast<std::size_t>(config_.dim));
  }

  const EncoderConfig& config_;
  const ParamLayout& layout_;
  const double* p_;
};

}  // namespace

nlohmann::json EncoderConfig::to_json() const {
  return {{"layers", layers}, {"dim", dim},          {"heads", heads},
          {"ff_dim", ff_dim}, {"max_tokens", max_tokens}, {"init_scale", init_scale}};
}

EncoderConfig EncoderConfig::from_json(const nlohmann::json& object) {
  EncoderConfig config;
  config.layers = object.value("layers", config.layers);
  config.dim = object.value("dim", config.dim);
  config.heads = object.value("heads", config.heads);
  config.ff_dim = object.value("ff_dim", config.ff_dim);
  config.max_tokens = object.value("max_tokens", config.max_tokens);
  config.init_scale = object.value("init_scale", config.init_scale);
  config.validate();
  return config;
}

void EncoderConfig::validate() const {
  if (layers < 1 || dim < 1 || heads < 1 || ff_dim < 1 || max_tokens < 2) {
    throw config_error("invalid-encoder", "encoder sizes must be positive");
  }
  if (dim % heads != 0) {
    throw config_error("invalid-encoder", "encoder dim must be divisible by heads");
  }
}

ParamLayout::ParamLayout(const EncoderConfig& config, int vocab_size) {
  const std::size_t d = static_cast<std::size_t>(config.dim);
  const std::size_t f = static_cast<std::size_t>(config.ff_dim);
  std::size_t at = 0;
  auto take = [&](std::size_t n) {
    const std::size_t offset = at;
    at += n;
    return offset;
  };
  token_embedding = take(static_cast<std::size_t>(vocab_size) * d);
  position_embedding = take(static_cast<std::size_t>(config.max_tokens + 1) * d);
  for (int l = 0; l < config.layers; ++l) {
    Layer layer{};
    layer.ln1_g = take(d);
    layer.ln1_b = take(d);
    layer.wq = take(d * d);
    layer.bq = take(d);
    layer.wk = take(d * d);
    layer.bk = take(d);
    layer.wv = take(d * d);
    layer.bv = take(d);
    layer.wo = take(d * d);
    layer.bo = take(d);
    layer.ln2_g = take(d);
    layer.ln2_b = take(d);
    layer.w1 = take(d * f);
    layer.b1 = take(f);
    layer.w2 = take(f * d);
    layer.b2 = take(d);
    layers.push_back(layer);
  }
  lnf_g = take(d);
  lnf_b = take(d);
  head_w = take(d);
  head_b = take(1);
  total = at;
}

VerifierModel::VerifierModel(EncoderConfig config, BpeTokenizer tokenizer, std::uint64_t seed)
    : config_(config),
      tokenizer_(std::move(tokenizer)),
      layout_(config_, tokenizer_.vocab_size()),
      params_(layout_.total, 0.0) {
  config_.validate();
  Rng rng(seed);
  auto fill_normal = [&](std::size_t offset, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) params_[offset + i] = config_.init_scale * rng.normal();
  };
  auto fill_value = [&](std::size_t offset, std::size_t n, double value) {
    std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(offset), n, value);
  };
  const std::size_t d = static_cast<std::size_t>(config_.dim);
  const std::size_t f = static_cast<std::size_t>(config_.ff_dim);
  fill_normal(layout_.token_embedding, layout_.position_embedding - layout_.token_embedding);
  fill_normal(layout_.position_embedding, static_cast<std::size_t>(config_.max_tokens + 1) * d);
  for (const auto& layer : layout_.layers) {
    fill_value(layer.ln1_g, d, 1.0);
    fill_value(layer.ln2_g, d, 1.0);
    fill_normal(layer.wq, d * d);
    fill_normal(layer.wk, d * d);
    fill_normal(layer.wv, d * d);
    fill_normal(layer.wo, d * d);
    fill_normal(layer.w1, d * f);
    fill_normal(layer.w2, f * d);
  }
  fill_value(layout_.lnf_g, d, 1.0);
  fill_normal(layout_.head_w, d);
}

VerifierModel::VerifierModel(EncoderConfig config, BpeTokenizer tokenizer, std::vector<double> params)
    : config_(config),
      tokenizer_(std::move(tokenizer)),
      layout_(config_, tokenizer_.vocab_size()),
      params_(params.begin(), params.end()) {
  config_.validate();
  if (params_.size() != layout_.total) {
    throw data_error("bad-checkpoint", "parameter count " + std::to_string(params_.size()) +
                                           " does not match the encoder layout (" +
                                           std::to_string(layout_.total) + ")");
  }
}

std::vector<int> truncate_head_tail(std::span<const int> ids, int budget) {
  if (static_cast<int>(ids.size()) <= budget) return {ids.begin(), ids.end()};
  const std::size_t head = static_cast<std::size_t>(budget / 2);
  const std::size_t tail = static_cast<std::size_t>(budget) - head;
  std::vector<int> out(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(head));
  out.insert(out.end(), ids.end() - static_cast<std::ptrdiff_t>(tail), ids.end());
  return out;
}

std::vector<int> VerifierModel::encode(std::string_view text) const {
  const std::vector<int> content = truncate_head_tail(tokenizer_.encode(text), config_.max_tokens);
  std::vector<int> ids;
  ids.reserve(content.size() + 1);
  ids.push_back(BpeTokenizer::kCls);
  ids.insert(ids.end(), content.begin(), content.end());
  return ids;
}

double VerifierModel::logit_for_ids(std::span<const int> ids) const {
  ForwardState state;
  Encoder(config_, layout_, params_).forward(ids, state);
  return state.logit;
}

double VerifierModel::logit(std::string_view text) const { return logit_for_ids(encode(text)); }

double VerifierModel::score(std::string_view text) const { return sigmoid(logit(text)); }

std::vector<double> VerifierModel::logit_batch(std::span<const std::string> texts) const {
  std::vector<double> out(texts.size());
  parallel_for(texts.size(), [&](std::size_t i) { out[i] = logit(texts[i]); });
  return out;
}

std::vector<double> VerifierModel::score_batch(std::span<const std::string> texts) const {
  std::vector<double> out = logit_batch(texts);
  for (double& value : out) value = sigmoid(value);
  return out;
}

double VerifierModel::logit_and_accumulate_grad(std::span<const int> ids, double dlogit,
                                                std::span<double> grad) const {
  ForwardState state;
  const Encoder encoder(config_, layout_, params_);
  encoder.forward(ids, state);
  encoder.backward(ids, state, dlogit, grad);
  return state.logit;
}

double VerifierModel::accumulate_group_grad(std::span<const std::vector<int>* const> sequences,
                                            const GroupLoss& loss, std::span<double> grad) const {
  const Encoder encoder(config_, layout_, params_);
  std::vector<ForwardState> states(sequences.size());
  std::vector<double> logits(sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    encoder.forward(*sequences[i], states[i]);
    logits[i] = states[i].logit;
  }
  const auto [value, dlogits] = loss(logits);
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (dlogits[i] != 0.0) encoder.backward(*sequences[i], states[i], dlogits[i], grad);
  }
  return value;
}

void VerifierModel::zero_head() {
  std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(layout_.head_w),
              static_cast<std::size_t>(config_.dim) + 1, 0.0);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace vforge
