// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <new>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vforge/verifier/tokenizer.hpp"

namespace vforge {

// Storage for parameters and gradients. Vectorized reductions peel a
// number of leading elements that depends on the buffer's address, so a
// fixed alignment is what makes results reproducible bit for bit.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::size_t kAlignment = 64;
  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}
  T* allocate(std::size_t n) {
    const std::size_t bytes = (n * sizeof(T) + kAlignment - 1) / kAlignment * kAlignment;
    void* p = std::aligned_alloc(kAlignment, bytes == 0 ? kAlignment : bytes);
    if (p == nullptr) throw std::bad_alloc();
    return static_cast<T*>(p);
  }
  void deallocate(T* p, std::size_t) { std::free(p); }
  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};
using ParamBuffer = std::vector<double, AlignedAllocator<double>>;

struct EncoderConfig {
  int layers = 2;
  int dim = 128;
  int heads = 4;
  int ff_dim = 512;
  // Content budget; longer inputs keep the first half and the last half.
  int max_tokens = 512;
  double init_scale = 0.02;

  nlohmann::json to_json() const;
  static EncoderConfig from_json(const nlohmann::json& object);
  void validate() const;
};

// Offsets of every tensor inside the flat parameter vector.
struct ParamLayout {
  struct Layer {
    std::size_t ln1_g, ln1_b, wq, bq, wk, bk, wv, bv, wo, bo;
    std::size_t ln2_g, ln2_b, w1, b1, w2, b2;
  };
  std::size_t token_embedding = 0;
  std::size_t position_embedding = 0;
  std::vector<Layer> layers;
  std::size_t lnf_g = 0, lnf_b = 0, head_w = 0, head_b = 0;
  std::size_t total = 0;

  ParamLayout(const EncoderConfig& config, int vocab_size);
};

// Bidirectional pre-norm transformer encoder with a linear head on the
// first position. Pure fp64; one sequence at a time.
class VerifierModel {
 public:
  VerifierModel(EncoderConfig config, BpeTokenizer tokenizer, std::uint64_t seed);
  VerifierModel(EncoderConfig config, BpeTokenizer tokenizer, std::vector<double> params);

  const EncoderConfig& config() const { return config_; }
  const BpeTokenizer& tokenizer() const { return tokenizer_; }
  const ParamLayout& layout() const { return layout_; }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  // [CLS] followed by the (possibly truncated) subword ids of `text`.
  std::vector<int> encode(std::string_view text) const;

  double logit(std::string_view text) const;
  double score(std::string_view text) const;
  // Same values as calling score() per text; work is spread over threads.
  std::vector<double> score_batch(std::span<const std::string> texts) const;
  std::vector<double> logit_batch(std::span<const std::string> texts) const;

  // Forward pass that also adds d(dlogit * logit)/d params into `grad`
  // (same layout as params()). Returns the logit.
  double logit_and_accumulate_grad(std::span<const int> ids, double dlogit,
                                   std::span<double> grad) const;
  double logit_for_ids(std::span<const int> ids) const;

  // Losses over a group of sequences scored jointly (a pair, a contrastive
  // batch). `loss` maps the group's logits to (loss, d loss / d logits).
  using GroupLoss = std::function<std::pair<double, std::vector<double>>(std::span<const double>)>;
  // Forwards every sequence once, backpropagates the loss gradient into
  // `grad`, and returns the loss.
  double accumulate_group_grad(std::span<const std::vector<int>* const> sequences,
                               const GroupLoss& loss, std::span<double> grad) const;

  void zero_head();

 private:
  EncoderConfig config_;
  BpeTokenizer tokenizer_;
  ParamLayout layout_;
  ParamBuffer params_;
};

// Truncates content ids to `budget`, keeping budget/2 from the front and the
// rest from the back.
std::vector<int> truncate_head_tail(std::span<const int> ids, int budget);

// Runs fn(i) for i in [0, n) over up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace vforge
