// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace vforge {

// Exact dollar amount held as an integer count of picodollars.
class Money {
 public:
  using Rep = __int128;
  static constexpr Rep kPerDollar = 1'000'000'000'000;

  Money() = default;
  static Money from_picodollars(Rep value) { return Money(value); }
  static Money dollars(std::int64_t whole) { return Money(static_cast<Rep>(whole) * kPerDollar); }
  // Parses "9", "1.5", "$0.000002". At most twelve decimals; the sign is
  // not accepted. Throws Error(kConfig, "bad-money").
  static Money parse(std::string_view text);

  Rep picodollars() const { return value_; }
  // Nearest cent, half away from zero: "$9.00".
  std::string to_cents_string() const;
  // Every significant decimal: "9", "0.000003".
  std::string to_exact_string() const;

  Money& operator+=(Money other) {
    value_ += other.value_;
    return *this;
  }
  friend Money operator+(Money a, Money b) { return a += b; }
  friend bool operator==(Money, Money) = default;
  friend auto operator<=>(Money a, Money b) { return a.value_ <=> b.value_; }

 private:
  explicit Money(Rep value) : value_(value) {}
  Rep value_ = 0;
};

struct PriceEntry {
  Money input_per_1m;
  Money output_per_1m;
  std::optional<Money> training_per_1m;
  std::optional<Money> hosting_per_hour;
};

struct PriceTable {
  std::map<std::string, PriceEntry> models;

  // Throws Error(kConfig, "missing-price-entry").
  const PriceEntry& at(const std::string& model) const;

  // Published API rates: "base" $1 in / $2 out, "fine-tuned" $3 in / $6
  // out with fine-tuning at $8 per 1M training tokens.
  static PriceTable published_defaults();
  nlohmann::json to_json() const;
  static PriceTable from_json(const nlohmann::json& object);
};

// Token counts billed to one model during one pipeline phase.
struct PhaseUsage {
  std::string phase;  // "generation", "training" or "inference"
  std::string model;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  std::int64_t training_tokens = 0;
  std::int64_t hosting_seconds = 0;

  nlohmann::json to_json() const;
  static PhaseUsage from_json(const nlohmann::json& object);
};

struct PhaseCost {
  std::string phase;
  std::string model;
  Money input, output, training, hosting;
  Money total() const { return input + output + training + hosting; }
};

struct CostBreakdown {
  std::vector<PhaseCost> phases;
  Money training_column;   // everything spent before test-time inference
  Money inference_column;  // the "inference" phase
  Money total() const { return training_column + inference_column; }
  nlohmann::json to_json() const;
};

// Sums usage per (phase, model) and prices it linearly. Token counts must
// be non-negative. Hosting time is rounded to the nearest picodollar; all
// token charges are exact.
CostBreakdown estimate_cost(const std::vector<PhaseUsage>& usage, const PriceTable& prices);

}  // namespace vforge
