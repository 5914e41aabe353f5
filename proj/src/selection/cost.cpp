// Copyright 2026 The verifier-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "vforge/selection/cost.hpp"

#include <algorithm>
#include <cctype>

#include "vforge/core/error.hpp"

namespace vforge {
namespace {

constexpr Money::Rep kTokensPerUnit = 1'000'000;

std::string digits_of(Money::Rep value) {
  if (value == 0) return "0";
  std::string out;
  while (value > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Money per_million(std::int64_t tokens, Money rate, const std::string& what) {
  if (tokens < 0) throw data_error("negative-usage", what + " token count is negative");
  const Money::Rep scaled = static_cast<Money::Rep>(tokens) * rate.picodollars();
  // Rates parsed with at most six decimals make this division exact; finer
  // rates round half up to the picodollar.
  return Money::from_picodollars((scaled + kTokensPerUnit / 2) / kTokensPerUnit);
}

Money money_field(const nlohmann::json& object, const char* key) {
  const nlohmann::json& value = object.at(key);
  if (value.is_string()) return Money::parse(value.get<std::string>());
  if (value.is_number_integer()) return Money::dollars(value.get<std::int64_t>());
  throw config_error("bad-money", std::string(key) + " must be a decimal string or an integer");
}

}  // namespace

Money Money::parse(std::string_view text) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '$') s.remove_prefix(1);
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  auto all_digits = [](std::string_view part) {
    return std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (whole.empty() || !all_digits(whole) || !all_digits(frac) || frac.size() > 12 ||
      (dot != std::string_view::npos && frac.empty()) || whole.size() > 18) {
    throw config_error("bad-money", "not a dollar amount: '" + std::string(text) + "'");
  }
  Rep value = 0;
  for (char c : whole) value = value * 10 + (c - '0');
  value *= kPerDollar;
  Rep scale = kPerDollar / 10;
  for (char c : frac) {
    value += (c - '0') * scale;
    scale /= 10;
  }
  return Money(value);
}

std::string Money::to_cents_string() const {
  constexpr Rep kPerCent = kPerDollar / 100;
  const bool negative = value_ < 0;
  const Rep magnitude = negative ? -value_ : value_;
  const Rep cents = (magnitude + kPerCent / 2) / kPerCent;
  std::string frac = digits_of(cents % 100);
  if (frac.size() < 2) frac.insert(0, 2 - frac.size(), '0');
  return std::string(negative ? "-$" : "$") + digits_of(cents / 100) + "." + frac;
}

std::string Money::to_exact_string() const {
  const bool negative = value_ < 0;
  const Rep magnitude = negative ? -value_ : value_;
  std::string out = (negative ? "-" : "") + digits_of(magnitude / kPerDollar);
  std::string frac = digits_of(magnitude % kPerDollar);
  frac.insert(0, 12 - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

const PriceEntry& PriceTable::at(const std::string& model) const {
  auto it = models.find(model);
  if (it == models.end()) {
    throw config_error("missing-price-entry", "no price entry for model '" + model + "'");
  }
  return it->second;
}

PriceTable PriceTable::published_defaults() {
  PriceTable table;
  table.models["base"] = {Money::dollars(1), Money::dollars(2), std::nullopt, std::nullopt};
  table.models["fine-tuned"] = {Money::dollars(3), Money::dollars(6), Money::dollars(8), std::nullopt};
  return table;
}

nlohmann::json PriceTable::to_json() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [model, entry] : models) {
    nlohmann::json row = {{"input_per_1m", entry.input_per_1m.to_exact_string()},
                          {"output_per_1m", entry.output_per_1m.to_exact_string()}};
    if (entry.training_per_1m) row["training_per_1m"] = entry.training_per_1m->to_exact_string();
    if (entry.hosting_per_hour) row["hosting_per_hour"] = entry.hosting_per_hour->to_exact_string();
    out[model] = std::move(row);
  }
  return out;
}

PriceTable PriceTable::from_json(const nlohmann::json& object) {
  PriceTable table;
  try {
    for (const auto& [model, row] : object.items()) {
      PriceEntry entry{money_field(row, "input_per_1m"), money_field(row, "output_per_1m"),
                       std::nullopt, std::nullopt};
      if (row.contains("training_per_1m")) entry.training_per_1m = money_field(row, "training_per_1m");
      if (row.contains("hosting_per_hour")) entry.hosting_per_hour = money_field(row, "hosting_per_hour");
      table.models[model] = entry;
    }
  } catch (const nlohmann::json::exception& e) {
    throw config_error("bad-price-table", e.what());
  }
  return table;
}

nlohmann::json PhaseUsage::to_json() const {
  return {{"phase", phase},
          {"model", model},
          {"input_tokens", input_tokens},
          {"output_tokens", output_tokens},
          {"training_tokens", training_tokens},
          {"hosting_seconds", hosting_seconds}};
}

PhaseUsage PhaseUsage::from_json(const nlohmann::json& object) {
  PhaseUsage usage;
  usage.phase = object.at("phase").get<std::string>();
  usage.model = object.at("model").get<std::string>();
  usage.input_tokens = object.value("input_tokens", std::int64_t{0});
  usage.output_tokens = object.value("output_tokens", std::int64_t{0});
  usage.training_tokens = object.value("training_tokens", std::int64_t{0});
  usage.hosting_seconds = object.value("hosting_seconds", std::int64_t{0});
  return usage;
}

nlohmann::json CostBreakdown::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const PhaseCost& cost : phases) {
    rows.push_back({{"phase", cost.phase},
                    {"model", cost.model},
                    {"input", cost.input.to_exact_string()},
                    {"output", cost.output.to_exact_string()},
                    {"training", cost.training.to_exact_string()},
                    {"hosting", cost.hosting.to_exact_string()},
                    {"total", cost.total().to_cents_string()}});
  }
  return {{"phases", std::move(rows)},
          {"training", training_column.to_cents_string()},
          {"inference", inference_column.to_cents_string()},
          {"total", total().to_cents_string()},
          {"total_exact", total().to_exact_string()}};
}

CostBreakdown estimate_cost(const std::vector<PhaseUsage>& usage, const PriceTable& prices) {
  std::map<std::pair<std::string, std::string>, PhaseUsage> merged;
  std::vector<std::pair<std::string, std::string>> order;
  for (const PhaseUsage& item : usage) {
    const auto key = std::make_pair(item.phase, item.model);
    auto [it, inserted] = merged.try_emplace(key, PhaseUsage{item.phase, item.model});
    if (inserted) order.push_back(key);
    it->second.input_tokens += item.input_tokens;
    it->second.output_tokens += item.output_tokens;
    it->second.training_tokens += item.training_tokens;
    it->second.hosting_seconds += item.hosting_seconds;
  }

  CostBreakdown breakdown;
  for (const auto& key : order) {
    const PhaseUsage& item = merged.at(key);
    const PriceEntry& rate = prices.at(item.model);
    PhaseCost cost{item.phase, item.model, {}, {}, {}, {}};
    cost.input = per_million(item.input_tokens, rate.input_per_1m, "input");
    cost.output = per_million(item.output_tokens, rate.output_per_1m, "output");
    if (item.training_tokens != 0) {
      if (!rate.training_per_1m) {
        throw config_error("missing-price-entry", "no training price for model '" + item.model + "'");
      }
      cost.training = per_million(item.training_tokens, *rate.training_per_1m, "training");
    }
    if (item.hosting_seconds != 0) {
      if (!rate.hosting_per_hour) {
        throw config_error("missing-price-entry", "no hosting price for model '" + item.model + "'");
      }
      if (item.hosting_seconds < 0) throw data_error("negative-usage", "hosting time is negative");
      const Money::Rep scaled = static_cast<Money::Rep>(item.hosting_seconds) * rate.hosting_per_hour->picodollars();
      cost.hosting = Money::from_picodollars((scaled + 1800) / 3600);
    }
    if (item.phase == "inference") {
      breakdown.inference_column += cost.total();
    } else {
      breakdown.training_column += cost.total();
    }
    breakdown.phases.push_back(std::move(cost));
  }
  return breakdown;
}

}  // namespace vforge
