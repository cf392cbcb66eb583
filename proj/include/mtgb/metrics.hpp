#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtgb/corpus.hpp"
#include "mtgb/outcome.hpp"

namespace mtgb {

/// A count over a total. A zero total is an absent value, not 0%.
struct Ratio {
  std::size_t count = 0;
  std::size_t total = 0;

  bool present() const { return total > 0; }
  /// Exact percentage; nullopt when absent.
  std::optional<double> percent() const;
  /// Percentage in tenths, rounded half up (48.89 -> 489); nullopt when absent.
  std::optional<std::int64_t> tenths() const;
  /// "48.9%", or "absent".
  std::string formatted() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct StandardAccuracy {
  Ratio overall;
  Ratio masculine;
  Ratio feminine;
};

/// Unknown labels count as errors. Throws ValidationError on empty or
/// neutral input.
StandardAccuracy standard_accuracy(std::span<const GenderOutcome> outcomes);

struct MinimalPairAccuracy {
  Ratio mpa;
  Ratio pro_f;  // accurate pairs with a ProF profession / accurate pairs
  Ratio pro_m;
  std::vector<std::size_t> accurate_pairs;  // indices into the pair list
};

using OutcomeIndex = std::unordered_map<std::string, GenderOutcome>;

OutcomeIndex index_outcomes(std::span<const GenderOutcome> outcomes);

/// A pair is accurate iff both variants are correct. Throws ValidationError
/// naming the pair when a member has no outcome.
MinimalPairAccuracy minimal_pair_accuracy(std::span<const PairIds> pairs, const OutcomeIndex& outcomes);

struct PriorBias {
  Ratio masculine;  // over detected (non-Unknown) outcomes
  Ratio feminine;
  std::size_t detected = 0;
  std::size_t unknown = 0;
};

/// Masculine/feminine split of neutral-set outcomes, Unknown excluded.
/// Throws ValidationError on gendered input or when nothing was detected.
PriorBias prior_bias(std::span<const GenderOutcome> neutral_outcomes);

/// Share of Unknown labels. Throws ValidationError on empty input.
Ratio unknown_rate(std::span<const GenderOutcome> outcomes);

struct MetricsReport {
  std::optional<StandardAccuracy> accuracy;
  std::optional<Ratio> unknown;
  std::optional<MinimalPairAccuracy> pairs;
  std::optional<PriorBias> prior;

  /// Human-readable table.
  std::string to_table() const;
  /// "key=value" lines; every percentage is followed by its count and total.
  std::string to_machine() const;
};

}  // namespace mtgb
