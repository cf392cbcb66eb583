#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>

#include "mtgb/types.hpp"

namespace mtgb {

/// Result of the extraction pipeline for one sentence.
/// Invariant: `correct` is set iff gold is gendered, and correct implies a
/// non-Unknown label.
struct GenderOutcome {
  std::string record_id;
  Gender gold_gender = Gender::Male;
  GenderLabel label = GenderLabel::Unknown;
  std::optional<bool> correct;
  std::set<std::size_t> span;

  static GenderOutcome make(std::string id, Gender gold, GenderLabel label, std::set<std::size_t> span = {}) {
    GenderOutcome o{std::move(id), gold, label, std::nullopt, std::move(span)};
    if (const auto want = expected_label(gold)) o.correct = (label == *want);
    return o;
  }
};

}  // namespace mtgb
