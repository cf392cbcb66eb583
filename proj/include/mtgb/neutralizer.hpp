#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtgb/corpus.hpp"
#include "mtgb/pronouns.hpp"

namespace mtgb {

/// Pronoun rewrite table and verb agreement repairs. The built-in table is the
/// one shipped in data/neutralizer/rules.tsv.
class NeutralizationRules {
 public:
  static NeutralizationRules builtin();
  static NeutralizationRules load(const std::filesystem::path& path);
  static NeutralizationRules parse(std::string_view contents, const std::string& source_name);

  /// Replacement for a lowercased pronoun in a role, if the table has one.
  std::optional<std::string> replacement(std::string_view form, PronounRole role) const;

  /// Plural form for a third-person-singular finite verb, or nullopt when
  /// the word does not look like one.
  std::optional<std::string> plural_verb(std::string_view lower_word) const;

  /// True when the word reads as a third-person-singular finite verb.
  bool is_third_singular(std::string_view lower_word) const { return plural_verb(lower_word).has_value(); }

  const std::map<std::pair<std::string, PronounRole>, std::string>& pronoun_rules() const { return pronouns_; }

 private:
  std::map<std::pair<std::string, PronounRole>, std::string> pronouns_;
  std::map<std::string, std::string, std::less<>> verbs_;  // irregulars and contractions
};

struct NeutralizeResult {
  SentenceRecord record;
  std::vector<std::size_t> rewritten;  // token indices of replaced pronouns
  std::vector<std::size_t> repaired;   // token indices of repaired verbs
  std::optional<std::string> warning;  // set for already-neutral input (returned unchanged)
};

/// Rewrites every gendered pronoun to its singular-they form and repairs the
/// first finite verb after each replaced subject (adverbs skipped). All edits
/// are 1:1 on whitespace tokens, so entity indices stay valid. Throws
/// ValidationError when a gendered record carries no gendered pronoun.
NeutralizeResult neutralize(const SentenceRecord& record, const NeutralizationRules& rules);

struct NeutralIssue {
  enum class Kind { ResidualPronoun, AgreementResidue };
  std::string id;
  Kind kind;
  std::size_t token_index;
  std::string token;
};

/// Scans for residual gendered pronouns and third-singular verbs following
/// "they". An empty result means the set is clean.
std::vector<NeutralIssue> verify_neutral(std::span<const SentenceRecord> records, const NeutralizationRules& rules);

/// Distinct offending ids in first-seen order.
std::vector<std::string> offending_ids(std::span<const NeutralIssue> issues);

}  // namespace mtgb
