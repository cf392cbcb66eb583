#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mtgb/types.hpp"

namespace mtgb {

enum class PronounRole { Subj, Obj, Det, Poss, Refl };

std::string_view placeholder(PronounRole role);

struct PronounTag {
  PronounRole role;
  Gender gender;
  std::string base;    // lowercased pronoun without clitic, e.g. "he"
  std::string clitic;  // "'s", "'d", "'ll" for contracted subjects, else empty
};

/// Classifies whitespace token `i` against the gendered-pronoun inventory
/// (he she him her his hers himself herself, plus contracted he's/she'd...).
/// "her" and "his" are disambiguated by lookahead: clause-final punctuation,
/// end of sentence, or a closed-class word (preposition, determiner,
/// conjunction, pronoun) next makes "her" OBJ and "his" POSS; anything else
/// makes them DET.
std::optional<PronounTag> classify_pronoun(std::span<const std::string> tokens, std::size_t i);

/// True when the lowercased word is in the closed-class lookahead set.
bool is_function_word(std::string_view lower_word);

/// Adverbs skipped between a subject pronoun and its verb.
bool is_adverb(std::string_view lower_word);

}  // namespace mtgb
