#include "mtgb/pronouns.hpp"

#include <array>
#include <algorithm>

#include "mtgb/text.hpp"

namespace mtgb {

namespace {

constexpr std::array<std::string_view, 47> kPrepositions = {
    "about", "above", "across", "after", "against", "along", "among", "around", "at", "before",
    "behind", "below", "beside", "between", "by", "during", "except", "for", "from", "in",
    "inside", "into", "like", "near", "of", "off", "on", "onto", "out", "outside",
    "over", "past", "since", "through", "throughout", "to", "toward", "towards", "under", "until",
    "up", "upon", "with", "within", "without", "down", "via"};

constexpr std::array<std::string_view, 13> kDeterminers = {
    "a", "an", "the", "this", "that", "these", "those", "some", "any", "every", "each", "no", "another"};

constexpr std::array<std::string_view, 15> kConjunctions = {
    "and", "but", "or", "nor", "so", "yet", "because", "if", "when", "while",
    "although", "though", "whether", "as", "than"};

constexpr std::array<std::string_view, 8> kObjectPronouns = {
    "it", "them", "me", "you", "us", "him", "her", "everything"};

constexpr std::array<std::string_view, 32> kAdverbs = {
    "also", "always", "never", "often", "still", "just", "already", "usually",
    "sometimes", "really", "then", "not", "even", "finally", "recently", "rarely",
    "seldom", "soon", "certainly", "probably", "clearly", "actually", "simply", "only",
    "generally", "frequently", "constantly", "truly", "now", "ever", "again", "barely"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& set, std::string_view w) {
  return std::find(set.begin(), set.end(), w) != set.end();
}

bool clause_final(std::string_view suffix) {
  return suffix.find_first_of(".,;:!?") != std::string_view::npos;
}

/// True when the token after `i` ends the object/possessive reading.
bool lookahead_closes(std::span<const std::string> tokens, std::size_t i) {
  const auto parts = text::split_token(tokens[i]);
  if (clause_final(parts.suffix)) return true;
  if (i + 1 >= tokens.size()) return true;
  const auto next = text::split_token(tokens[i + 1]);
  if (next.core.empty()) return true;
  return is_function_word(text::to_lower(next.core));
}

}  // namespace

std::string_view placeholder(PronounRole role) {
  switch (role) {
    case PronounRole::Subj: return "SUBJ";
    case PronounRole::Obj: return "OBJ";
    case PronounRole::Det: return "DET";
    case PronounRole::Poss: return "POSS";
    case PronounRole::Refl: return "REFL";
  }
  return "?";
}

bool is_function_word(std::string_view w) {
  return contains(kPrepositions, w) || contains(kDeterminers, w) || contains(kConjunctions, w) ||
         contains(kObjectPronouns, w);
}

bool is_adverb(std::string_view w) {
  if (contains(kAdverbs, w)) return true;
  return w.size() > 4 && w.ends_with("ly") && w != "only" && w != "family" && w != "early" && w != "reply" &&
         w != "supply" && w != "apply";
}

std::optional<PronounTag> classify_pronoun(std::span<const std::string> tokens, std::size_t i) {
  if (i >= tokens.size()) return std::nullopt;
  const auto core = text::to_lower(text::normalize_apostrophes(text::split_token(tokens[i]).core));
  if (core.empty()) return std::nullopt;

  std::string base = core;
  std::string clitic;
  for (std::string_view c : {"'s", "'d", "'ll"}) {
    if (core.size() > c.size() && core.ends_with(c)) {
      const auto head = core.substr(0, core.size() - c.size());
      if (head == "he" || head == "she") {
        base = head;
        clitic = std::string(c);
      }
    }
  }

  if (base == "he") return PronounTag{PronounRole::Subj, Gender::Male, base, clitic};
  if (base == "she") return PronounTag{PronounRole::Subj, Gender::Female, base, clitic};
  if (!clitic.empty()) return std::nullopt;
  if (base == "him") return PronounTag{PronounRole::Obj, Gender::Male, base, {}};
  if (base == "hers") return PronounTag{PronounRole::Poss, Gender::Female, base, {}};
  if (base == "himself") return PronounTag{PronounRole::Refl, Gender::Male, base, {}};
  if (base == "herself") return PronounTag{PronounRole::Refl, Gender::Female, base, {}};
  if (base == "her") {
    const auto role = lookahead_closes(tokens, i) ? PronounRole::Obj : PronounRole::Det;
    return PronounTag{role, Gender::Female, base, {}};
  }
  if (base == "his") {
    const auto role = lookahead_closes(tokens, i) ? PronounRole::Poss : PronounRole::Det;
    return PronounTag{role, Gender::Male, base, {}};
  }
  return std::nullopt;
}

}  // namespace mtgb
