#pragma once

#include <optional>
#include <string_view>

namespace mtgb {

/// Gold gender of a challenge-set sentence, set by its source pronoun.
enum class Gender { Male, Female, Neutral };

/// Grammatical gender realized on the target noun.
enum class GenderLabel { Masculine, Feminine, Unknown };

enum class StereotypeClass { ProStereotypical, AntiStereotypical, None };

/// Which gender a profession is stereotypically associated with.
enum class ProfessionStereotype { ProF, ProM };

std::string_view to_string(Gender g);
std::string_view to_string(GenderLabel g);
std::string_view to_string(StereotypeClass s);
std::string_view to_string(ProfessionStereotype s);

std::optional<Gender> parse_gender(std::string_view s);
std::optional<GenderLabel> parse_gender_label(std::string_view s);
std::optional<ProfessionStereotype> parse_profession_stereotype(std::string_view s);

/// Label a correct translation of a gendered record carries.
inline std::optional<GenderLabel> expected_label(Gender g) {
  switch (g) {
    case Gender::Male: return GenderLabel::Masculine;
    case Gender::Female: return GenderLabel::Feminine;
    case Gender::Neutral: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace mtgb
