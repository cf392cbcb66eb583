#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace mtgb::text {

std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string_view trim(std::string_view s);

/// ASCII lowercase; bytes >= 0x80 pass through untouched.
std::string to_lower(std::string_view s);

/// A whitespace token split into leading punctuation, a word core and
/// trailing punctuation. "him." -> {"", "him", "."}; "(she" -> {"(", "she", ""}.
/// Apostrophes inside the core are kept ("doesn't").
struct TokenParts {
  std::string prefix;
  std::string core;
  std::string suffix;
};
TokenParts split_token(std::string_view token);

/// Re-applies the case pattern of `model` to `word` (lower, Capitalized, UPPER).
std::string match_case(std::string_view model, std::string_view word);

/// Tokenization used for word alignment: whitespace split, then the
/// sentence-final punctuation of the last token and elided article prefixes
/// ("l'insegnante" -> "l'" "insegnante") become tokens of their own.
/// With `split_elisions` false (English source side) the whitespace indices
/// of every word are preserved.
std::vector<std::string> alignment_tokens(std::string_view sentence, bool split_elisions = true);

/// Normalizes typographic apostrophes (U+2019) to ASCII.
std::string normalize_apostrophes(std::string_view s);

/// Orders ids numerically when both are unsigned integers (optionally after
/// an identical "prefix:"), lexicographically otherwise.
bool id_less(std::string_view a, std::string_view b);

std::uint64_t fnv1a64(std::string_view s);

std::vector<std::string> read_lines(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace mtgb::text
