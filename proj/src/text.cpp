#include "mtgb/text.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mtgb/error.hpp"
#include "mtgb/types.hpp"

namespace mtgb {

std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    case Gender::Neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(GenderLabel g) {
  switch (g) {
    case GenderLabel::Masculine: return "Masculine";
    case GenderLabel::Feminine: return "Feminine";
    case GenderLabel::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view to_string(StereotypeClass s) {
  switch (s) {
    case StereotypeClass::ProStereotypical: return "pro";
    case StereotypeClass::AntiStereotypical: return "anti";
    case StereotypeClass::None: return "none";
  }
  return "?";
}

std::string_view to_string(ProfessionStereotype s) {
  return s == ProfessionStereotype::ProF ? "ProF" : "ProM";
}

std::optional<Gender> parse_gender(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "male") return Gender::Male;
  if (v == "female") return Gender::Female;
  if (v == "neutral") return Gender::Neutral;
  return std::nullopt;
}

std::optional<GenderLabel> parse_gender_label(std::string_view s) {
  const auto v = text::to_lower(text::trim(s));
  if (v == "masculine") return GenderLabel::Masculine;
  if (v == "feminine") return GenderLabel::Feminine;
  if (v == "unknown") return GenderLabel::Unknown;
  return std::nullopt;
}

std::optional<ProfessionStereotype> parse_profession_stereotype(std::string_view s) {
  const auto v = text::trim(s);
  if (v == "ProF") return ProfessionStereotype::ProF;
  if (v == "ProM") return ProfessionStereotype::ProM;
  return std::nullopt;
}

}  // namespace mtgb

namespace mtgb::text {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_word_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || u >= 0x80 || c == '\'';
}

bool is_final_punct(char c) {
  return c == '.' || c == '!' || c == '?' || c == ';' || c == ':' || c == ',' || c == '"' || c == ')';
}

}  // namespace

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

TokenParts split_token(std::string_view token) {
  std::size_t b = 0;
  std::size_t e = token.size();
  while (b < e && !is_word_char(token[b])) ++b;
  while (e > b && !is_word_char(token[e - 1])) --e;
  // A trailing apostrophe belongs to elided forms ("l'", "un'") and stays.
  return {std::string(token.substr(0, b)), std::string(token.substr(b, e - b)),
          std::string(token.substr(e))};
}

std::string match_case(std::string_view model, std::string_view word) {
  bool any_lower = false;
  bool any_upper = false;
  for (char c : model) {
    if (c >= 'a' && c <= 'z') any_lower = true;
    if (c >= 'A' && c <= 'Z') any_upper = true;
  }
  std::string out = to_lower(word);
  if (!any_upper) return out;
  if (!any_lower && model.size() > 1) {
    for (auto& c : out) {
      if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    }
    return out;
  }
  if (!model.empty() && model.front() >= 'A' && model.front() <= 'Z' && !out.empty() &&
      out.front() >= 'a' && out.front() <= 'z') {
    out.front() = static_cast<char>(out.front() - 'a' + 'A');
  }
  return out;
}

std::string normalize_apostrophes(std::string_view s) {
  static constexpr std::string_view kRightQuote = "\xE2\x80\x99";
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s.substr(i, kRightQuote.size()) == kRightQuote) {
      out += '\'';
      i += kRightQuote.size();
    } else {
      out += s[i++];
    }
  }
  return out;
}

std::vector<std::string> alignment_tokens(std::string_view sentence, bool split_elisions) {
  const auto normalized = normalize_apostrophes(sentence);
  auto raw = split_whitespace(normalized);
  std::string final_punct;
  if (!raw.empty()) {
    auto& last = raw.back();
    std::size_t e = last.size();
    while (e > 0 && is_final_punct(last[e - 1])) --e;
    if (e > 0 && e < last.size()) {
      final_punct = last.substr(e);
      last.resize(e);
    }
  }
  std::vector<std::string> out;
  out.reserve(raw.size() + 2);
  for (const auto& tok : raw) {
    // Elision: a short alphabetic prefix ending in an apostrophe glued to a word.
    const auto apos = tok.find('\'');
    if (split_elisions && apos != std::string::npos && apos > 0 && apos <= 5 && apos + 1 < tok.size()) {
      bool prefix_alpha = true;
      for (std::size_t k = 0; k < apos; ++k) {
        if (!std::isalpha(static_cast<unsigned char>(tok[k]))) prefix_alpha = false;
      }
      const auto next = static_cast<unsigned char>(tok[apos + 1]);
      if (prefix_alpha && (std::isalpha(next) || next >= 0x80)) {
        out.push_back(tok.substr(0, apos + 1));
        out.push_back(tok.substr(apos + 1));
        continue;
      }
    }
    out.push_back(tok);
  }
  if (!final_punct.empty()) out.push_back(final_punct);
  return out;
}

bool id_less(std::string_view a, std::string_view b) {
  auto numeric_tail = [](std::string_view s, std::string_view& head) -> std::optional<unsigned long long> {
    const auto colon = s.rfind(':');
    head = colon == std::string_view::npos ? std::string_view{} : s.substr(0, colon + 1);
    const auto digits = colon == std::string_view::npos ? s : s.substr(colon + 1);
    if (digits.empty()) return std::nullopt;
    unsigned long long v = 0;
    const auto* end = digits.data() + digits.size();
    const auto res = std::from_chars(digits.data(), end, v);
    if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
    return v;
  };
  std::string_view ha;
  std::string_view hb;
  const auto na = numeric_tail(a, ha);
  const auto nb = numeric_tail(b, hb);
  if (na && nb) {
    if (ha != hb) return ha < hb;
    if (*na != *nb) return *na < *nb;
  }
  return a < b;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  if (in.bad()) throw IoError("read failure on " + path.string());
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace mtgb::text
