#include "mtgb/neutralizer.hpp"

#include <array>
#include <algorithm>

#include "mtgb/error.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

constexpr std::string_view kBuiltinRules =
    "pronoun\the\tSUBJ\tthey\n"
    "pronoun\tshe\tSUBJ\tthey\n"
    "pronoun\thim\tOBJ\tthem\n"
    "pronoun\ther\tOBJ\tthem\n"
    "pronoun\ther\tDET\ttheir\n"
    "pronoun\this\tDET\ttheir\n"
    "pronoun\this\tPOSS\ttheirs\n"
    "pronoun\thers\tPOSS\ttheirs\n"
    "pronoun\thimself\tREFL\tthemselves\n"
    "pronoun\therself\tREFL\tthemselves\n"
    "verb\tis\tare\n"
    "verb\twas\twere\n"
    "verb\thas\thave\n"
    "verb\tdoes\tdo\n"
    "verb\tfocuses\tfocus\n"
    "verb\tbuses\tbus\n"
    "contraction\tisn't\taren't\n"
    "contraction\twasn't\tweren't\n"
    "contraction\thasn't\thaven't\n"
    "contraction\tdoesn't\tdon't\n";

// Words ending in -s that are not finite verbs.
constexpr std::array<std::string_view, 30> kNotVerbs = {
    "hers", "its", "this", "his", "yes", "thus", "unless", "less", "themselves", "ourselves",
    "yourselves", "theirs", "ours", "yours", "as", "towards", "afterwards", "besides", "across", "plus",
    "news", "series", "species", "means", "whereas", "nevertheless", "perhaps", "sometimes", "always", "upwards"};

std::optional<PronounRole> parse_role(std::string_view s) {
  if (s == "SUBJ") return PronounRole::Subj;
  if (s == "OBJ") return PronounRole::Obj;
  if (s == "DET") return PronounRole::Det;
  if (s == "POSS") return PronounRole::Poss;
  if (s == "REFL") return PronounRole::Refl;
  return std::nullopt;
}

std::string core_lower(const std::string& token) {
  return text::to_lower(text::normalize_apostrophes(text::split_token(token).core));
}

std::string rebuild(const std::string& token, std::string_view new_core) {
  const auto parts = text::split_token(token);
  return parts.prefix + text::match_case(parts.core, new_core) + parts.suffix;
}

}  // namespace

NeutralizationRules NeutralizationRules::builtin() { return parse(kBuiltinRules, "<builtin>"); }

NeutralizationRules NeutralizationRules::load(const std::filesystem::path& path) {
  return parse(text::read_file(path), path.string());
}

NeutralizationRules NeutralizationRules::parse(std::string_view contents, const std::string& source_name) {
  NeutralizationRules rules;
  std::size_t lineno = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto f = text::split(line, '\t');
    if (f[0] == "pronoun") {
      if (f.size() != 4) throw ParseError(source_name, lineno, "pronoun rule needs form, role, replacement");
      const auto role = parse_role(f[2]);
      if (!role) throw ParseError(source_name, lineno, "unknown role '" + f[2] + "'");
      rules.pronouns_[{text::to_lower(f[1]), *role}] = text::to_lower(f[3]);
    } else if (f[0] == "verb" || f[0] == "contraction") {
      if (f.size() != 3) throw ParseError(source_name, lineno, "verb rule needs singular and plural");
      rules.verbs_[text::to_lower(f[1])] = text::to_lower(f[2]);
    } else {
      throw ParseError(source_name, lineno, "unknown rule kind '" + f[0] + "'");
    }
  }
  return rules;
}

std::optional<std::string> NeutralizationRules::replacement(std::string_view form, PronounRole role) const {
  const auto it = pronouns_.find({std::string(form), role});
  if (it == pronouns_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> NeutralizationRules::plural_verb(std::string_view w) const {
  if (const auto it = verbs_.find(w); it != verbs_.end()) return it->second;
  if (w.size() < 3 || w.back() != 's') return std::nullopt;
  if (w.ends_with("ss") || w.ends_with("us") || w.ends_with("is") || w.ends_with("'s")) return std::nullopt;
  if (std::find(kNotVerbs.begin(), kNotVerbs.end(), w) != kNotVerbs.end() || is_adverb(w)) return std::nullopt;
  for (char c : w) {
    if (!(c >= 'a' && c <= 'z')) return std::nullopt;
  }
  std::string s(w);
  if (s.size() > 4 && s.ends_with("ies")) return s.substr(0, s.size() - 3) + "y";
  for (std::string_view e : {"sses", "zzes", "ches", "shes", "xes", "oes"}) {
    if (s.ends_with(e)) return s.substr(0, s.size() - 2);
  }
  return s.substr(0, s.size() - 1);
}

NeutralizeResult neutralize(const SentenceRecord& record, const NeutralizationRules& rules) {
  NeutralizeResult result;
  result.record = record;
  if (record.gold_gender == Gender::Neutral) {
    result.warning = "record " + record.id + " is already neutral; left unchanged";
    return result;
  }
  const auto original = record.tokens();
  auto tokens = original;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const auto tag = classify_pronoun(original, i);
    if (!tag) continue;
    const auto repl = rules.replacement(tag->base, tag->role);
    if (!repl) {
      throw ValidationError("no rewrite rule for '" + tag->base + "' (" + std::string(placeholder(tag->role)) + ")");
    }
    result.rewritten.push_back(i);
    if (!tag->clitic.empty()) {
      // he's -> they've before a participle reading, they're otherwise.
      std::string clitic = tag->clitic;
      if (clitic == "'s") {
        const auto next = i + 1 < original.size() ? core_lower(original[i + 1]) : std::string{};
        clitic = (next == "been" || next == "got") ? "'ve" : "'re";
      }
      tokens[i] = rebuild(original[i], *repl + clitic);
      continue;
    }
    tokens[i] = rebuild(original[i], *repl);
    if (tag->role != PronounRole::Subj) continue;
    std::size_t j = i + 1;
    while (j < original.size() && is_adverb(core_lower(original[j]))) ++j;
    if (j >= original.size() || classify_pronoun(original, j)) continue;
    if (const auto plural = rules.plural_verb(core_lower(original[j]))) {
      tokens[j] = rebuild(original[j], *plural);
      result.repaired.push_back(j);
    }
  }
  if (result.rewritten.empty()) {
    throw ValidationError("record " + record.id + " contains no gendered pronoun");
  }
  result.record.sentence = text::join(tokens, " ");
  result.record.gold_gender = Gender::Neutral;
  return result;
}

std::vector<NeutralIssue> verify_neutral(std::span<const SentenceRecord> records, const NeutralizationRules& rules) {
  std::vector<NeutralIssue> issues;
  for (const auto& r : records) {
    const auto toks = r.tokens();
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (classify_pronoun(toks, i)) {
        issues.push_back({r.id, NeutralIssue::Kind::ResidualPronoun, i, toks[i]});
        continue;
      }
      if (core_lower(toks[i]) != "they") continue;
      std::size_t j = i + 1;
      while (j < toks.size() && is_adverb(core_lower(toks[j]))) ++j;
      if (j < toks.size() && rules.is_third_singular(core_lower(toks[j]))) {
        issues.push_back({r.id, NeutralIssue::Kind::AgreementResidue, j, toks[j]});
      }
    }
  }
  return issues;
}

std::vector<std::string> offending_ids(std::span<const NeutralIssue> issues) {
  std::vector<std::string> ids;
  for (const auto& issue : issues) {
    if (std::find(ids.begin(), ids.end(), issue.id) == ids.end()) ids.push_back(issue.id);
  }
  return ids;
}

}  // namespace mtgb
