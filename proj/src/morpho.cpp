#include "mtgb/morpho.hpp"

#include <algorithm>
#include <cctype>

#include "mtgb/error.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

constexpr std::string_view kBuiltinArticles =
    "il\tmasculine\nlo\tmasculine\nun\tmasculine\ni\tmasculine\ngli\tmasculine\n"
    "dei\tmasculine\ndegli\tmasculine\nal\tmasculine\nallo\tmasculine\nai\tmasculine\n"
    "agli\tmasculine\ndel\tmasculine\ndello\tmasculine\n"
    "la\tfeminine\nuna\tfeminine\nle\tfeminine\ndelle\tfeminine\nalla\tfeminine\n"
    "alle\tfeminine\ndella\tfeminine\n"
    "l'\telided\nun'\telided:feminine\n";

std::vector<std::string> split_forms(std::string_view field) {
  std::vector<std::string> out;
  for (const auto& f : text::split(field, ',')) {
    const auto t = text::trim(f);
    if (!t.empty()) out.push_back(text::to_lower(t));
  }
  return out;
}

bool has_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) != 0 || static_cast<unsigned char>(c) >= 0x80;
  });
}

}  // namespace

std::string normalize_target_token(std::string_view token) {
  return text::to_lower(text::split_token(text::normalize_apostrophes(token)).core);
}

// --- lexicon -----------------------------------------------------------------

void GenderLexicon::add(LexiconEntry entry) {
  entry.lemma = text::to_lower(text::trim(entry.lemma));
  for (auto& f : entry.masc_forms) f = text::to_lower(f);
  for (auto& f : entry.fem_forms) f = text::to_lower(f);
  if (entry.masc_forms.empty() || entry.fem_forms.empty()) {
    throw ValidationError("lexicon entry '" + entry.lemma + "' needs forms on both sides");
  }
  if (!entry.epicene) {
    for (const auto& m : entry.masc_forms) {
      if (std::find(entry.fem_forms.begin(), entry.fem_forms.end(), m) != entry.fem_forms.end()) {
        throw ValidationError("lexicon entry '" + entry.lemma + "' lists '" + m + "' as both genders");
      }
    }
  }
  // Compute the per-form gender of this entry, then merge into the index.
  std::unordered_map<std::string, FormGender> local;
  for (const auto& m : entry.masc_forms) local[m] = FormGender::Masculine;
  for (const auto& f : entry.fem_forms) {
    auto [it, inserted] = local.try_emplace(f, FormGender::Feminine);
    if (!inserted) it->second = FormGender::Both;
  }
  for (const auto& [form, g] : local) {
    auto [it, inserted] = forms_.try_emplace(form, g);
    if (!inserted && it->second != g) {
      throw ValidationError("form '" + form + "' has conflicting genders across lexicon entries");
    }
  }
  entries_.push_back(std::move(entry));
}

GenderLexicon GenderLexicon::load(const std::filesystem::path& path) {
  GenderLexicon lex;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto f = text::split(t, '\t');
    if (f.size() != 4) throw ParseError(path.string(), lineno, "expected lemma, masculine forms, feminine forms, epicene");
    const auto ep = text::trim(f[3]);
    if (ep != "0" && ep != "1") throw ParseError(path.string(), lineno, "epicene flag must be 0 or 1");
    try {
      lex.add({f[0], split_forms(f[1]), split_forms(f[2]), ep == "1"});
    } catch (const ValidationError& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return lex;
}

std::optional<GenderLexicon::FormGender> GenderLexicon::lookup(std::string_view form) const {
  const auto it = forms_.find(std::string(form));
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

bool GenderLexicon::is_epicene_form(std::string_view form) const {
  const auto g = lookup(form);
  return g && *g == FormGender::Both;
}

std::vector<const LexiconEntry*> GenderLexicon::entries_for(std::string_view lemma) const {
  const auto key = text::to_lower(text::trim(lemma));
  std::vector<const LexiconEntry*> out;
  for (const auto& e : entries_) {
    if (e.lemma == key) out.push_back(&e);
  }
  return out;
}

std::vector<std::string> GenderLexicon::forms_for(std::string_view lemma) const {
  std::vector<std::string> out;
  for (const auto* e : entries_for(lemma)) {
    for (const auto* side : {&e->masc_forms, &e->fem_forms}) {
      for (const auto& f : *side) {
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      }
    }
  }
  return out;
}

// --- articles ----------------------------------------------------------------

ArticleTable ArticleTable::builtin() { return parse(kBuiltinArticles, "<builtin>"); }

ArticleTable ArticleTable::load(const std::filesystem::path& path) { return parse(text::read_file(path), path.string()); }

ArticleTable ArticleTable::parse(std::string_view contents, const std::string& source_name) {
  ArticleTable table;
  std::size_t lineno = 0;
  for (const auto& raw : text::split(contents, '\n')) {
    ++lineno;
    const auto line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 2) throw ParseError(source_name, lineno, "expected form<TAB>class");
    ArticleInfo info{};
    const auto cls = text::trim(f[1]);
    if (cls == "masculine") {
      info = {ArticleClass::Masculine, GenderLabel::Masculine};
    } else if (cls == "feminine") {
      info = {ArticleClass::Feminine, GenderLabel::Feminine};
    } else if (cls == "elided") {
      info = {ArticleClass::Elided, GenderLabel::Unknown};
    } else if (cls == "elided:feminine") {
      info = {ArticleClass::Elided, GenderLabel::Feminine};
    } else if (cls == "elided:masculine") {
      info = {ArticleClass::Elided, GenderLabel::Masculine};
    } else {
      throw ParseError(source_name, lineno, "unknown article class '" + std::string(cls) + "'");
    }
    const auto form = text::to_lower(text::trim(f[0]));
    if (table.table_.contains(form)) throw ParseError(source_name, lineno, "duplicate article '" + form + "'");
    table.table_.emplace(form, info);
  }
  return table;
}

std::optional<ArticleInfo> ArticleTable::lookup(std::string_view token) const {
  const auto key = normalize_target_token(token);
  const auto it = table_.find(key);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

// --- detection ---------------------------------------------------------------

GenderLabel GenderDetector::detect(std::span<const std::string> tokens, const std::set<std::size_t>& span) const {
  std::vector<std::size_t> idx;
  for (auto i : span) {
    if (i < tokens.size()) idx.push_back(i);
  }
  if (idx.empty()) return GenderLabel::Unknown;

  auto single = [](bool masc, bool fem) {
    if (masc && !fem) return GenderLabel::Masculine;
    if (fem && !masc) return GenderLabel::Feminine;
    return GenderLabel::Unknown;
  };

  // 1. lexicon
  bool masc = false;
  bool fem = false;
  for (auto i : idx) {
    if (articles_->lookup(tokens[i])) continue;
    const auto g = lexicon_->lookup(normalize_target_token(tokens[i]));
    if (!g) continue;
    if (*g == GenderLexicon::FormGender::Masculine) masc = true;
    if (*g == GenderLexicon::FormGender::Feminine) fem = true;
  }
  if (masc || fem) return single(masc, fem);

  // 2. articles inside the span, then the nearest one before it
  for (auto i : idx) {
    if (const auto a = articles_->lookup(tokens[i]); a && a->gender != GenderLabel::Unknown) {
      masc = masc || a->gender == GenderLabel::Masculine;
      fem = fem || a->gender == GenderLabel::Feminine;
    }
  }
  if (masc || fem) return single(masc, fem);
  const std::size_t first = idx.front();
  for (std::size_t back = 1; back <= 2 && back <= first; ++back) {
    const auto& tok = tokens[first - back];
    if (const auto a = articles_->lookup(tok)) {
      if (a->gender != GenderLabel::Unknown) return a->gender;
      break;  // nearest article is gender-opaque
    }
    if (!has_letter(normalize_target_token(tok))) break;  // punctuation ends the window
  }

  // 3. suffix of the head noun
  std::string head;
  for (auto i : idx) {
    if (articles_->lookup(tokens[i])) continue;
    auto w = normalize_target_token(tokens[i]);
    if (has_letter(w)) {
      head = std::move(w);
      break;
    }
  }
  if (head.empty() || lexicon_->is_epicene_form(head)) return GenderLabel::Unknown;
  if (head.ends_with("essa")) return GenderLabel::Feminine;
  if (head.ends_with("a")) return GenderLabel::Feminine;
  if (head.ends_with("o") || head.ends_with("i")) return GenderLabel::Masculine;
  return GenderLabel::Unknown;
}

GenderOutcome extract_outcome(const SentenceRecord& record, std::span<const std::string> translation,
                              std::span<const AlignmentLink> links, const GenderDetector& detector) {
  auto span = project_entity(links, record.entity_index);
  const auto label = detector.detect(translation, span);
  return GenderOutcome::make(record.id, record.gold_gender, label, std::move(span));
}

}  // namespace mtgb
