#include "mtgb/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mtgb/error.hpp"
#include "mtgb/pronouns.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

std::optional<std::size_t> parse_index(std::string_view s) {
  s = text::trim(s);
  if (s.empty()) return std::nullopt;
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) return std::nullopt;
  return v;
}

std::string head_word(std::string_view profession) {
  const auto words = text::split_whitespace(profession);
  return words.empty() ? std::string{} : text::to_lower(words.back());
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::vector<std::string> SentenceRecord::tokens() const { return text::split_whitespace(sentence); }

std::string validate_record(const SentenceRecord& record) {
  const auto toks = record.tokens();
  if (record.entity_index >= toks.size()) {
    return "entity index " + std::to_string(record.entity_index) + " out of range for " +
           std::to_string(toks.size()) + " tokens";
  }
  const auto head = head_word(record.profession);
  if (head.empty()) return "empty profession";
  const auto at = text::to_lower(text::split_token(toks[record.entity_index]).core);
  if (at != head) {
    return "token '" + toks[record.entity_index] + "' at entity index does not match profession '" +
           record.profession + "'";
  }
  if (record.secondary_entity_index) {
    if (*record.secondary_entity_index >= toks.size()) return "secondary entity index out of range";
    if (*record.secondary_entity_index == record.entity_index) return "secondary entity index equals entity index";
  }
  return {};
}

std::vector<SentenceRecord> parse_challenge_set(std::istream& in, const ParseOptions& options,
                                                const std::string& source_name) {
  std::vector<SentenceRecord> records;
  std::string line;
  std::size_t lineno = 0;
  const std::size_t base = options.has_gender_column ? 4 : 3;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto fields = text::split(line, '\t');
    if (fields.size() != base && fields.size() != base + 1) {
      throw ParseError(source_name, lineno,
                       "expected " + std::to_string(base) + " tab-separated fields, got " +
                           std::to_string(fields.size()));
    }
    SentenceRecord rec;
    rec.id = options.id_prefix.empty() ? std::to_string(lineno) : options.id_prefix + ":" + std::to_string(lineno);
    rec.stereotype_class = options.stereotype_class;
    std::size_t f = 0;
    if (options.has_gender_column) {
      const auto g = parse_gender(fields[f++]);
      if (!g) throw ParseError(source_name, lineno, "unknown gender '" + fields[0] + "'");
      rec.gold_gender = *g;
    } else {
      rec.gold_gender = Gender::Neutral;
    }
    const auto idx = parse_index(fields[f]);
    if (!idx) throw ParseError(source_name, lineno, "entity index '" + fields[f] + "' is not a non-negative integer");
    rec.entity_index = *idx;
    ++f;
    rec.sentence = std::string(text::trim(fields[f++]));
    rec.profession = std::string(text::trim(fields[f++]));
    if (f < fields.size()) {
      const auto sec = parse_index(fields[f]);
      if (!sec) throw ParseError(source_name, lineno, "secondary index '" + fields[f] + "' is not an integer");
      rec.secondary_entity_index = *sec;
    }
    if (auto err = validate_record(rec); !err.empty()) throw ParseError(source_name, lineno, err);
    records.push_back(std::move(rec));
  }
  if (in.bad()) throw IoError("read failure on " + source_name);
  return records;
}

std::vector<SentenceRecord> parse_challenge_set(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_challenge_set(in, options, path.string());
}

void write_challenge_set(std::ostream& out, std::span<const SentenceRecord> records) {
  for (const auto& r : records) {
    out << to_string(r.gold_gender) << '\t' << r.entity_index << '\t' << r.sentence << '\t' << r.profession;
    if (r.secondary_entity_index) out << '\t' << *r.secondary_entity_index;
    out << '\n';
  }
}

// --- stereotypes -----------------------------------------------------------

StereotypeLexicon StereotypeLexicon::load(const std::filesystem::path& path) {
  StereotypeLexicon lex;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = text::split(t, '\t');
    if (fields.size() != 2) throw ParseError(path.string(), lineno, "expected lemma<TAB>ProF|ProM");
    const auto s = parse_profession_stereotype(fields[1]);
    if (!s) throw ParseError(path.string(), lineno, "unknown stereotype '" + fields[1] + "'");
    const auto lemma = text::to_lower(text::trim(fields[0]));
    if (auto it = lex.entries_.find(lemma); it != lex.entries_.end() && it->second != *s) {
      throw ParseError(path.string(), lineno, "lemma '" + lemma + "' mapped to both ProF and ProM");
    }
    lex.entries_[lemma] = *s;
  }
  return lex;
}

StereotypeLexicon StereotypeLexicon::from_pro_subset(std::span<const SentenceRecord> pro_records) {
  StereotypeLexicon lex;
  for (const auto& r : pro_records) {
    if (r.gold_gender == Gender::Neutral) continue;
    const auto s = r.gold_gender == Gender::Female ? ProfessionStereotype::ProF : ProfessionStereotype::ProM;
    const auto lemma = text::to_lower(r.profession);
    if (auto it = lex.entries_.find(lemma); it != lex.entries_.end() && it->second != s) {
      throw ValidationError("profession '" + lemma + "' appears with both genders in the pro-stereotypical subset (id " +
                            r.id + ")");
    }
    lex.entries_[lemma] = s;
  }
  return lex;
}

void StereotypeLexicon::set(const std::string& lemma, ProfessionStereotype s) { entries_[text::to_lower(lemma)] = s; }

std::optional<ProfessionStereotype> StereotypeLexicon::lookup(std::string_view profession) const {
  const auto it = entries_.find(text::to_lower(text::trim(profession)));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void StereotypeLexicon::save(std::ostream& out) const {
  for (const auto& [lemma, s] : entries_) out << lemma << '\t' << to_string(s) << '\n';
}

StereotypeClass classify_stereotype(const SentenceRecord& record, const StereotypeLexicon& lexicon) {
  const auto s = lexicon.lookup(record.profession);
  if (!s || record.gold_gender == Gender::Neutral) return StereotypeClass::None;
  const bool female = record.gold_gender == Gender::Female;
  const bool pro = (*s == ProfessionStereotype::ProF) == female;
  return pro ? StereotypeClass::ProStereotypical : StereotypeClass::AntiStereotypical;
}

// --- minimal pairs -----------------------------------------------------------

std::string pairing_key(const SentenceRecord& record) {
  const auto toks = record.tokens();
  std::string key;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i) key += ' ';
    if (const auto tag = classify_pronoun(toks, i)) {
      const auto parts = text::split_token(toks[i]);
      key += parts.prefix;
      key += placeholder(tag->role);
      key += tag->clitic;
      key += parts.suffix;
    } else {
      key += toks[i];
    }
  }
  key += '\t';
  key += std::to_string(record.entity_index);
  return key;
}

PairIds pair_ids(const MinimalPair& pair) {
  return {pair.key_hash, pair.male_variant.id, pair.female_variant.id, pair.stereotype_of_profession};
}

PairingResult build_minimal_pairs(std::span<const SentenceRecord> records, const StereotypeLexicon& lexicon) {
  struct Slot {
    const SentenceRecord* male = nullptr;
    const SentenceRecord* female = nullptr;
  };
  std::unordered_map<std::string, Slot> by_key;
  std::vector<std::string> key_order;
  for (const auto& r : records) {
    if (r.gold_gender == Gender::Neutral) {
      throw ValidationError("record " + r.id + " is neutral; minimal pairs need gendered records");
    }
    auto key = pairing_key(r);
    auto [it, inserted] = by_key.try_emplace(key);
    if (inserted) key_order.push_back(key);
    auto& slot = r.gold_gender == Gender::Male ? it->second.male : it->second.female;
    if (slot != nullptr) {
      const auto [first, second] = std::minmax(slot->id, r.id, text::id_less);
      throw ValidationError("ambiguous pairing key: records " + first + " and " + second +
                            " share a key and a gender");
    }
    slot = &r;
  }

  PairingResult result;
  for (const auto& key : key_order) {
    const auto& slot = by_key.at(key);
    if (slot.male && slot.female) {
      MinimalPair p;
      p.male_variant = *slot.male;
      p.female_variant = *slot.female;
      p.profession = slot.male->profession;
      const auto s = lexicon.lookup(p.profession);
      if (!s) throw ValidationError("profession '" + p.profession + "' missing from the stereotype lexicon");
      p.stereotype_of_profession = *s;
      p.key_hash = text::fnv1a64(key);
      result.pairs.push_back(std::move(p));
    } else {
      result.unpaired_ids.push_back(slot.male ? slot.male->id : slot.female->id);
    }
  }
  std::sort(result.pairs.begin(), result.pairs.end(), [](const MinimalPair& a, const MinimalPair& b) {
    return text::id_less(a.male_variant.id, b.male_variant.id);
  });
  std::sort(result.unpaired_ids.begin(), result.unpaired_ids.end(), text::id_less);
  return result;
}

void write_pairs(std::ostream& out, std::span<const MinimalPair> pairs) {
  for (const auto& p : pairs) {
    out << hex64(p.key_hash) << '\t' << p.male_variant.id << '\t' << p.female_variant.id << '\t'
        << to_string(p.stereotype_of_profession) << '\n';
  }
}

std::vector<PairIds> read_pairs(const std::filesystem::path& path) {
  std::vector<PairIds> pairs;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 4) throw ParseError(path.string(), lineno, "expected 4 tab-separated fields");
    PairIds p;
    std::uint64_t h = 0;
    const auto res = std::from_chars(f[0].data(), f[0].data() + f[0].size(), h, 16);
    if (res.ec != std::errc{} || res.ptr != f[0].data() + f[0].size()) {
      throw ParseError(path.string(), lineno, "bad key hash '" + f[0] + "'");
    }
    p.key_hash = h;
    p.male_id = f[1];
    p.female_id = f[2];
    const auto s = parse_profession_stereotype(f[3]);
    if (!s) throw ParseError(path.string(), lineno, "unknown stereotype '" + f[3] + "'");
    p.stereotype = *s;
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace mtgb
