#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mtgb/aligner.hpp"
#include "mtgb/corpus.hpp"
#include "mtgb/outcome.hpp"
#include "mtgb/types.hpp"

namespace mtgb {

struct LexiconEntry {
  std::string lemma;  // English profession
  std::vector<std::string> masc_forms;
  std::vector<std::string> fem_forms;
  bool epicene = false;
};

/// Italian surface forms of the challenge-set professions.
class GenderLexicon {
 public:
  enum class FormGender { Masculine, Feminine, Both };

  /// Reads "lemma<TAB>masc,forms<TAB>fem,forms<TAB>0|1". Entries sharing a
  /// lemma are kept side by side. Throws ParseError on a non-epicene entry
  /// whose sides overlap or are empty, and on a form that is masculine in one
  /// entry and feminine in another.
  static GenderLexicon load(const std::filesystem::path& path);

  void add(LexiconEntry entry);

  /// Gender of a lowercased surface form; Both for epicene forms.
  std::optional<FormGender> lookup(std::string_view form) const;
  bool is_epicene_form(std::string_view form) const;

  /// All entries for a profession (case-insensitive); empty when unknown.
  std::vector<const LexiconEntry*> entries_for(std::string_view lemma) const;

  /// Every masculine and feminine form listed for a profession.
  std::vector<std::string> forms_for(std::string_view lemma) const;

  const std::vector<LexiconEntry>& entries() const { return entries_; }

 private:
  std::vector<LexiconEntry> entries_;
  std::unordered_map<std::string, FormGender> forms_;
};

enum class ArticleClass { Masculine, Feminine, Elided };

struct ArticleInfo {
  ArticleClass cls;
  GenderLabel gender;  // Unknown for gender-opaque elisions ("l'")
};

/// Italian definite, indefinite and articulated articles.
class ArticleTable {
 public:
  /// The table shipped in data/lexicon/it_articles.tsv.
  static ArticleTable builtin();
  static ArticleTable load(const std::filesystem::path& path);
  static ArticleTable parse(std::string_view contents, const std::string& source_name);

  /// Looks up a token (case, surrounding punctuation and typographic
  /// apostrophes are normalized away).
  std::optional<ArticleInfo> lookup(std::string_view token) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, ArticleInfo, std::less<>> table_;
};

/// Lowercased word core of a target token: punctuation stripped, apostrophes
/// normalized, elided article kept with its apostrophe.
std::string normalize_target_token(std::string_view token);

/// Rule cascade assigning a grammatical gender to an aligned target span:
///  1. lexicon: masculine-only / feminine-only forms among the span tokens;
///  2. article: an article inside the span, else the nearest article in the
///     two tokens before it (an intervening word is skipped as an adjective);
///  3. suffix of the head noun: -o/-i masculine, -essa/-a feminine; -e and
///     epicene forms give no evidence;
///  4. Unknown.
/// Conflicting evidence inside one step yields Unknown.
class GenderDetector {
 public:
  GenderDetector(const GenderLexicon& lexicon, const ArticleTable& articles) : lexicon_(&lexicon), articles_(&articles) {}

  GenderLabel detect(std::span<const std::string> target_tokens, const std::set<std::size_t>& span) const;

  const GenderLexicon& lexicon() const { return *lexicon_; }
  const ArticleTable& articles() const { return *articles_; }

 private:
  const GenderLexicon* lexicon_;
  const ArticleTable* articles_;
};

/// project_entity + detect. `translation` is tokenized with
/// text::alignment_tokens, the tokenization `links` refers to.
GenderOutcome extract_outcome(const SentenceRecord& record, std::span<const std::string> translation,
                              std::span<const AlignmentLink> links, const GenderDetector& detector);

}  // namespace mtgb
