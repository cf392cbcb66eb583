#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtgb/types.hpp"

namespace mtgb {

/// One challenge-set sentence.
struct SentenceRecord {
  std::string id;
  Gender gold_gender = Gender::Male;
  std::size_t entity_index = 0;  // whitespace-token index of the profession head
  std::string sentence;
  std::string profession;
  StereotypeClass stereotype_class = StereotypeClass::None;
  std::optional<std::size_t> secondary_entity_index;

  std::vector<std::string> tokens() const;
};

struct ParseOptions {
  /// false: three-column layout (index, sentence, profession), records are Neutral.
  bool has_gender_column = true;
  /// Prepended to line-number ids as "prefix:line" so several files can be mixed.
  std::string id_prefix;
  StereotypeClass stereotype_class = StereotypeClass::None;
};

/// Reads the WinoMT tab-separated layout: gender, entity index, sentence,
/// profession, and an optional fifth column with the secondary-entity index.
/// Ids are 1-based line numbers. Throws ParseError naming the offending line.
std::vector<SentenceRecord> parse_challenge_set(const std::filesystem::path& path,
                                                const ParseOptions& options = {});
std::vector<SentenceRecord> parse_challenge_set(std::istream& in, const ParseOptions& options,
                                                const std::string& source_name);

void write_challenge_set(std::ostream& out, std::span<const SentenceRecord> records);

/// Checks the record invariants (index bounds, head token matches profession).
/// Returns an empty string when the record is well formed.
std::string validate_record(const SentenceRecord& record);

/// profession lemma -> stereotypical gender.
class StereotypeLexicon {
 public:
  /// Reads "lemma<TAB>ProF|ProM" lines; '#' starts a comment.
  static StereotypeLexicon load(const std::filesystem::path& path);

  /// A profession seen with a female pronoun in the pro-stereotypical subset
  /// is ProF, with a male pronoun ProM. Conflicting evidence throws.
  static StereotypeLexicon from_pro_subset(std::span<const SentenceRecord> pro_records);

  void set(const std::string& lemma, ProfessionStereotype s);
  std::optional<ProfessionStereotype> lookup(std::string_view profession) const;
  std::size_t size() const { return entries_.size(); }
  void save(std::ostream& out) const;

 private:
  std::map<std::string, ProfessionStereotype> entries_;
};

/// Pro/anti classification of a gendered record against the lexicon.
StereotypeClass classify_stereotype(const SentenceRecord& record, const StereotypeLexicon& lexicon);

struct MinimalPair {
  SentenceRecord male_variant;
  SentenceRecord female_variant;
  std::string profession;
  ProfessionStereotype stereotype_of_profession = ProfessionStereotype::ProM;
  std::uint64_t key_hash = 0;
};

/// The id-level view of a pair, as stored in pair files.
struct PairIds {
  std::uint64_t key_hash = 0;
  std::string male_id;
  std::string female_id;
  ProfessionStereotype stereotype = ProfessionStereotype::ProM;
};

PairIds pair_ids(const MinimalPair& pair);

struct PairingResult {
  std::vector<MinimalPair> pairs;        // ordered by male id
  std::vector<std::string> unpaired_ids;  // ordered by id
};

/// Gender-erased pairing key: every gendered pronoun replaced by its role
/// placeholder (SUBJ, OBJ, DET, POSS, REFL), followed by the entity index.
std::string pairing_key(const SentenceRecord& record);

/// Groups records by pairing key. Keys holding exactly one male and one
/// female record form a pair; everything else is reported unpaired. Two
/// same-gender records on one key throw ValidationError listing both ids.
PairingResult build_minimal_pairs(std::span<const SentenceRecord> records,
                                  const StereotypeLexicon& lexicon);

/// One pair per line: key hash (16 hex digits), male id, female id, stereotype.
void write_pairs(std::ostream& out, std::span<const MinimalPair> pairs);
std::vector<PairIds> read_pairs(const std::filesystem::path& path);

}  // namespace mtgb
