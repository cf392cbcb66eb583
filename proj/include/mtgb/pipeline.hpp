#pragma once

// Stage wiring shared by the CLI and the end-to-end tests.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtgb/aligner.hpp"
#include "mtgb/corpus.hpp"
#include "mtgb/morpho.hpp"
#include "mtgb/outcome.hpp"

namespace mtgb {

/// id -> translation. File lines are "id<TAB>text"; `id_prefix` is applied
/// as in ParseOptions so ids match the parsed records.
using Translations = std::map<std::string, std::string>;
Translations read_translations(const std::filesystem::path& path, const std::string& id_prefix = {});

/// One Pharaoh line per record, in record order (empty line = no links).
std::vector<std::vector<AlignmentLink>> read_alignments(const std::filesystem::path& path);
void write_alignments(const std::filesystem::path& path, std::span<const std::vector<AlignmentLink>> alignments);

struct AlignmentRun {
  std::vector<std::vector<AlignmentLink>> links;  // per record; empty when untranslated
  std::vector<std::string> missing_translation_ids;
  std::size_t oov_positions = 0;
  std::vector<double> log_likelihoods;
};

/// Trains the aligner on the translated records (plus `extra` pairs, which
/// only enlarge the training data) and Viterbi-aligns every translated record.
AlignmentRun align_records(std::span<const SentenceRecord> records, const Translations& translations,
                           const AlignerParams& params, const ParallelCorpus* extra = nullptr);

struct EvaluationRun {
  std::vector<GenderOutcome> outcomes;  // record order
  std::vector<std::string> unknown_ids;
  std::vector<std::string> missing_translation_ids;
  std::size_t oov_positions = 0;
};

/// Extracts one outcome per record. Records without a translation are
/// Unknown. `alignments` must hold one entry per record.
EvaluationRun evaluate_records(std::span<const SentenceRecord> records, const Translations& translations,
                               std::span<const std::vector<AlignmentLink>> alignments,
                               const GenderDetector& detector);

/// "id<TAB>gold<TAB>label<TAB>correct<TAB>span" with correct in {1, 0, -}
/// and span as comma-separated target indices.
void write_outcomes(const std::filesystem::path& path, std::span<const GenderOutcome> outcomes);
std::vector<GenderOutcome> read_outcomes(const std::filesystem::path& path);

}  // namespace mtgb
