#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtgb/dump.hpp"
#include "mtgb/morpho.hpp"

namespace mtgb {

/// Token indices of the profession translation, the cue and the secondary
/// entity inside one dump.
struct SpanMap {
  std::vector<std::size_t> target_span;  // generated-token indices, article first when present
  std::vector<std::size_t> cue_positions;  // context (prompt) positions
  std::optional<std::vector<std::size_t>> secondary_span;  // generated-token indices
};

struct SpanQuery {
  std::vector<std::string> profession_forms;  // surface forms of the coreferent profession
  std::string cue_surface;                    // e.g. "she"
  std::vector<std::string> secondary_forms;   // optional, for the selectivity control
};

/// Subword piece as plain text: SentencePiece "▁" and byte-level BPE "Ġ"/"Ċ"
/// markers become spaces, typographic apostrophes become ASCII.
std::string detokenize_piece(const std::string& piece);

/// Finds the profession, cue and secondary spans. Forms are matched
/// case-insensitively on word boundaries of the detokenized output, leftmost
/// first and longest on ties. An article directly before the noun joins the
/// target span. Returns nullopt when no profession form is found. Throws
/// ValidationError when the cue does not occur in the source segment.
std::optional<SpanMap> locate_spans(const AttentionDump& dump, const SpanQuery& query, const ArticleTable& articles);

/// Mean attention weight per (layer, head).
struct HeadMatrix {
  std::size_t n_layers = 0;
  std::size_t n_heads = 0;
  std::vector<double> values;  // row-major layers x heads
  std::size_t n = 0;           // aggregated instances

  static HeadMatrix zeros(std::size_t n_layers, std::size_t n_heads);
  double at(std::size_t layer, std::size_t head) const { return values[layer * n_heads + head]; }
  double& at(std::size_t layer, std::size_t head) { return values[layer * n_heads + head]; }
};

/// Attention to the cue: summed over cue subwords, averaged over the
/// generation steps of the target span.
HeadMatrix cue_attention(const AttentionDump& dump, const SpanMap& spans);

/// Same measure with the secondary entity as the generating span. Throws
/// ValidationError when no secondary span was located.
HeadMatrix secondary_entity_attention(const AttentionDump& dump, const SpanMap& spans);

/// Attention on prompt template positions (prompt minus the embedded source
/// sentence), averaged over target-span steps, layers and heads.
double prompt_attention_mass(const AttentionDump& dump, const SpanMap& spans);

struct AttentionInstance {
  std::string sentence_id;
  HeadMatrix matrix;
};

/// Keeps the first n_min instances by ascending sentence id and averages
/// them cell-wise. Throws ValidationError with fewer than n_min instances,
/// n_min == 0 or mismatched shapes.
HeadMatrix aggregate(std::vector<AttentionInstance> instances, std::size_t n_min);

}  // namespace mtgb
