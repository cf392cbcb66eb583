#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mtgb {

class Vocabulary {
 public:
  std::uint32_t intern(std::string_view word);
  std::optional<std::uint32_t> find(std::string_view word) const;
  const std::string& word(std::uint32_t id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> words_;
};

/// Sentence pairs over dense vocabularies. Source id 0 is the NULL word.
class ParallelCorpus {
 public:
  static constexpr std::uint32_t kNull = 0;
  static constexpr std::string_view kNullWord = "<null>";

  ParallelCorpus();

  /// Throws ValidationError on an empty side.
  void add(std::span<const std::string> source, std::span<const std::string> target);

  struct Pair {
    std::vector<std::uint32_t> source;  // without NULL
    std::vector<std::uint32_t> target;
  };

  const std::vector<Pair>& pairs() const { return pairs_; }
  const Vocabulary& source_vocab() const { return source_vocab_; }
  const Vocabulary& target_vocab() const { return target_vocab_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  /// Reads "src ||| tgt" lines, tokenized with text::alignment_tokens.
  static ParallelCorpus from_joined_file(const std::filesystem::path& path);
  /// Reads two line-parallel files.
  static ParallelCorpus from_parallel_files(const std::filesystem::path& source, const std::filesystem::path& target);

 private:
  Vocabulary source_vocab_;
  Vocabulary target_vocab_;
  std::vector<Pair> pairs_;
};

struct AlignerParams {
  double tension = 4.0;     // diagonal concentration; 0 gives uniform distortion
  double null_prob = 0.08;  // probability of aligning to NULL
  int iterations = 5;
};

/// Distortion probabilities for target position j (0-based) of m tokens
/// against n source tokens: element 0 is NULL (= null_prob), element i+1 is
/// (1 - null_prob) * exp(-tension * |(i+1)/n - (j+1)/m|) / Z.
std::vector<double> distortion_row(std::size_t j, std::size_t m, std::size_t n, double tension, double null_prob);

/// Sparse lexical translation table p(target | source), rows indexed by source id.
using TranslationRow = std::unordered_map<std::uint32_t, double>;

class AlignerModel {
 public:
  AlignerModel() = default;

  double translation_prob(std::uint32_t source, std::uint32_t target) const;
  const TranslationRow& row(std::uint32_t source) const { return table_[source]; }
  std::size_t rows() const { return table_.size(); }

  const AlignerParams& params() const { return params_; }
  /// Corpus log-likelihood under the parameters entering each iteration.
  const std::vector<double>& log_likelihoods() const { return log_likelihoods_; }
  const Vocabulary& source_vocab() const { return source_vocab_; }
  const Vocabulary& target_vocab() const { return target_vocab_; }

 private:
  friend AlignerModel train(const ParallelCorpus&, const AlignerParams&);
  friend AlignerModel uniform_model(const ParallelCorpus&, const AlignerParams&);
  friend void em_step(AlignerModel&, const ParallelCorpus&);

  std::vector<TranslationRow> table_;
  AlignerParams params_;
  std::vector<double> log_likelihoods_;
  Vocabulary source_vocab_;
  Vocabulary target_vocab_;
};

/// Uniform table over each source word's co-occurring targets (NULL co-occurs
/// with every target). Validates params.
AlignerModel uniform_model(const ParallelCorpus& corpus, const AlignerParams& params);

/// Posterior expected link counts under a fixed model.
struct ExpectedCounts {
  std::vector<TranslationRow> counts;  // counts[source][target]
  double log_likelihood = 0.0;
};
ExpectedCounts expected_counts(const AlignerModel& model, const ParallelCorpus& corpus);

/// One EM iteration: E-step, then renormalize rows with add-1e-12 smoothing
/// over each row's support.
void em_step(AlignerModel& model, const ParallelCorpus& corpus);

/// Runs params.iterations EM iterations from the uniform table.
AlignerModel train(const ParallelCorpus& corpus, const AlignerParams& params);

struct AlignmentLink {
  std::size_t source_index;
  std::size_t target_index;
  friend bool operator==(const AlignmentLink&, const AlignmentLink&) = default;
};

struct ViterbiResult {
  std::vector<AlignmentLink> links;  // sorted by target index
  /// Target positions scored by distortion only (out-of-vocabulary word).
  std::vector<std::size_t> oov_positions;
};

/// Per target position, links to the argmax of p(a_j = i) * p(t_j | s_i)
/// over NULL and all source positions. NULL wins -> no link; ties go to the
/// smaller source index (NULL counts as index 0).
ViterbiResult viterbi_align(const AlignerModel& model, std::span<const std::string> source,
                            std::span<const std::string> target);

/// Target indices linked to the source entity; empty means an alignment miss.
std::set<std::size_t> project_entity(std::span<const AlignmentLink> links, std::size_t entity_index);

/// Pharaoh "i-j" links, space separated, sorted by target then source index.
std::string to_pharaoh(std::span<const AlignmentLink> links);
std::vector<AlignmentLink> parse_pharaoh(std::string_view line);

}  // namespace mtgb
