#include "mtgb/aligner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "mtgb/error.hpp"
#include "mtgb/simd/kernels.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

constexpr double kSmoothing = 1e-12;

void validate(const AlignerParams& p) {
  if (p.iterations < 1) throw ValidationError("aligner iterations must be >= 1");
  if (!(p.tension >= 0.0) || !std::isfinite(p.tension)) throw ValidationError("aligner tension must be >= 0");
  if (!(p.null_prob > 0.0 && p.null_prob < 1.0)) throw ValidationError("aligner null probability must be in (0, 1)");
}

}  // namespace

std::uint32_t Vocabulary::intern(std::string_view word) {
  const auto [it, inserted] = ids_.try_emplace(std::string(word), static_cast<std::uint32_t>(words_.size()));
  if (inserted) words_.emplace_back(word);
  return it->second;
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view word) const {
  const auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

ParallelCorpus::ParallelCorpus() { source_vocab_.intern(kNullWord); }

void ParallelCorpus::add(std::span<const std::string> source, std::span<const std::string> target) {
  if (source.empty() || target.empty()) {
    throw ValidationError("sentence pair " + std::to_string(pairs_.size() + 1) + " has an empty side");
  }
  Pair p;
  p.source.reserve(source.size());
  p.target.reserve(target.size());
  for (const auto& w : source) p.source.push_back(source_vocab_.intern(w));
  for (const auto& w : target) p.target.push_back(target_vocab_.intern(w));
  pairs_.push_back(std::move(p));
}

ParallelCorpus ParallelCorpus::from_joined_file(const std::filesystem::path& path) {
  ParallelCorpus corpus;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    const auto sep = line.find("|||");
    if (sep == std::string::npos) throw ParseError(path.string(), lineno, "missing ' ||| ' separator");
    const auto src = text::alignment_tokens(line.substr(0, sep));
    const auto tgt = text::alignment_tokens(line.substr(sep + 3));
    if (src.empty() || tgt.empty()) throw ParseError(path.string(), lineno, "empty side");
    corpus.add(src, tgt);
  }
  return corpus;
}

ParallelCorpus ParallelCorpus::from_parallel_files(const std::filesystem::path& source,
                                                   const std::filesystem::path& target) {
  const auto src_lines = text::read_lines(source);
  const auto tgt_lines = text::read_lines(target);
  if (src_lines.size() != tgt_lines.size()) {
    throw ValidationError("parallel files differ in length: " + std::to_string(src_lines.size()) + " vs " +
                          std::to_string(tgt_lines.size()));
  }
  ParallelCorpus corpus;
  for (std::size_t i = 0; i < src_lines.size(); ++i) {
    const auto src = text::alignment_tokens(src_lines[i]);
    const auto tgt = text::alignment_tokens(tgt_lines[i]);
    if (src.empty() || tgt.empty()) throw ParseError(source.string(), i + 1, "empty side");
    corpus.add(src, tgt);
  }
  return corpus;
}

std::vector<double> distortion_row(std::size_t j, std::size_t m, std::size_t n, double tension, double null_prob) {
  std::vector<double> row(n + 1);
  row[0] = null_prob;
  const double tj = static_cast<double>(j + 1) / static_cast<double>(m);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(static_cast<double>(i + 1) / static_cast<double>(n) - tj);
    row[i + 1] = std::exp(-tension * d);
    z += row[i + 1];
  }
  const double scale = (1.0 - null_prob) / z;
  for (std::size_t i = 1; i <= n; ++i) row[i] *= scale;
  return row;
}

double AlignerModel::translation_prob(std::uint32_t source, std::uint32_t target) const {
  if (source >= table_.size()) return 0.0;
  const auto& r = table_[source];
  const auto it = r.find(target);
  return it == r.end() ? 0.0 : it->second;
}

AlignerModel uniform_model(const ParallelCorpus& corpus, const AlignerParams& params) {
  validate(params);
  if (corpus.empty()) throw ValidationError("cannot train on an empty corpus");
  AlignerModel model;
  model.params_ = params;
  model.source_vocab_ = corpus.source_vocab();
  model.target_vocab_ = corpus.target_vocab();
  model.table_.resize(corpus.source_vocab().size());
  for (const auto& p : corpus.pairs()) {
    for (auto t : p.target) {
      model.table_[ParallelCorpus::kNull].try_emplace(t, 0.0);
      for (auto s : p.source) model.table_[s].try_emplace(t, 0.0);
    }
  }
  for (auto& row : model.table_) {
    if (row.empty()) continue;
    const double u = 1.0 / static_cast<double>(row.size());
    for (auto& [t, v] : row) v = u;
  }
  return model;
}

ExpectedCounts expected_counts(const AlignerModel& model, const ParallelCorpus& corpus) {
  ExpectedCounts out;
  out.counts.resize(model.rows());
  const auto& params = model.params();
  std::vector<double> theta;
  std::vector<double> post;
  for (const auto& p : corpus.pairs()) {
    const std::size_t n = p.source.size();
    const std::size_t m = p.target.size();
    theta.resize(n + 1);
    post.resize(n + 1);
    for (std::size_t j = 0; j < m; ++j) {
      const auto t = p.target[j];
      const auto dist = distortion_row(j, m, n, params.tension, params.null_prob);
      theta[0] = model.translation_prob(ParallelCorpus::kNull, t);
      for (std::size_t i = 0; i < n; ++i) theta[i + 1] = model.translation_prob(p.source[i], t);
      const double z = simd::dot(dist, theta);
      out.log_likelihood += std::log(z);
      const double inv = 1.0 / z;
      out.counts[ParallelCorpus::kNull][t] += dist[0] * theta[0] * inv;
      for (std::size_t i = 0; i < n; ++i) out.counts[p.source[i]][t] += dist[i + 1] * theta[i + 1] * inv;
    }
  }
  return out;
}

void em_step(AlignerModel& model, const ParallelCorpus& corpus) {
  auto ec = expected_counts(model, corpus);
  model.log_likelihoods_.push_back(ec.log_likelihood);
  for (std::size_t s = 0; s < model.table_.size(); ++s) {
    auto& row = model.table_[s];
    if (row.empty()) continue;
    const auto& counts = ec.counts[s];
    double total = 0.0;
    for (auto& [t, v] : row) {
      const auto it = counts.find(t);
      v = (it == counts.end() ? 0.0 : it->second) + kSmoothing;
      total += v;
    }
    for (auto& [t, v] : row) v /= total;
  }
}

AlignerModel train(const ParallelCorpus& corpus, const AlignerParams& params) {
  auto model = uniform_model(corpus, params);
  for (int it = 0; it < params.iterations; ++it) em_step(model, corpus);
  return model;
}

ViterbiResult viterbi_align(const AlignerModel& model, std::span<const std::string> source,
                            std::span<const std::string> target) {
  if (source.empty() || target.empty()) throw ValidationError("cannot align an empty sentence");
  const auto& params = model.params();
  const std::size_t n = source.size();
  const std::size_t m = target.size();
  std::vector<std::optional<std::uint32_t>> src_ids(n);
  for (std::size_t i = 0; i < n; ++i) src_ids[i] = model.source_vocab().find(source[i]);

  ViterbiResult result;
  for (std::size_t j = 0; j < m; ++j) {
    const auto dist = distortion_row(j, m, n, params.tension, params.null_prob);
    const auto t = model.target_vocab().find(target[j]);
    auto lexical = [&](std::size_t i) -> double {  // i: 0 = NULL, i>0 source i-1
      if (!t) return 1.0;
      if (i == 0) return model.translation_prob(ParallelCorpus::kNull, *t);
      const auto& s = src_ids[i - 1];
      return s ? model.translation_prob(*s, *t) : 0.0;
    };
    if (!t) result.oov_positions.push_back(j);
    std::size_t best = 0;
    double best_score = dist[0] * lexical(0);
    for (std::size_t i = 1; i <= n; ++i) {
      const double score = dist[i] * lexical(i);
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best > 0) result.links.push_back({best - 1, j});
  }
  return result;
}

std::set<std::size_t> project_entity(std::span<const AlignmentLink> links, std::size_t entity_index) {
  std::set<std::size_t> out;
  for (const auto& l : links) {
    if (l.source_index == entity_index) out.insert(l.target_index);
  }
  return out;
}

std::string to_pharaoh(std::span<const AlignmentLink> links) {
  std::vector<AlignmentLink> sorted(links.begin(), links.end());
  std::sort(sorted.begin(), sorted.end(), [](const AlignmentLink& a, const AlignmentLink& b) {
    return a.target_index != b.target_index ? a.target_index < b.target_index : a.source_index < b.source_index;
  });
  std::string out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(sorted[k].source_index);
    out += '-';
    out += std::to_string(sorted[k].target_index);
  }
  return out;
}

std::vector<AlignmentLink> parse_pharaoh(std::string_view line) {
  std::vector<AlignmentLink> links;
  for (const auto& tok : text::split_whitespace(line)) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) throw ValidationError("malformed alignment link '" + tok + "'");
    std::size_t i = 0;
    std::size_t j = 0;
    const auto r1 = std::from_chars(tok.data(), tok.data() + dash, i);
    const auto r2 = std::from_chars(tok.data() + dash + 1, tok.data() + tok.size(), j);
    if (r1.ec != std::errc{} || r1.ptr != tok.data() + dash || r2.ec != std::errc{} ||
        r2.ptr != tok.data() + tok.size()) {
      throw ValidationError("malformed alignment link '" + tok + "'");
    }
    links.push_back({i, j});
  }
  return links;
}

}  // namespace mtgb
