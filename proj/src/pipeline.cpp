#include "mtgb/pipeline.hpp"

#include <algorithm>

#include "mtgb/error.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

Translations read_translations(const std::filesystem::path& path, const std::string& id_prefix) {
  Translations out;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path.string(), lineno, "expected id<TAB>translation");
    const std::string raw_id(text::trim(std::string_view(line).substr(0, tab)));
    const auto id = id_prefix.empty() ? raw_id : id_prefix + ":" + raw_id;
    if (!out.emplace(id, line.substr(tab + 1)).second) {
      throw ParseError(path.string(), lineno, "duplicate translation for id " + id);
    }
  }
  return out;
}

std::vector<std::vector<AlignmentLink>> read_alignments(const std::filesystem::path& path) {
  std::vector<std::vector<AlignmentLink>> out;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    try {
      out.push_back(parse_pharaoh(line));
    } catch (const ValidationError& e) {
      throw ParseError(path.string(), lineno, e.what());
    }
  }
  return out;
}

void write_alignments(const std::filesystem::path& path, std::span<const std::vector<AlignmentLink>> alignments) {
  std::string out;
  for (const auto& links : alignments) {
    out += to_pharaoh(links);
    out += '\n';
  }
  text::write_file(path, out);
}

AlignmentRun align_records(std::span<const SentenceRecord> records, const Translations& translations,
                           const AlignerParams& params, const ParallelCorpus* extra) {
  AlignmentRun run;
  run.links.resize(records.size());
  ParallelCorpus corpus;
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> sides(records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto it = translations.find(records[k].id);
    if (it == translations.end() || text::trim(it->second).empty()) {
      run.missing_translation_ids.push_back(records[k].id);
      continue;
    }
    sides[k] = {text::alignment_tokens(records[k].sentence, false), text::alignment_tokens(it->second)};
    corpus.add(sides[k].first, sides[k].second);
  }
  if (extra) {
    for (const auto& p : extra->pairs()) {
      std::vector<std::string> s;
      std::vector<std::string> t;
      for (auto id : p.source) s.push_back(extra->source_vocab().word(id));
      for (auto id : p.target) t.push_back(extra->target_vocab().word(id));
      corpus.add(s, t);
    }
  }
  if (corpus.empty()) throw ValidationError("nothing to align: no record has a translation");
  const auto model = train(corpus, params);
  run.log_likelihoods = model.log_likelihoods();
  for (std::size_t k = 0; k < records.size(); ++k) {
    if (sides[k].first.empty()) continue;
    auto v = viterbi_align(model, sides[k].first, sides[k].second);
    run.oov_positions += v.oov_positions.size();
    run.links[k] = std::move(v.links);
  }
  return run;
}

EvaluationRun evaluate_records(std::span<const SentenceRecord> records, const Translations& translations,
                               std::span<const std::vector<AlignmentLink>> alignments,
                               const GenderDetector& detector) {
  if (alignments.size() != records.size()) {
    throw ValidationError(std::to_string(alignments.size()) + " alignment lines for " +
                          std::to_string(records.size()) + " records");
  }
  EvaluationRun run;
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    const auto it = translations.find(r.id);
    if (it == translations.end() || text::trim(it->second).empty()) {
      run.missing_translation_ids.push_back(r.id);
      run.outcomes.push_back(GenderOutcome::make(r.id, r.gold_gender, GenderLabel::Unknown));
    } else {
      const auto tokens = text::alignment_tokens(it->second);
      for (const auto& l : alignments[k]) {
        if (l.target_index >= tokens.size()) {
          throw ValidationError("alignment for record " + r.id + " links target index " +
                                std::to_string(l.target_index) + " beyond the translation");
        }
      }
      run.outcomes.push_back(extract_outcome(r, tokens, alignments[k], detector));
    }
    if (run.outcomes.back().label == GenderLabel::Unknown) run.unknown_ids.push_back(r.id);
  }
  return run;
}

void write_outcomes(const std::filesystem::path& path, std::span<const GenderOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    out += o.record_id;
    out += '\t';
    out += to_string(o.gold_gender);
    out += '\t';
    out += to_string(o.label);
    out += '\t';
    out += !o.correct ? "-" : (*o.correct ? "1" : "0");
    out += '\t';
    bool first = true;
    for (auto i : o.span) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
    out += '\n';
  }
  text::write_file(path, out);
}

std::vector<GenderOutcome> read_outcomes(const std::filesystem::path& path) {
  std::vector<GenderOutcome> out;
  std::size_t lineno = 0;
  for (const auto& line : text::read_lines(path)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(line, '\t');
    if (f.size() != 5) throw ParseError(path.string(), lineno, "expected id, gold, label, correct, span");
    const auto gold = parse_gender(f[1]);
    const auto label = parse_gender_label(f[2]);
    if (!gold || !label) throw ParseError(path.string(), lineno, "bad gender or label");
    std::set<std::size_t> span;
    for (const auto& s : text::split(f[4], ',')) {
      if (s.empty()) continue;
      try {
        span.insert(std::stoul(s));
      } catch (const std::exception&) {
        throw ParseError(path.string(), lineno, "bad span index '" + s + "'");
      }
    }
    auto o = GenderOutcome::make(f[0], *gold, *label, std::move(span));
    const std::string want = !o.correct ? "-" : (*o.correct ? "1" : "0");
    if (f[3] != want) throw ParseError(path.string(), lineno, "correct flag disagrees with gold and label");
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace mtgb
