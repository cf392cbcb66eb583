#include "mtgb/attention.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mtgb/error.hpp"
#include "mtgb/simd/kernels.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

// Detokenized text with the owning token index of every byte.
struct Detok {
  std::string text;
  std::vector<std::size_t> owner;
};

Detok detokenize(const std::vector<std::string>& tokens, std::size_t begin, std::size_t end) {
  Detok d;
  for (std::size_t i = begin; i < end; ++i) {
    const auto piece = text::to_lower(detokenize_piece(tokens[i]));
    d.text += piece;
    d.owner.insert(d.owner.end(), piece.size(), i);
  }
  return d;
}

bool word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

struct Match {
  std::size_t begin = 0;
  std::size_t end = 0;  // bytes [begin, end)
};

bool on_boundaries(const std::string& s, std::size_t b, std::size_t e) {
  return (b == 0 || !word_byte(s[b - 1])) && (e == s.size() || !word_byte(s[e]));
}

// Leftmost word-boundary match of any form, longest on ties, skipping
// matches rejected by `ok`.
template <typename Ok>
std::optional<Match> leftmost(const std::string& s, const std::vector<std::string>& forms, Ok ok) {
  std::optional<Match> best;
  for (const auto& raw : forms) {
    const auto form = text::to_lower(text::normalize_apostrophes(text::trim(raw)));
    if (form.empty()) continue;
    for (auto pos = s.find(form); pos != std::string::npos; pos = s.find(form, pos + 1)) {
      const Match m{pos, pos + form.size()};
      if (!on_boundaries(s, m.begin, m.end) || !ok(m)) continue;
      if (!best || m.begin < best->begin || (m.begin == best->begin && m.end > best->end)) best = m;
      break;
    }
  }
  return best;
}

std::vector<std::size_t> owners(const Detok& d, Match m) {
  std::vector<std::size_t> out;
  for (std::size_t k = m.begin; k < m.end; ++k) {
    if (out.empty() || out.back() != d.owner[k]) out.push_back(d.owner[k]);
  }
  return out;
}

// Noun tokens plus the article that directly precedes them.
std::vector<std::size_t> noun_span(const Detok& d, Match m, const ArticleTable& articles) {
  auto span = owners(d, m);
  const auto& s = d.text;
  std::size_t art_end = m.begin;
  if (art_end > 0 && s[art_end - 1] == '\'') {
    // elided article glued to the noun: "l'", "un'"
  } else {
    while (art_end > 0 && s[art_end - 1] == ' ') --art_end;
    if (art_end == m.begin || art_end == 0) return span;  // glued to a preceding word, or nothing before
  }
  std::size_t art_begin = s[art_end - 1] == '\'' ? art_end - 1 : art_end;
  while (art_begin > 0 && word_byte(s[art_begin - 1])) --art_begin;
  if (art_begin == art_end || !articles.lookup(s.substr(art_begin, art_end - art_begin))) return span;
  const auto art = owners(d, {art_begin, art_end});
  if (art.back() + 1 < span.front()) return span;  // something sits between them
  std::vector<std::size_t> out;
  for (auto i = art.front(); i < span.front(); ++i) out.push_back(i);
  out.insert(out.end(), span.begin(), span.end());
  return out;
}

HeadMatrix attention_from(const AttentionDump& dump, const std::vector<std::size_t>& steps,
                          const std::vector<std::size_t>& positions) {
  auto out = HeadMatrix::zeros(dump.n_layers(), dump.n_heads());
  out.n = 1;
  if (steps.empty()) throw ValidationError(dump.meta().sentence_id + ": empty generating span");
  for (auto t : steps) {
    if (t >= dump.n_steps()) throw ValidationError(dump.meta().sentence_id + ": span step out of range");
    for (std::size_t l = 0; l < dump.n_layers(); ++l) {
      for (std::size_t h = 0; h < dump.n_heads(); ++h) {
        out.at(l, h) += simd::gather_sum(dump.row(t, l, h), positions);
      }
    }
  }
  for (auto& v : out.values) v /= static_cast<double>(steps.size());
  return out;
}

}  // namespace

std::string detokenize_piece(const std::string& piece) {
  std::string out;
  for (std::size_t i = 0; i < piece.size();) {
    const std::string_view rest(piece.data() + i, piece.size() - i);
    if (rest.starts_with("\xE2\x96\x81")) {  // ▁
      out += ' ';
      i += 3;
    } else if (rest.starts_with("\xC4\xA0") || rest.starts_with("\xC4\x8A")) {  // Ġ Ċ
      out += ' ';
      i += 2;
    } else {
      out += piece[i++];
    }
  }
  return text::normalize_apostrophes(out);
}

std::optional<SpanMap> locate_spans(const AttentionDump& dump, const SpanQuery& query, const ArticleTable& articles) {
  const auto& m = dump.meta();
  SpanMap spans;

  const auto src = detokenize(m.context_tokens, m.source_begin, m.source_end);
  const auto cue = leftmost(src.text, {query.cue_surface}, [](Match) { return true; });
  if (!cue) throw ValidationError(m.sentence_id + ": cue '" + query.cue_surface + "' not found in the source segment");
  spans.cue_positions = owners(src, *cue);

  const auto gen = detokenize(m.generated_tokens, 0, m.generated_tokens.size());
  const auto target = leftmost(gen.text, query.profession_forms, [](Match) { return true; });
  if (!target) return std::nullopt;
  spans.target_span = noun_span(gen, *target, articles);

  if (!query.secondary_forms.empty()) {
    const std::set<std::size_t> taken(spans.target_span.begin(), spans.target_span.end());
    const auto second = leftmost(gen.text, query.secondary_forms, [&](Match mm) {
      for (auto i : owners(gen, mm)) {
        if (taken.contains(i)) return false;
      }
      return true;
    });
    if (second) {
      auto s = noun_span(gen, *second, articles);
      std::erase_if(s, [&](std::size_t i) { return taken.contains(i); });
      if (!s.empty()) spans.secondary_span = std::move(s);
    }
  }
  return spans;
}

HeadMatrix HeadMatrix::zeros(std::size_t n_layers, std::size_t n_heads) {
  return {n_layers, n_heads, std::vector<double>(n_layers * n_heads, 0.0), 0};
}

HeadMatrix cue_attention(const AttentionDump& dump, const SpanMap& spans) {
  return attention_from(dump, spans.target_span, spans.cue_positions);
}

HeadMatrix secondary_entity_attention(const AttentionDump& dump, const SpanMap& spans) {
  if (!spans.secondary_span) throw ValidationError(dump.meta().sentence_id + ": no secondary entity span");
  return attention_from(dump, *spans.secondary_span, spans.cue_positions);
}

double prompt_attention_mass(const AttentionDump& dump, const SpanMap& spans) {
  const auto& m = dump.meta();
  if (spans.target_span.empty()) throw ValidationError(m.sentence_id + ": empty target span");
  double total = 0.0;
  for (auto t : spans.target_span) {
    for (std::size_t l = 0; l < dump.n_layers(); ++l) {
      for (std::size_t h = 0; h < dump.n_heads(); ++h) {
        const auto row = dump.row(t, l, h);
        total += simd::sum(row.subspan(0, m.source_begin));
        total += simd::sum(row.subspan(m.source_end, m.prompt_len - m.source_end));
      }
    }
  }
  return total / static_cast<double>(spans.target_span.size() * dump.n_layers() * dump.n_heads());
}

HeadMatrix aggregate(std::vector<AttentionInstance> instances, std::size_t n_min) {
  if (n_min == 0) throw ValidationError("n_min must be at least 1");
  if (instances.size() < n_min) {
    throw ValidationError("aggregation needs " + std::to_string(n_min) + " instances, got " +
                          std::to_string(instances.size()));
  }
  std::stable_sort(instances.begin(), instances.end(),
                   [](const auto& a, const auto& b) { return text::id_less(a.sentence_id, b.sentence_id); });
  const auto& first = instances.front().matrix;
  auto out = HeadMatrix::zeros(first.n_layers, first.n_heads);
  for (std::size_t k = 0; k < n_min; ++k) {
    const auto& mat = instances[k].matrix;
    if (mat.n_layers != out.n_layers || mat.n_heads != out.n_heads || mat.values.size() != out.values.size()) {
      throw ValidationError("instance " + instances[k].sentence_id + " has a different layer/head shape");
    }
    for (std::size_t c = 0; c < out.values.size(); ++c) out.values[c] += mat.values[c];
  }
  for (auto& v : out.values) v /= static_cast<double>(n_min);
  out.n = n_min;
  return out;
}

}  // namespace mtgb
