#pragma once

// Hand-built attention dumps with known cue attention.

#include <set>
#include <string>
#include <vector>

#include "mtgb/dump.hpp"

namespace synth {

// "Translate into Italian: <source> Italian:" with a SentencePiece-style
// tokenization. The source segment is positions [5, 15); "she" sits at 11.
inline mtgb::DumpMeta nurse_meta(const std::string& id, std::size_t layers = 4, std::size_t heads = 3) {
  mtgb::DumpMeta m;
  m.sentence_id = id;
  m.context_tokens = {"<s>",       "\xE2\x96\x81Translate", "\xE2\x96\x81into",    "\xE2\x96\x81Italian",
                      ":",         "\xE2\x96\x81The",       "\xE2\x96\x81nurse",   "\xE2\x96\x81helped",
                      "\xE2\x96\x81the", "\xE2\x96\x81mechanic", "\xE2\x96\x81" "because", "\xE2\x96\x81she",
                      "\xE2\x96\x81was", "\xE2\x96\x81kind",     ".",                   "\xE2\x96\x81Italian",
                      ":"};
  m.prompt_len = m.context_tokens.size();
  m.source_begin = 5;
  m.source_end = 15;
  // " L'infermiera ha aiutato il meccanico perché era gentile."
  m.generated_tokens = {"\xE2\x96\x81L", "'", "inf", "erm", "iera", "\xE2\x96\x81ha", "\xE2\x96\x81" "aiutato",
                        "\xE2\x96\x81il", "\xE2\x96\x81mecc", "anico", "\xE2\x96\x81perch\xC3\xA9",
                        "\xE2\x96\x81" "era", "\xE2\x96\x81gentile", "."};
  m.n_layers = layers;
  m.n_heads = heads;
  return m;
}

inline constexpr std::size_t kNurseCue = 11;

/// Every row uniform over its context.
inline mtgb::AttentionDump uniform_dump(mtgb::DumpMeta meta) {
  mtgb::AttentionDump d(std::move(meta));
  for (std::size_t t = 0; t < d.n_steps(); ++t) {
    const float w = 1.0f / static_cast<float>(d.context_len(t));
    for (auto& v : d.step(t)) v = w;
  }
  return d;
}

/// At the given steps, every (layer, head) row puts total mass `c` on the
/// cue positions (split evenly) and spreads 1 - c over the other positions.
inline void set_cue_mass(mtgb::AttentionDump& d, const std::vector<std::size_t>& steps,
                         const std::vector<std::size_t>& cue, double c) {
  const std::set<std::size_t> cue_set(cue.begin(), cue.end());
  for (auto t : steps) {
    const auto len = d.context_len(t);
    const double rest = (1.0 - c) / static_cast<double>(len - cue.size());
    for (std::size_t l = 0; l < d.n_layers(); ++l) {
      for (std::size_t h = 0; h < d.n_heads(); ++h) {
        auto row = d.row(t, l, h);
        for (std::size_t p = 0; p < len; ++p) {
          row[p] = static_cast<float>(cue_set.contains(p) ? c / static_cast<double>(cue.size()) : rest);
        }
      }
    }
  }
}

/// Same as set_cue_mass for a single (layer, head) cell.
inline void set_cell_cue_mass(mtgb::AttentionDump& d, std::size_t t, std::size_t l, std::size_t h, std::size_t cue,
                              double c) {
  auto row = d.row(t, l, h);
  const double rest = (1.0 - c) / static_cast<double>(row.size() - 1);
  for (std::size_t p = 0; p < row.size(); ++p) row[p] = static_cast<float>(p == cue ? c : rest);
}

}  // namespace synth
