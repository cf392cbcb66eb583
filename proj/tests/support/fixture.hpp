#pragma once

// Paths into the shipped fixture and synthetic dumps for its records.

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "mtgb/cli.hpp"
#include "mtgb/corpus.hpp"
#include "mtgb/dump.hpp"
#include "mtgb/pipeline.hpp"
#include "mtgb/text.hpp"
#include "support/synth_dump.hpp"

namespace fixture {

namespace fs = std::filesystem;

inline fs::path data() { return MTGB_DATA_DIR; }
inline fs::path dir() { return data() / "fixture"; }

inline fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("mtgb_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

inline Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = mtgb::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

/// key=value lines, order kept.
inline std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& line : mtgb::text::split(s, '\n')) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  return out;
}

inline const char* kPiece = "\xE2\x96\x81";

/// One dump per record under root/<id>: a prompt wrapping the English
/// sentence and the fixture translation as generated text, one piece per
/// word. Every generated row puts `cue_mass` on the first gendered pronoun.
inline std::size_t write_fixture_dumps(const fs::path& root, double cue_mass, std::size_t layers = 24,
                                       std::size_t heads = 4) {
  const auto records = mtgb::parse_challenge_set(dir() / "gendered.txt");
  const auto tr = mtgb::read_translations(dir() / "gendered_it.tsv");
  std::size_t written = 0;
  for (const auto& r : records) {
    mtgb::DumpMeta m;
    m.sentence_id = r.id;
    m.context_tokens = {"<s>", std::string(kPiece) + "Translate", std::string(kPiece) + "into",
                        std::string(kPiece) + "Italian", ":"};
    m.source_begin = m.context_tokens.size();
    std::size_t cue = 0;
    for (const auto& w : mtgb::text::split_whitespace(r.sentence)) {
      const auto lw = mtgb::text::to_lower(w);
      if (cue == 0 && (lw == "he" || lw == "she")) cue = m.context_tokens.size();
      m.context_tokens.push_back(kPiece + w);
    }
    m.source_end = m.context_tokens.size();
    m.context_tokens.push_back(std::string(kPiece) + "Italian");
    m.context_tokens.push_back(":");
    m.prompt_len = m.context_tokens.size();
    for (const auto& w : mtgb::text::split_whitespace(tr.at(r.id))) m.generated_tokens.push_back(kPiece + w);
    m.n_layers = layers;
    m.n_heads = heads;
    auto d = synth::uniform_dump(m);
    std::vector<std::size_t> steps(d.n_steps());
    for (std::size_t t = 0; t < steps.size(); ++t) steps[t] = t;
    synth::set_cue_mass(d, steps, {cue}, cue_mass);
    mtgb::write_dump(root / r.id, d);
    ++written;
  }
  return written;
}

}  // namespace fixture
