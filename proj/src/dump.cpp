#include "mtgb/dump.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "mtgb/simd/kernels.hpp"
#include "mtgb/text.hpp"

namespace mtgb {

namespace {

using nlohmann::json;

void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out += static_cast<char>((v >> (8 * k)) & 0xFF);
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::string serialize_meta(const DumpMeta& m) {
  json j;
  j["sentence_id"] = m.sentence_id;
  j["prompt_len"] = m.prompt_len;
  j["source_span"] = {m.source_begin, m.source_end};
  j["context_tokens"] = m.context_tokens;
  j["generated_tokens"] = m.generated_tokens;
  j["n_layers"] = m.n_layers;
  j["n_heads"] = m.n_heads;
  j["dtype"] = m.dtype;
  return j.dump(1) + "\n";
}

DumpMeta parse_meta(std::string_view text_in, const std::string& source_name) {
  DumpMeta m;
  try {
    const auto j = json::parse(text_in);
    m.sentence_id = j.at("sentence_id").get<std::string>();
    m.prompt_len = j.at("prompt_len").get<std::size_t>();
    const auto& span = j.at("source_span");
    if (!span.is_array() || span.size() != 2) throw DumpError(source_name + ": source_span must be [begin, end]");
    m.source_begin = span[0].get<std::size_t>();
    m.source_end = span[1].get<std::size_t>();
    m.context_tokens = j.at("context_tokens").get<std::vector<std::string>>();
    m.generated_tokens = j.at("generated_tokens").get<std::vector<std::string>>();
    m.n_layers = j.at("n_layers").get<std::size_t>();
    m.n_heads = j.at("n_heads").get<std::size_t>();
    m.dtype = j.at("dtype").get<std::string>();
  } catch (const json::exception& e) {
    throw DumpError(source_name + ": malformed meta: " + e.what());
  }
  if (m.dtype != "f32le") throw DumpError(source_name + ": unsupported dtype '" + m.dtype + "'");
  if (m.context_tokens.size() != m.prompt_len) {
    throw DumpError(source_name + ": prompt_len " + std::to_string(m.prompt_len) + " but " +
                    std::to_string(m.context_tokens.size()) + " context tokens");
  }
  if (m.source_begin >= m.source_end || m.source_end > m.prompt_len) {
    throw DumpError(source_name + ": source_span outside the prompt");
  }
  if (m.n_layers == 0 || m.n_heads == 0) throw DumpError(source_name + ": n_layers and n_heads must be positive");
  if (m.prompt_len == 0) throw DumpError(source_name + ": empty prompt");
  return m;
}

AttentionDump::AttentionDump(DumpMeta meta) : meta_(std::move(meta)) {
  steps_.resize(meta_.generated_tokens.size());
  for (std::size_t t = 0; t < steps_.size(); ++t) {
    steps_[t].assign(meta_.n_layers * meta_.n_heads * context_len(t), 0.0f);
  }
}

std::span<const float> AttentionDump::row(std::size_t t, std::size_t layer, std::size_t head) const {
  const auto len = context_len(t);
  return std::span<const float>(steps_[t]).subspan((layer * meta_.n_heads + head) * len, len);
}

std::span<float> AttentionDump::row(std::size_t t, std::size_t layer, std::size_t head) {
  const auto len = context_len(t);
  return std::span<float>(steps_[t]).subspan((layer * meta_.n_heads + head) * len, len);
}

const std::string& AttentionDump::context_token(std::size_t pos) const {
  return pos < meta_.prompt_len ? meta_.context_tokens[pos] : meta_.generated_tokens[pos - meta_.prompt_len];
}

std::uint64_t AttentionDump::expected_bytes() const {
  std::uint64_t floats = 0;
  for (std::size_t t = 0; t < steps_.size(); ++t) floats += meta_.n_layers * meta_.n_heads * context_len(t);
  return 12 + 4 * floats;
}

void validate_dump(const AttentionDump& dump, double tolerance) {
  const auto& m = dump.meta();
  const auto rows = m.n_layers * m.n_heads;
  std::vector<double> sums(rows);
  for (std::size_t t = 0; t < dump.n_steps(); ++t) {
    const auto block = dump.step(t);
    const auto cols = dump.context_len(t);
    if (block.size() != rows * cols) throw DumpError(m.sentence_id + ": step " + std::to_string(t) + " has wrong size");
    for (float v : block) {
      if (!std::isfinite(v) || v < 0.0f) {
        throw DumpError(m.sentence_id + ": step " + std::to_string(t) + " holds a negative or non-finite weight");
      }
    }
    simd::row_sums(block, cols, sums);
    for (std::size_t r = 0; r < rows; ++r) {
      if (std::abs(sums[r] - 1.0) > tolerance) {
        throw DumpError(m.sentence_id + ": step " + std::to_string(t) + " layer " + std::to_string(r / m.n_heads) +
                        " head " + std::to_string(r % m.n_heads) + " sums to " + std::to_string(sums[r]));
      }
    }
  }
}

AttentionDump read_dump(const std::filesystem::path& dir, double tolerance) {
  const auto meta_path = dir / "meta";
  const auto bin_path = dir / "attn.bin";
  auto meta = parse_meta(text::read_file(meta_path), meta_path.string());
  const auto raw = text::read_file(bin_path);
  const auto* bytes = reinterpret_cast<const unsigned char*>(raw.data());
  if (raw.size() < 12 || std::memcmp(raw.data(), kDumpMagic, 4) != 0) {
    throw DumpError(bin_path.string() + ": bad magic");
  }
  if (const auto version = get_u32(bytes + 4); version != kDumpVersion) {
    throw DumpError(bin_path.string() + ": unsupported version " + std::to_string(version));
  }
  const auto n_steps = get_u32(bytes + 8);
  if (n_steps != meta.generated_tokens.size()) {
    throw DumpError(bin_path.string() + ": " + std::to_string(n_steps) + " steps but " +
                    std::to_string(meta.generated_tokens.size()) + " generated tokens");
  }
  AttentionDump dump(std::move(meta));
  if (raw.size() != dump.expected_bytes()) {
    throw DumpError(bin_path.string() + ": " + std::to_string(raw.size()) + " bytes, expected " +
                    std::to_string(dump.expected_bytes()));
  }
  std::size_t off = 12;
  for (std::size_t t = 0; t < dump.n_steps(); ++t) {
    for (auto& v : dump.step(t)) {
      v = std::bit_cast<float>(get_u32(bytes + off));
      off += 4;
    }
  }
  validate_dump(dump, tolerance);
  return dump;
}

void write_dump(const std::filesystem::path& dir, const AttentionDump& dump) {
  std::filesystem::create_directories(dir);
  text::write_file(dir / "meta", serialize_meta(dump.meta()));
  std::string out;
  out.reserve(dump.expected_bytes());
  out.append(kDumpMagic, 4);
  put_u32(out, kDumpVersion);
  put_u32(out, static_cast<std::uint32_t>(dump.n_steps()));
  for (std::size_t t = 0; t < dump.n_steps(); ++t) {
    for (float v : dump.step(t)) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  text::write_file(dir / "attn.bin", out);
}

}  // namespace mtgb
