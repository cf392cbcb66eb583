#pragma once

// Per-sentence attention dumps.
//
// A dump is a directory holding two files:
//
//   meta      JSON sidecar: sentence_id, prompt_len, source_span [begin, end)
//             over prompt positions, context_tokens (the prompt_len prompt
//             token strings), generated_tokens, n_layers, n_heads, dtype
//             ("f32le").
//   attn.bin  "ATTD", u32 version (1), u32 n_steps, then for each generated
//             step t a row-major little-endian f32 block of shape
//             n_layers x n_heads x (prompt_len + t). All integers are
//             little-endian.
//
// Step t holds the attention of the forward pass that produced generated
// token t: positions [0, prompt_len) are the prompt, prompt_len + k is
// generated token k < t.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtgb/error.hpp"

namespace mtgb {

class DumpError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline constexpr std::uint32_t kDumpVersion = 1;
inline constexpr char kDumpMagic[4] = {'A', 'T', 'T', 'D'};
/// Rows whose sum is further than this from 1 are rejected.
inline constexpr double kRowSumTolerance = 1e-3;

struct DumpMeta {
  std::string sentence_id;
  std::size_t prompt_len = 0;
  std::size_t source_begin = 0;  // source sentence span inside the prompt
  std::size_t source_end = 0;
  std::vector<std::string> context_tokens;
  std::vector<std::string> generated_tokens;
  std::size_t n_layers = 0;
  std::size_t n_heads = 0;
  std::string dtype = "f32le";
};

std::string serialize_meta(const DumpMeta& meta);
/// Throws DumpError on missing keys or inconsistent values.
DumpMeta parse_meta(std::string_view json, const std::string& source_name);

class AttentionDump {
 public:
  /// Zero-filled tensors sized from the metadata.
  explicit AttentionDump(DumpMeta meta);

  const DumpMeta& meta() const { return meta_; }
  std::size_t n_steps() const { return steps_.size(); }
  std::size_t n_layers() const { return meta_.n_layers; }
  std::size_t n_heads() const { return meta_.n_heads; }
  std::size_t prompt_len() const { return meta_.prompt_len; }
  std::size_t context_len(std::size_t step) const { return meta_.prompt_len + step; }

  std::span<const float> step(std::size_t t) const { return steps_[t]; }
  std::span<float> step(std::size_t t) { return steps_[t]; }

  /// Attention distribution of (layer, head) at step t over context_len(t) positions.
  std::span<const float> row(std::size_t t, std::size_t layer, std::size_t head) const;
  std::span<float> row(std::size_t t, std::size_t layer, std::size_t head);

  /// Token string at a context position (prompt first, then generated).
  const std::string& context_token(std::size_t pos) const;

  /// Size attn.bin must have for this metadata.
  std::uint64_t expected_bytes() const;

 private:
  DumpMeta meta_;
  std::vector<std::vector<float>> steps_;
};

/// Checks metadata consistency, finiteness and row sums (within `tolerance`).
void validate_dump(const AttentionDump& dump, double tolerance = kRowSumTolerance);

/// Reads and validates a dump directory. Throws DumpError (bad magic,
/// version, byte length, row sums) or IoError.
AttentionDump read_dump(const std::filesystem::path& dir, double tolerance = kRowSumTolerance);

void write_dump(const std::filesystem::path& dir, const AttentionDump& dump);

}  // namespace mtgb
