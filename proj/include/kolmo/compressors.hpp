#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kolmo/bitstring.hpp"

namespace kolmo {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

Bytes to_bytes(std::string_view text);
inline ByteView as_bytes(std::string_view text) {
  return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

struct CompressedSize {
  std::uint64_t bits = 0;
  friend auto operator<=>(const CompressedSize&, const CompressedSize&) = default;
};

/// Anything that assigns a compressed size to a byte string.
class Codec {
 public:
  virtual ~Codec() = default;
  virtual std::string name() const = 0;
  virtual CompressedSize size(ByteView data) const = 0;
};

/// Codecs implemented in-process, with a decoder.
class LosslessCodec : public Codec {
 public:
  virtual BitString compress(ByteView data) const = 0;
  virtual Bytes decompress(const BitString& bits) const = 0;
  CompressedSize size(ByteView data) const override { return {compress(data).size()}; }
};

/// Order-0 canonical Huffman. Stream layout:
///   8 bits   number of distinct byte values (256 is written as 0; an empty
///            input is the 8-bit header alone)
///   per distinct value, ascending: 8-bit value, 32-bit count
///   payload  canonical Huffman codewords for the input
/// Only the byte histogram shapes the output length, so c(xy) == c(yx).
class Huff0Codec final : public LosslessCodec {
 public:
  std::string name() const override { return "huff0"; }
  BitString compress(ByteView data) const override;
  Bytes decompress(const BitString& bits) const override;
  CompressedSize size(ByteView data) const override;
};

/// Greedy LZ77. Tokens are "0" + 8-bit literal or "1" + 12-bit (distance-1)
/// + 4-bit (length-3), distances 1..4096, lengths 3..18. The longest match
/// wins; among equally long matches the nearest one. No terminator.
class Lz77Codec final : public LosslessCodec {
 public:
  static constexpr std::size_t kWindow = 4096;
  static constexpr std::size_t kMinMatch = 3;
  static constexpr std::size_t kMaxMatch = 18;

  std::string name() const override { return "lz77"; }
  BitString compress(ByteView data) const override;
  Bytes decompress(const BitString& bits) const override;
};

/// Stores bytes verbatim, 8 bits each.
class IdentityCodec final : public LosslessCodec {
 public:
  std::string name() const override { return "identity"; }
  BitString compress(ByteView data) const override;
  Bytes decompress(const BitString& bits) const override;
};

struct ExternalCodecSpec {
  std::string name;
  std::vector<std::string> argv;
  std::chrono::milliseconds timeout{10000};
};

/// Runs an external compressor (stdin -> stdout) and counts the output.
/// Throws external_tool on spawn failure, nonzero exit or timeout; the error
/// message carries the tool's stderr.
CompressedSize external_size(const ExternalCodecSpec& spec, ByteView data);

class ExternalCodec final : public Codec {
 public:
  explicit ExternalCodec(ExternalCodecSpec spec, std::ptrdiff_t process_limit = 4);

  std::string name() const override { return spec_.name; }
  CompressedSize size(ByteView data) const override;
  const ExternalCodecSpec& spec() const noexcept { return spec_; }

 private:
  ExternalCodecSpec spec_;
  mutable std::unique_ptr<std::counting_semaphore<>> slots_;
};

/// Memo of compressed sizes keyed by codec name and the exact input bytes.
/// Readers run concurrently; inserts are serialized.
class SizeCache {
 public:
  std::optional<CompressedSize> find(const std::string& codec, ByteView data) const;
  void insert(const std::string& codec, ByteView data, CompressedSize size);
  std::size_t entries() const;

 private:
  static std::string key(const std::string& codec, ByteView data);

  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, CompressedSize> sizes_;
};

/// Compressed size in bits, memoized in `cache` when one is given.
CompressedSize c_len(const Codec& codec, ByteView data, SizeCache* cache = nullptr);

/// Looks up an internal codec by name ("huff0", "lz77", "identity").
std::unique_ptr<LosslessCodec> make_internal_codec(std::string_view name);

}  // namespace kolmo
