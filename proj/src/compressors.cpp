#include "kolmo/compressors.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cstring>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include "kolmo/coding.hpp"
#include "kolmo/error.hpp"

extern char** environ;

namespace kolmo {

Bytes to_bytes(std::string_view text) {
  auto v = as_bytes(text);
  return {v.begin(), v.end()};
}

// --- huff0 --------------------------------------------------------------------

namespace {

constexpr std::size_t kCountBits = 32;
constexpr std::uint64_t kMaxCount = (std::uint64_t{1} << kCountBits) - 1;

struct Histogram {
  std::vector<std::uint8_t> values;
  std::vector<std::uint64_t> counts;
};

Histogram histogram(ByteView data) {
  std::array<std::uint64_t, 256> hist{};
  for (auto b : data) ++hist[b];
  Histogram h;
  for (std::size_t v = 0; v < 256; ++v) {
    if (hist[v] == 0) continue;
    if (hist[v] > kMaxCount)
      throw Error(ErrorKind::resource_limit, "huff0 counts are 32-bit; byte value occurs too often");
    h.values.push_back(static_cast<std::uint8_t>(v));
    h.counts.push_back(hist[v]);
  }
  return h;
}

std::vector<BitString> huff0_codewords(const std::vector<std::uint64_t>& counts) {
  FrequencyTable t;
  t.counts = counts;
  for (std::size_t i = 0; i < counts.size(); ++i) t.symbols.push_back(std::to_string(i));
  return huffman_build(t).codewords();
}

}  // namespace

BitString Huff0Codec::compress(ByteView data) const {
  auto h = histogram(data);
  BitString out;
  out.append_uint(h.values.size() % 256, 8);
  if (h.values.empty()) return out;
  for (std::size_t i = 0; i < h.values.size(); ++i) {
    out.append_uint(h.values[i], 8);
    out.append_uint(h.counts[i], kCountBits);
  }
  auto codewords = huff0_codewords(h.counts);
  std::array<const BitString*, 256> table{};
  for (std::size_t i = 0; i < h.values.size(); ++i) table[h.values[i]] = &codewords[i];
  for (auto b : data) out.append(*table[b]);
  return out;
}

CompressedSize Huff0Codec::size(ByteView data) const {
  auto h = histogram(data);
  std::uint64_t bits = 8 + h.values.size() * (8 + kCountBits);
  if (h.values.empty()) return {bits};
  auto lengths = huffman_lengths(h.counts);
  for (std::size_t i = 0; i < lengths.size(); ++i) bits += h.counts[i] * lengths[i];
  return {bits};
}

Bytes Huff0Codec::decompress(const BitString& bits) const {
  BitReader r(bits);
  if (r.remaining() < 8) throw Error(ErrorKind::truncated_stream, "huff0 stream shorter than its header");
  std::size_t distinct = r.read_uint(8);
  if (distinct == 0) {
    if (r.at_end()) return {};
    distinct = 256;
  }
  Histogram h;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < distinct; ++i) {
    auto v = r.read_uint(8);
    auto c = r.read_uint(kCountBits);
    if (c == 0) throw Error(ErrorKind::malformed_packing, "huff0 header lists a zero count");
    if (!h.values.empty() && v <= h.values.back())
      throw Error(ErrorKind::malformed_packing, "huff0 header values not ascending");
    h.values.push_back(static_cast<std::uint8_t>(v));
    h.counts.push_back(c);
    total += c;
  }
  FrequencyTable t;
  t.counts = h.counts;
  for (auto v : h.values) t.symbols.emplace_back(1, static_cast<char>(v));
  auto code = huffman_build(t);
  auto payload = r.read_bits(r.remaining());
  auto symbols = code.decode_indices(payload);
  if (symbols.size() != total) throw Error(ErrorKind::malformed_packing, "huff0 payload length disagrees with header");
  Bytes out;
  out.reserve(symbols.size());
  std::vector<std::uint64_t> seen(h.values.size(), 0);
  for (auto s : symbols) {
    out.push_back(h.values[s]);
    ++seen[s];
  }
  if (seen != h.counts) throw Error(ErrorKind::malformed_packing, "huff0 payload histogram disagrees with header");
  return out;
}

// --- LZ77 ---------------------------------------------------------------------

BitString Lz77Codec::compress(ByteView data) const {
  constexpr std::size_t kHashSize = 1 << 14;
  constexpr std::size_t kNone = SIZE_MAX;
  auto hash3 = [&](std::size_t i) {
    std::uint32_t v = (std::uint32_t{data[i]} << 16) | (std::uint32_t{data[i + 1]} << 8) | data[i + 2];
    return (v * 2654435761u) >> (32 - 14);
  };

  // head/prev chains visit candidates nearest-first, so keeping only strictly
  // longer matches leaves the nearest among equally long ones.
  std::vector<std::size_t> head(kHashSize, kNone);
  std::vector<std::size_t> prev(data.size(), kNone);
  auto insert = [&](std::size_t i) {
    if (i + kMinMatch > data.size()) return;
    auto h = hash3(i);
    prev[i] = head[h];
    head[h] = i;
  };

  BitString out;
  std::size_t pos = 0;
  while (pos < data.size()) {
    std::size_t best_len = 0;
    std::size_t best_dist = 0;
    if (pos + kMinMatch <= data.size()) {
      const std::size_t limit = std::min(kMaxMatch, data.size() - pos);
      for (auto cand = head[hash3(pos)]; cand != kNone && pos - cand <= kWindow; cand = prev[cand]) {
        std::size_t len = 0;
        while (len < limit && data[cand + len] == data[pos + len]) ++len;
        if (len > best_len) {
          best_len = len;
          best_dist = pos - cand;
          if (len == limit) break;
        }
      }
    }
    if (best_len >= kMinMatch) {
      out.push_back(true);
      out.append_uint(best_dist - 1, 12);
      out.append_uint(best_len - kMinMatch, 4);
      for (std::size_t k = 0; k < best_len; ++k) insert(pos + k);
      pos += best_len;
    } else {
      out.push_back(false);
      out.append_uint(data[pos], 8);
      insert(pos);
      ++pos;
    }
  }
  return out;
}

Bytes Lz77Codec::decompress(const BitString& bits) const {
  BitReader r(bits);
  Bytes out;
  while (!r.at_end()) {
    if (!r.read()) {
      out.push_back(static_cast<std::uint8_t>(r.read_uint(8)));
      continue;
    }
    auto dist = r.read_uint(12) + 1;
    auto len = r.read_uint(4) + kMinMatch;
    if (dist > out.size()) throw Error(ErrorKind::malformed_packing, "lz77 match reaches before the start");
    auto from = out.size() - dist;
    for (std::size_t k = 0; k < len; ++k) out.push_back(out[from + k]);
  }
  return out;
}

// --- identity -----------------------------------------------------------------

BitString IdentityCodec::compress(ByteView data) const {
  BitString out;
  out.reserve(8 * data.size());
  for (auto b : data) out.append_uint(b, 8);
  return out;
}

Bytes IdentityCodec::decompress(const BitString& bits) const {
  if (bits.size() % 8 != 0) throw Error(ErrorKind::truncated_stream, "identity stream is not whole bytes");
  BitReader r(bits);
  Bytes out;
  while (!r.at_end()) out.push_back(static_cast<std::uint8_t>(r.read_uint(8)));
  return out;
}

// --- external -----------------------------------------------------------------

namespace {

struct Fd {
  int fd = -1;
  Fd() = default;
  explicit Fd(int f) : fd(f) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

void make_pipe(Fd& read_end, Fd& write_end) {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(ErrorKind::external_tool, std::string("pipe: ") + std::strerror(errno));
  read_end.fd = fds[0];
  write_end.fd = fds[1];
}

}  // namespace

CompressedSize external_size(const ExternalCodecSpec& spec, ByteView data) {
  if (spec.argv.empty()) throw Error(ErrorKind::external_tool, "codec '" + spec.name + "' has an empty command");

  Fd in_r, in_w, out_r, out_w, err_r, err_w;
  make_pipe(in_r, in_w);
  make_pipe(out_r, out_w);
  make_pipe(err_r, err_w);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in_r.fd, 0);
  posix_spawn_file_actions_adddup2(&actions, out_w.fd, 1);
  posix_spawn_file_actions_adddup2(&actions, err_w.fd, 2);

  std::vector<char*> argv;
  for (const auto& a : spec.argv) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  pid_t pid = 0;
  int rc = ::posix_spawnp(&pid, argv[0], &actions, nullptr, argv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0)
    throw Error(ErrorKind::external_tool,
                "codec '" + spec.name + "': cannot run '" + spec.argv[0] + "': " + std::strerror(rc));
  in_r.reset();
  out_w.reset();
  err_w.reset();
  ::fcntl(in_w.fd, F_SETFL, O_NONBLOCK);

  std::uint64_t out_bytes = 0;
  std::string diagnostics;
  std::size_t written = 0;
  if (data.empty()) in_w.reset();

  const auto deadline = std::chrono::steady_clock::now() + spec.timeout;
  bool timed_out = false;
  std::array<char, 65536> buf;
  while (out_r.fd >= 0 || err_r.fd >= 0) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    std::array<pollfd, 3> fds{};
    nfds_t n = 0;
    int out_slot = -1, err_slot = -1, in_slot = -1;
    if (out_r.fd >= 0) { out_slot = static_cast<int>(n); fds[n++] = {out_r.fd, POLLIN, 0}; }
    if (err_r.fd >= 0) { err_slot = static_cast<int>(n); fds[n++] = {err_r.fd, POLLIN, 0}; }
    if (in_w.fd >= 0) { in_slot = static_cast<int>(n); fds[n++] = {in_w.fd, POLLOUT, 0}; }
    int ready = ::poll(fds.data(), n, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (in_slot >= 0 && fds[in_slot].revents) {
      if (fds[in_slot].revents & (POLLERR | POLLHUP)) {
        in_w.reset();
      } else {
        auto k = ::write(in_w.fd, data.data() + written, data.size() - written);
        if (k > 0) written += static_cast<std::size_t>(k);
        if (k < 0 && errno != EAGAIN) in_w.reset();
        if (written == data.size()) in_w.reset();
      }
    }
    if (out_slot >= 0 && fds[out_slot].revents) {
      auto k = ::read(out_r.fd, buf.data(), buf.size());
      if (k > 0) out_bytes += static_cast<std::uint64_t>(k);
      else if (k == 0 || errno != EINTR) out_r.reset();
    }
    if (err_slot >= 0 && fds[err_slot].revents) {
      auto k = ::read(err_r.fd, buf.data(), buf.size());
      if (k > 0 && diagnostics.size() < 4096) diagnostics.append(buf.data(), static_cast<std::size_t>(k));
      else if (k <= 0) err_r.reset();
    }
  }
  in_w.reset();

  int status = 0;
  if (timed_out) {
    ::kill(pid, SIGKILL);
    ::waitpid(pid, &status, 0);
    throw Error(ErrorKind::external_tool, "codec '" + spec.name + "' timed out after " +
                                              std::to_string(spec.timeout.count()) + " ms");
  }
  ::waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string how = WIFEXITED(status) ? "exit status " + std::to_string(WEXITSTATUS(status))
                                        : "signal " + std::to_string(WTERMSIG(status));
    throw Error(ErrorKind::external_tool, "codec '" + spec.name + "' failed (" + how + "): " + diagnostics);
  }
  return {8 * out_bytes};
}

ExternalCodec::ExternalCodec(ExternalCodecSpec spec, std::ptrdiff_t process_limit)
    : spec_(std::move(spec)),
      slots_(std::make_unique<std::counting_semaphore<>>(std::max<std::ptrdiff_t>(1, process_limit))) {}

CompressedSize ExternalCodec::size(ByteView data) const {
  slots_->acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{slots_.get()};
  return external_size(spec_, data);
}

// --- memo ---------------------------------------------------------------------

std::string SizeCache::key(const std::string& codec, ByteView data) {
  std::string k = codec;
  k.push_back('\0');
  k.append(reinterpret_cast<const char*>(data.data()), data.size());
  return k;
}

std::optional<CompressedSize> SizeCache::find(const std::string& codec, ByteView data) const {
  std::shared_lock lock(mutex_);
  auto it = sizes_.find(key(codec, data));
  if (it == sizes_.end()) return std::nullopt;
  return it->second;
}

void SizeCache::insert(const std::string& codec, ByteView data, CompressedSize size) {
  std::unique_lock lock(mutex_);
  sizes_.emplace(key(codec, data), size);
}

std::size_t SizeCache::entries() const {
  std::shared_lock lock(mutex_);
  return sizes_.size();
}

CompressedSize c_len(const Codec& codec, ByteView data, SizeCache* cache) {
  if (cache == nullptr) return codec.size(data);
  auto name = codec.name();
  if (auto hit = cache->find(name, data)) return *hit;
  auto size = codec.size(data);
  cache->insert(name, data, size);
  return size;
}

std::unique_ptr<LosslessCodec> make_internal_codec(std::string_view name) {
  if (name == "huff0") return std::make_unique<Huff0Codec>();
  if (name == "lz77") return std::make_unique<Lz77Codec>();
  if (name == "identity") return std::make_unique<IdentityCodec>();
  return nullptr;
}

}  // namespace kolmo
