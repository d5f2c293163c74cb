#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kolmo/compressors.hpp"

namespace kolmo {

struct CorpusItem {
  std::string name;
  Bytes payload;
};

using Corpus = std::vector<CorpusItem>;

/// Every regular file in `dir`, named by file name, in name order.
Corpus load_corpus(const std::filesystem::path& dir);

/// Square matrix over named items. Entries may be +inf (NGD of disjoint terms).
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> items);

  std::size_t size() const noexcept { return items_.size(); }
  const std::vector<std::string>& items() const noexcept { return items_; }
  double& at(std::size_t i, std::size_t j) { return values_[i * items_.size() + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * items_.size() + j]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// Header row of names, then one row per item; 9 decimal digits.
  std::string to_csv() const;
  /// {"items": [...], "values": [[...], ...]}; +inf written as "inf".
  std::string to_json() const;
  static DistanceMatrix from_csv(std::string_view text);
  static DistanceMatrix from_json(std::string_view text);
  /// JSON when the text starts with '{', CSV otherwise.
  static DistanceMatrix parse(std::string_view text);

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> items_;
  std::vector<double> values_;
};

/// C(xy) - C(x), signed; the compressor's estimate of the information in y
/// that x does not already supply.
std::int64_t cond_c(const Codec& codec, ByteView y, ByteView x, SizeCache* cache = nullptr);

/// (C(xy) - min(C(x), C(y))) / max(C(x), C(y)). Throws undefined_distance
/// when the denominator is zero.
double ncd_from_sizes(std::uint64_t cx, std::uint64_t cy, std::uint64_t cxy);

struct NcdOptions {
  bool clamp = false;  // restrict to [0, 1]
};

/// Throws undefined_distance only when max(C(x), C(y)) is zero; two empty
/// inputs are fine for codecs whose empty output carries a header.
double ncd(const Codec& codec, ByteView x, ByteView y, NcdOptions options = {}, SizeCache* cache = nullptr);

struct MatrixOptions {
  unsigned workers = 1;
  bool clamp = false;
  /// Shuffles the order in which pairs are evaluated; the result must not
  /// depend on it.
  std::optional<std::uint64_t> schedule_seed;
};

struct NcdMatrices {
  DistanceMatrix symmetric;  // max of both orders off the diagonal
  DistanceMatrix directed;   // (i, j) holds ncd(item i, item j)
};

/// Throws the codec's error, prefixed with the failing pair's names.
NcdMatrices distance_matrix(const Codec& codec, const Corpus& corpus, MatrixOptions options = {},
                            SizeCache* cache = nullptr);

struct TriangleViolation {
  std::size_t i, j, k;  // d(i,k) > d(i,j) + d(j,k)
  double excess;
};

struct MetricReport {
  double max_asymmetry = 0;  // max |d(i,j) - d(j,i)|
  double max_self_distance = 0;  // max d(i,i)
  std::size_t triangle_checks = 0;
  std::size_t triangle_violations = 0;
  double max_triangle_excess = 0;
  std::vector<TriangleViolation> worst;  // up to 10, largest excess first
  std::size_t negative_entries = 0;

  std::string to_json() const;
};

MetricReport metric_report(const DistanceMatrix& matrix);

}  // namespace kolmo
