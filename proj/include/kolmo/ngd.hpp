#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kolmo/ncd.hpp"

namespace kolmo {

/// Lowercased alphanumeric runs of `text` (ASCII; other bytes separate).
std::vector<std::string> tokenize(std::string_view text);

struct Document {
  std::string name;
  std::string text;
};

/// Document-frequency index over a fixed collection. Document ids are the
/// positions in the collection as given. Token positions are kept so that
/// multiword terms can be matched as phrases.
class HitIndex {
 public:
  /// Throws invalid_parameter on an empty collection.
  static HitIndex build(const std::vector<Document>& documents);
  /// Every regular file in `dir`, in file-name order. Throws ingestion.
  static HitIndex from_directory(const std::filesystem::path& dir);

  std::uint64_t document_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& document_names() const noexcept { return names_; }

  /// Sorted ids of the documents containing `term` (a phrase when it has
  /// several tokens). A term with no tokens matches nothing.
  std::vector<std::uint32_t> documents_with(std::string_view term) const;

  /// Number of documents containing every term.
  std::uint64_t hits(std::span<const std::string> terms) const;
  std::uint64_t hits(std::string_view term) const;

  /// {"M", "documents", "postings": {term: [ids]}, "positions": {term: {id: [pos]}}}
  std::string to_json() const;
  static HitIndex from_json(std::string_view text);

  friend bool operator==(const HitIndex&, const HitIndex&) = default;

 private:
  std::vector<std::string> names_;
  // token -> (doc id -> ascending token positions); doc ids ascending
  std::map<std::string, std::map<std::uint32_t, std::vector<std::uint32_t>>> postings_;
};

/// NGD from raw counts with base-2 logs:
///   (max(log fx, log fy) - log fxy) / (log M - min(log fx, log fy))
/// +inf when fxy = 0 or when only the denominator vanishes; 0 when both vanish.
/// Throws unknown_term when fx or fy is 0.
double ngd_from_counts(double fx, double fy, double fxy, double m);

double ngd(const HitIndex& index, std::string_view x, std::string_view y);

struct NgdMatrix {
  DistanceMatrix matrix;
  std::vector<std::string> skipped;  // terms absent from the index
};

/// Unknown terms are left out and listed in `skipped`. Throws
/// invalid_parameter when fewer than two known terms remain.
NgdMatrix ngd_matrix(const HitIndex& index, const std::vector<std::string>& terms);

}  // namespace kolmo
