#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kolmo/compressors.hpp"

namespace kolmo {

struct ToolkitConfig {
  std::vector<ExternalCodecSpec> codecs;
  unsigned workers = 1;
  unsigned process_limit = 4;
  unsigned census_max_n = 16;
  std::size_t toyk_max_length = 16;
  std::string format = "text";

  /// JSON object with any of: workers, process_limit, census_max_n,
  /// toyk_max_length, format, codecs: [{name, argv, timeout}] (timeout in
  /// seconds). Throws invalid_format on bad values.
  static ToolkitConfig from_json(std::string_view text);
  static ToolkitConfig from_file(const std::filesystem::path& path);

  /// The file named by `path`, else by $KOLMO_CONFIG, else defaults.
  static ToolkitConfig load(const std::optional<std::filesystem::path>& path);

  const ExternalCodecSpec* find_codec(std::string_view name) const;
};

/// Internal codec by name, then external codecs from the config. Throws
/// invalid_parameter for unknown names.
std::unique_ptr<Codec> make_codec(std::string_view name, const ToolkitConfig& config);

}  // namespace kolmo
