#include "kolmo/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

ToolkitConfig ToolkitConfig::from_json(std::string_view text) {
  ToolkitConfig c;
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_object()) throw Error(ErrorKind::invalid_format, "config must be a JSON object");
    c.workers = j.value("workers", c.workers);
    c.process_limit = j.value("process_limit", c.process_limit);
    c.census_max_n = j.value("census_max_n", c.census_max_n);
    c.toyk_max_length = j.value("toyk_max_length", c.toyk_max_length);
    c.format = j.value("format", c.format);
    if (j.contains("codecs")) {
      for (const auto& e : j.at("codecs")) {
        ExternalCodecSpec s;
        s.name = e.at("name").get<std::string>();
        s.argv = e.at("argv").get<std::vector<std::string>>();
        double secs = e.value("timeout", 10.0);
        if (!(secs > 0)) throw Error(ErrorKind::invalid_format, "codec timeout must be positive");
        s.timeout = std::chrono::milliseconds(static_cast<long long>(secs * 1000));
        if (s.argv.empty()) throw Error(ErrorKind::invalid_format, "codec '" + s.name + "' has an empty argv");
        c.codecs.push_back(std::move(s));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_format, std::string("config: ") + e.what());
  }
  if (c.workers < 1) throw Error(ErrorKind::invalid_format, "config: workers must be at least 1");
  if (c.process_limit < 1) throw Error(ErrorKind::invalid_format, "config: process_limit must be at least 1");
  if (c.census_max_n > 16) throw Error(ErrorKind::invalid_format, "config: census_max_n may not exceed 16");
  if (c.toyk_max_length > 16) throw Error(ErrorKind::invalid_format, "config: toyk_max_length may not exceed 16");
  if (c.format != "text" && c.format != "json" && c.format != "csv")
    throw Error(ErrorKind::invalid_format, "config: format must be text, json or csv");
  return c;
}

ToolkitConfig ToolkitConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ingestion, "cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

ToolkitConfig ToolkitConfig::load(const std::optional<std::filesystem::path>& path) {
  if (path) return from_file(*path);
  if (const char* env = std::getenv("KOLMO_CONFIG"); env != nullptr && *env != '\0') return from_file(env);
  return {};
}

const ExternalCodecSpec* ToolkitConfig::find_codec(std::string_view name) const {
  for (const auto& c : codecs)
    if (c.name == name) return &c;
  return nullptr;
}

std::unique_ptr<Codec> make_codec(std::string_view name, const ToolkitConfig& config) {
  if (auto internal = make_internal_codec(name)) return internal;
  if (const auto* spec = config.find_codec(name))
    return std::make_unique<ExternalCodec>(*spec, static_cast<std::ptrdiff_t>(config.process_limit));
  throw Error(ErrorKind::invalid_parameter, "unknown codec '" + std::string(name) + "'");
}

}  // namespace kolmo
