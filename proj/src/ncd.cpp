#include "kolmo/ncd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

Corpus load_corpus(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec))
    throw Error(ErrorKind::ingestion, "corpus directory '" + dir.string() + "' not found");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file()) files.push_back(e.path());
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  Corpus corpus;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw Error(ErrorKind::ingestion, "cannot read '" + f.string() + "'");
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(ErrorKind::ingestion, "cannot read '" + f.string() + "'");
    corpus.push_back({f.filename().string(), std::move(data)});
  }
  return corpus;
}

// --- DistanceMatrix -----------------------------------------------------------

DistanceMatrix::DistanceMatrix(std::vector<std::string> items)
    : items_(std::move(items)), values_(items_.size() * items_.size(), 0.0) {}

std::optional<std::size_t> DistanceMatrix::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i] == name) return i;
  return std::nullopt;
}

namespace {

std::string format_value(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.9f}", v);
}

double parse_value(std::string_view s) {
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::invalid_format, "bad matrix value '" + std::string(s) + "'");
  }
}

// Minimal RFC 4180 field handling: names may be quoted, values are plain.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

std::string DistanceMatrix::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ',';
    out += csv_field(items_[i]);
  }
  out += '\n';
  for (std::size_t i = 0; i < items_.size(); ++i) {
    for (std::size_t j = 0; j < items_.size(); ++j) {
      if (j) out += ',';
      out += format_value(at(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string DistanceMatrix::to_json() const {
  // Values go through the same 9-digit formatting as CSV and are spliced in
  // as raw JSON numbers.
  std::string out = "{\"items\":" + nlohmann::json(items_).dump() + ",\"values\":[";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < items_.size(); ++j) {
      if (j) out += ',';
      double v = at(i, j);
      out += std::isfinite(v) ? format_value(v) : "\"" + format_value(v) + "\"";
    }
    out += ']';
  }
  out += "]}";
  return out;
}

DistanceMatrix DistanceMatrix::from_csv(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw Error(ErrorKind::invalid_format, "empty matrix CSV");
  DistanceMatrix m(split_csv_line(lines[0]));
  if (lines.size() != m.size() + 1) throw Error(ErrorKind::invalid_format, "matrix CSV is not square");
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = split_csv_line(lines[i + 1]);
    if (row.size() != m.size()) throw Error(ErrorKind::invalid_format, "matrix CSV row " + std::to_string(i) + " has the wrong width");
    for (std::size_t j = 0; j < m.size(); ++j) m.at(i, j) = parse_value(row[j]);
  }
  return m;
}

DistanceMatrix DistanceMatrix::from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    DistanceMatrix m(j.at("items").get<std::vector<std::string>>());
    const auto& rows = j.at("values");
    if (rows.size() != m.size()) throw Error(ErrorKind::invalid_format, "matrix JSON is not square");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (rows[i].size() != m.size()) throw Error(ErrorKind::invalid_format, "matrix JSON is not square");
      for (std::size_t k = 0; k < m.size(); ++k) {
        const auto& v = rows[i][k];
        m.at(i, k) = v.is_string() ? parse_value(v.get<std::string>()) : v.get<double>();
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_format, std::string("matrix JSON: ") + e.what());
  }
}

DistanceMatrix DistanceMatrix::parse(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return from_json(text);
  return from_csv(text);
}

// --- distances ----------------------------------------------------------------

namespace {

Bytes concat(ByteView x, ByteView y) {
  Bytes xy;
  xy.reserve(x.size() + y.size());
  xy.insert(xy.end(), x.begin(), x.end());
  xy.insert(xy.end(), y.begin(), y.end());
  return xy;
}

}  // namespace

std::int64_t cond_c(const Codec& codec, ByteView y, ByteView x, SizeCache* cache) {
  auto cxy = c_len(codec, concat(x, y), cache).bits;
  auto cx = c_len(codec, x, cache).bits;
  return static_cast<std::int64_t>(cxy) - static_cast<std::int64_t>(cx);
}

double ncd_from_sizes(std::uint64_t cx, std::uint64_t cy, std::uint64_t cxy) {
  auto hi = std::max(cx, cy);
  auto lo = std::min(cx, cy);
  if (hi == 0) throw Error(ErrorKind::undefined_distance, "both compressed sizes are zero");
  return (static_cast<double>(cxy) - static_cast<double>(lo)) / static_cast<double>(hi);
}

double ncd(const Codec& codec, ByteView x, ByteView y, NcdOptions options, SizeCache* cache) {
  auto cx = c_len(codec, x, cache).bits;
  auto cy = c_len(codec, y, cache).bits;
  auto cxy = c_len(codec, concat(x, y), cache).bits;
  double d = ncd_from_sizes(cx, cy, cxy);
  if (options.clamp) d = std::clamp(d, 0.0, 1.0);
  return d;
}

NcdMatrices distance_matrix(const Codec& codec, const Corpus& corpus, MatrixOptions options, SizeCache* cache) {
  if (corpus.size() < 2) throw Error(ErrorKind::invalid_parameter, "distance matrix needs at least two items");
  std::vector<std::string> names;
  for (const auto& item : corpus) names.push_back(item.name);
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::invalid_parameter, "corpus item names must be unique");
  }

  // Each task fills one directed cell, so the output is independent of the
  // order or thread in which tasks run.
  const std::size_t n = corpus.size();
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tasks.emplace_back(i, j);
  if (options.schedule_seed) {
    std::mt19937_64 rng(*options.schedule_seed);
    std::shuffle(tasks.begin(), tasks.end(), rng);
  }

  DistanceMatrix directed(names);
  NcdOptions ncd_options{options.clamp};
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  std::string failing_pair;

  auto worker = [&] {
    for (;;) {
      auto t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      auto [i, j] = tasks[t];
      try {
        directed.at(i, j) = ncd(codec, corpus[i].payload, corpus[j].payload, ncd_options, cache);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) {
          failure = std::current_exception();
          failing_pair = names[i] + ", " + names[j];
        }
        next = tasks.size();
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < std::max(1u, options.workers); ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const Error& e) {
      throw Error(e.kind(), "pair (" + failing_pair + "): " + e.what());
    }
  }

  DistanceMatrix symmetric(names);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      symmetric.at(i, j) = i == j ? directed.at(i, i) : std::max(directed.at(i, j), directed.at(j, i));
  return {std::move(symmetric), std::move(directed)};
}

MetricReport metric_report(const DistanceMatrix& m) {
  MetricReport r;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    r.max_self_distance = std::max(r.max_self_distance, m.at(i, i));
    for (std::size_t j = 0; j < n; ++j) {
      if (m.at(i, j) < 0) ++r.negative_entries;
      if (std::isfinite(m.at(i, j)) && std::isfinite(m.at(j, i)))
        r.max_asymmetry = std::max(r.max_asymmetry, std::abs(m.at(i, j) - m.at(j, i)));
    }
  }
  std::vector<TriangleViolation> all;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        ++r.triangle_checks;
        double excess = m.at(i, k) - (m.at(i, j) + m.at(j, k));
        if (excess > 0) {
          ++r.triangle_violations;
          r.max_triangle_excess = std::max(r.max_triangle_excess, excess);
          all.push_back({i, j, k, excess});
        }
      }
    }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.excess > b.excess; });
  if (all.size() > 10) all.resize(10);
  r.worst = std::move(all);
  return r;
}

std::string MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["max_asymmetry"] = max_asymmetry;
  j["max_self_distance"] = max_self_distance;
  j["negative_entries"] = negative_entries;
  j["triangle_checks"] = triangle_checks;
  j["triangle_violations"] = triangle_violations;
  j["max_triangle_excess"] = max_triangle_excess;
  auto worst_json = nlohmann::ordered_json::array();
  for (const auto& v : worst) worst_json.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"excess", v.excess}});
  j["worst"] = worst_json;
  return j.dump();
}

}  // namespace kolmo
