#include "kolmo/ngd.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (c < 128 && std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      tokens.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

HitIndex HitIndex::build(const std::vector<Document>& documents) {
  if (documents.empty()) throw Error(ErrorKind::invalid_parameter, "index needs at least one document");
  HitIndex index;
  for (std::uint32_t id = 0; id < documents.size(); ++id) {
    index.names_.push_back(documents[id].name);
    auto tokens = tokenize(documents[id].text);
    for (std::uint32_t pos = 0; pos < tokens.size(); ++pos) index.postings_[tokens[pos]][id].push_back(pos);
  }
  return index;
}

HitIndex HitIndex::from_directory(const std::filesystem::path& dir) {
  std::vector<Document> docs;
  for (auto& item : load_corpus(dir)) docs.push_back({item.name, std::string(item.payload.begin(), item.payload.end())});
  if (docs.empty()) throw Error(ErrorKind::ingestion, "no documents in '" + dir.string() + "'");
  return build(docs);
}

std::vector<std::uint32_t> HitIndex::documents_with(std::string_view term) const {
  auto tokens = tokenize(term);
  std::vector<std::uint32_t> out;
  if (tokens.empty()) return out;
  std::vector<const std::map<std::uint32_t, std::vector<std::uint32_t>>*> lists;
  for (const auto& t : tokens) {
    auto it = postings_.find(t);
    if (it == postings_.end()) return out;
    lists.push_back(&it->second);
  }
  for (const auto& [doc, starts] : *lists[0]) {
    for (auto start : starts) {
      bool phrase = true;
      for (std::size_t k = 1; k < lists.size() && phrase; ++k) {
        auto d = lists[k]->find(doc);
        phrase = d != lists[k]->end() &&
                 std::binary_search(d->second.begin(), d->second.end(), start + static_cast<std::uint32_t>(k));
      }
      if (phrase) {
        out.push_back(doc);
        break;
      }
    }
  }
  return out;
}

std::uint64_t HitIndex::hits(std::span<const std::string> terms) const {
  if (terms.empty()) throw Error(ErrorKind::invalid_parameter, "hits needs at least one term");
  auto acc = documents_with(terms[0]);
  for (std::size_t i = 1; i < terms.size() && !acc.empty(); ++i) {
    auto next = documents_with(terms[i]);
    std::vector<std::uint32_t> both;
    std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(), std::back_inserter(both));
    acc = std::move(both);
  }
  return acc.size();
}

std::uint64_t HitIndex::hits(std::string_view term) const { return documents_with(term).size(); }

std::string HitIndex::to_json() const {
  nlohmann::ordered_json j;
  j["M"] = names_.size();
  j["documents"] = names_;
  nlohmann::ordered_json postings = nlohmann::ordered_json::object();
  nlohmann::ordered_json positions = nlohmann::ordered_json::object();
  for (const auto& [term, docs] : postings_) {
    auto ids = nlohmann::ordered_json::array();
    nlohmann::ordered_json where = nlohmann::ordered_json::object();
    for (const auto& [doc, pos] : docs) {
      ids.push_back(doc);
      where[std::to_string(doc)] = pos;
    }
    postings[term] = ids;
    positions[term] = where;
  }
  j["postings"] = postings;
  j["positions"] = positions;
  return j.dump();
}

HitIndex HitIndex::from_json(std::string_view text) {
  HitIndex index;
  try {
    auto j = nlohmann::json::parse(text);
    index.names_ = j.at("documents").get<std::vector<std::string>>();
    if (j.at("M").get<std::uint64_t>() != index.names_.size() || index.names_.empty())
      throw Error(ErrorKind::invalid_format, "index M disagrees with its document list");
    const auto& positions = j.at("positions");
    for (const auto& [term, ids] : j.at("postings").items()) {
      auto& entry = index.postings_[term];
      for (const auto& id_json : ids) {
        auto id = id_json.get<std::uint32_t>();
        if (id >= index.names_.size()) throw Error(ErrorKind::invalid_format, "posting refers to a missing document");
        entry[id] = positions.at(term).at(std::to_string(id)).get<std::vector<std::uint32_t>>();
      }
      if (entry.empty()) throw Error(ErrorKind::invalid_format, "empty posting list for '" + term + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_format, std::string("index JSON: ") + e.what());
  }
  return index;
}

double ngd_from_counts(double fx, double fy, double fxy, double m) {
  if (fx <= 0 || fy <= 0) throw Error(ErrorKind::unknown_term, "term with no hits");
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (fxy <= 0) return inf;
  double lx = std::log2(fx), ly = std::log2(fy);
  double num = std::max(lx, ly) - std::log2(fxy);
  double den = std::log2(m) - std::min(lx, ly);
  if (den == 0) return num == 0 ? 0.0 : inf;
  return num / den;
}

double ngd(const HitIndex& index, std::string_view x, std::string_view y) {
  auto dx = index.documents_with(x);
  auto dy = index.documents_with(y);
  if (dx.empty()) throw Error(ErrorKind::unknown_term, "term '" + std::string(x) + "' is not in the index");
  if (dy.empty()) throw Error(ErrorKind::unknown_term, "term '" + std::string(y) + "' is not in the index");
  std::vector<std::uint32_t> both;
  std::set_intersection(dx.begin(), dx.end(), dy.begin(), dy.end(), std::back_inserter(both));
  return ngd_from_counts(static_cast<double>(dx.size()), static_cast<double>(dy.size()),
                         static_cast<double>(both.size()), static_cast<double>(index.document_count()));
}

NgdMatrix ngd_matrix(const HitIndex& index, const std::vector<std::string>& terms) {
  std::vector<std::string> known;
  NgdMatrix out;
  for (const auto& t : terms) {
    if (index.hits(t) == 0)
      out.skipped.push_back(t);
    else if (std::find(known.begin(), known.end(), t) == known.end())
      known.push_back(t);
  }
  if (known.size() < 2) throw Error(ErrorKind::invalid_parameter, "NGD matrix needs at least two indexed terms");
  out.matrix = DistanceMatrix(known);
  for (std::size_t i = 0; i < known.size(); ++i)
    for (std::size_t j = i; j < known.size(); ++j) {
      double d = ngd(index, known[i], known[j]);
      out.matrix.at(i, j) = d;
      out.matrix.at(j, i) = d;
    }
  return out;
}

}  // namespace kolmo
