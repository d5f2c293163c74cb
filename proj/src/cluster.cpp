#include "kolmo/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>
#include <json.hpp>

#include "kolmo/error.hpp"

namespace kolmo {

double Dendrogram::cophenetic(std::size_t a, std::size_t b) const {
  if (a == b) return 0.0;
  std::vector<int> parent(nodes_.size(), -1);
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!nodes_[i].is_leaf()) {
      parent[static_cast<std::size_t>(nodes_[i].left)] = static_cast<int>(i);
      parent[static_cast<std::size_t>(nodes_[i].right)] = static_cast<int>(i);
    }
  std::vector<bool> above_a(nodes_.size(), false);
  for (int v = static_cast<int>(a); v >= 0; v = parent[static_cast<std::size_t>(v)]) above_a[static_cast<std::size_t>(v)] = true;
  int v = static_cast<int>(b);
  while (!above_a[static_cast<std::size_t>(v)]) v = parent[static_cast<std::size_t>(v)];
  return 2.0 * nodes_[static_cast<std::size_t>(v)].height;
}

std::vector<std::string> Dendrogram::leaf_labels(std::size_t node) const {
  std::vector<std::string> out;
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    const auto& n = nodes_[v];
    if (n.is_leaf()) {
      out.push_back(n.label);
      return;
    }
    walk(static_cast<std::size_t>(n.left));
    walk(static_cast<std::size_t>(n.right));
  };
  walk(node);
  return out;
}

std::string Dendrogram::canonical() const {
  std::function<std::pair<std::string, std::string>(std::size_t)> walk = [&](std::size_t v) {
    const auto& n = nodes_[v];
    if (n.is_leaf()) return std::make_pair(n.label, n.label);
    auto l = walk(static_cast<std::size_t>(n.left));
    auto r = walk(static_cast<std::size_t>(n.right));
    if (r.first < l.first) std::swap(l, r);
    return std::make_pair(l.first, "(" + l.second + "," + r.second + ")" + fmt::format(":{:.12g}", n.height));
  };
  return walk(root()).second;
}

Dendrogram upgma(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n < 2) throw Error(ErrorKind::invalid_parameter, "clustering needs at least two items");
  const auto& names = m.items();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!std::isfinite(m.at(i, j)) || !std::isfinite(m.at(j, i)))
        throw Error(ErrorKind::unclusterable_pair, "distance between '" + names[i] + "' and '" + names[j] + "' is not finite");
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12)
        throw Error(ErrorKind::invalid_parameter, "matrix is not symmetric at ('" + names[i] + "', '" + names[j] + "')");
    }

  std::vector<Dendrogram::Node> nodes;
  struct Cluster {
    std::size_t node;
    std::size_t size;
    std::string key;  // smallest leaf name
  };
  std::vector<Cluster> active;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({names[i], -1, -1, 0.0});
    active.push_back({i, 1, names[i]});
  }
  // dist[a][b] between active slots; rows move with `active`.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = m.at(i, j);

  while (active.size() > 1) {
    std::size_t best_a = 0, best_b = 1;
    auto ordered = [&](std::size_t a, std::size_t b) {
      const auto& ka = active[a].key;
      const auto& kb = active[b].key;
      return ka < kb ? std::make_pair(ka, kb) : std::make_pair(kb, ka);
    };
    for (std::size_t a = 0; a < active.size(); ++a)
      for (std::size_t b = a + 1; b < active.size(); ++b) {
        double d = dist[a][b];
        double best = dist[best_a][best_b];
        if (d < best || (d == best && ordered(a, b) < ordered(best_a, best_b))) {
          best_a = a;
          best_b = b;
        }
      }
    // Left child is the cluster with the smaller key.
    if (active[best_b].key < active[best_a].key) std::swap(best_a, best_b);
    const auto& ca = active[best_a];
    const auto& cb = active[best_b];
    double height = dist[best_a][best_b] / 2.0;
    height = std::max({height, nodes[ca.node].height, nodes[cb.node].height});
    nodes.push_back({"", static_cast<int>(ca.node), static_cast<int>(cb.node), height});

    Cluster merged{nodes.size() - 1, ca.size + cb.size, std::min(ca.key, cb.key)};
    const double wa = static_cast<double>(ca.size);
    const double wb = static_cast<double>(cb.size);
    std::vector<double> row(active.size(), 0.0);
    for (std::size_t k = 0; k < active.size(); ++k)
      row[k] = (wa * dist[best_a][k] + wb * dist[best_b][k]) / (wa + wb);

    // Put the merged cluster in slot lo, drop slot hi.
    auto lo = std::min(best_a, best_b);
    auto hi = std::max(best_a, best_b);
    active[lo] = merged;
    for (std::size_t k = 0; k < active.size(); ++k) {
      dist[lo][k] = row[k];
      dist[k][lo] = row[k];
    }
    dist[lo][lo] = 0.0;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(hi));
    dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(hi));
    for (auto& r : dist) r.erase(r.begin() + static_cast<std::ptrdiff_t>(hi));
  }
  return Dendrogram(std::move(nodes));
}

namespace {

bool plain_label(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

std::string newick_label(const std::string& s) {
  if (plain_label(s)) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string branch(double length) { return fmt::format("{}", length); }

}  // namespace

std::string to_newick(const Dendrogram& tree) {
  const auto& nodes = tree.nodes();
  std::function<std::string(std::size_t)> walk = [&](std::size_t v) {
    const auto& n = nodes[v];
    if (n.is_leaf()) return newick_label(n.label);
    auto child = [&](int c) {
      return walk(static_cast<std::size_t>(c)) + ":" + branch(n.height - nodes[static_cast<std::size_t>(c)].height);
    };
    return "(" + child(n.left) + "," + child(n.right) + ")";
  };
  return walk(tree.root()) + ";";
}

std::string to_json(const Dendrogram& tree) {
  const auto& nodes = tree.nodes();
  std::function<nlohmann::ordered_json(std::size_t)> walk = [&](std::size_t v) {
    const auto& n = nodes[v];
    nlohmann::ordered_json j;
    if (n.is_leaf()) {
      j["name"] = n.label;
    } else {
      j["children"] = {walk(static_cast<std::size_t>(n.left)), walk(static_cast<std::size_t>(n.right))};
    }
    j["height"] = n.height;
    return j;
  };
  return walk(tree.root()).dump();
}

}  // namespace kolmo
