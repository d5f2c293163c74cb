#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kolmo/ncd.hpp"

namespace kolmo {

/// Rooted binary merge tree. Leaves come first (index = matrix item index),
/// internal nodes follow in merge order; the last node is the root.
class Dendrogram {
 public:
  struct Node {
    std::string label;  // leaves only
    int left = -1;
    int right = -1;
    double height = 0.0;
    bool is_leaf() const noexcept { return left < 0; }
  };

  explicit Dendrogram(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t root() const noexcept { return nodes_.size() - 1; }
  std::size_t leaf_count() const noexcept { return (nodes_.size() + 1) / 2; }

  /// Height of the lowest common ancestor of two leaves, doubled.
  double cophenetic(std::size_t leaf_a, std::size_t leaf_b) const;
  std::vector<std::string> leaf_labels(std::size_t node) const;

  /// Order-independent text form: children sorted by their smallest label.
  std::string canonical() const;

 private:
  std::vector<Node> nodes_;
};

/// Average-linkage agglomeration. Ties go to the pair whose (smaller label,
/// larger label) is lexicographically least, labels being each cluster's
/// smallest leaf name. Merge height is half the cluster distance.
/// Throws unclusterable_pair on a non-finite entry, invalid_parameter on an
/// asymmetric or undersized matrix.
Dendrogram upgma(const DistanceMatrix& matrix);

/// Newick with branch lengths equal to height differences, ';'-terminated.
std::string to_newick(const Dendrogram& tree);

/// Nested {"name", "height"} / {"children", "height"} objects.
std::string to_json(const Dendrogram& tree);

}  // namespace kolmo
