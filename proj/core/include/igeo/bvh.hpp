#pragma once

// Bounding-volume hierarchy over axis-aligned facet boxes in R^n.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace igeo {

class FacetBvh {
 public:
  /// Meshes smaller than this are kept as a single leaf (linear scan).
  static constexpr std::size_t kLinearScanLimit = 64;
  static constexpr int kLeafSize = 4;

  FacetBvh() = default;

  /// `lo`/`hi` hold one box per facet, `dim` doubles each.
  FacetBvh(int dim, std::span<const double> lo, std::span<const double> hi);

  int dim() const { return dim_; }
  std::size_t num_nodes() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  /// Depth-first traversal. `box_ok(lo, hi)` prunes subtrees; `visit(facet)`
  /// returns false to stop the traversal early.
  template <class BoxPred, class Visit>
  void traverse(BoxPred&& box_ok, Visit&& visit) const {
    if (nodes_.empty()) return;
    std::int32_t stack[128];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const std::int32_t id = stack[--top];
      const Node& node = nodes_[static_cast<std::size_t>(id)];
      const double* lo = &node_lo_[static_cast<std::size_t>(id) * dim_];
      const double* hi = &node_hi_[static_cast<std::size_t>(id) * dim_];
      if (!box_ok(lo, hi)) continue;
      if (node.left < 0) {
        for (std::int32_t i = node.begin; i < node.end; ++i) {
          if (!visit(static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]))) return;
        }
      } else {
        stack[top++] = node.right;
        stack[top++] = node.left;
      }
    }
  }

 private:
  struct Node {
    std::int32_t begin = 0;
    std::int32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
  };

  std::int32_t build(std::int32_t begin, std::int32_t end, std::span<const double> lo,
                     std::span<const double> hi, std::vector<double>& centers, int depth);

  int dim_ = 0;
  std::vector<Node> nodes_;
  std::vector<double> node_lo_;
  std::vector<double> node_hi_;
  std::vector<std::int32_t> order_;
};

}  // namespace igeo
