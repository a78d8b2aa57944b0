#include "igeo/bvh.hpp"

#include <algorithm>
#include <limits>

namespace igeo {

namespace {
constexpr int kMaxDepth = 60;  // keeps the traversal stack (128) from overflowing
}

FacetBvh::FacetBvh(int dim, std::span<const double> lo, std::span<const double> hi) : dim_(dim) {
  const std::size_t count = lo.size() / static_cast<std::size_t>(dim);
  if (count == 0) return;
  order_.resize(count);
  std::vector<double> centers(count * static_cast<std::size_t>(dim));
  for (std::size_t f = 0; f < count; ++f) {
    order_[f] = static_cast<std::int32_t>(f);
    for (int k = 0; k < dim; ++k) {
      const std::size_t at = f * static_cast<std::size_t>(dim) + static_cast<std::size_t>(k);
      centers[at] = 0.5 * (lo[at] + hi[at]);
    }
  }
  nodes_.reserve(2 * count / kLeafSize + 1);
  build(0, static_cast<std::int32_t>(count), lo, hi, centers, 0);
}

std::int32_t FacetBvh::build(std::int32_t begin, std::int32_t end, std::span<const double> lo,
                             std::span<const double> hi, std::vector<double>& centers, int depth) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(Node{begin, end, -1, -1});
  const auto d = static_cast<std::size_t>(dim_);
  node_lo_.resize(nodes_.size() * d, std::numeric_limits<double>::infinity());
  node_hi_.resize(nodes_.size() * d, -std::numeric_limits<double>::infinity());

  double cmin[64];
  double cmax[64];
  for (std::size_t k = 0; k < d; ++k) {
    cmin[k] = std::numeric_limits<double>::infinity();
    cmax[k] = -std::numeric_limits<double>::infinity();
  }
  for (std::int32_t i = begin; i < end; ++i) {
    const auto f = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < d; ++k) {
      node_lo_[static_cast<std::size_t>(id) * d + k] = std::min(node_lo_[static_cast<std::size_t>(id) * d + k], lo[f * d + k]);
      node_hi_[static_cast<std::size_t>(id) * d + k] = std::max(node_hi_[static_cast<std::size_t>(id) * d + k], hi[f * d + k]);
      cmin[k] = std::min(cmin[k], centers[f * d + k]);
      cmax[k] = std::max(cmax[k], centers[f * d + k]);
    }
  }

  const std::int32_t count = end - begin;
  const bool small_mesh = depth == 0 && static_cast<std::size_t>(count) < kLinearScanLimit;
  if (count <= kLeafSize || small_mesh || depth >= kMaxDepth) return id;

  std::size_t axis = 0;
  for (std::size_t k = 1; k < d; ++k) {
    if (cmax[k] - cmin[k] > cmax[axis] - cmin[axis]) axis = k;
  }
  if (!(cmax[axis] > cmin[axis])) return id;

  const std::int32_t mid = begin + count / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](std::int32_t a, std::int32_t b) {
                     return centers[static_cast<std::size_t>(a) * d + axis] <
                            centers[static_cast<std::size_t>(b) * d + axis];
                   });
  const std::int32_t left = build(begin, mid, lo, hi, centers, depth + 1);
  const std::int32_t right = build(mid, end, lo, hi, centers, depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

}  // namespace igeo
