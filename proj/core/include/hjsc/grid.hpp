#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hjsc/domain.hpp"
#include "hjsc/vec.hpp"

namespace hjsc {

enum class NodeTag : std::uint8_t { kInterior, kBoundary, kExterior };

/// Uniform lattice over the bounding box of a domain, nodes tagged by
/// membership. Nodes are stored in lexicographic (x, then y) order.
class Grid {
 public:
  Grid(Domain domain, double target_spacing);

  const Domain& domain() const noexcept { return domain_; }
  int dimension() const noexcept { return domain_.dimension(); }
  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::size_t size() const noexcept { return nx_ * ny_; }
  Vec spacing() const noexcept { return spacing_; }
  double min_spacing() const noexcept;

  std::size_t index(std::size_t i, std::size_t j = 0) const noexcept { return i * ny_ + j; }
  std::size_t i_of(std::size_t idx) const noexcept { return idx / ny_; }
  std::size_t j_of(std::size_t idx) const noexcept { return idx % ny_; }
  Vec node(std::size_t idx) const noexcept;
  double x_at(std::size_t i) const noexcept;
  double y_at(std::size_t j) const noexcept;

  NodeTag tag(std::size_t idx) const noexcept { return tags_[idx]; }
  bool admissible(std::size_t idx) const noexcept { return tags_[idx] != NodeTag::kExterior; }
  std::size_t count(NodeTag t) const noexcept;
  std::span<const NodeTag> tags() const noexcept { return tags_; }

  /// Node whose coordinates match `p` to within a quarter spacing.
  std::optional<std::size_t> find_node(Vec p) const;

 private:
  Domain domain_;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  Vec spacing_;
  std::vector<NodeTag> tags_;
};

/// Lattice with spacing ≤ target_spacing on every axis; throws
/// ParameterError for target_spacing > diameter/4 and ConstructionError when
/// fewer than three interior nodes lie along an axis.
Grid build_grid(const Domain& domain, double target_spacing);

}  // namespace hjsc
