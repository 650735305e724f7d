#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "isoclass/point.hpp"
#include "isoclass/prediction_set.hpp"

namespace isoclass {

// a <= b componentwise. Throws std::invalid_argument on dimension mismatch.
bool dominates(PointView a, PointView b);

// Distinct points under the componentwise order, stored with the covering
// relation only: edge (i, j) means node i < node j with nothing in between.
class DominanceDag {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  DominanceDag() = default;

  // Throws ValidationError on duplicate points or ragged dimensions.
  static DominanceDag build(std::vector<Point> points);

  // Multi-index lattice {0..k_1} x ... x {0..k_d} in row-major order (last
  // coordinate fastest); covers are single unit steps.
  static DominanceDag lattice(const std::vector<int>& orders);

  std::size_t size() const { return nodes_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return nodes_.empty(); }

  const std::vector<Point>& nodes() const { return nodes_; }
  const Point& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<Edge>& cover_edges() const { return edges_; }

  // Immediate successors (covers above) / predecessors (covers below).
  const std::vector<std::size_t>& successors(std::size_t i) const {
    return succ_.at(i);
  }
  const std::vector<std::size_t>& predecessors(std::size_t i) const {
    return pred_.at(i);
  }

  // Node indices such that every edge goes forward.
  const std::vector<std::size_t>& topological_order() const { return topo_; }

  // True iff node j is reachable from node i along cover edges (i == j
  // included).
  bool reachable(std::size_t from, std::size_t to) const;

 private:
  void index_edges();

  std::size_t dim_ = 0;
  std::vector<Point> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> succ_, pred_;
  std::vector<std::size_t> topo_;
};

// True iff (i in S and i -> j) implies j in S for every cover edge.
bool is_up_set(const DominanceDag& dag, const PredictionSet& set);

inline constexpr std::size_t kDefaultNodeLimit = 15;

// Every up-set exactly once. Throws SizeLimitError above node_limit nodes.
std::vector<PredictionSet> enumerate_up_sets(
    const DominanceDag& dag, std::size_t node_limit = kDefaultNodeLimit);

}  // namespace isoclass
