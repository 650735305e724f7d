#include "isoclass/poset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>

#include "isoclass/errors.hpp"

namespace isoclass {

bool dominates(PointView a, PointView b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(a[j] <= b[j])) return false;
  }
  return true;
}

namespace {

class Bitset {
 public:
  explicit Bitset(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void merge(const Bitset& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        f(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace

DominanceDag DominanceDag::build(std::vector<Point> points) {
  DominanceDag dag;
  const std::size_t n = points.size();
  dag.dim_ = n == 0 ? 0 : points.front().size();
  for (const Point& p : points) {
    if (p.size() != dag.dim_) throw ValidationError("points must share one dimension");
  }
  dag.nodes_ = std::move(points);

  // Lexicographic order is a linear extension of the componentwise order.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dag.nodes_[a] < dag.nodes_[b]; });
  for (std::size_t k = 1; k < n; ++k) {
    if (dag.nodes_[order[k]] == dag.nodes_[order[k - 1]]) {
      throw ValidationError("duplicate point at indices " + std::to_string(order[k - 1]) +
                            " and " + std::to_string(order[k]));
    }
  }
  dag.topo_ = order;

  if (dag.dim_ <= 1) {
    for (std::size_t k = 1; k < n; ++k) dag.edges_.emplace_back(order[k - 1], order[k]);
  } else {
    std::vector<Bitset> above;
    above.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      Bitset bits(n);
      const Point& pk = dag.nodes_[order[k]];
      for (std::size_t m = k + 1; m < n; ++m) {
        if (dominates(pk, dag.nodes_[order[m]])) bits.set(m);
      }
      above.push_back(std::move(bits));
    }
    for (std::size_t k = 0; k < n; ++k) {
      Bitset implied(n);
      above[k].for_each([&](std::size_t m) {
        if (implied.test(m)) return;
        dag.edges_.emplace_back(order[k], order[m]);
        implied.merge(above[m]);
      });
    }
  }
  std::sort(dag.edges_.begin(), dag.edges_.end());
  dag.index_edges();
  return dag;
}

DominanceDag DominanceDag::lattice(const std::vector<int>& orders) {
  DominanceDag dag;
  dag.dim_ = orders.size();
  std::size_t total = 1;
  for (int k : orders) {
    if (k < 0) throw ValidationError("lattice orders must be nonnegative");
    total *= static_cast<std::size_t>(k) + 1;
  }
  if (orders.empty()) total = 0;
  std::vector<std::size_t> strides(orders.size(), 1);
  for (std::size_t v = orders.size(); v-- > 1;) {
    strides[v - 1] = strides[v] * (static_cast<std::size_t>(orders[v]) + 1);
  }
  dag.nodes_.reserve(total);
  Point index(orders.size(), 0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t v = 0; v < orders.size(); ++v) {
      index[v] = static_cast<double>(rest / strides[v]);
      rest %= strides[v];
    }
    dag.nodes_.push_back(index);
    for (std::size_t v = 0; v < orders.size(); ++v) {
      if (index[v] < orders[v]) dag.edges_.emplace_back(flat, flat + strides[v]);
    }
  }
  std::sort(dag.edges_.begin(), dag.edges_.end());
  dag.topo_.resize(total);
  std::iota(dag.topo_.begin(), dag.topo_.end(), std::size_t{0});
  dag.index_edges();
  return dag;
}

void DominanceDag::index_edges() {
  succ_.assign(nodes_.size(), {});
  pred_.assign(nodes_.size(), {});
  for (const auto& [from, to] : edges_) {
    succ_[from].push_back(to);
    pred_[to].push_back(from);
  }
}

bool DominanceDag::reachable(std::size_t from, std::size_t to) const {
  if (from >= size() || to >= size()) throw std::out_of_range("node index out of range");
  std::vector<bool> seen(size(), false);
  std::deque<std::size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == to) return true;
    for (std::size_t v : succ_[u]) {
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
    }
  }
  return false;
}

bool is_up_set(const DominanceDag& dag, const PredictionSet& set) {
  if (set.size() != dag.size()) throw ValidationError("set size does not match the DAG");
  for (const auto& [from, to] : dag.cover_edges()) {
    if (set.contains(from) && !set.contains(to)) return false;
  }
  return true;
}

namespace {

void extend_up_sets(const DominanceDag& dag, const std::vector<std::size_t>& reverse_topo,
                    std::size_t depth, PredictionSet& current,
                    std::vector<PredictionSet>& out) {
  if (depth == reverse_topo.size()) {
    out.push_back(current);
    return;
  }
  const std::size_t node = reverse_topo[depth];
  extend_up_sets(dag, reverse_topo, depth + 1, current, out);
  const auto& succ = dag.successors(node);
  const bool closed = std::all_of(succ.begin(), succ.end(),
                                  [&](std::size_t s) { return current.contains(s); });
  if (closed) {
    current.set(node, true);
    extend_up_sets(dag, reverse_topo, depth + 1, current, out);
    current.set(node, false);
  }
}

}  // namespace

std::vector<PredictionSet> enumerate_up_sets(const DominanceDag& dag, std::size_t node_limit) {
  if (dag.size() > node_limit) {
    throw SizeLimitError("up-set enumeration refused: " + std::to_string(dag.size()) +
                         " nodes exceeds the limit of " + std::to_string(node_limit));
  }
  std::vector<std::size_t> reverse_topo(dag.topological_order().rbegin(),
                                        dag.topological_order().rend());
  std::vector<PredictionSet> out;
  PredictionSet current(dag.size());
  extend_up_sets(dag, reverse_topo, 0, current, out);
  return out;
}

}  // namespace isoclass
