#include "isoclass/isotone.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

#include "isoclass/errors.hpp"

namespace isoclass {

PredictionSet IsotoneSolution::positive_set() const {
  PredictionSet out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.set(i, values[i] > 0);
  return out;
}

namespace {

void validate(const IsotoneProblem& problem) {
  if (problem.coeffs.size() != problem.dag.size()) {
    throw ValidationError("isotone problem needs one coefficient per node");
  }
}

Rational objective_of(const std::vector<Rational>& coeffs, const PredictionSet& set) {
  Rational total(0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (set.contains(i)) {
      total += coeffs[i];
    } else {
      total -= coeffs[i];
    }
  }
  return total;
}

// Dinic max-flow with exact capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adj_(nodes), level_(nodes), next_(nodes) {}

  void add_arc(std::size_t from, std::size_t to, const Rational& cap) {
    adj_[from].push_back({to, adj_[to].size(), cap});
    adj_[to].push_back({from, adj_[from].size() - 1, Rational(0)});
  }

  void max_flow(std::size_t source, std::size_t sink) {
    while (build_levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (augment(source, sink)) {
      }
    }
  }

  // Nodes with a residual path to the sink.
  std::vector<bool> reaches(std::size_t sink) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{sink};
    seen[sink] = true;
    while (!queue.empty()) {
      const std::size_t w = queue.front();
      queue.pop_front();
      for (const Arc& arc : adj_[w]) {
        const Arc& back = adj_[arc.to][arc.rev];  // arc.to -> w
        if (!seen[arc.to] && back.cap > 0) {
          seen[arc.to] = true;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    Rational cap;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const Arc& arc : adj_[u]) {
        if (level_[arc.to] < 0 && arc.cap > 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // One augmenting path in the level graph, found iteratively.
  bool augment(std::size_t source, std::size_t sink) {
    std::vector<std::pair<std::size_t, std::size_t>> path;  // (node, arc index)
    std::size_t u = source;
    while (u != sink) {
      auto& arcs = adj_[u];
      std::size_t& i = next_[u];
      while (i < arcs.size() && !(arcs[i].cap > 0 && level_[arcs[i].to] == level_[u] + 1)) ++i;
      if (i == arcs.size()) {
        if (path.empty()) return false;
        level_[u] = -1;
        u = path.back().first;
        path.pop_back();
        ++next_[u];
        continue;
      }
      path.emplace_back(u, i);
      u = arcs[i].to;
    }
    Rational bottleneck = adj_[path.front().first][path.front().second].cap;
    for (const auto& [node, index] : path) {
      const Rational& cap = adj_[node][index].cap;
      if (cap < bottleneck) bottleneck = cap;
    }
    for (const auto& [node, index] : path) {
      Arc& arc = adj_[node][index];
      arc.cap -= bottleneck;
      adj_[arc.to][arc.rev].cap += bottleneck;
    }
    return true;
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace

IsotoneSolution solve(const IsotoneProblem& problem) {
  validate(problem);
  const std::size_t n = problem.dag.size();
  IsotoneSolution out;
  if (n == 0) {
    out.objective = 0;
    return out;
  }
  // Max-weight up-set: source -> i (c_i > 0), i -> sink (c_i < 0), and an
  // uncuttable arc along every cover edge so a chosen node drags its
  // dominators into the set.
  const std::size_t source = n;
  const std::size_t sink = n + 1;
  Rational infinite(1);
  for (const Rational& c : problem.coeffs) infinite += abs(c);
  FlowNetwork net(n + 2);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& c = problem.coeffs[i];
    if (c > 0) net.add_arc(source, i, c);
    if (c < 0) net.add_arc(i, sink, -c);
  }
  for (const auto& [from, to] : problem.dag.cover_edges()) net.add_arc(from, to, infinite);
  net.max_flow(source, sink);

  // Complement of the sink-reaching nodes is the largest optimal closure.
  const std::vector<bool> to_sink = net.reaches(sink);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = to_sink[i] ? -1 : 1;
  out.objective = objective_of(problem.coeffs, out.positive_set());
  return out;
}

IsotoneSolution brute_force_solve(const IsotoneProblem& problem, std::size_t node_limit) {
  validate(problem);
  const auto sets = enumerate_up_sets(problem.dag, node_limit);
  const PredictionSet* best = nullptr;
  Rational best_objective;
  for (const PredictionSet& s : sets) {
    const Rational value = objective_of(problem.coeffs, s);
    if (best == nullptr || value > best_objective ||
        (value == best_objective && s.count() > best->count())) {
      best = &s;
      best_objective = value;
    }
  }
  IsotoneSolution out;
  out.objective = best_objective;
  out.values.resize(problem.dag.size());
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = best->contains(i) ? 1 : -1;
  return out;
}

}  // namespace isoclass
