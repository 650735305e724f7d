#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace isoclass {

// Membership flags over the support points of a distribution, sample or DAG.
class PredictionSet {
 public:
  PredictionSet() = default;
  explicit PredictionSet(std::size_t size, bool value = false)
      : members_(size, value) {}
  explicit PredictionSet(std::vector<bool> members)
      : members_(std::move(members)) {}

  static PredictionSet from_indices(std::size_t size,
                                    const std::vector<std::size_t>& indices);

  std::size_t size() const { return members_.size(); }
  std::size_t count() const;
  bool empty_set() const { return count() == 0; }

  bool contains(std::size_t i) const { return members_.at(i); }
  void set(std::size_t i, bool value = true) { members_.at(i) = value; }

  const std::vector<bool>& members() const { return members_; }
  std::vector<std::size_t> indices() const;

  // Subset test; both sets must have the same size.
  bool is_subset_of(const PredictionSet& other) const;

  // "{0,1,2}" (ascending indices); the empty set is "{}".
  std::string to_string() const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;

 private:
  std::vector<bool> members_;
};

}  // namespace isoclass
