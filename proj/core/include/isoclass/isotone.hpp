#pragma once

#include <vector>

#include "isoclass/poset.hpp"
#include "isoclass/prediction_set.hpp"
#include "isoclass/rational.hpp"

namespace isoclass {

// maximize sum_i c_i v_i  s.t.  v_i <= v_j for each cover edge i -> j,
//                               -1 <= v_i <= 1.
struct IsotoneProblem {
  DominanceDag dag;
  std::vector<Rational> coeffs;
};

struct IsotoneSolution {
  std::vector<int> values;  // each -1 or +1
  Rational objective;

  PredictionSet positive_set() const;
};

// Exact optimum via maximum-weight closure. Among optimal vertices returns
// the one whose +1 set is inclusion-maximal.
IsotoneSolution solve(const IsotoneProblem& problem);

// Exhaustive search over up-sets; same tie-break. Refuses more than
// node_limit nodes.
IsotoneSolution brute_force_solve(const IsotoneProblem& problem,
                                  std::size_t node_limit = kDefaultNodeLimit);

}  // namespace isoclass
