#pragma once

#include <span>
#include <vector>

namespace isoclass {

using Point = std::vector<double>;
using PointView = std::span<const double>;

}  // namespace isoclass
