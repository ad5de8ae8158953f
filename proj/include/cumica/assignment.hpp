#pragma once

#include <vector>

#include "cumica/linalg.hpp"

namespace cumica {

/// Square assignment maximizing sum_i score(i, col[i]). Returns col.
/// Hungarian method, O(p^3).
std::vector<int> max_assignment(const Matrix& score);

}  // namespace cumica
