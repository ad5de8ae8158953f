#include "cumica/assignment.hpp"

#include <limits>

#include "cumica/errors.hpp"

namespace cumica {

std::vector<int> max_assignment(const Matrix& score) {
  if (score.rows() != score.cols()) throw Error(ErrorKind::DimensionMismatch, "assignment needs a square matrix");
  if (!score.allFinite()) throw Error(ErrorKind::InvalidArgument, "assignment scores must be finite");
  const int n = static_cast<int>(score.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials formulation on costs -score, 1-based with a virtual column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -score(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col(n, -1);
  for (int j = 1; j <= n; ++j) col[match[j] - 1] = j - 1;
  return col;
}

}  // namespace cumica
