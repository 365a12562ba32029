#pragma once

#include <Eigen/Dense>
#include <optional>

namespace fovplan::detail {

// Dense tableau simplex for small problems:
//   maximize c^T x  s.t.  A x <= b,  x free,  with b >= 0
// (origin feasible). Free variables are split internally. Bland's rule keeps
// the method finite under degeneracy. Returns nullopt when unbounded.
inline std::optional<Eigen::VectorXd> simplex_max(const Eigen::VectorXd& c,
                                                  const Eigen::MatrixXd& A,
                                                  const Eigen::VectorXd& b) {
  constexpr double kTol = 1e-11;
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int cols = 2 * n + m;

  Eigen::MatrixXd t(m + 1, cols + 1);  // last row: reduced costs, last col: rhs
  t.setZero();
  t.block(0, 0, m, n) = A;
  t.block(0, n, m, n) = -A;
  t.block(0, 2 * n, m, m).setIdentity();
  t.block(0, cols, m, 1) = b;
  t.block(m, 0, 1, n) = c.transpose();
  t.block(m, n, 1, n) = -c.transpose();

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * n + i;

  const int max_iter = 200 * (m + cols);
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (t(m, j) > kTol) {
        enter = j;
        break;  // Bland: first improving column
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > kTol) {
        const double ratio = t(i, cols) / t(i, enter);
        if (leave < 0 || ratio < best - kTol ||
            (ratio < best + kTol && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return std::nullopt;  // unbounded

    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  Eigen::VectorXd xs = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < m; ++i) xs[basis[i]] = t(i, cols);
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) x[j] = xs[j] - xs[n + j];
  return x;
}

}  // namespace fovplan::detail
