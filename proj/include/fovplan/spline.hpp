#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fovplan {

struct TooFewControlPoints : std::invalid_argument {
  TooFewControlPoints() : std::invalid_argument("need at least degree+1 control points") {}
};
struct NonpositiveDuration : std::invalid_argument {
  NonpositiveDuration() : std::invalid_argument("t_f must be greater than t_in") {}
};
struct OutOfDomain : std::domain_error {
  OutOfDomain() : std::domain_error("evaluation time outside the spline domain") {}
};

// Index of the knot span containing t: knots[span] <= t < knots[span+1],
// with t == t_f mapped to the last nonzero span.
inline int find_span(const std::vector<double>& knots, int degree, double t) {
  const int m = static_cast<int>(knots.size()) - 1;
  const int n = m - degree - 1;
  if (t >= knots[n + 1]) return n;
  if (t <= knots[degree]) return degree;
  int lo = degree, hi = n + 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (t < knots[mid] ? hi : lo) = mid;
  }
  return lo;
}

// Nonzero basis functions and their derivatives at t. Returns {span, D}
// where D is (max_deriv+1) x (degree+1) with D(k,l) = d^k/dt^k N_{span-p+l}(t).
inline std::pair<int, Eigen::MatrixXd> basis_derivatives(const std::vector<double>& knots,
                                                         int degree, double t, int max_deriv) {
  const int p = degree;
  const int span = find_span(knots, p, t);
  Eigen::MatrixXd ndu = Eigen::MatrixXd::Zero(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - knots[span + 1 - j];
    right[j] = knots[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  const int nd = std::min(max_deriv, p);
  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(max_deriv + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= factor;
    factor *= (p - k);
  }
  return {span, ders};
}

// Clamped spline over a knot vector whose first/last degree+1 entries
// coincide. Control points are the columns of a (dim x n+1) matrix.
class TrajectorySpline {
 public:
  TrajectorySpline() = default;

  TrajectorySpline(int degree, Eigen::MatrixXd control_points, std::vector<double> knots)
      : degree_(degree), points_(std::move(control_points)), knots_(std::move(knots)) {}

  static TrajectorySpline clamped_uniform(int degree, const Eigen::MatrixXd& control_points,
                                          double t_in, double t_f) {
    const int n_pts = static_cast<int>(control_points.cols());
    if (n_pts < degree + 1) throw TooFewControlPoints();
    if (!(t_f > t_in)) throw NonpositiveDuration();
    return TrajectorySpline(degree, control_points,
                            clamped_uniform_knots(degree, n_pts, t_in, t_f));
  }

  static std::vector<double> clamped_uniform_knots(int degree, int n_pts, double t_in,
                                                   double t_f) {
    const int m = n_pts + degree;  // knots are indexed 0..m
    std::vector<double> knots(m + 1);
    const int interior = m - 2 * degree - 1;  // count of interior knots
    for (int i = 0; i <= degree; ++i) knots[i] = t_in;
    for (int i = 1; i <= interior; ++i)
      knots[degree + i] = t_in + (t_f - t_in) * i / (interior + 1);
    for (int i = m - degree; i <= m; ++i) knots[i] = t_f;
    return knots;
  }

  int degree() const { return degree_; }
  int dimension() const { return static_cast<int>(points_.rows()); }
  int num_control_points() const { return static_cast<int>(points_.cols()); }
  double t_in() const { return knots_.front(); }
  double t_f() const { return knots_.back(); }
  const Eigen::MatrixXd& control_points() const { return points_; }
  std::vector<double>& mutable_knots() { return knots_; }
  const std::vector<double>& knots() const { return knots_; }

  // |J| = m - 2p for a clamped knot vector.
  int num_segments() const {
    return static_cast<int>(knots_.size()) - 1 - 2 * degree_;
  }
  std::pair<double, double> segment_interval(int j) const {
    return {knots_[degree_ + j], knots_[degree_ + j + 1]};
  }
  // Global indices of the control points supporting segment j are j..j+p.
  Eigen::MatrixXd segment_points(int j) const {
    return points_.middleCols(j, degree_ + 1);
  }

  Eigen::VectorXd evaluate(double t, int deriv = 0) const {
    const double eps = 1e-9 * std::max(1.0, std::abs(t_f() - t_in()));
    if (t < t_in() - eps || t > t_f() + eps) throw OutOfDomain();
    t = std::clamp(t, t_in(), t_f());
    if (deriv > degree_) return Eigen::VectorXd::Zero(dimension());
    const auto [span, ders] = basis_derivatives(knots_, degree_, t, deriv);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension());
    for (int l = 0; l <= degree_; ++l) out += ders(deriv, l) * points_.col(span - degree_ + l);
    return out;
  }

  // Exact derivative spline (degree p-1 over the interior knot vector).
  TrajectorySpline derivative() const {
    const int p = degree_;
    const int n = num_control_points() - 1;
    Eigen::MatrixXd d(dimension(), n);
    for (int l = 0; l < n; ++l) {
      const double denom = knots_[l + p + 1] - knots_[l + 1];
      d.col(l) = denom > 0 ? Eigen::VectorXd(p * (points_.col(l + 1) - points_.col(l)) / denom)
                           : Eigen::VectorXd::Zero(dimension());
    }
    std::vector<double> k(knots_.begin() + 1, knots_.end() - 1);
    return TrajectorySpline(p - 1, std::move(d), std::move(k));
  }

 private:
  int degree_ = 0;
  Eigen::MatrixXd points_;
  std::vector<double> knots_;
};

// Control points of the first three derivatives, following the usual
// B-spline difference formula. For a cubic position spline the lists hold
// n_p, n_p-1 and n_p-2 entries respectively.
struct DerivedControlPoints {
  std::vector<Eigen::VectorXd> velocity;
  std::vector<Eigen::VectorXd> accel;
  std::vector<Eigen::VectorXd> jerk;
};

inline DerivedControlPoints derivative_control_points(const TrajectorySpline& s) {
  DerivedControlPoints out;
  TrajectorySpline cur = s;
  std::vector<Eigen::VectorXd>* dest[3] = {&out.velocity, &out.accel, &out.jerk};
  for (int level = 0; level < 3 && cur.degree() >= 1; ++level) {
    cur = cur.derivative();
    for (int l = 0; l < cur.num_control_points(); ++l) dest[level]->push_back(cur.control_points().col(l));
  }
  return out;
}

// Local basis matrix of segment j on the normalized parameter u in [-1,1]:
// N_{j+l}(t(u)) = sum_c M(l,c) * u^(p-c). Obtained exactly from a Taylor
// expansion of the basis functions at the segment midpoint.
inline Eigen::MatrixXd segment_basis_matrix(const std::vector<double>& knots, int degree,
                                            int j) {
  const int p = degree;
  const double ta = knots[p + j], tb = knots[p + j + 1];
  const double tm = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
  const auto [span, ders] = basis_derivatives(knots, p, tm, p);
  (void)span;  // midpoint of a nonzero span: span == p + j
  Eigen::MatrixXd m(p + 1, p + 1);
  double fact = 1.0;  // k!
  double halfk = 1.0;
  for (int k = 0; k <= p; ++k) {
    if (k > 0) {
      fact *= k;
      halfk *= half;
    }
    for (int l = 0; l <= p; ++l) m(l, p - k) = ders(k, l) * halfk / fact;
  }
  return m;
}

}  // namespace fovplan
