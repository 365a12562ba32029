#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "fovplan/spline.hpp"

namespace fovplan {

struct UnsupportedDegree : std::invalid_argument {
  UnsupportedDegree() : std::invalid_argument("enclosing basis only available for degrees 2 and 3") {}
};

enum class SegmentBasis { kBspline, kMinvo, kBezier };

struct SegmentControlPoints {
  int interval = 0;
  Eigen::MatrixXd points;  // dim x (degree+1), one point per column
  SegmentBasis basis = SegmentBasis::kBspline;
};

// Minimum-volume enclosing-simplex basis on u in [-1,1], rows are the basis
// polynomials (coefficients of u^p..u^0). The rows form a nonnegative
// partition of unity on [-1,1], so the control points of a curve segment in
// this basis span a simplex that encloses the segment, with volume a fixed
// factor below the Bezier hull (2.36x for cubics, 1.30x for quadratics).
//
// Degree 2 is the closed-form minimum-area triangle around a parabola arc:
//   l0 = (sqrt(3) u - 1)^2 / 8, l1 = 3 (1 - u^2) / 4, l2 = (sqrt(3) u + 1)^2 / 8.
// Degree 3 solves the min-volume program with the structure
//   l0 = a (u-r)^2 (u-1), l1 = b (u-q)^2 (u+1)  (+ mirrored partners),
//   r = 0.030882544899137771, q = 0.773548587346215910,
//   a = -0.430203869377296023, b = 0.834907345770413176.
inline const Eigen::MatrixXd& minvo_basis_matrix(int degree) {
  static const Eigen::MatrixXd a2 = [] {
    const double s34 = std::sqrt(3.0) / 4.0;
    Eigen::MatrixXd m(3, 3);
    m << 0.375, -s34, 0.125,
        -0.75, 0.0, 0.75,
        0.375, s34, 0.125;
    return m;
  }();
  static const Eigen::MatrixXd a3 = [] {
    Eigen::MatrixXd m(4, 4);
    m << -0.43020386937729602, 0.45677545000095031, -0.026981879639479822, 4.1029901582553143e-04,
        0.83490734577041318, -0.45677545000095031, -0.79209309478718902, 0.49958970098417447,
        -0.83490734577041318, -0.45677545000095031, 0.79209309478718902, 0.49958970098417447,
        0.43020386937729602, 0.45677545000095031, 0.026981879639479822, 4.1029901582553143e-04;
    return m;
  }();
  if (degree == 2) return a2;
  if (degree == 3) return a3;
  throw UnsupportedDegree();
}

// Bernstein polynomials on u in [-1,1] (same layout).
inline const Eigen::MatrixXd& bezier_basis_matrix(int degree) {
  static const Eigen::MatrixXd b2 = [] {
    Eigen::MatrixXd m(3, 3);
    m << 0.25, -0.5, 0.25,
        -0.5, 0.0, 0.5,
        0.25, 0.5, 0.25;
    return m;
  }();
  static const Eigen::MatrixXd b3 = [] {
    Eigen::MatrixXd m(4, 4);
    m << -0.125, 0.375, -0.375, 0.125,
        0.375, -0.375, -0.375, 0.375,
        -0.375, -0.375, 0.375, 0.375,
        0.125, 0.375, 0.375, 0.125;
    return m;
  }();
  if (degree == 2) return b2;
  if (degree == 3) return b3;
  throw UnsupportedDegree();
}

// Linear map from the local B-spline control points of segment j to control
// points in the target basis: V = Q_local * C. Fixed per segment position.
inline Eigen::MatrixXd basis_conversion(const std::vector<double>& knots, int degree, int j,
                                        SegmentBasis target) {
  const Eigen::MatrixXd& a =
      target == SegmentBasis::kMinvo ? minvo_basis_matrix(degree) : bezier_basis_matrix(degree);
  const Eigen::MatrixXd m_bs = segment_basis_matrix(knots, degree, j);
  // p(u) = Q * m_bs * mono(u) and p(u) = V * a * mono(u)  =>  V = Q * m_bs * a^-1.
  return (a.transpose().fullPivLu().solve(m_bs.transpose())).transpose();
}

inline SegmentControlPoints segment_control_points(const TrajectorySpline& s, int j,
                                                   SegmentBasis target) {
  if (s.degree() != 2 && s.degree() != 3) throw UnsupportedDegree();
  SegmentControlPoints out;
  out.interval = j;
  out.basis = target;
  out.points = s.segment_points(j) * basis_conversion(s.knots(), s.degree(), j, target);
  return out;
}

inline SegmentControlPoints segment_to_minvo(const TrajectorySpline& s, int j) {
  return segment_control_points(s, j, SegmentBasis::kMinvo);
}
inline SegmentControlPoints segment_to_bezier(const TrajectorySpline& s, int j) {
  return segment_control_points(s, j, SegmentBasis::kBezier);
}

}  // namespace fovplan
