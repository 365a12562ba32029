#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "fovplan/dual.hpp"

namespace fovplan {

inline constexpr double kGravity = 9.81;  // m/s^2

struct SingularityError : std::runtime_error {
  SingularityError() : std::runtime_error("attitude map singular: thrust direction ~ -e_z") {}
};
struct ZeroAccelerationError : std::runtime_error {
  ZeroAccelerationError() : std::runtime_error("relative acceleration has zero norm") {}
};
struct DegenerateInput : std::runtime_error {
  explicit DegenerateInput(const char* what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Small templated vector/quaternion types. The scalar T may be double or one
// of the AD scalars from dual.hpp; the optimizer differentiates through the
// whole camera pipeline this way.
// ---------------------------------------------------------------------------

template <class T>
struct Vec3T {
  T x{}, y{}, z{};

  Vec3T() = default;
  Vec3T(T xx, T yy, T zz) : x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}

  static Vec3T from(const Eigen::Vector3d& v) { return {T(v.x()), T(v.y()), T(v.z())}; }

  Vec3T operator+(const Vec3T& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3T operator-(const Vec3T& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3T operator-() const { return {-x, -y, -z}; }
  Vec3T operator*(const T& s) const { return {x * s, y * s, z * s}; }
  Vec3T operator/(const T& s) const { return {x / s, y / s, z / s}; }

  T dot(const Vec3T& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3T cross(const Vec3T& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  T squared_norm() const { return dot(*this); }
  T norm() const { return sqrt(squared_norm()); }
};

template <class T>
struct Vec2T {
  T x{}, y{};
  T squared_norm() const { return x * x + y * y; }
};

template <class T>
struct QuatT {
  T w{}, x{}, y{}, z{};

  QuatT() : w(T(1.0)) {}
  QuatT(T ww, T xx, T yy, T zz)
      : w(std::move(ww)), x(std::move(xx)), y(std::move(yy)), z(std::move(zz)) {}

  // Hamilton product; composition of rotations.
  QuatT operator*(const QuatT& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  QuatT conjugate() const { return {w, -x, -y, -z}; }

  T squared_norm() const { return w * w + x * x + y * y + z * z; }

  // Rotate a vector (unit quaternion assumed).
  Vec3T<T> rotate(const Vec3T<T>& v) const {
    const Vec3T<T> im{x, y, z};
    const Vec3T<T> t = im.cross(v) * T(2.0);
    return v + t * w + im.cross(t);
  }
};

using Vec3d = Eigen::Vector3d;
using Quat = QuatT<double>;

inline Eigen::Vector3d to_eigen(const Vec3T<double>& v) { return {v.x, v.y, v.z}; }

template <class T, class S>
Vec3T<T> promote(const Vec3T<S>& v) {
  return {T(v.x), T(v.y), T(v.z)};
}
template <class T>
QuatT<T> promote_quat(const Quat& q) {
  return {T(q.w), T(q.x), T(q.y), T(q.z)};
}

inline Eigen::Matrix3d rotation_matrix(const Quat& q) {
  Eigen::Matrix3d r;
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return r;
}

// Rigid transform: apply(p) = R(rotation) * p + translation.
struct Transform {
  Quat rotation{};
  Eigen::Vector3d translation{0.0, 0.0, 0.0};

  static Transform identity() { return {}; }

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const {
    return to_eigen(rotation.rotate(Vec3T<double>::from(p))) + translation;
  }

  Transform operator*(const Transform& o) const {
    return {rotation * o.rotation, apply(o.translation)};
  }

  Transform inverse() const {
    const Quat qi = rotation.conjugate();
    return {qi, -to_eigen(qi.rotate(Vec3T<double>::from(translation)))};
  }
};

// ---------------------------------------------------------------------------
// Attitude from relative acceleration (thrust direction) and the angle psi.
// ---------------------------------------------------------------------------

inline constexpr double kHopfSingularityEps = 1e-6;
inline constexpr double kZeroAccelEps = 1e-9;

// Unit quaternion aligning body z with the given *unit* direction. No checks.
template <class T>
QuatT<T> hopf_quaternion_from_unit(const Vec3T<T>& xi_bar) {
  const T denom = sqrt((xi_bar.z + T(1.0)) * T(2.0));
  return {(xi_bar.z + T(1.0)) / denom, -xi_bar.y / denom, xi_bar.x / denom, T(0.0)};
}

template <class T>
QuatT<T> quat_about_z(const T& psi) {
  const T half = psi * T(0.5);
  return {cos(half), T(0.0), T(0.0), sin(half)};
}

// q_b^w = q_xi * q_psi for unnormalized relative acceleration xi. No checks;
// callers gate on the singularity themselves (the optimizer turns it into an
// infinite-cost barrier instead of an exception).
template <class T>
QuatT<T> body_attitude_unchecked(const Vec3T<T>& xi, const T& psi) {
  const Vec3T<T> xi_bar = xi / xi.norm();
  return hopf_quaternion_from_unit(xi_bar) * quat_about_z(psi);
}

inline Quat hopf_quaternion(const Eigen::Vector3d& xi) {
  const double n = xi.norm();
  if (n < kZeroAccelEps) throw ZeroAccelerationError();
  if (1.0 + xi.z() / n < kHopfSingularityEps) throw SingularityError();
  return hopf_quaternion_from_unit(Vec3T<double>::from(xi / n));
}

inline Quat body_attitude(const Eigen::Vector3d& xi, double psi) {
  return hopf_quaternion(xi) * quat_about_z(psi);
}

// Relative acceleration from world-frame acceleration.
inline Eigen::Vector3d relative_acceleration(const Eigen::Vector3d& accel) {
  return {accel.x(), accel.y(), accel.z() + kGravity};
}

// ---------------------------------------------------------------------------
// Pinhole camera with a smooth cone field-of-view indicator.
// ---------------------------------------------------------------------------

struct CameraModel {
  double f = 0.01;                   // focal length, meters
  double theta = M_PI / 3.0;         // FOV cone opening angle, radians
  double gamma_sig = 100.0;          // sigmoid sharpness
  Transform body_to_camera = default_body_to_camera();

  // Forward-looking camera: optical axis (camera z) along body x, camera x
  // right (body -y), camera y down (body -z).
  static Transform default_body_to_camera() {
    // R_c^b columns are the camera axes in body coordinates; the quaternion
    // below is its (verified) unit-quaternion form, so T_b^c = inverse.
    const Quat q_cam_in_body{0.5, -0.5, 0.5, -0.5};
    return Transform{q_cam_in_body, Eigen::Vector3d::Zero()}.inverse();
  }
};

template <class T>
T sigmoid(const T& x) {
  return T(1.0) / (T(1.0) + exp(-x));
}

// Image-plane projection (meters). Empty when the point is not strictly in
// front of the camera.
inline std::optional<Eigen::Vector2d> project_point(const CameraModel& cam,
                                                    const Transform& world_to_body,
                                                    const Eigen::Vector3d& p_w) {
  const Eigen::Vector3d p_c = cam.body_to_camera.apply(world_to_body.apply(p_w));
  if (p_c.z() <= 0.0) return std::nullopt;
  return Eigen::Vector2d{cam.f * p_c.x() / p_c.z(), cam.f * p_c.y() / p_c.z()};
}

// Templated camera-frame point given body pose; used by the cost pipeline.
template <class T>
Vec3T<T> camera_frame_point(const CameraModel& cam, const QuatT<T>& q_body_in_world,
                            const Vec3T<T>& body_position, const Vec3T<T>& p_world) {
  const Vec3T<T> p_b = q_body_in_world.conjugate().rotate(p_world - body_position);
  const QuatT<T> q_bc = promote_quat<T>(cam.body_to_camera.rotation);
  return q_bc.rotate(p_b) + promote<T>(cam.body_to_camera.translation);
}

// Smooth FOV indicator from the cone half-angle; value in (0,1).
template <class T>
T in_fov_smooth_camera_point(const CameraModel& cam, const Vec3T<T>& p_c) {
  const T n = p_c.norm();
  return sigmoid(T(cam.gamma_sig) * (p_c.z / n - T(std::cos(cam.theta / 2.0))));
}

// cam_pose is the camera pose in the world frame (camera-to-world).
inline double in_fov_smooth(const CameraModel& cam, const Transform& cam_pose,
                            const Eigen::Vector3d& p_w) {
  const Eigen::Vector3d p_c = cam_pose.inverse().apply(p_w);
  if (p_c.norm() < 1e-9) throw DegenerateInput("point coincides with camera center");
  return in_fov_smooth_camera_point(cam, Vec3T<double>::from(p_c));
}

// Hard cone test used for metrics (not the sigmoid).
inline bool in_fov_hard(const CameraModel& cam, const Transform& cam_pose,
                        const Eigen::Vector3d& p_w) {
  const Eigen::Vector3d p_c = cam_pose.inverse().apply(p_w);
  if (p_c.z() <= 0.0) return false;
  return p_c.z() / p_c.norm() >= std::cos(cam.theta / 2.0);
}

// ---------------------------------------------------------------------------
// Projected velocity of a moving world point seen from a moving body.
// ---------------------------------------------------------------------------

// Instantaneous state of the agent as far as the camera pose is concerned.
struct CameraMotionState {
  Eigen::Vector3d position;
  Eigen::Vector3d velocity;
  Eigen::Vector3d accel;
  Eigen::Vector3d jerk;
  double psi = 0.0;
  double psi_dot = 0.0;
};

// Templated projection pipeline on TDual scalars: the .d parts carry time
// derivatives, so s and s_dot come out of one pass.
template <class T>
std::optional<Vec2T<T>> project_point_T(const CameraModel& cam, const QuatT<T>& q_body,
                                        const Vec3T<T>& body_pos, const Vec3T<T>& p_world) {
  const Vec3T<T> p_c = camera_frame_point(cam, q_body, body_pos, p_world);
  if (value_of(p_c.z) <= 0.0) return std::nullopt;
  return Vec2T<T>{T(cam.f) * p_c.x / p_c.z, T(cam.f) * p_c.y / p_c.z};
}

// Analytic s_dot via a time-dual pass. Empty when the point is behind.
inline std::optional<Eigen::Vector2d> projected_velocity(const CameraModel& cam,
                                                         const CameraMotionState& agent,
                                                         const Eigen::Vector3d& obstacle_pos,
                                                         const Eigen::Vector3d& obstacle_vel) {
  using D = TDual<double>;
  const Vec3T<D> xi{{agent.accel.x() + 0.0, agent.jerk.x()},
                    {agent.accel.y() + 0.0, agent.jerk.y()},
                    {agent.accel.z() + kGravity, agent.jerk.z()}};
  const D psi{agent.psi, agent.psi_dot};
  const QuatT<D> q = body_attitude_unchecked(xi, psi);
  const Vec3T<D> pos{{agent.position.x(), agent.velocity.x()},
                     {agent.position.y(), agent.velocity.y()},
                     {agent.position.z(), agent.velocity.z()}};
  const Vec3T<D> obs{{obstacle_pos.x(), obstacle_vel.x()},
                     {obstacle_pos.y(), obstacle_vel.y()},
                     {obstacle_pos.z(), obstacle_vel.z()}};
  const auto s = project_point_T(cam, q, pos, obs);
  if (!s) return std::nullopt;
  return Eigen::Vector2d{s->x.d, s->y.d};
}

}  // namespace fovplan
