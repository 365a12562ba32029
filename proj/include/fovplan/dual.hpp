#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace fovplan {

// Forward-mode AD scalar with a dynamically sized gradient. An empty
// gradient vector stands for "identically zero", so plain constants stay
// cheap inside hot loops.
class DualN {
 public:
  DualN() = default;
  DualN(double value) : v_(value) {}  // NOLINT: implicit by design
  DualN(double value, Eigen::VectorXd grad) : v_(value), g_(std::move(grad)) {}

  static DualN seed(double value, int n, int index) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    g[index] = 1.0;
    return DualN(value, std::move(g));
  }

  double value() const { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  bool has_grad() const { return g_.size() > 0; }

  Eigen::VectorXd grad_or_zero(int n) const {
    return has_grad() ? g_ : Eigen::VectorXd::Zero(n);
  }

  DualN operator-() const { return DualN(-v_, -g_); }

  DualN& operator+=(const DualN& o) {
    v_ += o.v_;
    accumulate(o.g_, 1.0);
    return *this;
  }
  DualN& operator-=(const DualN& o) {
    v_ -= o.v_;
    accumulate(o.g_, -1.0);
    return *this;
  }
  DualN& operator*=(const DualN& o) {
    if (o.has_grad()) {
      if (has_grad())
        g_ = v_ * o.g_ + o.v_ * g_;
      else
        g_ = v_ * o.g_;
    } else if (has_grad()) {
      g_ *= o.v_;
    }
    v_ *= o.v_;
    return *this;
  }
  DualN& operator/=(const DualN& o) {
    const double inv = 1.0 / o.v_;
    if (o.has_grad()) {
      if (has_grad())
        g_ = inv * g_ - (v_ * inv * inv) * o.g_;
      else
        g_ = -(v_ * inv * inv) * o.g_;
    } else if (has_grad()) {
      g_ *= inv;
    }
    v_ *= inv;
    return *this;
  }

  friend DualN operator+(DualN a, const DualN& b) { return a += b; }
  friend DualN operator-(DualN a, const DualN& b) { return a -= b; }
  friend DualN operator*(DualN a, const DualN& b) { return a *= b; }
  friend DualN operator/(DualN a, const DualN& b) { return a /= b; }

  friend bool operator<(const DualN& a, const DualN& b) { return a.v_ < b.v_; }
  friend bool operator>(const DualN& a, const DualN& b) { return a.v_ > b.v_; }
  friend bool operator<=(const DualN& a, const DualN& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const DualN& a, const DualN& b) { return a.v_ >= b.v_; }

  friend DualN sqrt(const DualN& a) {
    const double s = std::sqrt(a.v_);
    return a.has_grad() ? DualN(s, (0.5 / s) * a.g_) : DualN(s);
  }
  friend DualN exp(const DualN& a) {
    const double e = std::exp(a.v_);
    return a.has_grad() ? DualN(e, e * a.g_) : DualN(e);
  }
  friend DualN sin(const DualN& a) {
    const double s = std::sin(a.v_);
    return a.has_grad() ? DualN(s, std::cos(a.v_) * a.g_) : DualN(s);
  }
  friend DualN cos(const DualN& a) {
    const double c = std::cos(a.v_);
    return a.has_grad() ? DualN(c, -std::sin(a.v_) * a.g_) : DualN(c);
  }

 private:
  void accumulate(const Eigen::VectorXd& og, double w) {
    if (og.size() == 0) return;
    if (has_grad())
      g_ += w * og;
    else
      g_ = w * og;
  }

  double v_ = 0.0;
  Eigen::VectorXd g_;
};

// First-order dual in an auxiliary parameter (used for time derivatives on
// top of an arbitrary inner scalar, e.g. TDual<DualN>).
template <class T>
struct TDual {
  T v{};  // value
  T d{};  // derivative w.r.t. the auxiliary parameter

  TDual() = default;
  TDual(T value) : v(std::move(value)) {}  // NOLINT
  TDual(T value, T deriv) : v(std::move(value)), d(std::move(deriv)) {}

  TDual operator-() const { return {-v, -d}; }

  friend TDual operator+(const TDual& a, const TDual& b) { return {a.v + b.v, a.d + b.d}; }
  friend TDual operator-(const TDual& a, const TDual& b) { return {a.v - b.v, a.d - b.d}; }
  friend TDual operator*(const TDual& a, const TDual& b) {
    return {a.v * b.v, a.v * b.d + a.d * b.v};
  }
  friend TDual operator/(const TDual& a, const TDual& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
  }

  TDual& operator+=(const TDual& o) { return *this = *this + o; }
  TDual& operator-=(const TDual& o) { return *this = *this - o; }
  TDual& operator*=(const TDual& o) { return *this = *this * o; }

  friend TDual sqrt(const TDual& a) {
    T s = sqrt(a.v);
    return {s, a.d / (T(2.0) * s)};
  }
  friend TDual exp(const TDual& a) {
    T e = exp(a.v);
    return {e, a.d * e};
  }
  friend TDual sin(const TDual& a) { return {sin(a.v), a.d * cos(a.v)}; }
  friend TDual cos(const TDual& a) { return {cos(a.v), -a.d * sin(a.v)}; }
};

inline double value_of(double x) { return x; }
inline double value_of(const DualN& x) { return x.value(); }
template <class T>
double value_of(const TDual<T>& x) {
  return value_of(x.v);
}

// sqrt/exp/sin/cos for plain double, found via ADL in templated code.
using std::cos;
using std::exp;
using std::sin;
using std::sqrt;

}  // namespace fovplan
