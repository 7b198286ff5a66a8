#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sage {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kDefaultSlack = 1e-9;

// Bad user input: schemas, shapes, parameter domains. Maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeError : ConfigError {
  using ConfigError::ConfigError;
};

// NaN/Inf escaped a numeric kernel.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bound computation hit a singularity (tan/recip argument interval
// touching a pole). Carries the offending node and unroll step so the
// verdict can say *where* verification gave up. Maps to exit code 3.
struct UnverifiableError : std::runtime_error {
  int node = -1;
  int step = -1;
  UnverifiableError(const std::string& what, int node_id, int step_idx)
      : std::runtime_error(what), node(node_id), step(step_idx) {}
};

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

// Axis-aligned interval vector. Holds initial sets, disturbance sets,
// goal sets, and every reachable-set overapproximation in the toolkit.
struct HyperRect {
  Vec lo, hi;

  HyperRect() = default;
  HyperRect(Vec lower, Vec upper) : lo(std::move(lower)), hi(std::move(upper)) {
    if (lo.size() != hi.size())
      throw ShapeError("HyperRect: lower/upper dimension mismatch");
    if (!((lo.array() <= hi.array()).all()))
      throw ConfigError("HyperRect: lower exceeds upper");
    if (!all_finite(lo) || !all_finite(hi))
      throw NumericError("HyperRect: non-finite bound");
  }

  static HyperRect around(const Vec& center, const Vec& radius) {
    return HyperRect(center - radius, center + radius);
  }
  static HyperRect point(const Vec& x) { return HyperRect(x, x); }

  int dim() const { return static_cast<int>(lo.size()); }
  Vec center() const { return 0.5 * (lo + hi); }
  Vec width() const { return hi - lo; }
  Vec radius() const { return 0.5 * (hi - lo); }

  bool contains(const Vec& x, double slack = 0.0) const {
    return (x.array() >= lo.array() - slack).all() &&
           (x.array() <= hi.array() + slack).all();
  }
  // inner ⊆ this, outward-safe: shrinking `this` by slack must still hold.
  bool contains(const HyperRect& inner, double slack = 0.0) const {
    return (inner.lo.array() >= lo.array() - slack).all() &&
           (inner.hi.array() <= hi.array() + slack).all();
  }

  HyperRect hull(const HyperRect& other) const {
    return HyperRect(lo.cwiseMin(other.lo), hi.cwiseMax(other.hi));
  }

  HyperRect restrict(const std::vector<int>& dims) const {
    Vec l(dims.size()), h(dims.size());
    for (size_t i = 0; i < dims.size(); ++i) {
      if (dims[i] < 0 || dims[i] >= dim())
        throw ConfigError("HyperRect::restrict: dim index out of range");
      l[i] = lo[dims[i]];
      h[i] = hi[dims[i]];
    }
    return HyperRect(std::move(l), std::move(h));
  }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= std::max(hi[i] - lo[i], 0.0);
    return v;
  }
};

inline Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace sage
