#pragma once

// Cones over spherical cross-sections: the full space, circular arcs
// (d = 2, opening angle theta about the positive x-axis) and axisymmetric
// caps (d = 3, polar opening theta about the +z axis).  A cone is convex
// exactly when its cross-section sits inside a half-equator.

#include <Eigen/Dense>

#include <cmath>

namespace ckn {

struct ConeSpec {
  enum class Kind { full_space, arc, cap };

  Kind kind = Kind::full_space;
  double theta = 0;

  // Spatial dimension the cone lives in (any d for full_space).
  int dim() const { return kind == Kind::cap ? 3 : 2; }

  bool convex() const {
    switch (kind) {
      case Kind::full_space:
        return true;  // no boundary
      case Kind::arc:
        return theta <= M_PI;
      case Kind::cap:
        return theta <= M_PI / 2;
    }
    return false;
  }

  // Measure of the cross-section inside S^{d-1}.
  double angular_measure() const {
    switch (kind) {
      case Kind::arc:
        return theta;
      case Kind::cap:
        return 2.0 * M_PI * (1.0 - std::cos(theta));
      case Kind::full_space:
        break;
    }
    return 0;  // full_space handled by the caller (depends on d)
  }

  static ConeSpec full() { return {}; }
  static ConeSpec make_arc(double theta) {
    return {Kind::arc, theta};
  }
  static ConeSpec make_cap(double theta) {
    return {Kind::cap, theta};
  }
};

// A point of the lateral boundary at distance `radius` from the vertex.
// For arcs, `side` +1/-1 selects the ray at +theta/2 or -theta/2;
// for caps, `azimuth` moves along the boundary ring.
inline Eigen::VectorXd cone_boundary_point(const ConeSpec& cone,
                                           double radius, double azimuth,
                                           int side) {
  if (cone.kind == ConeSpec::Kind::arc) {
    const double t = side * cone.theta / 2;
    return radius * Eigen::Vector2d(std::cos(t), std::sin(t));
  }
  return radius * Eigen::Vector3d(std::sin(cone.theta) * std::cos(azimuth),
                                  std::sin(cone.theta) * std::sin(azimuth),
                                  std::cos(cone.theta));
}

// Outward unit normal of the lateral boundary at a boundary point.
inline Eigen::VectorXd cone_outward_normal(const ConeSpec& cone,
                                           const Eigen::VectorXd& x) {
  if (cone.kind == ConeSpec::Kind::arc) {
    const double t = std::atan2(x[1], x[0]);
    const int side = t >= 0 ? 1 : -1;
    const double edge = side * cone.theta / 2;
    // Rotate the edge ray by +-90 degrees, pointing out of the sector.
    return Eigen::Vector2d(-side * std::sin(edge), side * std::cos(edge));
  }
  const double psi = std::atan2(x[1], x[0]);
  return Eigen::Vector3d(std::cos(cone.theta) * std::cos(psi),
                         std::cos(cone.theta) * std::sin(psi),
                         -std::sin(cone.theta));
}

}  // namespace ckn
