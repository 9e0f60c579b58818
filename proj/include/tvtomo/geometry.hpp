#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "tvtomo/grid.hpp"

namespace tvtomo {

/// A measurement ray: point on the line plus unit direction.
struct Ray {
  double px, py;
  double dx, dy;
};

/// Parallel-beam acquisition: angles in [0, pi), flat detector through the
/// origin spanning (-detector_extent, detector_extent) perpendicular to each
/// view direction.
struct ParallelGeometry {
  int n_angles = 0;
  int n_bins = 0;
  std::vector<double> angles;     // strictly increasing, in [0, pi)
  double detector_extent = 0.0;   // half-extent

  double bin_width() const { return 2.0 * detector_extent / n_bins; }
  double bin_center(int bin) const { return -detector_extent + (bin + 0.5) * bin_width(); }

  Ray ray(int angle, int bin) const {
    const double t = angles[angle];
    const double c = std::cos(t), s = std::sin(t);
    const double off = bin_center(bin);
    // line {x : x.(cos t, sin t) = off}, travelling along (-sin t, cos t)
    return Ray{off * c, off * s, -s, c};
  }

  int ray_count() const { return n_angles * n_bins; }

  void validate() const {
    require(n_angles >= 1 && n_bins >= 1, "ParallelGeometry: counts must be >= 1");
    require(static_cast<int>(angles.size()) == n_angles, "ParallelGeometry: angle count mismatch");
    require(detector_extent > 0.0, "ParallelGeometry: detector_extent must be positive");
    for (int i = 0; i < n_angles; ++i) {
      require(angles[i] >= 0.0 && angles[i] < std::numbers::pi,
              "ParallelGeometry: angles must lie in [0, pi)");
      if (i > 0) require(angles[i] > angles[i - 1], "ParallelGeometry: angles must be strictly increasing");
    }
  }

  /// Detector must cover the circumscribed circle of the grid.
  bool covers(const GridSpec& grid) const {
    return detector_extent >= std::sqrt(2.0) * grid.half_width * (1.0 - 1e-12);
  }
};

/// Fan-beam acquisition: point source on a circle of radius source_radius,
/// flat detector at distance detector_radius on the opposite side of the
/// rotation center. Rays run from the source to detector-bin centers.
struct FanGeometry {
  int n_angles = 0;
  int n_bins = 0;
  std::vector<double> angles;        // source angles in [0, 2*pi), strictly increasing
  double source_radius = 0.0;        // source to rotation center
  double detector_radius = 0.0;      // rotation center to detector
  double detector_half_width = 0.0;  // half-extent along the detector

  double bin_width() const { return 2.0 * detector_half_width / n_bins; }
  double bin_center(int bin) const { return -detector_half_width + (bin + 0.5) * bin_width(); }

  /// Half opening angle of the fan.
  double fan_half_angle() const {
    return std::atan2(detector_half_width, source_radius + detector_radius);
  }

  Ray ray(int angle, int bin) const {
    const double b = angles[angle];
    const double c = std::cos(b), s = std::sin(b);
    const double sx = source_radius * c, sy = source_radius * s;
    const double t = bin_center(bin);
    const double ex = -detector_radius * c - t * s;  // detector point
    const double ey = -detector_radius * s + t * c;
    double dx = ex - sx, dy = ey - sy;
    const double n = std::hypot(dx, dy);
    return Ray{sx, sy, dx / n, dy / n};
  }

  int ray_count() const { return n_angles * n_bins; }

  void validate() const {
    require(n_angles >= 1 && n_bins >= 1, "FanGeometry: counts must be >= 1");
    require(static_cast<int>(angles.size()) == n_angles, "FanGeometry: angle count mismatch");
    require(source_radius > 0.0 && detector_radius >= 0.0 && detector_half_width > 0.0,
            "FanGeometry: radii/detector size must be positive");
    for (int i = 0; i < n_angles; ++i) {
      require(angles[i] >= 0.0 && angles[i] < 2.0 * std::numbers::pi,
              "FanGeometry: angles must lie in [0, 2*pi)");
      if (i > 0) require(angles[i] > angles[i - 1], "FanGeometry: angles must be strictly increasing");
    }
  }

  /// Source outside the object and fan wide enough to cover the grid's
  /// circumscribed circle at every angle.
  bool covers(const GridSpec& grid) const {
    const double rc = std::sqrt(2.0) * grid.half_width;
    if (source_radius <= rc) return false;
    return fan_half_angle() >= std::asin(rc / source_radius) * (1.0 - 1e-12);
  }
};

/// Equally spaced angles theta_i = i*pi/n_angles; detector spans
/// (-sqrt(2) b, sqrt(2) b) so the object is fully covered at every angle.
inline ParallelGeometry make_parallel_geometry(int n_angles, int n_bins, const GridSpec& grid) {
  require(n_angles >= 1, "make_parallel_geometry: n_angles must be >= 1");
  require(n_bins >= 1, "make_parallel_geometry: n_bins must be >= 1");
  ParallelGeometry g;
  g.n_angles = n_angles;
  g.n_bins = n_bins;
  g.angles.resize(n_angles);
  for (int i = 0; i < n_angles; ++i) g.angles[i] = i * std::numbers::pi / n_angles;
  g.detector_extent = std::sqrt(2.0) * grid.half_width;
  g.validate();
  return g;
}

/// Equally spaced source angles over [0, 2*pi); detector sized so the fan
/// covers the grid's circumscribed circle, with a small margin.
inline FanGeometry make_fan_geometry(int n_angles, int n_bins, const GridSpec& grid,
                                     double source_radius = 0.0, double detector_radius = 0.0) {
  require(n_angles >= 1, "make_fan_geometry: n_angles must be >= 1");
  require(n_bins >= 1, "make_fan_geometry: n_bins must be >= 1");
  const double b = grid.half_width;
  if (source_radius <= 0.0) source_radius = 3.0 * b;
  if (detector_radius <= 0.0) detector_radius = 3.0 * b;
  const double rc = std::sqrt(2.0) * b;
  require(source_radius > rc, "make_fan_geometry: source must lie outside the object");
  FanGeometry g;
  g.n_angles = n_angles;
  g.n_bins = n_bins;
  g.angles.resize(n_angles);
  for (int i = 0; i < n_angles; ++i) g.angles[i] = i * 2.0 * std::numbers::pi / n_angles;
  g.source_radius = source_radius;
  g.detector_radius = detector_radius;
  g.detector_half_width =
      1.02 * (source_radius + detector_radius) * std::tan(std::asin(rc / source_radius));
  g.validate();
  require(g.covers(grid), "make_fan_geometry: fan does not cover the grid");
  return g;
}

/// Measurement count over unknown count.
template <class Geometry>
double underdetermined_rate(const Geometry& geom, const GridSpec& grid) {
  return static_cast<double>(geom.ray_count()) / static_cast<double>(grid.pixel_count());
}

}  // namespace tvtomo
