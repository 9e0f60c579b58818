#pragma once

// Ground-truth phantoms. The head phantom is a fixed list of ellipses
// (skull ring, interior tissue, small dark inclusions on the right side);
// the same constants ship in data/head_phantom_ellipses.csv.

#include <array>
#include <cmath>
#include <vector>

#include "tvtomo/image.hpp"

namespace tvtomo {

/// One paint step: later entries overwrite earlier ones inside their ellipse.
/// Geometry is in units of the grid half-width b.
struct PhantomEllipse {
  double cx, cy;      // center
  double ax, ay;      // semi-axes
  double angle;       // rotation, radians
  double value;       // gray value painted inside
};

inline const std::vector<PhantomEllipse>& head_phantom_ellipses() {
  static const std::vector<PhantomEllipse> table = {
      {0.00, 0.00, 0.72, 0.90, 0.0, 1.00},    // skull
      {0.00, -0.01, 0.62, 0.80, 0.0, 0.35},   // brain interior
      {-0.18, 0.12, 0.26, 0.38, 0.30, 0.55},  // gray region
      {0.15, -0.35, 0.22, 0.18, -0.20, 0.45}, // lower tissue
      {-0.28, -0.33, 0.05, 0.08, 0.50, 0.90}, // small bright inclusion
      {0.38, 0.22, 0.045, 0.045, 0.0, 0.00},  // dark dots, right side
      {0.40, 0.05, 0.040, 0.040, 0.0, 0.05},
      {0.36, -0.12, 0.035, 0.035, 0.0, 0.00},
  };
  return table;
}

namespace detail {

inline double paint_at(const std::vector<PhantomEllipse>& ellipses, double x, double y) {
  double val = 0.0;
  for (const PhantomEllipse& e : ellipses) {
    const double c = std::cos(e.angle), s = std::sin(e.angle);
    const double dx = x - e.cx, dy = y - e.cy;
    const double u = (c * dx + s * dy) / e.ax;
    const double v = (-s * dx + c * dy) / e.ay;
    if (u * u + v * v <= 1.0) val = e.value;
  }
  return val;
}

}  // namespace detail

/// Piecewise-constant head-like phantom with values in [0, 1]. Pixels are
/// 4x4 supersampled so the same phantom resamples consistently across grid
/// sizes; the result is normalized to span [0, 1] exactly.
inline Image head_phantom(const GridSpec& grid) {
  const auto& ellipses = head_phantom_ellipses();
  const double b = grid.half_width;
  const double h = grid.pixel_size();
  constexpr int ss = 4;
  Image img(grid);
  for (int iy = 0; iy < grid.n_y; ++iy)
    for (int ix = 0; ix < grid.n_x; ++ix) {
      double acc = 0.0;
      for (int sy = 0; sy < ss; ++sy)
        for (int sx = 0; sx < ss; ++sx) {
          const double x = (-b + (ix + (sx + 0.5) / ss) * h) / b;
          const double y = (-b + (iy + (sy + 0.5) / ss) * h) / b;
          acc += detail::paint_at(ellipses, x, y);
        }
      img.at(ix, iy) = acc / (ss * ss);
    }
  const double lo = img.v.minCoeff(), hi = img.v.maxCoeff();
  if (hi > lo) img.v = (img.v - lo) / (hi - lo);
  return img;
}

/// Indicator of a disk scaled by `value`; a pixel belongs to the disk when its
/// center does. Analytic oracle for projector tests.
inline Image disk_phantom(const GridSpec& grid, double cx, double cy, double radius,
                          double value) {
  require(radius > 0.0, "disk_phantom: radius must be positive");
  const double b = grid.half_width;
  require(std::max(std::abs(cx), std::abs(cy)) - radius < b,
          "disk_phantom: disk lies entirely outside the domain");
  Image img(grid);
  const double r2 = radius * radius;
  for (int iy = 0; iy < grid.n_y; ++iy)
    for (int ix = 0; ix < grid.n_x; ++ix) {
      const double dx = grid.center_x(ix) - cx, dy = grid.center_y(iy) - cy;
      if (dx * dx + dy * dy <= r2) img.at(ix, iy) = value;
    }
  return img;
}

}  // namespace tvtomo
