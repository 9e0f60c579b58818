#pragma once

#include <stdexcept>
#include <string>

namespace tvtomo {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

/// Square pixel grid covering the domain (-b, b)^2.
///
/// Pixel (ix, iy) is centered at (-b + (ix+1/2)*pixel_size, -b + (iy+1/2)*pixel_size);
/// values are stored row-major, index = iy*n_x + ix.
struct GridSpec {
  int n_x = 0;
  int n_y = 0;
  double half_width = 1.0;

  GridSpec() = default;
  GridSpec(int n, double b = 1.0) : GridSpec(n, n, b) {}
  GridSpec(int nx, int ny, double b) : n_x(nx), n_y(ny), half_width(b) {
    require(n_x >= 1 && n_y >= 1, "GridSpec: pixel counts must be >= 1");
    require(n_x == n_y, "GridSpec: grid must be square (n_x == n_y)");
    require(half_width > 0.0, "GridSpec: half_width must be positive");
  }

  double pixel_size() const { return 2.0 * half_width / n_x; }
  int pixel_count() const { return n_x * n_y; }

  double center_x(int ix) const { return -half_width + (ix + 0.5) * pixel_size(); }
  double center_y(int iy) const { return -half_width + (iy + 0.5) * pixel_size(); }

  int index(int ix, int iy) const { return iy * n_x + ix; }

  bool operator==(const GridSpec& o) const {
    return n_x == o.n_x && n_y == o.n_y && half_width == o.half_width;
  }
};

}  // namespace tvtomo
