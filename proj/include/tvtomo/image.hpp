#pragma once

#include <Eigen/Core>
#include <cmath>

#include "tvtomo/grid.hpp"

namespace tvtomo {

/// Scalar field on a pixel grid (attenuation coefficients, arbitrary units).
struct Image {
  GridSpec grid;
  Eigen::ArrayXd v;  // size n_x*n_y, row-major (index = iy*n_x + ix)

  Image() = default;
  explicit Image(const GridSpec& g, double fill = 0.0)
      : grid(g), v(Eigen::ArrayXd::Constant(g.pixel_count(), fill)) {}
  Image(const GridSpec& g, Eigen::ArrayXd values) : grid(g), v(std::move(values)) {
    require(static_cast<int>(v.size()) == grid.pixel_count(),
            "Image: value count does not match grid");
  }

  double& at(int ix, int iy) { return v[grid.index(ix, iy)]; }
  double at(int ix, int iy) const { return v[grid.index(ix, iy)]; }

  bool all_finite() const { return v.isFinite().all(); }
};

/// Measurement array indexed by (angle, detector bin); row-major per angle.
struct Sinogram {
  int n_angles = 0;
  int n_bins = 0;
  Eigen::ArrayXd v;  // size n_angles*n_bins, index = angle*n_bins + bin

  Sinogram() = default;
  Sinogram(int na, int nb, double fill = 0.0)
      : n_angles(na), n_bins(nb), v(Eigen::ArrayXd::Constant(na * nb, fill)) {
    require(na >= 1 && nb >= 1, "Sinogram: dimensions must be >= 1");
  }
  Sinogram(int na, int nb, Eigen::ArrayXd values)
      : n_angles(na), n_bins(nb), v(std::move(values)) {
    require(static_cast<int>(v.size()) == n_angles * n_bins,
            "Sinogram: value count does not match dimensions");
  }

  double& at(int angle, int bin) { return v[angle * n_bins + bin]; }
  double at(int angle, int bin) const { return v[angle * n_bins + bin]; }

  int ray_count() const { return n_angles * n_bins; }
  bool all_finite() const { return v.isFinite().all(); }
};

/// Per-pixel fidelity weight λ(x), bounded in [lower, upper], with the
/// window size ω used for local residual statistics.
struct LambdaMap {
  GridSpec grid;
  Eigen::ArrayXd v;
  double lower = 1e-3;
  double upper = 1e4;
  int window = 11;

  LambdaMap() = default;
  LambdaMap(const GridSpec& g, double value, double lo, double hi, int w)
      : grid(g), v(Eigen::ArrayXd::Constant(g.pixel_count(), value)),
        lower(lo), upper(hi), window(w) {
    validate_bounds();
    require(value >= lower && value <= upper, "LambdaMap: initial value out of bounds");
  }
  LambdaMap(const GridSpec& g, Eigen::ArrayXd values, double lo, double hi, int w)
      : grid(g), v(std::move(values)), lower(lo), upper(hi), window(w) {
    require(static_cast<int>(v.size()) == grid.pixel_count(),
            "LambdaMap: value count does not match grid");
    validate_bounds();
    require((v >= lower).all() && (v <= upper).all(),
            "LambdaMap: values out of [lower, upper]");
  }

  double at(int ix, int iy) const { return v[grid.index(ix, iy)]; }

 private:
  void validate_bounds() const {
    require(lower > 0.0, "LambdaMap: lower bound must be positive");
    require(upper >= lower, "LambdaMap: upper bound must be >= lower bound");
    require(window >= 3 && window % 2 == 1, "LambdaMap: window must be odd and >= 3");
  }
};

}  // namespace tvtomo
