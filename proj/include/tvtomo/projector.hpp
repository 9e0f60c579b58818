#pragma once

// Discrete X-ray transform: exact pixel/ray intersection lengths (Siddon
// traversal), matrix-free forward and adjoint application, and a power-method
// operator-norm estimate. The adjoint is the exact transpose of the forward
// discretization.

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "tvtomo/geometry.hpp"
#include "tvtomo/image.hpp"
#include "tvtomo/parallel.hpp"

namespace tvtomo {

struct RaySegment {
  int pixel;      // linear index iy*n_x + ix
  double length;  // physical units, > 0
};
using RaySegmentList = std::vector<RaySegment>;

namespace detail {

/// Clip the line p + t*d against the square [-b, b]^2. Returns false on miss.
inline bool clip_to_grid(const Ray& r, double b, double& t0, double& t1) {
  t0 = -std::numeric_limits<double>::infinity();
  t1 = std::numeric_limits<double>::infinity();
  const double p[2] = {r.px, r.py};
  const double d[2] = {r.dx, r.dy};
  for (int ax = 0; ax < 2; ++ax) {
    if (std::abs(d[ax]) < 1e-300) {
      if (p[ax] <= -b || p[ax] >= b) return false;
      continue;
    }
    double ta = (-b - p[ax]) / d[ax];
    double tb = (b - p[ax]) / d[ax];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  return t0 < t1;
}

}  // namespace detail

/// Exact pixel intersection lengths of one ray with the grid; empty when the
/// ray misses. Segments are emitted in traversal order and have positive
/// length; their sum equals the chord through the grid square.
inline RaySegmentList trace_ray(const Ray& r, const GridSpec& grid) {
  RaySegmentList out;
  const double b = grid.half_width;
  const double h = grid.pixel_size();
  const int n = grid.n_x;

  double t0, t1;
  if (!detail::clip_to_grid(r, b, t0, t1)) return out;

  const double len_eps = 1e-14 * b;
  if (t1 - t0 <= len_eps) return out;
  out.reserve(static_cast<size_t>(2 * n + 2));

  const double inf = std::numeric_limits<double>::infinity();
  // Next boundary-crossing parameter and per-cell step for each axis.
  auto axis_setup = [&](double p, double d, double& t_next, double& t_step) {
    if (std::abs(d) < 1e-300) {
      t_next = inf;
      t_step = inf;
      return;
    }
    const double frac = (p + t0 * d + b) / h;  // boundary index coordinate at t0
    double next_boundary;
    if (d > 0)
      next_boundary = -b + h * std::floor(frac + 1.0);
    else
      next_boundary = -b + h * (std::ceil(frac) - 1.0);
    t_next = (next_boundary - p) / d;
    t_step = h / std::abs(d);
    if (t_next <= t0) t_next += t_step;  // landed exactly on a boundary
  };

  double tnx, stepx, tny, stepy;
  axis_setup(r.px, r.dx, tnx, stepx);
  axis_setup(r.py, r.dy, tny, stepy);

  double t = t0;
  const double t_eps = len_eps;
  while (t < t1 - t_eps) {
    double tn = std::min(std::min(tnx, tny), t1);
    if (tn - t > len_eps) {
      const double tm = 0.5 * (t + tn);
      int ix = static_cast<int>(std::floor((r.px + tm * r.dx + b) / h));
      int iy = static_cast<int>(std::floor((r.py + tm * r.dy + b) / h));
      ix = std::clamp(ix, 0, n - 1);
      iy = std::clamp(iy, 0, grid.n_y - 1);
      out.push_back({grid.index(ix, iy), tn - t});
    }
    if (tnx <= tn + t_eps) tnx += stepx;
    if (tny <= tn + t_eps) tny += stepy;
    t = tn;
  }
  return out;
}

template <class Geometry>
RaySegmentList trace_ray(const Geometry& geom, int angle, int bin, const GridSpec& grid) {
  require(angle >= 0 && angle < geom.n_angles, "trace_ray: angle index out of range");
  require(bin >= 0 && bin < geom.n_bins, "trace_ray: bin index out of range");
  return trace_ray(geom.ray(angle, bin), grid);
}

/// X-ray transform: (Au)(ray) = sum over segments of length * u(pixel).
template <class Geometry>
Sinogram forward(const Image& u, const Geometry& geom, int threads = 1) {
  geom.validate();
  require(geom.covers(u.grid), "forward: geometry does not cover the grid");
  Sinogram f(geom.n_angles, geom.n_bins);
  const GridSpec grid = u.grid;
  parallel_for_blocks(geom.n_angles, threads, [&](int a0, int a1, int) {
    for (int a = a0; a < a1; ++a)
      for (int j = 0; j < geom.n_bins; ++j) {
        double acc = 0.0;
        for (const RaySegment& s : trace_ray(geom.ray(a, j), grid)) acc += s.length * u.v[s.pixel];
        f.at(a, j) = acc;
      }
  });
  return f;
}

/// Exact transpose of forward: scatters length * r(ray) into pixels.
template <class Geometry>
Image adjoint(const Sinogram& r, const Geometry& geom, const GridSpec& grid, int threads = 1) {
  geom.validate();
  require(r.n_angles == geom.n_angles && r.n_bins == geom.n_bins,
          "adjoint: sinogram dimensions do not match geometry");
  require(geom.covers(grid), "adjoint: geometry does not cover the grid");
  if (threads <= 1) {
    Image out(grid);
    for (int a = 0; a < geom.n_angles; ++a)
      for (int j = 0; j < geom.n_bins; ++j) {
        const double val = r.at(a, j);
        if (val == 0.0) continue;
        for (const RaySegment& s : trace_ray(geom.ray(a, j), grid)) out.v[s.pixel] += s.length * val;
      }
    return out;
  }
  // Per-worker accumulators, reduced in worker order: deterministic for a
  // fixed thread count.
  const int nw = std::max(1, std::min(threads, geom.n_angles));
  std::vector<Eigen::ArrayXd> acc(nw, Eigen::ArrayXd::Zero(grid.pixel_count()));
  parallel_for_blocks(geom.n_angles, nw, [&](int a0, int a1, int w) {
    for (int a = a0; a < a1; ++a)
      for (int j = 0; j < geom.n_bins; ++j) {
        const double val = r.at(a, j);
        if (val == 0.0) continue;
        for (const RaySegment& s : trace_ray(geom.ray(a, j), grid)) acc[w][s.pixel] += s.length * val;
      }
  });
  Image out(grid, std::move(acc[0]));
  for (int w = 1; w < nw; ++w) out.v += acc[w];
  return out;
}

/// Power-method estimate of ||A||^2 (largest eigenvalue of A^T A). The
/// Rayleigh quotient is non-decreasing in the iteration count.
template <class Geometry>
double operator_norm_sq(const Geometry& geom, const GridSpec& grid, int iterations = 50,
                        int threads = 1) {
  require(iterations >= 1, "operator_norm_sq: iterations must be >= 1");
  Image v(grid, 1.0);
  double rho = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Image w = adjoint(forward(v, geom, threads), geom, grid, threads);
    const double vv = (v.v * v.v).sum();
    if (vv == 0.0) return 0.0;
    rho = (v.v * w.v).sum() / vv;
    const double wn = std::sqrt((w.v * w.v).sum());
    if (wn == 0.0) return 0.0;
    v.v = w.v / wn;
  }
  return rho;
}

/// Explicit dense system matrix (rays x pixels) for brute-force oracles.
/// Guarded to small grids.
template <class Geometry>
Eigen::MatrixXd dense_matrix(const Geometry& geom, const GridSpec& grid) {
  require(grid.n_x <= 64, "dense_matrix: only provided for grids up to 64x64");
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(geom.ray_count(), grid.pixel_count());
  for (int a = 0; a < geom.n_angles; ++a)
    for (int j = 0; j < geom.n_bins; ++j) {
      const int row = a * geom.n_bins + j;
      for (const RaySegment& s : trace_ray(geom.ray(a, j), grid)) A(row, s.pixel) += s.length;
    }
  return A;
}

/// Cached sparse rows of A for solvers that apply the operator repeatedly.
/// Falls back to on-the-fly tracing when the cache would exceed the memory
/// cap; single-threaded application is bitwise identical either way.
template <class Geometry>
class SystemMatrix {
 public:
  SystemMatrix(const Geometry& geom, const GridSpec& grid,
               size_t memory_cap_bytes = size_t{768} << 20, int threads = 1)
      : geom_(geom), grid_(grid), threads_(threads) {
    geom_.validate();
    require(geom_.covers(grid_), "SystemMatrix: geometry does not cover the grid");
    // Worst-case segments per ray ~ n_x + n_y + 2.
    const size_t est = static_cast<size_t>(geom.ray_count()) *
                       static_cast<size_t>(grid.n_x + grid.n_y + 2) * 12u;
    if (est <= memory_cap_bytes) build_cache();
  }

  const Geometry& geometry() const { return geom_; }
  const GridSpec& grid() const { return grid_; }
  bool cached() const { return cached_; }
  int threads() const { return threads_; }

  Sinogram apply(const Image& u) const {
    if (!cached_) return forward(u, geom_, threads_);
    require(u.grid == grid_, "SystemMatrix::apply: grid mismatch");
    Sinogram f(geom_.n_angles, geom_.n_bins);
    const int rays = geom_.ray_count();
    parallel_for_blocks(rays, threads_, [&](int r0, int r1, int) {
      for (int r = r0; r < r1; ++r) {
        double acc = 0.0;
        for (size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) acc += lengths_[k] * u.v[pixels_[k]];
        f.v[r] = acc;
      }
    });
    return f;
  }

  Image apply_adjoint(const Sinogram& r) const {
    if (!cached_) return adjoint(r, geom_, grid_, threads_);
    require(r.n_angles == geom_.n_angles && r.n_bins == geom_.n_bins,
            "SystemMatrix::apply_adjoint: dimension mismatch");
    const int rays = geom_.ray_count();
    if (threads_ <= 1) {
      Image out(grid_);
      for (int row = 0; row < rays; ++row) {
        const double val = r.v[row];
        if (val == 0.0) continue;
        for (size_t k = offsets_[row]; k < offsets_[row + 1]; ++k)
          out.v[pixels_[k]] += lengths_[k] * val;
      }
      return out;
    }
    const int nw = std::max(1, std::min(threads_, rays));
    std::vector<Eigen::ArrayXd> acc(nw, Eigen::ArrayXd::Zero(grid_.pixel_count()));
    parallel_for_blocks(rays, nw, [&](int r0, int r1, int w) {
      for (int row = r0; row < r1; ++row) {
        const double val = r.v[row];
        if (val == 0.0) continue;
        for (size_t k = offsets_[row]; k < offsets_[row + 1]; ++k)
          acc[w][pixels_[k]] += lengths_[k] * val;
      }
    });
    Image out(grid_, std::move(acc[0]));
    for (int w = 1; w < nw; ++w) out.v += acc[w];
    return out;
  }

  /// Visit the nonzeros of one row (ray); returns the row's squared norm.
  template <class Fn>
  double visit_row(int row, Fn&& fn) const {
    double nrm2 = 0.0;
    if (cached_) {
      for (size_t k = offsets_[row]; k < offsets_[row + 1]; ++k) {
        fn(pixels_[k], lengths_[k]);
        nrm2 += lengths_[k] * lengths_[k];
      }
    } else {
      const int a = row / geom_.n_bins, j = row % geom_.n_bins;
      for (const RaySegment& s : trace_ray(geom_.ray(a, j), grid_)) {
        fn(s.pixel, s.length);
        nrm2 += s.length * s.length;
      }
    }
    return nrm2;
  }

 private:
  void build_cache() {
    const int rays = geom_.ray_count();
    offsets_.assign(static_cast<size_t>(rays) + 1, 0);
    pixels_.clear();
    lengths_.clear();
    for (int a = 0; a < geom_.n_angles; ++a)
      for (int j = 0; j < geom_.n_bins; ++j) {
        for (const RaySegment& s : trace_ray(geom_.ray(a, j), grid_)) {
          pixels_.push_back(s.pixel);
          lengths_.push_back(s.length);
        }
        offsets_[static_cast<size_t>(a) * geom_.n_bins + j + 1] = pixels_.size();
      }
    cached_ = true;
  }

  Geometry geom_;
  GridSpec grid_;
  int threads_ = 1;
  bool cached_ = false;
  std::vector<size_t> offsets_;
  std::vector<int> pixels_;
  std::vector<double> lengths_;
};

}  // namespace tvtomo
