#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <fftw3.h>

namespace visco2d {

/// Periodic square collocation grid on [0, length)^2 with cached FFTW plans.
///
/// Physical layout: row-major with x1 fastest, value at (i1, i2) lives at
/// index i2*n + i1. Spectral layout is the FFTW r2c half-spectrum: k1 runs
/// over 0..n/2 (fast index), k2 over the full signed range via fftfreq
/// ordering (slow index). Forward transforms are normalized by 1/n^2 so
/// stored coefficients are Fourier coefficients of f = sum fhat exp(i k.x).
class Grid {
 public:
  static std::shared_ptr<const Grid> make(int n, double length);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  double length() const { return length_; }
  int nh() const { return n_ / 2 + 1; }          // half-spectrum width (k1)
  int num_points() const { return n_ * n_; }
  int num_modes() const { return n_ * nh(); }
  double dx() const { return length_ / n_; }
  double cell_area() const { return dx() * dx(); }
  double area() const { return length_ * length_; }

  /// Integer frequency of full-range index i: {0,..,n/2-1,-n/2,..,-1}.
  int freq(int i) const { return freqs_[i]; }
  const std::vector<int>& freq_table() const { return freqs_; }

  /// 2/3-rule cutoff: modes with |k_i| <= n/3 are retained.
  int dealias_limit() const { return n_ / 3; }
  bool mode_kept(int ih1, int i2) const { return keep_[i2 * nh() + ih1] != 0; }

  /// Physical wavenumbers (2*pi/length scaling). Nyquist rows/columns map
  /// to zero so spectral derivatives of real fields stay real.
  double wave1(int ih1) const { return ih1 == n_ / 2 ? 0.0 : kscale_ * ih1; }
  double wave2(int i2) const {
    return i2 == n_ / 2 ? 0.0 : kscale_ * freqs_[i2];
  }
  /// |k|^2 with the integer (unmapped) frequencies, for masks and weights.
  double ksq(int ih1, int i2) const {
    const double k1 = kscale_ * ih1;
    const double k2 = kscale_ * freqs_[i2];
    return k1 * k1 + k2 * k2;
  }
  /// Parseval multiplicity of a half-spectrum entry (conjugate pair = 2).
  double hermitian_weight(int ih1) const {
    return (ih1 == 0 || ih1 == n_ / 2) ? 1.0 : 2.0;
  }

  double x1(int i1) const { return i1 * dx(); }
  double x2(int i2) const { return i2 * dx(); }

  /// Normalized r2c / unnormalized c2r transforms. Safe for concurrent
  /// callers: plans are executed through the new-array interface and the
  /// inverse stages its (destroyed) input in thread-local scratch.
  void forward(const double* in, std::complex<double>* out) const;
  void inverse(const std::complex<double>* in, double* out) const;

 private:
  Grid(int n, double length);

  int n_;
  double length_;
  double kscale_;  // 2*pi/length
  std::vector<int> freqs_;
  std::vector<unsigned char> keep_;

  double* real_buf_ = nullptr;
  fftw_complex* cplx_buf_ = nullptr;
  fftw_plan plan_fwd_ = nullptr;
  fftw_plan plan_inv_ = nullptr;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a grid; rejects odd or undersized n and non-positive lengths.
GridPtr make_grid(int n, double length);

}  // namespace visco2d
