#include "visco2d/grid.hpp"

#include <cstring>
#include <mutex>
#include <stdexcept>
#include <string>

namespace visco2d {

namespace {
// FFTW plan creation is not thread-safe; serialize it globally.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Grid::Grid(int n, double length)
    : n_(n), length_(length), kscale_(2.0 * 3.14159265358979323846264338327950288 / length) {
  freqs_.resize(n_);
  for (int i = 0; i < n_; ++i) freqs_[i] = (i < n_ / 2) ? i : i - n_;

  const int limit = dealias_limit();
  keep_.assign(num_modes(), 0);
  for (int i2 = 0; i2 < n_; ++i2) {
    for (int ih1 = 0; ih1 < nh(); ++ih1) {
      const int k1 = ih1;  // half axis carries |k1| directly
      const int k2 = freqs_[i2];
      keep_[i2 * nh() + ih1] = (k1 <= limit && std::abs(k2) <= limit) ? 1 : 0;
    }
  }

  std::lock_guard<std::mutex> lock(planner_mutex());
  real_buf_ = fftw_alloc_real(static_cast<size_t>(num_points()));
  cplx_buf_ = fftw_alloc_complex(static_cast<size_t>(num_modes()));
  // FFTW_UNALIGNED lets the plans run on caller-owned storage through the
  // new-array execute interface (deterministic ESTIMATE planning).
  plan_fwd_ = fftw_plan_dft_r2c_2d(n_, n_, real_buf_, cplx_buf_,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inv_ = fftw_plan_dft_c2r_2d(n_, n_, cplx_buf_, real_buf_,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_fwd_ == nullptr || plan_inv_ == nullptr)
    throw std::runtime_error("grid: FFTW plan creation failed for n=" + std::to_string(n_));
}

Grid::~Grid() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(plan_fwd_);
  if (plan_inv_) fftw_destroy_plan(plan_inv_);
  if (real_buf_) fftw_free(real_buf_);
  if (cplx_buf_) fftw_free(cplx_buf_);
}

void Grid::forward(const double* in, std::complex<double>* out) const {
  // Out-of-place r2c preserves its input; runs directly on caller arrays.
  fftw_execute_dft_r2c(plan_fwd_, const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
  const double scale = 1.0 / num_points();
  for (int m = 0; m < num_modes(); ++m) out[m] *= scale;
}

void Grid::inverse(const std::complex<double>* in, double* out) const {
  // c2r destroys its input, so stage it through thread-local scratch.
  thread_local std::vector<std::complex<double>> scratch;
  if (scratch.size() < static_cast<size_t>(num_modes())) scratch.resize(num_modes());
  std::memcpy(scratch.data(), in, sizeof(fftw_complex) * num_modes());
  fftw_execute_dft_c2r(plan_inv_, reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

std::shared_ptr<const Grid> Grid::make(int n, double length) {
  if (n < 8 || n % 2 != 0)
    throw std::invalid_argument("grid: n must be even and >= 8, got " + std::to_string(n));
  if (!(length > 0.0)) throw std::invalid_argument("grid: length must be positive");
  return std::shared_ptr<const Grid>(new Grid(n, length));
}

GridPtr make_grid(int n, double length) { return Grid::make(n, length); }

}  // namespace visco2d
