#include "phasecut/fft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace phasecut {

namespace {
// FFTW plan creation/destruction is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Fft::Fft(Index n) : n_(n) {
  if (n < 1) throw std::invalid_argument("Fft: size must be positive");
  std::lock_guard<std::mutex> lock(planner_mutex());
  Vec dummy_in(n), dummy_out(n);
  auto* in = reinterpret_cast<fftw_complex*>(dummy_in.data());
  auto* out = reinterpret_cast<fftw_complex*>(dummy_out.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_FORWARD, flags);
  plan_inv_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, flags);
  if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("Fft: planning failed");
}

Fft::~Fft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

Vec Fft::forward(const Vec& x) const {
  Vec in = x, out(n_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

Vec Fft::inverse(const Vec& x) const {
  Vec in = x, out(n_);
  fftw_execute_dft(static_cast<fftw_plan>(plan_inv_),
                   reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace phasecut
