#pragma once

#include <fftw3.h>

#include <complex>
#include <map>
#include <memory>
#include <mutex>

namespace fmhd {
namespace detail {

// FFTW exposes one API per precision; these traits select it by scalar type.
template <typename Scalar>
struct FftwApi;

template <>
struct FftwApi<double> {
  using plan = fftw_plan;
  using complex = fftw_complex;
  static plan plan_2d(int n, complex* in, complex* out, int sign) {
    return fftw_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  static void execute(plan p, complex* in, complex* out) { fftw_execute_dft(p, in, out); }
  static void destroy(plan p) { fftw_destroy_plan(p); }
  static complex* alloc(std::size_t count) { return fftw_alloc_complex(count); }
  static void free(complex* p) { fftw_free(p); }
};

template <>
struct FftwApi<float> {
  using plan = fftwf_plan;
  using complex = fftwf_complex;
  static plan plan_2d(int n, complex* in, complex* out, int sign) {
    return fftwf_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  static void execute(plan p, complex* in, complex* out) { fftwf_execute_dft(p, in, out); }
  static void destroy(plan p) { fftwf_destroy_plan(p); }
  static complex* alloc(std::size_t count) { return fftwf_alloc_complex(count); }
  static void free(complex* p) { fftwf_free(p); }
};

template <>
struct FftwApi<long double> {
  using plan = fftwl_plan;
  using complex = fftwl_complex;
  static plan plan_2d(int n, complex* in, complex* out, int sign) {
    return fftwl_plan_dft_2d(n, n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  static void execute(plan p, complex* in, complex* out) { fftwl_execute_dft(p, in, out); }
  static void destroy(plan p) { fftwl_destroy_plan(p); }
  static complex* alloc(std::size_t count) { return fftwl_alloc_complex(count); }
  static void free(complex* p) { fftwl_free(p); }
};

// Planner calls are not thread-safe in FFTW; execution on distinct arrays is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace detail

/// Forward/backward 2D complex plans for one grid size, created once and shared.
///
/// FFTW_ESTIMATE keeps plan selection deterministic, so repeated runs produce
/// bit-identical transforms on the same machine.
template <typename Scalar>
class FftPlans {
  using Api = detail::FftwApi<Scalar>;

 public:
  static const FftPlans& get(int n) {
    std::lock_guard lock(detail::planner_mutex());
    static std::map<int, std::unique_ptr<FftPlans>> cache;
    auto& slot = cache[n];
    if (!slot) slot.reset(new FftPlans(n));
    return *slot;
  }

  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
  ~FftPlans() {
    Api::destroy(forward_);
    Api::destroy(backward_);
  }

  /// Unnormalized exp(-i k.x) sum. `in` and `out` must not alias.
  void forward(const std::complex<Scalar>* in, std::complex<Scalar>* out) const {
    Api::execute(forward_, as_fftw(in), reinterpret_cast<typename Api::complex*>(out));
  }
  /// Unnormalized exp(+i k.x) sum. `in` and `out` must not alias.
  void backward(const std::complex<Scalar>* in, std::complex<Scalar>* out) const {
    Api::execute(backward_, as_fftw(in), reinterpret_cast<typename Api::complex*>(out));
  }

 private:
  explicit FftPlans(int n) {
    const auto count = static_cast<std::size_t>(n) * n;
    auto* a = Api::alloc(count);
    auto* b = Api::alloc(count);
    forward_ = Api::plan_2d(n, a, b, FFTW_FORWARD);
    backward_ = Api::plan_2d(n, a, b, FFTW_BACKWARD);
    Api::free(a);
    Api::free(b);
  }

  // Out-of-place complex transforms leave the input untouched.
  static typename Api::complex* as_fftw(const std::complex<Scalar>* p) {
    return reinterpret_cast<typename Api::complex*>(const_cast<std::complex<Scalar>*>(p));
  }

  typename Api::plan forward_{};
  typename Api::plan backward_{};
};

}  // namespace fmhd
