#pragma once

// Vectorized reduction kernels used by the distribution tables, the
// normalizer and the moment computations. Scalar reference versions are
// always available; an AVX2 variant is selected at runtime when the CPU
// supports it. Dispatch can be forced with GMRG_SIMD=scalar|avx2.

#include <cstddef>
#include <span>
#include <string>

namespace gmrg::kernels {

// Reference implementations (straight loops, no intrinsics).
namespace scalar {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double l1_diff(const double* x, const double* y, std::size_t n);
double max(const double* x, std::size_t n);           // -inf for n == 0
double sum_exp(const double* x, std::size_t n, double shift);
}  // namespace scalar

// exp() stays scalar libm everywhere; only the reductions have SIMD variants.
#if defined(GMRG_HAVE_AVX2_TU)
namespace avx2 {
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double l1_diff(const double* x, const double* y, std::size_t n);
double max(const double* x, std::size_t n);
}  // namespace avx2
#endif

// Dispatched entry points.
double sum(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);
double l1_diff(std::span<const double> x, std::span<const double> y);
double max(std::span<const double> x);
double sum_exp(std::span<const double> x, double shift);

// log(sum_i exp(x_i)) with the usual max shift; -inf on empty input and
// on all -inf input.
double logsumexp(std::span<const double> x);

// Name of the active backend ("scalar" or "avx2").
const std::string& active_backend();

}  // namespace gmrg::kernels
