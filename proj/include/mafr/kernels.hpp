#pragma once

#include <cstddef>

// Data-parallel inner loops behind the matrix and quadrature layers.
//
// Scalar versions are the reference semantics; SIMD variants are selected once
// at startup based on the host CPU and must agree with the scalar results up to
// floating-point reassociation (tests/test_kernels.cpp pins that down).

namespace mafr::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) noexcept;
double weighted_dot_scalar(const double* w, const double* a, const double* b,
                           std::size_t n) noexcept;
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale_scalar(double alpha, double* x, std::size_t n) noexcept;

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n) noexcept;
double weighted_dot_avx2(const double* w, const double* a, const double* b,
                         std::size_t n) noexcept;
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale_avx2(double alpha, double* x, std::size_t n) noexcept;
bool cpu_has_avx2() noexcept;
#endif

#if defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n) noexcept;
double weighted_dot_neon(const double* w, const double* a, const double* b,
                         std::size_t n) noexcept;
void axpy_neon(double alpha, const double* x, double* y, std::size_t n) noexcept;
void scale_neon(double alpha, double* x, std::size_t n) noexcept;
#endif

// Dispatched entry points. Bound once before main() runs; stable thereafter.
extern double (*dot)(const double*, const double*, std::size_t);
extern double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
extern void (*axpy)(double, const double*, double*, std::size_t);
extern void (*scale)(double, double*, std::size_t);

// Kernel set in use: "scalar", "avx2" or "neon".
const char* active_isa() noexcept;

} // namespace mafr::kernels
