#include "mafr/kernels.hpp"

namespace mafr::kernels {

double dot_scalar(const double* a, const double* b, std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double weighted_dot_scalar(const double* w, const double* a, const double* b,
                           std::size_t n) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

double (*dot)(const double*, const double*, std::size_t) = dot_scalar;
double (*weighted_dot)(const double*, const double*, const double*, std::size_t) =
    weighted_dot_scalar;
void (*axpy)(double, const double*, double*, std::size_t) = axpy_scalar;
void (*scale)(double, double*, std::size_t) = scale_scalar;

namespace {

const char* g_isa = "scalar";

int select_kernels() {
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2()) {
        dot = dot_avx2;
        weighted_dot = weighted_dot_avx2;
        axpy = axpy_avx2;
        scale = scale_avx2;
        g_isa = "avx2";
    }
#elif defined(__aarch64__)
    dot = dot_neon;
    weighted_dot = weighted_dot_neon;
    axpy = axpy_neon;
    scale = scale_neon;
    g_isa = "neon";
#endif
    return 0;
}

const int g_init = select_kernels();

} // namespace

const char* active_isa() noexcept {
    (void)g_init;
    return g_isa;
}

} // namespace mafr::kernels
