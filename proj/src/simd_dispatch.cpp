#include "unigini/simd.hpp"

#include <string>

#include "unigini/errors.hpp"

namespace unigini::simd {

namespace detail {

double sum_scalar(const double*, std::size_t);
double dot_scalar(const double*, const double*, std::size_t);
double abs_diff_sum_scalar(const double*, const double*, std::size_t);
void min_max_scalar(const double*, std::size_t, double*, double*);
void multiply_scalar(const double*, const double*, double*, std::size_t);
void floor_below_scalar(double*, std::size_t, double);
void cap_above_scalar(double*, std::size_t, double);

#if defined(UNIGINI_HAVE_AVX2)
double sum_avx2(const double*, std::size_t);
double dot_avx2(const double*, const double*, std::size_t);
double abs_diff_sum_avx2(const double*, const double*, std::size_t);
void min_max_avx2(const double*, std::size_t, double*, double*);
void multiply_avx2(const double*, const double*, double*, std::size_t);
void floor_below_avx2(double*, std::size_t, double);
void cap_above_avx2(double*, std::size_t, double);
#endif

}  // namespace detail

namespace {

const KernelTable scalar_table = {
    detail::sum_scalar,       detail::dot_scalar,     detail::abs_diff_sum_scalar,
    detail::min_max_scalar,   detail::multiply_scalar, detail::floor_below_scalar,
    detail::cap_above_scalar,
};

#if defined(UNIGINI_HAVE_AVX2)
const KernelTable avx2_table = {
    detail::sum_avx2,       detail::dot_avx2,     detail::abs_diff_sum_avx2,
    detail::min_max_avx2,   detail::multiply_avx2, detail::floor_below_avx2,
    detail::cap_above_avx2,
};
#endif

Backend detect_backend() {
#if defined(UNIGINI_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Backend::avx2;
    }
#endif
    return Backend::scalar;
}

Backend g_backend = detect_backend();

}  // namespace

const KernelTable& kernels(Backend backend) {
#if defined(UNIGINI_HAVE_AVX2)
    if (backend == Backend::avx2) return avx2_table;
#endif
    return scalar_table;
}

bool cpu_supports(Backend backend) {
    if (backend == Backend::scalar) return true;
#if defined(UNIGINI_HAVE_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend active_backend() { return g_backend; }

void set_backend(Backend backend) {
    if (!cpu_supports(backend)) {
        throw ConfigError("simd backend '" + std::string(backend_name(backend)) +
                          "' not supported on this CPU");
    }
    g_backend = backend;
}

std::string_view backend_name(Backend backend) {
    switch (backend) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "scalar";
}

double sum(std::span<const double> v) {
    return kernels(g_backend).sum(v.data(), v.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
    return kernels(g_backend).dot(a.data(), b.data(), a.size());
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
    return kernels(g_backend).abs_diff_sum(a.data(), b.data(), a.size());
}

std::pair<double, double> min_max(std::span<const double> v) {
    double lo = 0.0, hi = 0.0;
    kernels(g_backend).min_max(v.data(), v.size(), &lo, &hi);
    return {lo, hi};
}

void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    kernels(g_backend).multiply(a.data(), b.data(), out.data(), a.size());
}

void floor_below(std::span<double> v, double lo) {
    kernels(g_backend).floor_below(v.data(), v.size(), lo);
}

void cap_above(std::span<double> v, double hi) {
    kernels(g_backend).cap_above(v.data(), v.size(), hi);
}

}  // namespace unigini::simd
