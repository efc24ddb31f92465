#include <algorithm>
#include <cmath>
#include <cstddef>

// Scalar reference kernels. Plain left-to-right loops; the ground truth
// the SIMD variants are tested against.

namespace unigini::simd::detail {

double sum_scalar(const double* v, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double abs_diff_sum_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
    return acc;
}

void min_max_scalar(const double* v, std::size_t n, double* lo, double* hi) {
    double mn = v[0], mx = v[0];
    for (std::size_t i = 1; i < n; ++i) {
        mn = std::min(mn, v[i]);
        mx = std::max(mx, v[i]);
    }
    *lo = mn;
    *hi = mx;
}

void multiply_scalar(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void floor_below_scalar(double* v, std::size_t n, double lo) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::max(v[i], lo);
}

void cap_above_scalar(double* v, std::size_t n, double hi) {
    for (std::size_t i = 0; i < n; ++i) v[i] = std::min(v[i], hi);
}

}  // namespace unigini::simd::detail
