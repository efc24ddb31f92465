#include <cstddef>

// AVX2 kernels, 4 doubles per lane. This translation unit is compiled
// with -mavx2 on x86-64 only; the dispatcher never calls into it unless
// the running CPU reports AVX2.

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace unigini::simd::detail {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

}  // namespace

double sum_avx2(const double* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += v[i];
    return out;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += a[i] * b[i];
    return out;
}

double abs_diff_sum_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double out = hsum(acc);
    for (; i < n; ++i) out += std::fabs(a[i] - b[i]);
    return out;
}

void min_max_avx2(const double* v, std::size_t n, double* lo, double* hi) {
    std::size_t i = 0;
    double mn = v[0], mx = v[0];
    if (n >= 4) {
        __m256d vmn = _mm256_loadu_pd(v);
        __m256d vmx = vmn;
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d x = _mm256_loadu_pd(v + i);
            vmn = _mm256_min_pd(vmn, x);
            vmx = _mm256_max_pd(vmx, x);
        }
        alignas(32) double tmp[4];
        _mm256_store_pd(tmp, vmn);
        mn = std::min(std::min(tmp[0], tmp[1]), std::min(tmp[2], tmp[3]));
        _mm256_store_pd(tmp, vmx);
        mx = std::max(std::max(tmp[0], tmp[1]), std::max(tmp[2], tmp[3]));
    }
    for (; i < n; ++i) {
        mn = std::min(mn, v[i]);
        mx = std::max(mx, v[i]);
    }
    *lo = mn;
    *hi = mx;
}

void multiply_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void floor_below_avx2(double* v, std::size_t n, double lo) {
    const __m256d vlo = _mm256_set1_pd(lo);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(v + i, _mm256_max_pd(_mm256_loadu_pd(v + i), vlo));
    }
    for (; i < n; ++i) v[i] = std::max(v[i], lo);
}

void cap_above_avx2(double* v, std::size_t n, double hi) {
    const __m256d vhi = _mm256_set1_pd(hi);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(v + i, _mm256_min_pd(_mm256_loadu_pd(v + i), vhi));
    }
    for (; i < n; ++i) v[i] = std::min(v[i], hi);
}

}  // namespace unigini::simd::detail

#endif  // __AVX2__
