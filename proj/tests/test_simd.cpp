#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "unigini/kernel.hpp"
#include "unigini/simd.hpp"

using namespace unigini;

namespace {

// Vector lengths chosen to hit the lane width, remainders, and the
// scalar tail on both sides of the 4-double boundary.
const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 67, 1024};

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

bool close(double a, double b, double tol = 1e-12) {
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= tol * scale;
}

}  // namespace

TEST_CASE("simd backends available and selectable") {
    CHECK(simd::cpu_supports(simd::Backend::scalar));
    const simd::Backend original = simd::active_backend();
    simd::set_backend(simd::Backend::scalar);
    CHECK(simd::active_backend() == simd::Backend::scalar);
    simd::set_backend(original);
    CHECK(simd::backend_name(simd::Backend::avx2) == "avx2");
}

TEST_CASE("simd reduction kernels agree across backends") {
    if (!simd::cpu_supports(simd::Backend::avx2)) {
        MESSAGE("AVX2 not available on this CPU; scalar-only run");
        return;
    }
    const auto& scalar = simd::kernels(simd::Backend::scalar);
    const auto& avx2 = simd::kernels(simd::Backend::avx2);

    std::mt19937_64 rng(1337);
    for (std::size_t n : kSizes) {
        for (int rep = 0; rep < 8; ++rep) {
            auto a = random_vec(rng, n, -1e6, 1e6);
            auto b = random_vec(rng, n, -1e6, 1e6);

            CHECK(close(scalar.sum(a.data(), n), avx2.sum(a.data(), n)));
            CHECK(close(scalar.dot(a.data(), b.data(), n), avx2.dot(a.data(), b.data(), n),
                        1e-11));
            CHECK(close(scalar.abs_diff_sum(a.data(), b.data(), n),
                        avx2.abs_diff_sum(a.data(), b.data(), n)));

            if (n > 0) {
                double lo1 = 0, hi1 = 0, lo2 = 0, hi2 = 0;
                scalar.min_max(a.data(), n, &lo1, &hi1);
                avx2.min_max(a.data(), n, &lo2, &hi2);
                CHECK(lo1 == lo2);  // min/max are exact, not accumulated
                CHECK(hi1 == hi2);
            }
        }
    }
}

TEST_CASE("simd transform kernels agree across backends exactly") {
    if (!simd::cpu_supports(simd::Backend::avx2)) return;
    const auto& scalar = simd::kernels(simd::Backend::scalar);
    const auto& avx2 = simd::kernels(simd::Backend::avx2);

    std::mt19937_64 rng(7331);
    for (std::size_t n : kSizes) {
        auto a = random_vec(rng, n, -100.0, 100.0);
        auto b = random_vec(rng, n, -100.0, 100.0);

        std::vector<double> out1(n), out2(n);
        scalar.multiply(a.data(), b.data(), out1.data(), n);
        avx2.multiply(a.data(), b.data(), out2.data(), n);
        CHECK(out1 == out2);  // elementwise ops are rounding-identical

        auto f1 = a, f2 = a;
        scalar.floor_below(f1.data(), n, 0.28);
        avx2.floor_below(f2.data(), n, 0.28);
        CHECK(f1 == f2);

        auto c1 = a, c2 = a;
        scalar.cap_above(c1.data(), n, 10.0);
        avx2.cap_above(c2.data(), n, 10.0);
        CHECK(c1 == c2);
    }
}

TEST_CASE("dispatching wrappers follow the active backend") {
    std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0};
    const simd::Backend original = simd::active_backend();
    simd::set_backend(simd::Backend::scalar);
    CHECK(simd::sum(v) == 15.0);
    auto [lo, hi] = simd::min_max(v);
    CHECK(lo == 1.0);
    CHECK(hi == 5.0);
    simd::set_backend(original);
    CHECK(close(simd::sum(v), 15.0));
}

TEST_CASE("gini computation agrees across backends end to end") {
    if (!simd::cpu_supports(simd::Backend::avx2)) return;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> val(0.0, 1e5);
    std::uniform_real_distribution<double> wgt(0.1, 9.0);
    std::vector<double> v(2000), w(2000);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = val(rng);
        w[i] = wgt(rng);
    }
    const simd::Backend original = simd::active_backend();
    simd::set_backend(simd::Backend::scalar);
    const double scalar_g = unigini::kernel::gini_microdata(v, w);
    simd::set_backend(simd::Backend::avx2);
    const double avx2_g = unigini::kernel::gini_microdata(v, w);
    simd::set_backend(original);
    CHECK(std::fabs(scalar_g - avx2_g) < 1e-10);
}

TEST_CASE("empty inputs are well-defined for accumulators") {
    std::vector<double> empty;
    CHECK(simd::sum(empty) == 0.0);
    CHECK(simd::dot(empty, empty) == 0.0);
    CHECK(simd::abs_diff_sum(empty, empty) == 0.0);
}
