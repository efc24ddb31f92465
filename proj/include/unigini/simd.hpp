#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>

// Data-parallel reduction and transform kernels shared by the Gini
// computations and the discordance statistics. Scalar versions are the
// reference; an AVX2 variant is selected at runtime when the CPU
// supports it. Variants are equivalence-tested against each other;
// lane-parallel accumulation may differ from strict left-to-right
// summation in the last bits, so callers must not expect bitwise
// equality across backends (results are deterministic for a fixed
// backend, which is fixed per process).

namespace unigini::simd {

enum class Backend { scalar, avx2 };

struct KernelTable {
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*abs_diff_sum)(const double*, const double*, std::size_t);
    void (*min_max)(const double*, std::size_t, double*, double*);  // n >= 1
    void (*multiply)(const double*, const double*, double*, std::size_t);
    void (*floor_below)(double*, std::size_t, double lo);  // v = max(v, lo)
    void (*cap_above)(double*, std::size_t, double hi);    // v = min(v, hi)
};

const KernelTable& kernels(Backend backend);

bool cpu_supports(Backend backend);
Backend active_backend();
void set_backend(Backend backend);  // throws ConfigError if unsupported
std::string_view backend_name(Backend backend);

// Dispatching wrappers over the active backend.
double sum(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double abs_diff_sum(std::span<const double> a, std::span<const double> b);
std::pair<double, double> min_max(std::span<const double> v);
void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out);
void floor_below(std::span<double> v, double lo);
void cap_above(std::span<double> v, double hi);

}  // namespace unigini::simd
