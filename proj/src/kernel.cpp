#include "unigini/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "unigini/errors.hpp"
#include "unigini/simd.hpp"

namespace unigini::kernel {

double gini_microdata(std::span<const double> values, std::span<const double> weights,
                      const GiniOptions& options) {
    const std::size_t n = values.size();
    if (weights.size() != n) throw DataError("values/weights size mismatch");
    if (n < 2) throw DataError("gini_microdata needs at least 2 records");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] > 0.0)) throw DataError("weights must be positive");
        if (!std::isfinite(values[i]) || !std::isfinite(weights[i])) {
            throw DataError("non-finite welfare or weight");
        }
        if (values[i] < 0.0) {
            throw DataError("negative welfare; apply bottom treatment first");
        }
    }

    // Sort by value so the pairwise sum reduces to prefix accumulations.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b] || (values[a] == values[b] && weights[a] < weights[b]);
    });

    std::vector<double> x(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = values[order[i]];
        w[i] = weights[order[i]];
    }

    // Exclusive prefix sums of w and w*x (sequential), then
    //   sum_{i<j} w_i w_j (x_j - x_i) = dot(wx, P) - dot(w, S).
    std::vector<double> wx(n), prefix_w(n), prefix_wx(n);
    simd::multiply(w, x, wx);
    double pw = 0.0, pwx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prefix_w[i] = pw;
        prefix_wx[i] = pwx;
        pw += w[i];
        pwx += wx[i];
    }
    const double total_weight = pw;
    const double total_wx = pwx;
    if (!(total_wx > 0.0)) throw DataError("undefined Gini: mean welfare must be positive");

    const double half_pairs = simd::dot(wx, prefix_w) - simd::dot(w, prefix_wx);
    // G = 2*half_pairs / (2 W^2 mu) with W^2 mu = W * sum(w x).
    double g = half_pairs / (total_weight * total_wx);
    if (options.small_sample_correction) {
        g *= static_cast<double>(n) / static_cast<double>(n - 1);
    }
    return 100.0 * g;
}

double gini_microdata(std::span<const MicroRecord> records, const GiniOptions& options) {
    std::vector<double> values, weights;
    values.reserve(records.size());
    weights.reserve(records.size());
    for (const auto& r : records) {
        values.push_back(r.welfare);
        weights.push_back(r.weight);
    }
    return gini_microdata(values, weights, options);
}

double gini_lorenz(std::span<const LorenzPoint> points) {
    if (points.empty()) throw DataError("empty Lorenz curve");
    constexpr double eps = 1e-12;
    double prev_p = 0.0, prev_L = 0.0;
    double area2 = 0.0;  // sum (p_i - p_{i-1}) (L_i + L_{i-1})
    for (const auto& pt : points) {
        if (!(pt.p > prev_p)) throw DataError("Lorenz p must be strictly increasing");
        if (pt.p > 1.0 + eps) throw DataError("Lorenz p must lie in (0,1]");
        if (pt.L < prev_L - eps) throw DataError("Lorenz L must be non-decreasing");
        if (pt.L < -eps || pt.L > 1.0 + eps) throw DataError("Lorenz L must lie in [0,1]");
        if (pt.L > pt.p + eps) throw DataError("Lorenz curve above diagonal (L > p)");
        area2 += (pt.p - prev_p) * (pt.L + prev_L);
        prev_p = pt.p;
        prev_L = pt.L;
    }
    if (std::fabs(prev_p - 1.0) > eps || std::fabs(prev_L - 1.0) > eps) {
        // Close the curve: the remaining population holds the remaining share.
        if (prev_p >= 1.0 - eps) throw DataError("Lorenz curve ends at p=1 with L<1");
        area2 += (1.0 - prev_p) * (1.0 + prev_L);
    }
    double g = 1.0 - area2;
    return 100.0 * std::clamp(g, 0.0, 1.0);
}

double equivalise(const MicroRecord& record, EqScale scale) {
    if (record.household_size < 1) throw DataError("household_size must be >= 1");
    switch (scale) {
        case EqScale::per_capita:
            return record.welfare / static_cast<double>(record.household_size);
        case EqScale::square_root:
            return record.welfare / std::sqrt(static_cast<double>(record.household_size));
        case EqScale::oecd_modified: {
            if (!record.adults || !record.children) {
                throw DataError("oecd_modified requires household composition");
            }
            const int adults = *record.adults;
            const int children = *record.children;
            if (adults < 0 || children < 0 ||
                adults + children != record.household_size) {
                throw DataError("composition must satisfy adults + children = household_size");
            }
            if (adults == 0) throw DataError("oecd_modified requires at least one adult");
            const double factor = 1.0 + 0.5 * (adults - 1) + 0.3 * children;
            return record.welfare / factor;
        }
        default:
            throw DataError("unsupported equivalence scale '" +
                            std::string(to_token(scale)) + "'");
    }
}

std::vector<double> bottom_treatment_pip(std::span<const double> values, double floor) {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (v < 0.0) continue;
        out.push_back(v);
    }
    simd::floor_below(out, floor);
    return out;
}

std::vector<double> top_code(std::span<const double> values, double cap) {
    if (!(cap > 0.0)) throw DataError("top_code cap must be positive");
    std::vector<double> out(values.begin(), values.end());
    simd::cap_above(out, cap);
    return out;
}

}  // namespace unigini::kernel
