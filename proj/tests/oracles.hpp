#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <vector>

// Test-only reference computations, independent of the library's
// implementation paths.

namespace testing_oracles {

// Direct double-loop weighted pairwise-difference Gini on [0,100].
inline double brute_force_gini(std::span<const double> x, std::span<const double> w) {
    const std::size_t n = x.size();
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            num += w[i] * w[j] * std::fabs(x[i] - x[j]);
        }
    }
    double total_w = 0.0, total_wx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total_w += w[i];
        total_wx += w[i] * x[i];
    }
    const double mean = total_wx / total_w;
    return 100.0 * num / (2.0 * total_w * total_w * mean);
}

struct RandomSample {
    std::vector<double> values;
    std::vector<double> weights;
};

// Mixed-weight samples: unit weights half the time, exponential-ish
// positive welfare with occasional zeros and ties.
inline RandomSample random_sample(std::mt19937_64& rng, std::size_t max_n = 50) {
    std::uniform_int_distribution<std::size_t> size_dist(2, max_n);
    std::uniform_real_distribution<double> value_dist(0.0, 1.0);
    std::uniform_real_distribution<double> weight_dist(0.1, 10.0);
    std::bernoulli_distribution unit_weights(0.5);
    std::bernoulli_distribution make_zero(0.05);
    std::bernoulli_distribution make_tie(0.1);

    RandomSample s;
    const std::size_t n = size_dist(rng);
    const bool units = unit_weights(rng);
    s.values.reserve(n);
    s.weights.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = -std::log(1.0 - value_dist(rng)) * 1000.0;
        if (make_zero(rng)) v = 0.0;
        if (i > 0 && make_tie(rng)) v = s.values[i - 1];
        s.values.push_back(v);
        s.weights.push_back(units ? 1.0 : weight_dist(rng));
    }
    // Guarantee a positive mean.
    if (s.values[0] == 0.0) s.values[0] = 1.0;
    return s;
}

}  // namespace testing_oracles
