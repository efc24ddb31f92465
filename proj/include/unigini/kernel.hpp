#pragma once

#include <optional>
#include <span>
#include <vector>

#include "unigini/vocab.hpp"

// Gini computation from microdata and grouped Lorenz data, plus the
// methodological transforms that drive cross-database discrepancies:
// equivalence scales, bottom treatment, top-coding. All operations are
// pure functions over immutable inputs; summations run in sorted-input
// order so results are deterministic.

namespace unigini::kernel {

// One household/individual welfare record. Welfare may be negative
// before bottom treatment. Composition (adults/children) is optional
// unless the OECD-modified scale is requested.
struct MicroRecord {
    double welfare = 0.0;
    double weight = 1.0;
    int household_size = 1;
    std::optional<int> adults;
    std::optional<int> children;
};

// Cumulative population share p and cumulative welfare share L.
// Sequences start implicitly at (0,0) and end at (1,1).
struct LorenzPoint {
    double p = 0.0;
    double L = 0.0;
};

struct GiniOptions {
    // Multiplies by n/(n-1). Off by default: the source databases report
    // uncorrected Ginis.
    bool small_sample_correction = false;
};

// Weighted Gini on the 0-100 point scale:
//   G = sum_i sum_j w_i w_j |x_i - x_j| / (2 W^2 mu)
// computed via a sorted single-pass formulation. Requires n >= 2,
// weights > 0, no negative welfare (run bottom treatment first), and a
// positive weighted mean; throws DataError otherwise.
double gini_microdata(std::span<const double> values, std::span<const double> weights,
                      const GiniOptions& options = {});
double gini_microdata(std::span<const MicroRecord> records, const GiniOptions& options = {});

// Trapezoid rule over the Lorenz curve, G = 1 - sum (p_i - p_{i-1})(L_i + L_{i-1}),
// scaled to [0,100]. Linear interpolation makes this a lower bound on the
// true Gini for grouped data. Throws DataError on violated monotonicity.
double gini_lorenz(std::span<const LorenzPoint> points);

// Equivalent welfare per person under the given scale. OECD-modified
// divides by 1 + 0.5*(adults-1) + 0.3*children and requires composition
// with at least one adult.
double equivalise(const MicroRecord& record, EqScale scale);

// The PIP bottom rule: drop negative values, raise values in [0, floor)
// to the floor. Order of survivors is preserved. The floor is a
// parameter; 0.28 matches the dollars-per-person-per-day rule the
// default is taken from.
inline constexpr double kPipFloor = 0.28;
std::vector<double> bottom_treatment_pip(std::span<const double> values,
                                         double floor = kPipFloor);

// Replace values above the cap by the cap. Requires cap > 0.
std::vector<double> top_code(std::span<const double> values, double cap);

}  // namespace unigini::kernel
