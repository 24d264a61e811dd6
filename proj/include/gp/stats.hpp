#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gp/types.hpp"

namespace gp::stats {

enum class PMethod { exact, normal_approx };

inline const char* p_method_name(PMethod m) {
    return m == PMethod::exact ? "exact" : "normal_approx";
}

struct WilcoxonResult {
    std::size_t n_effective = 0;  // pairs with non-zero difference
    double w_plus = 0.0;
    double w_minus = 0.0;
    double statistic = 0.0;  // min(w_plus, w_minus)
    double p_two_sided = 1.0;
    PMethod method = PMethod::exact;
    bool sig_05 = false;  // p <= 0.05
    bool sig_01 = false;  // p <= 0.01
};

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped
// (Wilcoxon's original convention); |d| ties get average ranks. Exact p by
// full enumeration of the 2^n sign assignments when n_effective <= 20,
// normal approximation with tie and continuity correction above that.
// Throws LengthMismatch / AllZeroDifferences.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y);

// Exact tail count: how many of the 2^n sign assignments over `double_ranks`
// (ranks scaled by 2 so ties stay integral) reach min(W+, W-) <= stat2.
// Serial reference and OpenMP lane; both return identical counts.
std::uint64_t sign_assignments_at_or_below_serial(std::span<const std::int64_t> double_ranks,
                                                  std::int64_t stat2);
std::uint64_t sign_assignments_at_or_below(std::span<const std::int64_t> double_ranks,
                                           std::int64_t stat2);

// Average ranks of |d|, scaled by 2 so they stay integral under ties.
std::vector<std::int64_t> double_ranks_of_abs(std::span<const double> diffs);

double normal_approx_p(std::span<const std::int64_t> double_ranks, double statistic);

// Per-subject channel aggregates for one condition, keyed by subject id.
using ConditionValues = std::map<std::string, std::array<double, kNumChannels>>;

// One paired test per channel between two conditions. Every subject must
// appear in both maps (MissingSubjectValue otherwise).
std::array<WilcoxonResult, kNumChannels> compare_conditions(const ConditionValues& condition_a,
                                                            const ConditionValues& condition_b);

}  // namespace gp::stats
