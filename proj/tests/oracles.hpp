// Independent brute-force oracles used only by tests. These deliberately
// avoid the library's algorithms: DTW is checked against explicit
// enumeration of every monotone warping path, the signed-rank p against
// direct enumeration of all 2^n sign vectors with its own O(n^2) ranking.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace oracle {

inline double local_cost(double x, double y, bool absolute) {
    const double d = x - y;
    return absolute ? std::abs(d) : d * d;
}

inline void walk_paths(std::span<const double> a, std::span<const double> b, bool absolute,
                       std::size_t i, std::size_t j, double acc, double& best) {
    acc += local_cost(a[i], b[j], absolute);
    if (i + 1 == a.size() && j + 1 == b.size()) {
        best = std::min(best, acc);
        return;
    }
    if (i + 1 < a.size()) walk_paths(a, b, absolute, i + 1, j, acc, best);
    if (j + 1 < b.size()) walk_paths(a, b, absolute, i, j + 1, acc, best);
    if (i + 1 < a.size() && j + 1 < b.size()) walk_paths(a, b, absolute, i + 1, j + 1, acc, best);
}

// minimum summed local cost over every monotone boundary-respecting path
inline double dtw_min_cost(std::span<const double> a, std::span<const double> b,
                           bool absolute = true) {
    double best = std::numeric_limits<double>::infinity();
    walk_paths(a, b, absolute, 0, 0, 0.0, best);
    return best;
}

// average ranks of |d| by pairwise counting (no sorting)
inline std::vector<double> abs_ranks(std::span<const double> diffs) {
    std::vector<double> ranks(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        std::size_t below = 0;
        std::size_t equal = 0;
        for (std::size_t j = 0; j < diffs.size(); ++j) {
            if (std::abs(diffs[j]) < std::abs(diffs[i])) ++below;
            if (std::abs(diffs[j]) == std::abs(diffs[i])) ++equal;
        }
        ranks[i] = static_cast<double>(below) + 0.5 * static_cast<double>(equal - 1) + 1.0;
    }
    return ranks;
}

// exact two-sided p of the signed-rank test on non-zero differences:
// fraction of sign vectors whose min(W+, W-) is at or below the observed one
inline double wilcoxon_exact_p(std::span<const double> diffs) {
    const std::vector<double> ranks = abs_ranks(diffs);
    const std::size_t n = diffs.size();
    double total = 0.0;
    for (double r : ranks) total += r;

    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) w_plus += ranks[i];
    }
    const double observed = std::min(w_plus, total - w_plus);

    std::uint64_t hits = 0;
    const std::uint64_t combos = 1ULL << n;
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1ULL << i)) w += ranks[i];
        }
        if (std::min(w, total - w) <= observed + 1e-9) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(combos);
}

}  // namespace oracle
