#include "gp/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gp/errors.hpp"

namespace gp::stats {

std::vector<std::int64_t> double_ranks_of_abs(std::span<const double> diffs) {
    const std::size_t n = diffs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(diffs[a]) < std::abs(diffs[b]);
    });

    std::vector<std::int64_t> ranks2(n, 0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) ++j;
        // tie group occupies 1-based ranks i+1 .. j+1; average rank * 2 = (i+1)+(j+1)
        const std::int64_t r2 = static_cast<std::int64_t>(i + 1) + static_cast<std::int64_t>(j + 1);
        for (std::size_t k = i; k <= j; ++k) ranks2[order[k]] = r2;
        i = j + 1;
    }
    return ranks2;
}

namespace {

// Gray-code walk over sign assignments in [begin, end): each step flips one
// bit of the member set, so the running rank sum updates in O(1).
std::uint64_t count_range(std::span<const std::int64_t> ranks2, std::int64_t stat2,
                          std::int64_t total2, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t gray = begin ^ (begin >> 1);
    std::int64_t sum = 0;
    for (std::size_t b = 0; b < ranks2.size(); ++b) {
        if (gray & (1ULL << b)) sum += ranks2[b];
    }
    std::uint64_t count = 0;
    std::uint64_t mask = begin;
    while (true) {
        if (std::min(sum, total2 - sum) <= stat2) ++count;
        if (++mask >= end) break;
        const unsigned bit = static_cast<unsigned>(std::countr_zero(mask));
        const std::uint64_t flipped = 1ULL << bit;
        gray ^= flipped;
        sum += (gray & flipped) ? ranks2[bit] : -ranks2[bit];
    }
    return count;
}

std::int64_t total_double_rank(std::span<const std::int64_t> ranks2) {
    return std::accumulate(ranks2.begin(), ranks2.end(), std::int64_t{0});
}

}  // namespace

std::uint64_t sign_assignments_at_or_below_serial(std::span<const std::int64_t> double_ranks,
                                                  std::int64_t stat2) {
    const std::uint64_t total = 1ULL << double_ranks.size();
    return count_range(double_ranks, stat2, total_double_rank(double_ranks), 0, total);
}

std::uint64_t sign_assignments_at_or_below(std::span<const std::int64_t> double_ranks,
                                           std::int64_t stat2) {
    const std::size_t n = double_ranks.size();
    const std::uint64_t total = 1ULL << n;
    const std::int64_t total2 = total_double_rank(double_ranks);
    if (n < 16) return count_range(double_ranks, stat2, total2, 0, total);

    constexpr std::uint64_t kChunks = 64;
    const std::uint64_t chunk = total / kChunks;
    std::uint64_t count = 0;
#pragma omp parallel for reduction(+ : count)
    for (std::uint64_t c = 0; c < kChunks; ++c) {
        count += count_range(double_ranks, stat2, total2, c * chunk,
                             c + 1 == kChunks ? total : (c + 1) * chunk);
    }
    return count;
}

double normal_approx_p(std::span<const std::int64_t> double_ranks, double statistic) {
    const double n = static_cast<double>(double_ranks.size());
    const double mu = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;

    // tie correction: groups share a double-rank value
    std::vector<std::int64_t> sorted(double_ranks.begin(), double_ranks.end());
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if (var <= 0.0) return 1.0;

    const double z = (statistic - mu + 0.5) / std::sqrt(var);
    const double p = std::erfc(-z / std::sqrt(2.0));
    return std::clamp(p, 0.0, 1.0);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) {
        throw LengthMismatch("paired samples must have equal non-zero length");
    }
    std::vector<double> diffs;
    diffs.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        if (d != 0.0) diffs.push_back(d);
    }
    if (diffs.empty()) {
        throw AllZeroDifferences("all paired differences are zero; test undefined");
    }

    const std::vector<std::int64_t> ranks2 = double_ranks_of_abs(diffs);
    std::int64_t w2_plus = 0;
    std::int64_t w2_minus = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        (diffs[i] > 0.0 ? w2_plus : w2_minus) += ranks2[i];
    }

    WilcoxonResult r;
    r.n_effective = diffs.size();
    r.w_plus = static_cast<double>(w2_plus) / 2.0;
    r.w_minus = static_cast<double>(w2_minus) / 2.0;
    const std::int64_t stat2 = std::min(w2_plus, w2_minus);
    r.statistic = static_cast<double>(stat2) / 2.0;

    if (r.n_effective <= 20) {
        r.method = PMethod::exact;
        const std::uint64_t count = sign_assignments_at_or_below(ranks2, stat2);
        r.p_two_sided =
            static_cast<double>(count) / static_cast<double>(1ULL << r.n_effective);
    } else {
        r.method = PMethod::normal_approx;
        r.p_two_sided = normal_approx_p(ranks2, r.statistic);
    }
    r.sig_05 = r.p_two_sided <= 0.05;
    r.sig_01 = r.p_two_sided <= 0.01;
    return r;
}

std::array<WilcoxonResult, kNumChannels> compare_conditions(const ConditionValues& condition_a,
                                                            const ConditionValues& condition_b) {
    for (const auto& [subject, _] : condition_a) {
        if (!condition_b.count(subject)) {
            throw MissingSubjectValue("subject " + subject + " has no value in condition b");
        }
    }
    for (const auto& [subject, _] : condition_b) {
        if (!condition_a.count(subject)) {
            throw MissingSubjectValue("subject " + subject + " has no value in condition a");
        }
    }

    std::array<WilcoxonResult, kNumChannels> results;
    for (int c = 0; c < kNumChannels; ++c) {
        std::vector<double> a;
        std::vector<double> b;
        a.reserve(condition_a.size());
        b.reserve(condition_b.size());
        for (const auto& [subject, values] : condition_a) {
            a.push_back(values[static_cast<std::size_t>(c)]);
            b.push_back(condition_b.at(subject)[static_cast<std::size_t>(c)]);
        }
        results[static_cast<std::size_t>(c)] = wilcoxon_signed_rank(a, b);
    }
    return results;
}

}  // namespace gp::stats
