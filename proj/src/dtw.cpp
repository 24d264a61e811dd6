#include "gp/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "gp/errors.hpp"

namespace gp::dtw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double local(double x, double y, LocalCost cost) {
    const double d = x - y;
    return cost == LocalCost::abs_diff ? std::abs(d) : d * d;
}

void check_inputs(std::span<const double> a, std::span<const double> b, const DtwConfig& cfg) {
    if (a.empty() || b.empty()) throw EmptySeries("dtw requires non-empty series");
    if (cfg.window) {
        const auto gap = std::abs(static_cast<long>(a.size()) - static_cast<long>(b.size()));
        if (*cfg.window < gap) {
            throw InfeasibleWindow("window " + std::to_string(*cfg.window) +
                                   " cannot bridge length gap " + std::to_string(gap));
        }
    }
}

inline int band_lo(int i, int w, int m) {
    (void)m;
    return std::max(0, i - w);
}

inline int band_hi(int i, int w, int m) { return std::min(m - 1, i + w); }

}  // namespace

DtwResult dtw_distance(std::span<const double> a, std::span<const double> b,
                       const DtwConfig& cfg) {
    check_inputs(a, b, cfg);
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(b.size());
    const int w = cfg.window.value_or(std::max(n, m));

    std::vector<double> dp(static_cast<std::size_t>(n) * m, kInf);
    auto at = [&](int i, int j) -> double& { return dp[static_cast<std::size_t>(i) * m + j]; };

    for (int i = 0; i < n; ++i) {
        const int jlo = band_lo(i, w, m);
        const int jhi = band_hi(i, w, m);
        for (int j = jlo; j <= jhi; ++j) {
            const double c = local(a[static_cast<std::size_t>(i)],
                                   b[static_cast<std::size_t>(j)], cfg.local_cost);
            if (i == 0 && j == 0) {
                at(i, j) = c;
                continue;
            }
            double best = kInf;
            if (i > 0 && j > 0) best = at(i - 1, j - 1);
            if (i > 0) best = std::min(best, at(i - 1, j));
            if (j > 0) best = std::min(best, at(i, j - 1));
            at(i, j) = c + best;
        }
    }

    DtwResult result;
    // backtrack, preferring the diagonal on ties
    std::vector<std::pair<int, int>> rev;
    int i = n - 1;
    int j = m - 1;
    rev.emplace_back(i, j);
    while (i > 0 || j > 0) {
        if (i == 0) {
            --j;
        } else if (j == 0) {
            --i;
        } else {
            const double diag = at(i - 1, j - 1);
            const double up = at(i - 1, j);
            const double left = at(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        rev.emplace_back(i, j);
    }
    result.path.assign(rev.rbegin(), rev.rend());

    const double raw = at(n - 1, m - 1);
    result.distance = cfg.normalize == Normalize::path_length
                          ? raw / static_cast<double>(result.path.size())
                          : raw;
    return result;
}

double dtw_cost(std::span<const double> a, std::span<const double> b, const DtwConfig& cfg) {
    if (cfg.normalize != Normalize::none) return dtw_distance(a, b, cfg).distance;
    check_inputs(a, b, cfg);
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(b.size());
    const int w = cfg.window.value_or(std::max(n, m));

    std::vector<double> prev(static_cast<std::size_t>(m), kInf);
    std::vector<double> cur(static_cast<std::size_t>(m), kInf);
    for (int i = 0; i < n; ++i) {
        std::fill(cur.begin(), cur.end(), kInf);
        const int jlo = band_lo(i, w, m);
        const int jhi = band_hi(i, w, m);
        for (int j = jlo; j <= jhi; ++j) {
            const double c = local(a[static_cast<std::size_t>(i)],
                                   b[static_cast<std::size_t>(j)], cfg.local_cost);
            if (i == 0 && j == 0) {
                cur[0] = c;
                continue;
            }
            double best = kInf;
            if (i > 0 && j > 0) best = prev[static_cast<std::size_t>(j - 1)];
            if (i > 0) best = std::min(best, prev[static_cast<std::size_t>(j)]);
            if (j > 0) best = std::min(best, cur[static_cast<std::size_t>(j - 1)]);
            cur[static_cast<std::size_t>(j)] = c + best;
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(m - 1)];
}

std::vector<double> step_distances_serial(const std::vector<StepWaveform>& steps,
                                          const ReferenceWaveform& ref, Channel channel,
                                          const DtwConfig& cfg) {
    const auto& ref_series = ref.channels[static_cast<int>(channel)];
    std::vector<double> out(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        out[i] = dtw_cost(steps[i].channels[static_cast<int>(channel)], ref_series, cfg);
    }
    return out;
}

std::vector<double> step_distances(const std::vector<StepWaveform>& steps,
                                   const ReferenceWaveform& ref, Channel channel,
                                   const DtwConfig& cfg) {
    const auto& ref_series = ref.channels[static_cast<int>(channel)];
    // validate up front; nothing may throw inside the parallel region
    for (const StepWaveform& s : steps) {
        check_inputs(s.channels[static_cast<int>(channel)], ref_series, cfg);
    }
    std::vector<double> out(steps.size());
    const auto count = static_cast<std::ptrdiff_t>(steps.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] =
            dtw_cost(steps[static_cast<std::size_t>(i)].channels[static_cast<int>(channel)],
                     ref_series, cfg);
    }
    return out;
}

}  // namespace gp::dtw
