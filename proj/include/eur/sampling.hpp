// Copyright 2026 The eurqrng Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The classical sampling strategy: choose a uniform m-subset t of N = m + n
// positions, estimate the relative weight of the unobserved part of a string
// by the weight of the observed part. Provides the analytic failure bound,
// the constants derived from it, and Monte Carlo / exact estimates of the
// failure probability.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "eur/entmath.hpp"
#include "eur/errors.hpp"
#include "eur/parallel.hpp"
#include "eur/rng.hpp"

namespace eur {

struct SamplingParams {
    std::uint32_t d = 2;
    std::uint64_t m = 1;
    std::uint64_t n = 2;
    double epsilon = 1e-36;
    double beta = 1.0 / 3.0;

    std::uint64_t total() const { return m + n; }

    void validate() const {
        detail::require(d >= 2 && d <= kMaxAlphabet, "SamplingParams: d must be in [2, 2^20]");
        detail::require(m >= 1, "SamplingParams: m must be >= 1");
        detail::require(m < n, "SamplingParams: requires m < n");
        detail::require(epsilon > 0.0 && epsilon < 1.0, "SamplingParams: epsilon must lie in (0, 1)");
        detail::require(beta > 0.0 && beta < 0.5, "SamplingParams: beta must lie in (0, 1/2)");
    }
};

/// Sorted distinct 0-based positions of the sampled sites among N.
struct SubsetIndex {
    std::vector<std::uint64_t> indices;
    std::uint64_t N = 0;

    std::uint64_t size() const { return indices.size(); }

    void validate() const {
        detail::require(std::is_sorted(indices.begin(), indices.end()), "SubsetIndex: indices not sorted");
        detail::require(std::adjacent_find(indices.begin(), indices.end()) == indices.end(),
                        "SubsetIndex: duplicate index");
        detail::require(indices.empty() || indices.back() < N, "SubsetIndex: index out of range");
    }

    /// Positions not in the subset, ascending.
    std::vector<std::uint64_t> complement() const {
        std::vector<std::uint64_t> rest;
        rest.reserve(N - indices.size());
        std::size_t j = 0;
        for (std::uint64_t i = 0; i < N; ++i) {
            if (j < indices.size() && indices[j] == i) {
                ++j;
            } else {
                rest.push_back(i);
            }
        }
        return rest;
    }
};

/// delta = sqrt((m+n+2) ln(2/eps^2) / (m (m+n))); makes the square root of
/// the Lemma-2-style failure bound equal to eps.
inline double delta_from_epsilon(std::uint64_t m, std::uint64_t n, double epsilon) {
    detail::require(m >= 1 && n >= 1, "delta_from_epsilon: m and n must be positive");
    detail::require(epsilon > 0.0 && epsilon < 1.0, "delta_from_epsilon: epsilon must lie in (0, 1)");
    const double total = static_cast<double>(m) + static_cast<double>(n);
    // ln(2/eps^2) without forming eps^2, which underflows for eps < 1e-154.
    const double log_term = std::numbers::ln2 - 2.0 * std::log(epsilon);
    return std::sqrt((total + 2.0) * log_term / (static_cast<double>(m) * total));
}

inline double delta_from_epsilon(const SamplingParams &p) {
    p.validate();
    return delta_from_epsilon(p.m, p.n, p.epsilon);
}

/// min(1, 2 exp(-delta^2 m (n+m) / (m+n+2))).
inline double lemma2_bound(double delta, std::uint64_t m, std::uint64_t n) {
    detail::require(delta > 0.0, "lemma2_bound: delta must be positive");
    detail::require(m >= 1 && m < n, "lemma2_bound: requires 1 <= m < n");
    const double total = static_cast<double>(m) + static_cast<double>(n);
    const double exponent = -delta * delta * static_cast<double>(m) * total / (total + 2.0);
    return std::min(1.0, 2.0 * std::exp(exponent));
}

struct Theorem1Epsilons {
    double eps_prime;   // smoothing parameter, 4 eps + 2 eps^beta
    double eps_dprime;  // failure probability, 2 eps^(1 - 2 beta)
};

inline Theorem1Epsilons theorem1_epsilons(double epsilon, double beta) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "theorem1_epsilons: epsilon must lie in (0, 1)");
    detail::require(beta > 0.0 && beta < 0.5, "theorem1_epsilons: beta must lie in (0, 1/2)");
    return {4.0 * epsilon + 2.0 * std::pow(epsilon, beta), 2.0 * std::pow(epsilon, 1.0 - 2.0 * beta)};
}

/// Distance from uniform claimed for the QRNG output: 9 eps + 4 eps^beta.
inline double protocol_pa_epsilon(double epsilon, double beta) {
    detail::require(epsilon > 0.0 && epsilon < 1.0, "protocol_pa_epsilon: epsilon must lie in (0, 1)");
    detail::require(beta > 0.0 && beta < 0.5, "protocol_pa_epsilon: beta must lie in (0, 1/2)");
    return 9.0 * epsilon + 4.0 * std::pow(epsilon, beta);
}

namespace detail {

// Exact test of gap / (m n) <= delta, where gap = |k n - (W - k) m| is the
// scaled difference between sampled and unsampled relative weights. The
// comparison is exact in the binary value of delta so that boundary cases do
// not depend on the rounding of intermediate quotients.
inline bool gap_within(unsigned __int128 gap, unsigned __int128 mn, double delta) {
    if (gap == 0) {
        return delta >= 0.0;
    }
    if (delta >= 1.0) {
        return gap <= mn;
    }
    if (delta <= 0.0) {
        return false;
    }
    int exp2 = 0;
    const double frac = std::frexp(delta, &exp2);  // delta = frac * 2^exp2, exp2 <= 0
    const auto mant = static_cast<unsigned __int128>(std::ldexp(frac, 53));
    const int shift = 53 - exp2;  // delta = mant / 2^shift
    int gap_bits = 0;
    for (auto g = gap; g != 0; g >>= 1) {
        ++gap_bits;
    }
    if (gap_bits + shift >= 127) {
        return false;  // gap * 2^shift exceeds mant * mn < 2^117
    }
    return (gap << shift) <= mant * mn;
}

}  // namespace detail

/// True when the sampled estimate misses: |k/m - (W-k)/n| > delta for a
/// string of total weight W with k nonzeros inside the sample.
inline bool estimate_misses(std::uint64_t k, std::uint64_t total_weight, std::uint64_t m, std::uint64_t n,
                            double delta) {
    using u128 = unsigned __int128;
    const u128 lhs = u128{k} * n;
    const u128 rhs = u128{total_weight - k} * m;
    const u128 gap = lhs > rhs ? lhs - rhs : rhs - lhs;
    return !detail::gap_within(gap, u128{m} * n, delta);
}

/// Uniform m-subset of {0, ..., N-1}, sorted.
inline SubsetIndex sample_subset(std::uint64_t N, std::uint64_t m, Rng &rng) {
    detail::require(m >= 1 && m < N, "sample_subset: requires 1 <= m < N");
    SubsetIndex t;
    t.N = N;
    t.indices.reserve(m);
    if (m * 4 <= N) {
        // Floyd's algorithm: O(m) draws, no O(N) scratch.
        std::unordered_set<std::uint64_t> chosen;
        chosen.reserve(m);
        for (std::uint64_t j = N - m; j < N; ++j) {
            const std::uint64_t r = rng.below(j + 1);
            t.indices.push_back(chosen.insert(r).second ? r : (chosen.insert(j), j));
        }
    } else {
        std::vector<std::uint64_t> perm(N);
        std::iota(perm.begin(), perm.end(), std::uint64_t{0});
        for (std::uint64_t i = 0; i < m; ++i) {
            const std::uint64_t j = i + rng.below(N - i);
            std::swap(perm[i], perm[j]);
        }
        t.indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
    }
    std::sort(t.indices.begin(), t.indices.end());
    return t;
}

/// Membership in B_t^delta: |w(q_t) - w(q_-t)| <= delta.
inline bool in_B_set(const DString &q, const SubsetIndex &t, double delta) {
    detail::require(q.size() == t.N, "in_B_set: string length does not match subset universe");
    detail::require(delta >= 0.0, "in_B_set: delta must be nonnegative");
    t.validate();
    const std::uint64_t m = t.size();
    detail::require(m >= 1 && m < t.N, "in_B_set: subset must be nonempty and proper");
    std::uint64_t k = 0;
    for (auto i : t.indices) {
        k += q[i] != 0;
    }
    return !estimate_misses(k, q.hamming_weight(), m, t.N - m, delta);
}

enum class EstimateMethod { automatic, monte_carlo, exact };

struct EstimateOptions {
    EstimateMethod method = EstimateMethod::automatic;
    unsigned workers = 1;
    /// automatic switches to the exact evaluation below this many subsets
    double exact_subset_limit = 1e6;
};

struct ErrorEstimate {
    double estimate = 0.0;
    double ci_halfwidth = 0.0;  // 99% Wilson interval, symmetric around estimate
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    bool exact = false;
    std::uint64_t seed = 0;
};

inline constexpr double kZ99 = 2.5758293035489004;

/// Frequency estimate with a symmetric half-width covering the 99% Wilson interval.
inline ErrorEstimate make_estimate(std::uint64_t failures, std::uint64_t trials) {
    ErrorEstimate e;
    e.trials = trials;
    e.failures = failures;
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / nt;
    e.estimate = p;
    e.std_error = std::sqrt(p * (1.0 - p) / nt);
    const double z2 = kZ99 * kZ99;
    const double denom = 1.0 + z2 / nt;
    const double center = (p + z2 / (2.0 * nt)) / denom;
    const double half = kZ99 * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / denom;
    e.ci_halfwidth = std::max(std::abs(center + half - p), std::abs(p - (center - half)));
    return e;
}

/// Exact failure probability for a string of total weight W, summing the
/// hypergeometric law of the sampled nonzero count. Every string of weight W
/// has the same value because the subset is uniform.
inline double exact_error_probability(std::uint64_t N, std::uint64_t m, std::uint64_t total_weight, double delta) {
    detail::require(m >= 1 && m < N, "exact_error_probability: requires 1 <= m < N");
    detail::require(total_weight <= N, "exact_error_probability: weight exceeds length");
    const std::uint64_t n = N - m;
    const std::uint64_t W = total_weight;
    const std::uint64_t k_lo = W > n ? W - n : 0;
    const std::uint64_t k_hi = std::min(W, m);
    const double log_total = log_binomial(static_cast<std::int64_t>(N), static_cast<std::int64_t>(m));
    double p = 0.0;
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
        if (!estimate_misses(k, W, m, n, delta)) {
            continue;
        }
        p += std::exp(log_binomial(static_cast<std::int64_t>(W), static_cast<std::int64_t>(k)) +
                      log_binomial(static_cast<std::int64_t>(N - W), static_cast<std::int64_t>(m - k)) -
                      log_total);
    }
    return std::min(1.0, p);
}

namespace detail {

inline constexpr std::uint64_t kChunkTrials = 8192;

inline bool use_exact(std::uint64_t N, std::uint64_t m, const EstimateOptions &opts) {
    switch (opts.method) {
    case EstimateMethod::exact:
        return true;
    case EstimateMethod::monte_carlo:
        return false;
    case EstimateMethod::automatic:
        break;
    }
    return log_binomial(static_cast<std::int64_t>(N), static_cast<std::int64_t>(m)) <=
           std::log(opts.exact_subset_limit);
}

// Draws m distinct positions into perm[0..m) by a partial Fisher-Yates pass.
// perm stays a permutation between calls, so no reset is needed.
inline void partial_shuffle(std::vector<std::uint64_t> &perm, std::uint64_t m, Rng &rng) {
    const std::uint64_t N = perm.size();
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::uint64_t j = i + rng.below(N - i);
        std::swap(perm[i], perm[j]);
    }
}

inline ErrorEstimate exact_estimate(std::uint64_t N, std::uint64_t m, std::uint64_t W, double delta) {
    ErrorEstimate e;
    e.estimate = exact_error_probability(N, m, W, delta);
    e.exact = true;
    return e;
}

}  // namespace detail

/// Failure probability of the sampling estimate for a fixed string q:
/// Pr_t[q not in B_t^delta] over uniform m-subsets t. Monte Carlo with a
/// 99% interval, or exact when the options select it. Consumes one draw of
/// `rng` as the base seed; trial chunks use seeds derived from it, so the
/// result does not depend on the worker count.
inline ErrorEstimate estimate_error_probability(const DString &q, double delta, std::uint64_t m,
                                                std::uint64_t trials, Rng &rng,
                                                const EstimateOptions &opts = {}) {
    const std::uint64_t N = q.size();
    detail::require(m >= 1 && m < N, "estimate_error_probability: requires 1 <= m < |q|");
    detail::require(delta >= 0.0, "estimate_error_probability: delta must be nonnegative");
    const std::uint64_t base_seed = rng();
    const std::uint64_t W = q.hamming_weight();
    if (detail::use_exact(N, m, opts)) {
        auto e = detail::exact_estimate(N, m, W, delta);
        e.seed = base_seed;
        return e;
    }
    detail::require(trials >= 1000, "estimate_error_probability: at least 1000 trials required");
    const std::uint64_t n = N - m;
    std::vector<std::uint8_t> nonzero(N);
    for (std::uint64_t i = 0; i < N; ++i) {
        nonzero[i] = q[i] != 0;
    }
    const std::uint64_t chunks = (trials + detail::kChunkTrials - 1) / detail::kChunkTrials;
    std::vector<std::uint64_t> failures(chunks, 0);
    parallel_for(chunks, opts.workers, [&](std::size_t c) {
        Rng local(derive_seed(base_seed, c));
        std::vector<std::uint64_t> perm(N);
        std::iota(perm.begin(), perm.end(), std::uint64_t{0});
        const std::uint64_t begin = c * detail::kChunkTrials;
        const std::uint64_t end = std::min(trials, begin + detail::kChunkTrials);
        std::uint64_t fails = 0;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            detail::partial_shuffle(perm, m, local);
            std::uint64_t k = 0;
            for (std::uint64_t i = 0; i < m; ++i) {
                k += nonzero[perm[i]];
            }
            fails += estimate_misses(k, W, m, n, delta);
        }
        failures[c] = fails;
    });
    auto e = make_estimate(std::accumulate(failures.begin(), failures.end(), std::uint64_t{0}), trials);
    e.seed = base_seed;
    return e;
}

struct WeightClassEstimate {
    std::uint64_t weight = 0;
    ErrorEstimate estimate;
};

struct WorstCaseEstimate {
    std::uint64_t worst_weight = 0;
    ErrorEstimate estimate;
    std::vector<WeightClassEstimate> scanned;  // every class evaluated, ascending weight per pass
    std::uint64_t seed = 0;
};

namespace detail {

// Monte Carlo estimates for several weight classes from shared subset draws.
// The class of weight W is represented by the string with its first W
// positions nonzero; k_W is the number of sampled positions below W.
inline std::vector<ErrorEstimate> scan_weight_classes(std::uint64_t m, std::uint64_t n, double delta,
                                                      const std::vector<std::uint64_t> &weights,
                                                      std::uint64_t trials, std::uint64_t base_seed,
                                                      unsigned workers) {
    const std::uint64_t N = m + n;
    const std::uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<std::vector<std::uint64_t>> failures(chunks, std::vector<std::uint64_t>(weights.size(), 0));
    parallel_for(chunks, workers, [&](std::size_t c) {
        Rng local(derive_seed(base_seed, c));
        std::vector<std::uint64_t> perm(N);
        std::iota(perm.begin(), perm.end(), std::uint64_t{0});
        std::vector<std::uint8_t> marked(N, 0);
        auto &fails = failures[c];
        const std::uint64_t begin = c * kChunkTrials;
        const std::uint64_t end = std::min(trials, begin + kChunkTrials);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            partial_shuffle(perm, m, local);
            for (std::uint64_t i = 0; i < m; ++i) {
                marked[perm[i]] = 1;
            }
            std::uint64_t pos = 0;
            std::uint64_t k = 0;
            for (std::size_t w = 0; w < weights.size(); ++w) {
                const std::uint64_t W = weights[w];
                for (; pos < W; ++pos) {
                    k += marked[pos];
                }
                fails[w] += estimate_misses(k, W, m, n, delta);
            }
            for (std::uint64_t i = 0; i < m; ++i) {
                marked[perm[i]] = 0;
            }
        }
    });
    std::vector<ErrorEstimate> out;
    out.reserve(weights.size());
    for (std::size_t w = 0; w < weights.size(); ++w) {
        std::uint64_t total = 0;
        for (const auto &f : failures) {
            total += f[w];
        }
        out.push_back(make_estimate(total, trials));
        out.back().seed = base_seed;
    }
    return out;
}

}  // namespace detail

/// Worst case over strings q of the sampling failure probability. For a
/// uniform subset the failure probability depends on q only through its
/// Hamming weight, so the maximum is taken over the N+1 weight classes:
/// all of them when N <= 200, otherwise every ceil(N/50)-th class followed by
/// a full scan of the neighbourhood of the coarse maximum.
inline WorstCaseEstimate worst_case_error_estimate(std::uint32_t d, std::uint64_t m, std::uint64_t n,
                                                   double delta, std::uint64_t trials, Rng &rng,
                                                   const EstimateOptions &opts = {}) {
    detail::require(d >= 2 && d <= kMaxAlphabet, "worst_case_error_estimate: d must be in [2, 2^20]");
    detail::require(m >= 1 && m < n, "worst_case_error_estimate: requires 1 <= m < n");
    detail::require(delta >= 0.0, "worst_case_error_estimate: delta must be nonnegative");
    const std::uint64_t N = m + n;
    WorstCaseEstimate result;
    result.seed = rng();
    const bool exact = detail::use_exact(N, m, opts);
    if (!exact) {
        detail::require(trials >= 1000, "worst_case_error_estimate: at least 1000 trials required");
    }

    auto evaluate = [&](const std::vector<std::uint64_t> &weights, std::uint64_t stream) {
        std::vector<ErrorEstimate> est;
        if (exact) {
            for (auto W : weights) {
                est.push_back(detail::exact_estimate(N, m, W, delta));
            }
        } else {
            est = detail::scan_weight_classes(m, n, delta, weights, trials, derive_seed(result.seed, stream),
                                              opts.workers);
        }
        for (std::size_t i = 0; i < weights.size(); ++i) {
            result.scanned.push_back({weights[i], est[i]});
        }
    };

    auto argmax_in = [&](std::size_t from) {
        std::size_t best = from;
        for (std::size_t i = from; i < result.scanned.size(); ++i) {
            if (result.scanned[i].estimate.estimate > result.scanned[best].estimate.estimate) {
                best = i;
            }
        }
        return best;
    };

    std::vector<std::uint64_t> weights;
    if (N <= 200 || exact) {
        weights.resize(N + 1);
        std::iota(weights.begin(), weights.end(), std::uint64_t{0});
        evaluate(weights, 0);
    } else {
        const std::uint64_t step = (N + 49) / 50;
        for (std::uint64_t W = 0; W < N; W += step) {
            weights.push_back(W);
        }
        weights.push_back(N);
        evaluate(weights, 0);
        const std::uint64_t center = result.scanned[argmax_in(0)].weight;
        const std::uint64_t lo = center > step ? center - step : 0;
        const std::uint64_t hi = std::min(N, center + step);
        std::vector<std::uint64_t> fine;
        for (std::uint64_t W = lo; W <= hi; ++W) {
            fine.push_back(W);
        }
        evaluate(fine, 1);
    }
    const auto best = result.scanned[argmax_in(0)];
    result.worst_weight = best.weight;
    result.estimate = best.estimate;
    return result;
}

}  // namespace eur
