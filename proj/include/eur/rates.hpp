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

// Closed-form key lengths for the source-independent QRNG and the two
// baseline analyses, under the depolarizing-noise observable model.
// All lengths are in bits; "log" means log base 2 throughout.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "eur/basis.hpp"
#include "eur/entmath.hpp"
#include "eur/errors.hpp"
#include "eur/parallel.hpp"
#include "eur/sampling.hpp"

namespace eur {

struct ProtocolParams {
    std::uint32_t d = 4;
    std::uint64_t N = 1000;
    double sample_fraction = 0.07;
    double epsilon = 1e-36;
    double beta = 1.0 / 3.0;
    double eps_prime_ell2 = 4e-12;

    /// round(sample_fraction * N), ties up, at least 1.
    std::uint64_t m() const {
        const auto rounded = static_cast<std::uint64_t>(std::floor(sample_fraction * static_cast<double>(N) + 0.5));
        return std::max<std::uint64_t>(1, rounded);
    }
    std::uint64_t n() const { return N - std::min(N, m()); }

    /// Checks everything except m < n, which sweeps report per point.
    void validate_ranges() const {
        detail::require(d >= 2 && d <= kMaxAlphabet, "ProtocolParams: d must be in [2, 2^20]");
        detail::require(N >= 2, "ProtocolParams: N must be >= 2");
        detail::require(sample_fraction > 0.0 && sample_fraction < 0.5,
                        "ProtocolParams: sample_fraction must lie in (0, 1/2)");
        detail::require(epsilon > 0.0 && epsilon < 1.0, "ProtocolParams: epsilon must lie in (0, 1)");
        detail::require(beta > 0.0 && beta < 0.5, "ProtocolParams: beta must lie in (0, 1/2)");
        detail::require(eps_prime_ell2 > 0.0 && eps_prime_ell2 < 1.0,
                        "ProtocolParams: eps_prime_ell2 must lie in (0, 1)");
    }

    void validate() const {
        validate_ranges();
        detail::require(m() < n(), "ProtocolParams: derived m must be smaller than n");
    }

    SamplingParams sampling() const { return {d, m(), n(), epsilon, beta}; }
};

struct NoiseObservables {
    double w_obs = 0.0;          // relative weight of the test string
    std::vector<double> counts;  // c_0..c_{d-1}, real-valued, sum m
    double d0 = 0.0;

    void validate(std::uint32_t d, std::uint64_t m) const {
        detail::require(w_obs >= 0.0 && w_obs <= 1.0, "NoiseObservables: w_obs must lie in [0, 1]");
        detail::require(counts.size() == d, "NoiseObservables: need one count per outcome");
        double sum = 0.0;
        for (double c : counts) {
            detail::require(c >= 0.0, "NoiseObservables: negative count");
            sum += c;
        }
        detail::require(std::abs(sum - static_cast<double>(m)) <= 1e-9 * std::max(1.0, static_cast<double>(m)),
                        "NoiseObservables: counts do not sum to m");
        detail::require(d0 >= 0.0 && d0 <= static_cast<double>(d - 1), "NoiseObservables: d0 must lie in [0, d-1]");
    }
};

/// Depolarizing channel of strength x: w = x, c_0 = m(1-x),
/// c_i = m x / (d-1) for i != 0, d0 = x. Counts stay real-valued.
inline NoiseObservables depolarizing_observables(double x, std::uint32_t d, std::uint64_t m) {
    detail::require(x >= 0.0 && x <= 1.0, "depolarizing_observables: x must lie in [0, 1]");
    detail::require(d >= 2, "depolarizing_observables: d must be >= 2");
    NoiseObservables obs;
    obs.w_obs = x;
    const double md = static_cast<double>(m);
    obs.counts.assign(d, md * x / static_cast<double>(d - 1));
    obs.counts[0] = md * (1.0 - x);
    obs.d0 = x;
    return obs;
}

/// Unclamped n (log d - Hbar_d(w + delta) log d) - 2 log(1/eps).
inline double ell_ours_raw(const ProtocolParams &p, double w_obs) {
    p.validate();
    detail::require(w_obs >= 0.0 && w_obs <= 1.0, "ell_ours: w_obs must lie in [0, 1]");
    const double delta = delta_from_epsilon(p.m(), p.n(), p.epsilon);
    const double log2d = std::log2(static_cast<double>(p.d));
    // Hbar_d(x) / log_d 2 == Hbar_d(x) * log2 d
    const double entropy_bits = extended_dary_entropy(w_obs + delta, p.d) * log2d;
    return static_cast<double>(p.n()) * (log2d - entropy_bits) + 2.0 * std::log2(p.epsilon);
}

inline double ell_ours(const ProtocolParams &p, double w_obs) { return std::max(0.0, ell_ours_raw(p, w_obs)); }

/// log2 of the bracket Gamma(m+d)/Gamma(m+d+1/2) * sum_i Gamma(c_i+3/2)/Gamma(c_i+1),
/// all ratios in the log domain.
inline double ell_one_log2_bracket(std::uint32_t d, std::uint64_t m, std::span<const double> counts) {
    double log_sum = -std::numeric_limits<double>::infinity();
    for (double c : counts) {
        detail::require(c >= 0.0, "ell_one: negative count");
        const double term = log_gamma_shift(c + 1.0, 0.5);
        const double hi = std::max(log_sum, term);
        log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(term - hi));
    }
    const double log_prefactor = -log_gamma_shift(static_cast<double>(m) + static_cast<double>(d), 0.5);
    return (log_prefactor + log_sum) / std::numbers::ln2;
}

/// Unclamped n (log d - 2 log B).
inline double ell_one_raw(const ProtocolParams &p, std::span<const double> counts) {
    p.validate();
    detail::require(counts.size() == p.d, "ell_one: need one count per outcome");
    double sum = 0.0;
    for (double c : counts) {
        detail::require(c >= 0.0, "ell_one: negative count");
        sum += c;
    }
    const double m = static_cast<double>(p.m());
    detail::require(std::abs(sum - m) <= 1e-9 * std::max(1.0, m), "ell_one: counts do not sum to m");
    const double log2d = std::log2(static_cast<double>(p.d));
    return static_cast<double>(p.n()) * (log2d - 2.0 * ell_one_log2_bracket(p.d, p.m(), counts));
}

inline double ell_one(const ProtocolParams &p, std::span<const double> counts) {
    return std::max(0.0, ell_one_raw(p, counts));
}

/// log2 gamma(x) with gamma(x) = (x + sqrt(1+x^2)) (x / (sqrt(1+x^2) - 1))^x
/// and gamma(0) = 1. Uses x / (sqrt(1+x^2) - 1) = (sqrt(1+x^2) + 1) / x.
inline double log2_gamma_fn(double x) {
    detail::require(x >= 0.0 && std::isfinite(x), "gamma_fn: x must be nonnegative and finite");
    if (x == 0.0) {
        return 0.0;
    }
    const double root = std::hypot(1.0, x);
    return (std::asinh(x) + x * std::log((root + 1.0) / x)) / std::numbers::ln2;
}

inline double gamma_fn(double x) { return std::exp2(log2_gamma_fn(x)); }

/// delta' = d sqrt(N^2 / (n^2 m) ln(4 / eps')).
inline double delta_prime(const ProtocolParams &p) {
    p.validate();
    const double N = static_cast<double>(p.N);
    const double n = static_cast<double>(p.n());
    const double m = static_cast<double>(p.m());
    return static_cast<double>(p.d) * std::sqrt(N * N / (n * n * m) * std::log(4.0 / p.eps_prime_ell2));
}

/// Unclamped n (log d - log gamma(d0 + delta')). The gamma penalty is a
/// per-signal min-entropy loss and is charged on each of the n signals.
inline double ell_two_raw(const ProtocolParams &p, double d0) {
    p.validate();
    detail::require(d0 >= 0.0, "ell_two: d0 must be nonnegative");
    const double log2d = std::log2(static_cast<double>(p.d));
    return static_cast<double>(p.n()) * (log2d - log2_gamma_fn(d0 + delta_prime(p)));
}

inline double ell_two(const ProtocolParams &p, double d0) { return std::max(0.0, ell_two_raw(p, d0)); }

struct RatePoint {
    std::uint64_t N = 0;
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    double delta = 0.0;
    double delta_prime = 0.0;
    double ell_ours = 0.0;
    double ell_1 = 0.0;
    double ell_2 = 0.0;
    double raw_ours = 0.0;
    double raw_1 = 0.0;
    double raw_2 = 0.0;
    double rate_ours = 0.0;
    double rate_1 = 0.0;
    double rate_2 = 0.0;
    bool valid = true;
    std::string flags = "ok";
};

/// All three key lengths at one N under depolarizing noise x.
inline RatePoint evaluate_rate_point(const ProtocolParams &p, double noise) {
    p.validate_ranges();
    RatePoint pt;
    pt.N = p.N;
    pt.m = p.m();
    pt.n = p.n();
    if (pt.m >= pt.n) {
        pt.valid = false;
        pt.flags = "m_ge_n";
        return pt;
    }
    const auto obs = depolarizing_observables(noise, p.d, pt.m);
    pt.delta = delta_from_epsilon(pt.m, pt.n, p.epsilon);
    pt.delta_prime = delta_prime(p);
    pt.raw_ours = ell_ours_raw(p, obs.w_obs);
    pt.raw_1 = ell_one_raw(p, obs.counts);
    pt.raw_2 = ell_two_raw(p, obs.d0);
    pt.ell_ours = std::max(0.0, pt.raw_ours);
    pt.ell_1 = std::max(0.0, pt.raw_1);
    pt.ell_2 = std::max(0.0, pt.raw_2);
    const double N = static_cast<double>(p.N);
    pt.rate_ours = pt.ell_ours / N;
    pt.rate_1 = pt.ell_1 / N;
    pt.rate_2 = pt.ell_2 / N;
    std::string flags;
    auto add = [&](bool on, const char *name) {
        if (on) {
            flags += flags.empty() ? name : std::string("|") + name;
        }
    };
    add(pt.raw_ours < 0.0, "ours_clamped");
    add(pt.raw_1 < 0.0, "l1_clamped");
    add(pt.raw_2 < 0.0, "l2_clamped");
    pt.flags = flags.empty() ? "ok" : flags;
    return pt;
}

inline constexpr std::uint64_t kMinSweepN = 30;

/// Evaluates every N in order; points with m >= n are flagged invalid.
inline std::vector<RatePoint> sweep(const ProtocolParams &tmpl, double noise, std::span<const std::uint64_t> n_list,
                                    unsigned workers = 1) {
    detail::require(!n_list.empty(), "sweep: empty N list");
    detail::require(noise >= 0.0 && noise <= 1.0, "sweep: noise must lie in [0, 1]");
    for (auto N : n_list) {
        detail::require(N >= kMinSweepN, "sweep: every N must be >= 30");
    }
    std::vector<RatePoint> out(n_list.size());
    parallel_for(n_list.size(), workers, [&](std::size_t i) {
        ProtocolParams p = tmpl;
        p.N = n_list[i];
        out[i] = evaluate_rate_point(p, noise);
    });
    return out;
}

/// `points` values from start to stop, log- or linearly spaced, rounded to
/// integers; duplicates after rounding are dropped.
inline std::vector<std::uint64_t> n_range(std::uint64_t start, std::uint64_t stop, std::uint64_t points, bool log_spaced) {
    detail::require(start >= 1 && stop >= start, "n_range: need 1 <= start <= stop");
    detail::require(points >= 1, "n_range: need at least one point");
    std::vector<std::uint64_t> out;
    if (points == 1 || start == stop) {
        out.push_back(start);
        return out;
    }
    const double a = static_cast<double>(start);
    const double b = static_cast<double>(stop);
    for (std::uint64_t i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(points - 1);
        const double v = log_spaced ? std::exp(std::log(a) + f * (std::log(b) - std::log(a))) : a + f * (b - a);
        const auto N = static_cast<std::uint64_t>(std::llround(v));
        if (out.empty() || out.back() != N) {
            out.push_back(N);
        }
    }
    out.back() = stop;
    return out;
}

}  // namespace eur
