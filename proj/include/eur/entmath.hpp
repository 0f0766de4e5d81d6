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

// Scalar special functions and string/entropy utilities shared by the rest of
// the library. Everything here is a pure function of its arguments.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eur/errors.hpp"

namespace eur {

inline constexpr std::uint32_t kMaxAlphabet = 1u << 20;
inline constexpr std::uint64_t kMaxStringLength = std::uint64_t{1} << 32;

/// A string over the alphabet {0, ..., d-1}.
class DString {
  public:
    DString(std::vector<std::uint32_t> symbols, std::uint32_t d)
        : symbols_(std::move(symbols)), d_(d) {
        detail::require(d >= 2 && d <= kMaxAlphabet, "DString: alphabet size must be in [2, 2^20]");
        detail::require(symbols_.size() <= kMaxStringLength, "DString: length exceeds 2^32");
        for (auto s : symbols_) {
            detail::require(s < d_, "DString: symbol " + std::to_string(s) + " outside alphabet");
        }
    }

    /// All-zero string of the given length.
    static DString zeros(std::size_t length, std::uint32_t d) {
        return DString(std::vector<std::uint32_t>(length, 0), d);
    }

    std::uint32_t alphabet() const { return d_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    std::uint32_t operator[](std::size_t i) const { return symbols_[i]; }
    std::span<const std::uint32_t> symbols() const { return symbols_; }

    /// Number of nonzero symbols.
    std::size_t hamming_weight() const {
        return static_cast<std::size_t>(
            std::count_if(symbols_.begin(), symbols_.end(), [](std::uint32_t s) { return s != 0; }));
    }

  private:
    std::vector<std::uint32_t> symbols_;
    std::uint32_t d_;
};

/// Fraction of nonzero symbols.
inline double relative_weight(std::span<const std::uint32_t> q) {
    detail::require(!q.empty(), "relative_weight: empty string");
    const auto nonzero = std::count_if(q.begin(), q.end(), [](std::uint32_t s) { return s != 0; });
    return static_cast<double>(nonzero) / static_cast<double>(q.size());
}

inline double relative_weight(const DString &q) { return relative_weight(q.symbols()); }

/// d-ary entropy h_d(x) = x log_d(d-1) - x log_d x - (1-x) log_d(1-x), with
/// 0 log 0 = 0 at the endpoints.
inline double dary_entropy(double x, std::uint32_t d) {
    detail::require(d >= 2, "dary_entropy: d must be >= 2");
    detail::require(x >= 0.0 && x <= 1.0, "dary_entropy: x must lie in [0, 1]");
    const double ln_d = std::log(static_cast<double>(d));
    double h = 0.0;
    if (x > 0.0) {
        h += x * std::log(static_cast<double>(d - 1)) - x * std::log(x);
    }
    if (x < 1.0) {
        h -= (1.0 - x) * std::log1p(-x);
    }
    return h / ln_d;
}

/// Extended d-ary entropy: 0 below 0, h_d on [0, 1-1/d], 1 above.
inline double extended_dary_entropy(double x, std::uint32_t d) {
    detail::require(d >= 2, "extended_dary_entropy: d must be >= 2");
    detail::require(!std::isnan(x), "extended_dary_entropy: x is NaN");
    if (x <= 0.0) {
        return 0.0;
    }
    if (x > 1.0 - 1.0 / static_cast<double>(d)) {
        return 1.0;
    }
    return dary_entropy(x, d);
}

namespace detail {

inline constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Lanczos approximation, g = 607/128, 15 terms.
inline double lanczos_log_gamma(double x) {
    static constexpr double g = 607.0 / 128.0;
    static constexpr std::array<double, 15> c = {
        0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
        14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
        .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
        -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
        .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
    };
    const double z = x - 1.0;
    double sum = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) {
        sum += c[i] / (z + static_cast<double>(i));
    }
    const double t = z + g + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Correction term of Stirling's series: lnGamma(x) - [(x-1/2)ln x - x + ln sqrt(2 pi)].
inline double stirling_tail(double x) {
    static constexpr std::array<double, 8> b = {
        1.0 / 12.0,    -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,  -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double acc = 0.0;
    for (std::size_t k = b.size(); k-- > 0;) {
        acc = acc * inv2 + b[k];
    }
    return acc * inv;
}

inline constexpr double kStirlingCutoff = 15.0;

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    detail::require(x > 0.0 && std::isfinite(x), "log_gamma: x must be positive and finite");
    if (x == 1.0 || x == 2.0) {
        return 0.0;
    }
    if (x < detail::kStirlingCutoff) {
        return detail::lanczos_log_gamma(x);
    }
    return (x - 0.5) * std::log(x) - x + detail::kHalfLog2Pi + detail::stirling_tail(x);
}

/// ln Gamma(x + shift) - ln Gamma(x), evaluated without the catastrophic
/// cancellation of a direct difference when x is large.
inline double log_gamma_shift(double x, double shift) {
    detail::require(x > 0.0 && x + shift > 0.0, "log_gamma_shift: arguments must be positive");
    const double u = x + shift;
    if (x < detail::kStirlingCutoff || u < detail::kStirlingCutoff) {
        return log_gamma(u) - log_gamma(x);
    }
    return (x - 0.5) * std::log1p(shift / x) + shift * std::log(u) - shift +
           detail::stirling_tail(u) - detail::stirling_tail(x);
}

enum class LogBase { two, e };

/// log C(n, k) in the requested base.
inline double log_binomial(std::int64_t n, std::int64_t k, LogBase base = LogBase::e) {
    detail::require(n >= 0, "log_binomial: n must be nonnegative");
    detail::require(k >= 0 && k <= n, "log_binomial: k must lie in [0, n]");
    const std::int64_t j = std::min(k, n - k);
    double value = 0.0;
    if (j > 0) {
        value = log_gamma_shift(static_cast<double>(n - j + 1), static_cast<double>(j)) -
                log_gamma(static_cast<double>(j + 1));
    }
    return base == LogBase::two ? value / std::numbers::ln2 : value;
}

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double regularized_gamma_q(double a, double x) {
    detail::require(a > 0.0, "regularized_gamma_q: a must be positive");
    detail::require(x >= 0.0, "regularized_gamma_q: x must be nonnegative");
    if (x == 0.0) {
        return 1.0;
    }
    const double log_prefactor = a * std::log(x) - x - log_gamma(a);
    constexpr int kMaxIter = 100000;
    constexpr double kEps = 1e-16;
    if (x < a + 1.0) {
        // Series for P(a, x).
        double term = 1.0 / a;
        double sum = term;
        for (int n = 1; n < kMaxIter; ++n) {
            term *= x / (a + n);
            sum += term;
            if (std::abs(term) < std::abs(sum) * kEps) {
                break;
            }
        }
        return std::max(0.0, 1.0 - sum * std::exp(log_prefactor));
    }
    // Continued fraction for Q(a, x), modified Lentz.
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = b + an / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) {
            break;
        }
    }
    return std::exp(log_prefactor) * h;
}

/// Upper tail P[X >= stat] for a chi-square variable with `dof` degrees of freedom.
inline double chi_square_sf(double stat, double dof) {
    detail::require(dof > 0.0, "chi_square_sf: dof must be positive");
    return regularized_gamma_q(dof / 2.0, std::max(0.0, stat) / 2.0);
}

}  // namespace eur
