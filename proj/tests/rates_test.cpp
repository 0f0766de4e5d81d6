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

#include "eur/rates.hpp"

#include <cmath>

#include "eur/basis.hpp"
#include "gtest/gtest.h"

using namespace eur;

namespace {

ProtocolParams default_params(std::uint64_t N, std::uint32_t d = 4) {
    ProtocolParams p;
    p.d = d;
    p.N = N;
    return p;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(ProtocolParams, sample_size_rounding_and_checks) {
    EXPECT_EQ(default_params(10000000).m(), 700000u);
    EXPECT_EQ(default_params(10000000).n(), 9300000u);
    EXPECT_EQ(default_params(143).m(), 10u);  // 10.01 -> 10
    EXPECT_EQ(default_params(150).m(), 11u);  // 10.5 -> 11
    EXPECT_EQ(default_params(7).m(), 1u);
    auto p = default_params(1000);
    p.epsilon = 1.5;
    EXPECT_THROW(p.validate(), DomainError);
    p = default_params(1000);
    p.sample_fraction = 0.0;
    EXPECT_THROW(p.validate(), DomainError);
    p = default_params(1000, 1);
    EXPECT_THROW(p.validate(), DomainError);
}

TEST(EllOurs, frozen_value) {
    // mpmath, 50 digits: d=4, N=1e7, w=0.02
    const double ell = ell_ours(default_params(10000000), 0.02);
    EXPECT_LT(rel(ell, 16023348.065544263582), 1e-9);
}

TEST(EllOurs, noiseless_approaches_full_rate) {
    for (std::uint64_t N : {100000000ull, 10000000000ull}) {
        const auto p = default_params(N);
        const double ell = ell_ours(p, 0.0);
        EXPECT_LE(ell, static_cast<double>(p.n()) * 2.0);
        EXPECT_GT(ell / static_cast<double>(p.n()), N > 1000000000ull ? 1.99 : 1.9);
    }
}

TEST(EllOurs, decreasing_in_noise_and_bounded) {
    const auto p = default_params(1000000);
    double prev = ell_ours(p, 0.0);
    for (double w = 0.01; w < 0.3; w += 0.01) {
        const double next = ell_ours(p, w);
        EXPECT_LE(next, prev);
        EXPECT_LE(next, static_cast<double>(p.n()) * 2.0);
        prev = next;
    }
    EXPECT_EQ(ell_ours(p, 0.9), 0.0);
    EXPECT_LT(ell_ours_raw(p, 0.9), 0.0);
}

TEST(EllOurs, rate_increases_with_N) {
    double prev = 0.0;
    for (std::uint64_t N = 10000; N <= 10000000000ull; N *= 10) {
        const double r = ell_ours(default_params(N), 0.02) / static_cast<double>(N);
        EXPECT_GE(r, prev);
        prev = r;
    }
}

TEST(EllOne, frozen_value) {
    // mpmath, 50 digits: d=2, N=143 (m=10, n=133), c=(9,1)
    auto p = default_params(143, 2);
    const std::vector<double> c{9.0, 1.0};
    EXPECT_LT(rel(ell_one(p, c), 32.688718326465374079), 1e-12);
}

TEST(EllOne, direct_gamma_agrees_for_small_m) {
    for (std::uint64_t N : {60u, 200u, 1000u, 1400u}) {
        auto p = default_params(N, 3);
        const double m = static_cast<double>(p.m());
        const std::vector<double> c{m - 2.0, 1.0, 1.0};
        double sum = 0.0;
        for (double ci : c) {
            sum += std::tgamma(ci + 1.5) / std::tgamma(ci + 1.0);
        }
        sum *= std::tgamma(m + 3.0) / std::tgamma(m + 3.5);
        const double direct = static_cast<double>(p.n()) * (std::log2(3.0) - 2.0 * std::log2(sum));
        EXPECT_LT(rel(ell_one_raw(p, c), direct), 1e-10) << N;
    }
}

TEST(EllOne, large_m_noiseless_limit) {
    auto p = default_params(14285714);
    ASSERT_EQ(p.m(), 1000000u);
    const std::vector<double> c{1e6, 0.0, 0.0, 0.0};
    const double ell = ell_one(p, c);
    ASSERT_TRUE(std::isfinite(ell));
    const double per = ell / static_cast<double>(p.n());
    EXPECT_LT(per, 2.0);
    EXPECT_GT(per, 2.0 - 0.01);
}

TEST(EllOne, base_identity) {
    // log2 bracket == ln bracket / ln 2
    const std::vector<double> c{50.0, 20.0, 20.0, 10.0};
    double ln = 0.0;
    for (double ci : c) {
        ln += std::exp(std::lgamma(ci + 1.5) - std::lgamma(ci + 1.0));
    }
    ln = std::log(ln) + std::lgamma(104.0) - std::lgamma(104.5);
    EXPECT_NEAR(ell_one_log2_bracket(4, 100, c), ln / std::log(2.0), 1e-12);
}

TEST(EllOne, count_checks) {
    auto p = default_params(143, 2);
    EXPECT_THROW(ell_one(p, std::vector<double>{9.0, 2.0}), DomainError);
    EXPECT_THROW(ell_one(p, std::vector<double>{11.0, -1.0}), DomainError);
    EXPECT_THROW(ell_one(p, std::vector<double>{10.0}), DomainError);
}

TEST(GammaFunction, values) {
    EXPECT_EQ(gamma_fn(0.0), 1.0);
    EXPECT_LT(rel(gamma_fn(0.1), 1.4913121558482105022), 1e-13);
    EXPECT_LT(rel(gamma_fn(1.0), 5.8284271247461900976), 1e-13);
    double prev = 1.0;
    for (double x = 1e-6; x < 100.0; x *= 1.7) {
        EXPECT_GT(gamma_fn(x), prev);
        prev = gamma_fn(x);
    }
    EXPECT_THROW(gamma_fn(-0.1), DomainError);
}

TEST(EllTwo, frozen_value) {
    const auto p = default_params(10000000);
    EXPECT_LT(rel(delta_prime(p), 0.027022560020656101183), 1e-12);
    EXPECT_LT(rel(ell_two(p, 0.02), 15602913.040598132511), 1e-9);
}

TEST(Depolarizing, observables) {
    const auto obs = depolarizing_observables(0.02, 4, 700);
    EXPECT_DOUBLE_EQ(obs.counts[0], 686.0);
    for (int i = 1; i < 4; ++i) {
        EXPECT_NEAR(obs.counts[i], 14.0 / 3.0, 1e-12);
    }
    EXPECT_EQ(obs.w_obs, 0.02);
    EXPECT_EQ(obs.d0, 0.02);
    EXPECT_NO_THROW(obs.validate(4, 700));
    EXPECT_THROW(depolarizing_observables(1.1, 4, 700), DomainError);
}

TEST(RatePoint, matches_individual_formulas) {
    const auto p = default_params(10000000);
    const auto pt = evaluate_rate_point(p, 0.02);
    EXPECT_TRUE(pt.valid);
    EXPECT_EQ(pt.flags, "ok");
    EXPECT_EQ(pt.ell_ours, ell_ours(p, 0.02));
    EXPECT_EQ(pt.ell_2, ell_two(p, 0.02));
    const auto obs = depolarizing_observables(0.02, 4, p.m());
    EXPECT_EQ(pt.ell_1, ell_one(p, obs.counts));
    EXPECT_DOUBLE_EQ(pt.rate_ours, pt.ell_ours / 1e7);
    EXPECT_NEAR(pt.delta, 0.015421659498065236697, 1e-14);
}

TEST(RatePoint, flags_small_and_noisy) {
    const auto small = evaluate_rate_point(default_params(100), 0.02);
    EXPECT_TRUE(small.valid);
    EXPECT_NE(small.flags.find("ours_clamped"), std::string::npos);
    EXPECT_EQ(small.ell_ours, 0.0);
    auto half = default_params(30);
    half.sample_fraction = 0.49;  // m = 15 = n
    const auto bad = evaluate_rate_point(half, 0.02);
    EXPECT_FALSE(bad.valid);
    EXPECT_EQ(bad.flags, "m_ge_n");
}

TEST(Sweep, order_and_worker_independence) {
    const auto Ns = n_range(1000, 100000000, 30, true);
    EXPECT_EQ(Ns.front(), 1000u);
    EXPECT_EQ(Ns.back(), 100000000u);
    EXPECT_TRUE(std::is_sorted(Ns.begin(), Ns.end()));
    const auto a = sweep(default_params(0), 0.02, Ns, 1);
    const auto b = sweep(default_params(0), 0.02, Ns, 3);
    ASSERT_EQ(a.size(), Ns.size());
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        EXPECT_EQ(a[i].N, Ns[i]);
        EXPECT_EQ(a[i].ell_ours, b[i].ell_ours);
        EXPECT_EQ(a[i].ell_1, b[i].ell_1);
        EXPECT_EQ(a[i].ell_2, b[i].ell_2);
    }
    EXPECT_THROW(sweep(default_params(0), 0.02, std::vector<std::uint64_t>{29}), DomainError);
    EXPECT_THROW(sweep(default_params(0), 1.5, Ns), DomainError);
}

TEST(NRange, linear_and_degenerate) {
    EXPECT_EQ(n_range(10, 20, 6, false), (std::vector<std::uint64_t>{10, 12, 14, 16, 18, 20}));
    EXPECT_EQ(n_range(50, 50, 10, true), (std::vector<std::uint64_t>{50}));
    EXPECT_EQ(n_range(30, 33, 10, false).size(), 4u);
}

TEST(GammaOverlap, standard_pairs) {
    for (std::uint32_t d : {2u, 3u, 4u, 32u}) {
        const auto Z = Basis::computational(d);
        EXPECT_NEAR(gamma_overlap(Z, fourier_basis(d)), std::log2(static_cast<double>(d)), 1e-12);
        EXPECT_EQ(gamma_overlap(Z, Z), 0.0);
    }
}

TEST(GammaOverlap, random_pair_against_pair_scan) {
    Rng rng(33);
    const auto Z = random_basis(3, rng);
    const auto X = random_basis(3, rng);
    double best = 0.0;
    for (std::uint32_t a = 0; a < 3; ++a) {
        for (std::uint32_t b = 0; b < 3; ++b) {
            const auto za = Z.column(a);
            const auto xb = X.column(b);
            cplx dot = 0.0;
            for (int r = 0; r < 3; ++r) {
                dot += std::conj(za[r]) * xb[r];
            }
            best = std::max(best, std::norm(dot));
        }
    }
    const double g = gamma_overlap(Z, X);
    EXPECT_NEAR(g, -std::log2(best), 1e-12);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, std::log2(3.0) + 1e-12);
}

TEST(GammaOverlap, rejects_nonunitary) {
    std::vector<cplx> m{1.0, 0.0, 0.0, 1.1};
    EXPECT_THROW(Basis(2, m), DomainError);
    EXPECT_THROW(gamma_overlap(Basis::computational(2), Basis::computational(3)), DomainError);
}
