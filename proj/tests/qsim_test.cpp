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

#include "eur/qsim.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include "gtest/gtest.h"
#include "oracles.hpp"

using namespace eur;

namespace {

std::vector<cplx> projector(const std::vector<cplx> &v) {
    const std::size_t d = v.size();
    std::vector<cplx> P(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            P[a * d + b] = v[a] * std::conj(v[b]);
        }
    }
    return P;
}

std::vector<cplx> identity(std::size_t d) {
    std::vector<cplx> I(d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a) {
        I[a * d + a] = 1.0;
    }
    return I;
}

std::vector<cplx> complement(const std::vector<cplx> &P) {
    auto I = identity(static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(P.size())))));
    for (std::size_t i = 0; i < I.size(); ++i) {
        I[i] -= P[i];
    }
    return I;
}

// P(t, q) from the dense tensor-product projector
double oracle_path_prob(const PureState &psi, std::uint64_t mask, std::uint64_t bits, const std::vector<cplx> &x0) {
    const auto d = psi.d();
    const auto P0 = projector(x0);
    const auto P1 = complement(P0);
    std::vector<std::vector<cplx>> ops;
    std::uint64_t j = 0;
    for (std::uint64_t s = 0; s < psi.sites(); ++s) {
        if (mask >> s & 1) {
            ops.push_back((bits >> j++ & 1) ? P1 : P0);
        } else {
            ops.push_back(identity(d));
        }
    }
    return oracle::expectation(oracle::kron(ops, d), psi.amplitudes());
}

}  // namespace

TEST(Basis, fourier_is_unitary) {
    for (std::uint32_t d : {2u, 3u, 4u, 7u, 32u}) {
        const auto F = fourier_basis(d);
        EXPECT_LT(F.unitarity_defect(), 1e-12);
        for (std::uint32_t r = 0; r < d; ++r) {
            EXPECT_NEAR(std::abs(F(r, 0)), 1.0 / std::sqrt(static_cast<double>(d)), 1e-15);
        }
    }
    Rng rng(3);
    EXPECT_LT(random_basis(5, rng).unitarity_defect(), 1e-12);
}

TEST(PureState, construction_guards) {
    EXPECT_THROW(PureState(2, 2, std::vector<cplx>(4, 1.0)), DomainError);
    EXPECT_THROW(PureState(2, 2, std::vector<cplx>(3, 0.5)), DomainError);
    EXPECT_THROW(honest_state(2, 25), ResourceError);
    EXPECT_THROW(honest_state(32, 5), ResourceError);
    EXPECT_NO_THROW(honest_state(2, 24));
    const auto h = honest_state(3, 4);
    EXPECT_EQ(h.size(), 81u);
    for (std::size_t i = 0; i < h.size(); ++i) {
        EXPECT_NEAR(std::norm(h[i]), 1.0 / 81.0, 1e-15);
    }
}

TEST(RunExperiment, honest_state_always_passes) {
    Rng rng(10);
    for (std::uint32_t d : {2u, 3u, 4u}) {
        const auto psi = honest_state(d, 6);
        const auto x0 = fourier_basis(d).column(0);
        for (int i = 0; i < 50; ++i) {
            const auto out = run_experiment(psi, 2, x0, rng);
            EXPECT_EQ(out.q, (std::vector<std::uint8_t>{0, 0}));
            EXPECT_NEAR(out.prob, 1.0, 1e-12);
            EXPECT_EQ(out.system_sites, 4u);
            EXPECT_NEAR(out.post_state.norm(), 1.0, 1e-12);
            EXPECT_NEAR(fidelity_with_system_state(out.post_state, honest_state(d, 4)), 1.0, 1e-12);
        }
    }
}

TEST(RunExperiment, orthogonal_state_always_fails) {
    Rng rng(11);
    const auto F = fourier_basis(2);
    const auto psi = PureState::power(F.column(1), 5);
    for (int i = 0; i < 20; ++i) {
        const auto out = run_experiment(psi, 3, F.column(0), rng);
        EXPECT_EQ(out.weight(), 1.0);
    }
}

TEST(RunExperiment, product_state_leaves_other_sites_untouched) {
    Rng rng(12);
    std::vector<std::vector<cplx>> factors;
    for (int s = 0; s < 5; ++s) {
        factors.push_back(random_basis(3, rng).column(0));
    }
    const auto psi = PureState::product(3, factors);
    const auto x0 = fourier_basis(3).column(0);
    for (int i = 0; i < 20; ++i) {
        const auto out = run_experiment(psi, 2, x0, rng);
        std::vector<std::vector<cplx>> rest;
        for (auto s : out.t.complement()) {
            rest.push_back(factors[s]);
        }
        EXPECT_NEAR(fidelity_with_system_state(out.post_state, PureState::product(3, rest)), 1.0, 1e-12);
    }
}

TEST(RunExperiment, conditional_system_distribution_matches_dense_oracle) {
    Rng rng(13);
    const auto psi = random_state(2, 4, rng);
    const auto x0 = fourier_basis(2).column(0);
    const auto Z = Basis::computational(2);
    for (int i = 0; i < 10; ++i) {
        const auto out = run_experiment(psi, 2, x0, rng);
        const auto dist = measurement_distribution(out.post_state, Z, out.system_sites);
        const auto P0 = projector(x0);
        const auto rest = out.t.complement();
        for (std::uint64_t z = 0; z < 4; ++z) {
            std::vector<std::vector<cplx>> ops(4);
            for (std::size_t j = 0; j < 2; ++j) {
                ops[out.t.indices[j]] = out.q[j] ? complement(P0) : P0;
                std::vector<cplx> ket(2, 0.0);
                ket[z >> (1 - j) & 1] = 1.0;
                ops[rest[j]] = projector(ket);
            }
            const double joint = oracle::expectation(oracle::kron(ops, 2), psi.amplitudes());
            EXPECT_NEAR(dist[z], joint / out.prob, 1e-10);
        }
    }
}

TEST(RunExperiment, argument_checks) {
    Rng rng(1);
    const auto psi = honest_state(2, 4);
    EXPECT_THROW(run_experiment(psi, 0, fourier_basis(2).column(0), rng), DomainError);
    EXPECT_THROW(run_experiment(psi, 4, fourier_basis(2).column(0), rng), DomainError);
    EXPECT_THROW(run_experiment(psi, 1, std::vector<cplx>{1.0, 1.0}, rng), DomainError);
    EXPECT_THROW(run_experiment(psi, 1, std::vector<cplx>{1.0, 0.0, 0.0}, rng), DomainError);
}

TEST(PathDistribution, matches_dense_oracle) {
    Rng rng(20);
    for (auto [d, k, m] : std::vector<std::tuple<std::uint32_t, std::uint64_t, std::uint64_t>>{
             {2, 3, 1}, {2, 4, 2}, {3, 3, 1}, {2, 6, 2}, {3, 4, 1}}) {
        const auto psi = random_state(d, k, rng);
        const auto x0 = random_basis(d, rng).column(0);
        const auto paths = path_distribution(psi, m, x0);
        const double subsets = std::exp(log_binomial(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m)));
        EXPECT_EQ(paths.size(), static_cast<std::size_t>(std::llround(subsets)) << m);
        double total = 0.0;
        for (const auto &p : paths) {
            EXPECT_NEAR(p.prob, oracle_path_prob(psi, p.t_mask, p.q_bits, x0) / subsets, 1e-12);
            total += p.prob;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(PathDistribution, sampling_frequencies_fit) {
    Rng rng(21);
    const auto psi = random_state(2, 4, rng);
    const auto x0 = fourier_basis(2).column(0);
    const auto expected = path_distribution(psi, 2, x0);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
    const std::uint64_t trials = 50000;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const auto out = run_experiment(psi, 2, x0, rng);
        ++counts[{subset_mask(out.t), outcome_bits(out.q)}];
    }
    const auto fit = chi_square_paths(counts, expected, trials);
    EXPECT_EQ(fit.bins, 24u);
    EXPECT_GT(fit.p_value, 0.001);
}

TEST(PathDistribution, impossible_path_gives_zero_p) {
    const auto psi = honest_state(2, 3);
    const auto x0 = fourier_basis(2).column(0);
    const auto expected = path_distribution(psi, 1, x0);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts{{{1, 1}, 1}, {{1, 0}, 99}};
    EXPECT_EQ(chi_square_paths(counts, expected, 100).p_value, 0.0);
}

TEST(PathDistribution, work_guard) {
    EXPECT_THROW(path_distribution(honest_state(2, 20), 10, fourier_basis(2).column(0)), ResourceError);
}

TEST(MinEntropy, classical_and_measured) {
    EXPECT_NEAR(min_entropy_classical(std::vector<double>{0.25, 0.25, 0.25, 0.25}), 2.0, 1e-15);
    EXPECT_EQ(min_entropy_classical(std::vector<double>{1.0, 0.0}), 0.0);
    EXPECT_THROW(min_entropy_classical(std::vector<double>{0.5, 0.6}), DomainError);
    const auto h = honest_state(4, 3);
    EXPECT_NEAR(min_entropy_measured(h, Basis::computational(4)), 6.0, 1e-12);
    EXPECT_NEAR(min_entropy_measured(h, fourier_basis(4)), 0.0, 1e-12);
    EXPECT_NEAR(min_entropy_measured(h, Basis::computational(4), 2), 4.0, 1e-12);
}

TEST(MinEntropy, measurement_distribution_matches_brute_born) {
    Rng rng(30);
    const auto psi = random_state(2, 3, rng);
    std::vector<Basis> bases{random_basis(2, rng), random_basis(2, rng), random_basis(2, rng)};
    const auto dist = measurement_distribution(psi, bases, 3);
    double total = 0.0;
    for (std::uint64_t x = 0; x < 8; ++x) {
        std::vector<std::vector<cplx>> ops;
        for (std::uint64_t s = 0; s < 3; ++s) {
            ops.push_back(projector(bases[s].column(static_cast<std::uint32_t>(x >> (2 - s) & 1))));
        }
        EXPECT_NEAR(dist[x], oracle::expectation(oracle::kron(ops, 2), psi.amplitudes()), 1e-12);
        total += dist[x];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(SuperpositionMinEntropy, hadamard_equality) {
    const std::vector<cplx> amps{std::sqrt(0.5), std::sqrt(0.5)};
    const std::vector<std::uint32_t> support{0, 1};
    const std::vector<std::vector<cplx>> anc{{1.0}, {1.0}};
    const auto r = check_lemma1(amps, support, fourier_basis(2), anc);
    EXPECT_NEAR(r.lhs, 0.0, 1e-12);
    EXPECT_NEAR(r.rhs, 0.0, 1e-12);
}

TEST(SuperpositionMinEntropy, single_term_equality) {
    Rng rng(40);
    const auto X = random_basis(4, rng);
    const std::vector<std::vector<cplx>> anc{random_basis(3, rng).column(1)};
    const auto r = check_lemma1(std::vector<double>{1.0}, X, anc);
    EXPECT_NEAR(r.lhs, r.rhs, 1e-12);
}

TEST(SuperpositionMinEntropy, random_instances_hold) {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t D = 2 + static_cast<std::uint32_t>(rng.below(7));
        const std::size_t J = 1 + rng.below(D);
        const std::size_t E = 1 + rng.below(4);
        std::vector<cplx> amps(J);
        for (auto &a : amps) {
            a = cplx(rng.normal(), rng.normal());
        }
        double norm = 0.0;
        for (auto a : amps) norm += std::norm(a);
        for (auto &a : amps) a /= std::sqrt(norm);
        std::vector<std::uint32_t> perm(D);
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::size_t i = D; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<std::uint32_t> support(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(J));
        std::vector<std::vector<cplx>> anc;
        for (std::size_t i = 0; i < J; ++i) {
            anc.push_back(E == 1 ? std::vector<cplx>{1.0} : random_basis(static_cast<std::uint32_t>(E), rng).column(0));
        }
        const auto r = check_lemma1(amps, support, random_basis(D, rng), anc);
        EXPECT_GE(r.lhs, r.rhs - 1e-9) << trial;
    }
}

TEST(SuperpositionMinEntropy, guards) {
    const std::vector<std::vector<cplx>> anc(65, std::vector<cplx>{1.0});
    EXPECT_THROW(check_lemma1(std::vector<double>(65, 1.0 / 65), fourier_basis(2), anc), ResourceError);
    const std::vector<std::vector<cplx>> two{{1.0}, {1.0}};
    EXPECT_THROW(check_lemma1(std::vector<double>{0.5, 0.6}, fourier_basis(2), two), DomainError);
    EXPECT_THROW(check_lemma1(std::vector<cplx>{std::sqrt(0.5), std::sqrt(0.5)}, std::vector<std::uint32_t>{1, 1},
                              fourier_basis(2), two),
                 DomainError);
}

TEST(ClEnt, cases) {
    using Entry = std::pair<double, std::vector<double>>;
    const std::vector<Entry> single{{1.0, {0.5, 0.25, 0.25}}};
    auto r = cl_ent_check(single);
    EXPECT_NEAR(r.lhs, 1.0, 1e-15);
    EXPECT_NEAR(r.rhs, 1.0, 1e-15);
    const std::vector<Entry> mixed{{0.5, {1.0, 0.0}}, {0.5, {0.5, 0.5}}};
    r = cl_ent_check(mixed);
    EXPECT_NEAR(r.lhs, -std::log2(0.75), 1e-15);
    EXPECT_EQ(r.rhs, 0.0);
    EXPECT_GE(r.lhs, r.rhs);
    Rng rng(50);
    for (int t = 0; t < 100; ++t) {
        std::vector<Entry> joint;
        double total = 0.0;
        for (int c = 0; c < 4; ++c) {
            std::vector<double> p(5);
            double s = 0.0;
            for (auto &x : p) s += (x = rng.uniform());
            for (auto &x : p) x /= s;
            const double pc = rng.uniform();
            total += pc;
            joint.emplace_back(pc, p);
        }
        for (auto &e : joint) e.first /= total;
        r = cl_ent_check(joint);
        EXPECT_GE(r.lhs, r.rhs - 1e-12);
    }
}

TEST(PostSamplingEntropy, honest_state_satisfied) {
    Rng rng(60);
    const SamplingParams p{2, 3, 9, 0.1, 0.25};
    const auto r = check_theorem1(honest_state(2, 12), p, Basis::computational(2), fourier_basis(2), 50, rng);
    EXPECT_EQ(r.satisfied, r.trials);
    EXPECT_NEAR(r.gamma, 1.0, 1e-12);
    for (const auto &t : r.per_trial) {
        EXPECT_EQ(t.weight, 0.0);
        EXPECT_NEAR(t.entropy, 9.0, 1e-9);
    }
}

TEST(PostSamplingEntropy, computational_state_satisfied) {
    Rng rng(61);
    const SamplingParams p{2, 3, 9, 0.1, 0.25};
    std::vector<cplx> zero{1.0, 0.0};
    const auto r =
        check_theorem1(PureState::power(zero, 12), p, Basis::computational(2), fourier_basis(2), 50, rng);
    EXPECT_EQ(r.satisfied, r.trials);
    for (const auto &t : r.per_trial) {
        EXPECT_NEAR(t.entropy, 0.0, 1e-12);
    }
}

TEST(PostSamplingEntropy, random_states_satisfied_and_worker_independent) {
    Rng rng(62);
    const SamplingParams p{3, 2, 6, 0.1, 0.25};
    for (int s = 0; s < 3; ++s) {
        const auto psi = random_state(3, 8, rng);
        Rng a(100 + s), b(100 + s);
        const auto r1 = check_theorem1(psi, p, Basis::computational(3), fourier_basis(3), 40, a, 1);
        const auto r2 = check_theorem1(psi, p, Basis::computational(3), fourier_basis(3), 40, b, 3);
        EXPECT_EQ(r1.satisfied, r1.trials);
        for (std::size_t i = 0; i < 40; ++i) {
            EXPECT_EQ(r1.per_trial[i].entropy, r2.per_trial[i].entropy);
        }
    }
}
