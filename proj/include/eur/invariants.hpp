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

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eur/basis.hpp"
#include "eur/entmath.hpp"
#include "eur/extractor.hpp"
#include "eur/qsim.hpp"
#include "eur/rates.hpp"
#include "eur/rng.hpp"
#include "eur/sampling.hpp"

namespace eur {

class InvariantViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 20000;  // Monte Carlo trials per soundness cell
    unsigned workers = 1;
    bool perturb_fourier = false;
};

struct InvariantCase {
    std::string module;
    std::string name;
    std::function<std::string(Rng &, const VerifyOptions &)> run;  // returns a detail line
};

struct InvariantResult {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline void check(bool ok, const std::string &what) {
    if (!ok) {
        throw InvariantViolation(what);
    }
}

template <typename T>
std::string fmt(T value) {
    std::ostringstream os;
    os.precision(6);
    os << value;
    return os.str();
}

inline Basis maybe_perturbed_fourier(std::uint32_t d, bool perturb) {
    const auto F = fourier_basis(d);
    if (!perturb) {
        return F;
    }
    std::vector<cplx> m(F.data().begin(), F.data().end());
    m[0] += 1e-3;
    return Basis::unchecked(d, std::move(m));
}

}  // namespace detail

inline std::vector<InvariantCase> entmath_invariants() {
    using detail::check;
    return {
        {"entmath", "entropy_concave",
         [](Rng &rng, const VerifyOptions &) {
             double worst = INFINITY;
             for (int i = 0; i < 2000; ++i) {
                 const auto d = static_cast<std::uint32_t>(2 + rng.below(1023));
                 const double x = rng.uniform(), y = rng.uniform(), l = rng.uniform();
                 const double gap = dary_entropy(l * x + (1 - l) * y, d) -
                                    (l * dary_entropy(x, d) + (1 - l) * dary_entropy(y, d));
                 worst = std::min(worst, gap);
                 check(gap >= -1e-12, "concavity violated at d=" + std::to_string(d));
             }
             return "min gap " + detail::fmt(worst);
         }},
        {"entmath", "entropy_in_unit_interval",
         [](Rng &rng, const VerifyOptions &) {
             for (int i = 0; i < 2000; ++i) {
                 const auto d = static_cast<std::uint32_t>(2 + rng.below(1023));
                 const double h = dary_entropy(rng.uniform(), d);
                 check(h >= 0.0 && h <= 1.0, "h_d outside [0, 1] at d=" + std::to_string(d));
             }
             return std::string("2000 samples");
         }},
        {"entmath", "extended_entropy_monotone_continuous",
         [](Rng &rng, const VerifyOptions &) {
             for (std::uint32_t d : {2u, 3u, 4u, 16u, 1024u}) {
                 const double peak = 1.0 - 1.0 / d;
                 double prev = extended_dary_entropy(-1.0, d);
                 for (int i = 0; i <= 400; ++i) {
                     const double x = -0.5 + (peak + 1.0) * i / 400.0;
                     const double h = extended_dary_entropy(x, d);
                     check(h >= prev - 1e-15, "not monotone at d=" + std::to_string(d));
                     prev = h;
                 }
                 for (int i = 0; i < 20; ++i) {
                     check(extended_dary_entropy(peak + 2.0 * rng.uniform(), d) == 1.0, "not constant beyond peak");
                 }
                 check(std::abs(extended_dary_entropy(1e-15, d) - extended_dary_entropy(0.0, d)) <= 1e-12,
                       "discontinuous at 0");
                 check(std::abs(extended_dary_entropy(peak - 1e-14, d) - 1.0) <= 1e-12, "discontinuous at peak");
             }
             return std::string("d in {2,3,4,16,1024}");
         }},
        {"entmath", "log_gamma_recurrence",
         [](Rng &rng, const VerifyOptions &) {
             double worst = 0.0;
             for (int i = 0; i < 1000; ++i) {
                 const double x = 0.5 + 99.5 * rng.uniform();
                 const double rel = std::abs(std::exp(log_gamma(x + 1.0) - log_gamma(x)) / x - 1.0);
                 worst = std::max(worst, rel);
                 check(rel <= 1e-10, "recurrence off at x=" + detail::fmt(x));
             }
             return "max rel " + detail::fmt(worst);
         }},
    };
}

inline std::vector<InvariantCase> sampling_invariants() {
    using detail::check;
    return {
        {"sampling", "delta_bound_round_trip",
         [](Rng &, const VerifyOptions &) {
             for (double eps : {0.5, 1e-3, 1e-12, 1e-36}) {
                 for (std::uint64_t m : {7u, 70u, 700000u}) {
                     const std::uint64_t n = 13 * m + 2;
                     const double b = lemma2_bound(delta_from_epsilon(m, n, eps), m, n);
                     check(std::abs(b / (eps * eps) - 1.0) <= 1e-12, "round trip off at eps=" + detail::fmt(eps));
                 }
             }
             return std::string("12 cases");
         }},
        {"sampling", "equal_weight_symmetry",
         [](Rng &rng, const VerifyOptions &opt) {
             EstimateOptions mc{EstimateMethod::monte_carlo, opt.workers};
             const std::uint64_t N = 200, m = 30;
             for (std::uint64_t W : {20u, 100u, 170u}) {
                 std::vector<std::uint32_t> a(N, 0), b(N, 0);
                 std::fill(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(W), 1u);
                 std::fill(b.end() - static_cast<std::ptrdiff_t>(W), b.end(), 3u);
                 const auto ea = estimate_error_probability(DString(a, 4), 0.1, m, opt.trials, rng, mc);
                 const auto eb = estimate_error_probability(DString(b, 4), 0.1, m, opt.trials, rng, mc);
                 check(std::abs(ea.estimate - eb.estimate) <= ea.ci_halfwidth + eb.ci_halfwidth,
                       "estimates differ at W=" + std::to_string(W));
             }
             return std::string("3 weight classes");
         }},
        {"sampling", "lemma2_soundness_grid",
         [](Rng &rng, const VerifyOptions &opt) {
             std::size_t cells = 0;
             double worst = -1.0;
             for (std::uint32_t d : {2u, 4u, 16u}) {
                 for (std::uint64_t N : {100u, 1000u}) {
                     const std::uint64_t ms[] = {static_cast<std::uint64_t>(std::floor(0.07 * N + 0.5)),
                                                 static_cast<std::uint64_t>(std::floor(0.25 * N + 0.5)), (N - 1) / 2};
                     for (auto m : ms) {
                         for (double delta : {0.05, 0.1, 0.2}) {
                             const auto r = worst_case_error_estimate(d, m, N - m, delta, opt.trials, rng,
                                                                      {EstimateMethod::automatic, opt.workers});
                             const double bound = lemma2_bound(delta, m, N - m);
                             const double excess = (r.estimate.estimate - bound) /
                                                   std::max(r.estimate.std_error, 1e-300);
                             worst = std::max(worst, r.estimate.estimate - bound);
                             check(r.estimate.estimate <= bound + 5.0 * r.estimate.std_error,
                                   "estimate exceeds bound by " + detail::fmt(excess) + " SE at d=" +
                                       std::to_string(d) + " N=" + std::to_string(N) + " m=" + std::to_string(m));
                             ++cells;
                         }
                     }
                 }
             }
             return std::to_string(cells) + " cells, max(estimate - bound) " + detail::fmt(worst);
         }},
    };
}

inline std::vector<InvariantCase> rates_invariants() {
    using detail::check;
    return {
        {"rates", "key_lengths_clamped_and_bounded",
         [](Rng &rng, const VerifyOptions &) {
             for (int i = 0; i < 200; ++i) {
                 ProtocolParams p;
                 p.d = std::uint32_t{1} << (1 + rng.below(10));
                 p.N = 30 + rng.below(1000000000);
                 const auto pt = evaluate_rate_point(p, 0.2 * rng.uniform());
                 if (!pt.valid) {
                     continue;
                 }
                 const double cap = static_cast<double>(pt.n) * std::log2(static_cast<double>(p.d));
                 for (double ell : {pt.ell_ours, pt.ell_1, pt.ell_2}) {
                     check(ell >= 0.0 && ell <= cap * (1.0 + 1e-12), "key length outside [0, n log2 d] at N=" +
                                                                           std::to_string(p.N));
                 }
             }
             return std::string("200 random points");
         }},
        {"rates", "monotone_in_noise",
         [](Rng &, const VerifyOptions &) {
             for (std::uint64_t N : {10000u, 1000000u, 100000000u}) {
                 ProtocolParams p;
                 p.N = N;
                 double prev_ours = INFINITY, prev_two = INFINITY;
                 for (int i = 0; i <= 50; ++i) {
                     const double x = 0.3 * i / 50.0;
                     const double ours = ell_ours(p, x), two = ell_two(p, x);
                     check(ours <= prev_ours && two <= prev_two, "not nonincreasing in noise at N=" +
                                                                     std::to_string(N));
                     prev_ours = ours;
                     prev_two = two;
                 }
             }
             return std::string("3 sizes x 51 noise levels");
         }},
        {"rates", "ell_ours_monotone_in_N",
         [](Rng &, const VerifyOptions &) {
             ProtocolParams p;
             const auto Ns = n_range(1000, 1000000000000ull, 120, true);
             bool positive = false;
             double prev = 0.0;
             for (auto N : Ns) {
                 p.N = N;
                 const double ell = ell_ours(p, 0.02);
                 if (positive) {
                     check(ell >= prev, "decreases at N=" + std::to_string(N));
                 }
                 positive = positive || ell > 0.0;
                 prev = ell;
             }
             return std::string("N in [1e3, 1e12]");
         }},
        {"rates", "entropy_base_conversion",
         [](Rng &rng, const VerifyOptions &) {
             for (int i = 0; i < 1000; ++i) {
                 const auto d = static_cast<std::uint32_t>(2 + rng.below(1023));
                 const double x = 1.2 * rng.uniform() - 0.1;
                 const double h = extended_dary_entropy(x, d);
                 const double log_d_2 = std::log(2.0) / std::log(static_cast<double>(d));
                 check(std::abs(h / log_d_2 - h * std::log2(static_cast<double>(d))) <= 1e-12,
                       "base conversion off at d=" + std::to_string(d));
             }
             return std::string("1000 samples");
         }},
    };
}

inline std::vector<InvariantCase> qsim_invariants() {
    using detail::check;
    return {
        {"qsim", "fourier_unitary",
         [](Rng &, const VerifyOptions &opt) {
             double worst = 0.0;
             for (std::uint32_t d : {2u, 3u, 4u, 8u, 32u}) {
                 const auto F = detail::maybe_perturbed_fourier(d, opt.perturb_fourier);
                 worst = std::max(worst, F.unitarity_defect());
                 check(F.is_unitary(), "Fourier basis not unitary at d=" + std::to_string(d) + " (defect " +
                                           detail::fmt(F.unitarity_defect()) + ")");
             }
             return "max defect " + detail::fmt(worst);
         }},
        {"qsim", "norm_preserved",
         [](Rng &rng, const VerifyOptions &) {
             for (int i = 0; i < 20; ++i) {
                 const auto psi = random_state(3, 5, rng);
                 const auto out = run_experiment(psi, 2, fourier_basis(3).column(0), rng);
                 check(std::abs(out.post_state.norm() - 1.0) <= 1e-9, "norm drift after measurement");
             }
             return std::string("20 runs");
         }},
        {"qsim", "path_probabilities_sum_to_one",
         [](Rng &rng, const VerifyOptions &) {
             for (std::uint32_t d : {2u, 3u}) {
                 const auto psi = random_state(d, 5, rng);
                 double total = 0.0;
                 for (const auto &p : path_distribution(psi, 2, random_basis(d, rng).column(0))) {
                     total += p.prob;
                 }
                 check(std::abs(total - 1.0) <= 1e-9, "path probabilities sum to " + detail::fmt(total));
             }
             return std::string("d in {2,3}");
         }},
        {"qsim", "product_post_state",
         [](Rng &rng, const VerifyOptions &) {
             std::vector<std::vector<cplx>> factors;
             for (int s = 0; s < 6; ++s) {
                 factors.push_back(random_basis(2, rng).column(0));
             }
             const auto psi = PureState::product(2, factors);
             for (int i = 0; i < 20; ++i) {
                 const auto out = run_experiment(psi, 2, fourier_basis(2).column(0), rng);
                 std::vector<std::vector<cplx>> rest;
                 for (auto s : out.t.complement()) {
                     rest.push_back(factors[s]);
                 }
                 const double f = fidelity_with_system_state(out.post_state, PureState::product(2, rest));
                 check(f >= 1.0 - 1e-9, "fidelity " + detail::fmt(f));
             }
             return std::string("20 runs");
         }},
        {"qsim", "theorem1_frequency",
         [](Rng &rng, const VerifyOptions &opt) {
             const SamplingParams p{2, 3, 7, 0.1, 1.0 / 3.0};
             const auto Z = Basis::computational(2);
             const auto X = fourier_basis(2);
             std::vector<PureState> states{honest_state(2, 10), PureState::power({1.0, 0.0}, 10),
                                           random_state(2, 10, rng)};
             double worst = 1.0;
             for (const auto &psi : states) {
                 const auto r = check_theorem1(psi, p, Z, X, 200, rng, opt.workers);
                 const double sigma = std::sqrt(r.eps_dprime * (1.0 - r.eps_dprime) / static_cast<double>(r.trials));
                 worst = std::min(worst, r.satisfaction_frequency);
                 check(r.satisfaction_frequency >= 1.0 - r.eps_dprime - 5.0 * sigma,
                       "satisfaction frequency " + detail::fmt(r.satisfaction_frequency));
             }
             return "min frequency " + detail::fmt(worst);
         }},
    };
}

inline std::vector<InvariantCase> extractor_invariants() {
    using detail::check;
    return {
        {"extractor", "linearity",
         [](Rng &rng, const VerifyOptions &) {
             const auto seed = ToeplitzSeed::random(257, 100, rng);
             for (int i = 0; i < 500; ++i) {
                 BitVector a(257), b(257), c(257);
                 for (std::size_t k = 0; k < 257; ++k) {
                     a[k] = rng.bit();
                     b[k] = rng.bit();
                     c[k] = a[k] ^ b[k];
                 }
                 auto ha = toeplitz_hash(a, seed);
                 const auto hb = toeplitz_hash(b, seed);
                 for (std::size_t j = 0; j < ha.size(); ++j) {
                     ha[j] ^= hb[j];
                 }
                 check(ha == toeplitz_hash(c, seed), "hash(x ^ y) != hash(x) ^ hash(y)");
             }
             return std::string("500 pairs");
         }},
        {"extractor", "two_universal",
         [](Rng &, const VerifyOptions &) {
             for (auto [n_in, ell] : {std::pair<std::uint64_t, std::uint64_t>{8, 3}, {10, 4}}) {
                 const std::uint64_t seeds = std::uint64_t{1} << (n_in + ell - 1);
                 std::uint64_t worst = 0;
                 for (std::uint64_t diff = 1; diff < (std::uint64_t{1} << n_in); ++diff) {
                     BitVector x(n_in);
                     for (std::uint64_t k = 0; k < n_in; ++k) {
                         x[k] = (diff >> k) & 1;
                     }
                     std::uint64_t collisions = 0;
                     for (std::uint64_t s = 0; s < seeds; ++s) {
                         ToeplitzSeed seed{BitVector(n_in + ell - 1), n_in, ell};
                         for (std::uint64_t k = 0; k < seed.bits.size(); ++k) {
                             seed.bits[k] = (s >> k) & 1;
                         }
                         const auto h = toeplitz_hash(x, seed);
                         collisions += std::all_of(h.begin(), h.end(), [](auto b) { return b == 0; });
                     }
                     worst = std::max(worst, collisions);
                 }
                 check(worst <= seeds >> ell, "collision probability above 2^-ell at n_in=" + std::to_string(n_in));
             }
             return std::string("(8,3) and (10,4), all differences");
         }},
        {"extractor", "pa_bound_monotone",
         [](Rng &rng, const VerifyOptions &) {
             for (int i = 0; i < 500; ++i) {
                 const double h = 200.0 * rng.uniform(), ell = 100.0 * rng.uniform(), eps = 0.1 * rng.uniform();
                 const double b = pa_distance_bound(h, ell, eps);
                 check(pa_distance_bound(h + 1.0, ell, eps) <= b, "not decreasing in h_min");
                 check(pa_distance_bound(h, ell, eps + 0.01) >= b, "not increasing in epsilon");
             }
             return std::string("500 samples");
         }},
    };
}

/// Runs the cases in order, each with its own stream derived from the seed,
/// and stops at the first violation.
inline std::vector<InvariantResult> run_invariants(const std::vector<InvariantCase> &cases, const VerifyOptions &opt) {
    std::vector<InvariantResult> results;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto &c = cases[i];
        Rng rng(derive_seed(opt.seed, i));
        InvariantResult r{c.module, c.name, false, ""};
        try {
            r.detail = c.run(rng, opt);
            r.passed = true;
        } catch (const InvariantViolation &e) {
            r.detail = e.what();
        }
        results.push_back(std::move(r));
        if (!results.back().passed) {
            break;
        }
    }
    return results;
}

}  // namespace eur
