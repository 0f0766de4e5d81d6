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

// Dense statevector simulator for k qudits of local dimension d. Site 0 is
// the most significant digit of the amplitude index. Realizes the sampling
// experiment (random subset, two-outcome test measurement, removal of the
// measured sites) and computes min-entropies for trivial or classical side
// information by exact enumeration.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eur/basis.hpp"
#include "eur/entmath.hpp"
#include "eur/errors.hpp"
#include "eur/parallel.hpp"
#include "eur/rng.hpp"
#include "eur/sampling.hpp"

namespace eur {

inline constexpr std::uint64_t kMaxAmplitudes = std::uint64_t{1} << 24;
inline constexpr double kNormTolerance = 1e-9;

/// d^k, or ResourceError when it exceeds the 2^24 amplitude guard.
inline std::uint64_t statevector_size(std::uint32_t d, std::uint64_t sites) {
    detail::require(d >= 2, "statevector_size: d must be >= 2");
    std::uint64_t size = 1;
    for (std::uint64_t i = 0; i < sites; ++i) {
        if (size > kMaxAmplitudes / d) {
            throw ResourceError("statevector of " + std::to_string(sites) + " sites of dimension " +
                                std::to_string(d) + " exceeds 2^24 amplitudes");
        }
        size *= d;
    }
    return size;
}

class PureState {
  public:
    PureState(std::uint32_t d, std::uint64_t sites, std::vector<cplx> amplitudes)
        : d_(d), sites_(sites), amps_(std::move(amplitudes)) {
        detail::require(amps_.size() == statevector_size(d, sites), "PureState: amplitude count is not d^k");
        detail::require(std::abs(norm() - 1.0) <= kNormTolerance, "PureState: state is not normalized");
    }

    /// Tensor product of the given single-site unit vectors.
    static PureState product(std::uint32_t d, std::span<const std::vector<cplx>> factors) {
        std::vector<cplx> amps{1.0};
        amps.reserve(statevector_size(d, factors.size()));
        for (const auto &f : factors) {
            detail::require(f.size() == d, "PureState::product: factor has wrong dimension");
            std::vector<cplx> next(amps.size() * d);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                for (std::uint32_t a = 0; a < d; ++a) {
                    next[i * d + a] = amps[i] * f[a];
                }
            }
            amps = std::move(next);
        }
        return PureState(d, factors.size(), std::move(amps));
    }

    /// local^(tensor k).
    static PureState power(const std::vector<cplx> &local, std::uint64_t sites) {
        const auto d = static_cast<std::uint32_t>(local.size());
        statevector_size(d, sites);
        std::vector<std::vector<cplx>> factors(sites, local);
        return product(d, factors);
    }

    std::uint32_t d() const { return d_; }
    std::uint64_t sites() const { return sites_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<cplx> &amplitudes() const { return amps_; }
    cplx operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

  private:
    std::uint32_t d_;
    std::uint64_t sites_;
    std::vector<cplx> amps_;
};

/// |x_0>^(tensor k) with x_0 the first Fourier basis vector.
inline PureState honest_state(std::uint32_t d, std::uint64_t sites) {
    statevector_size(d, sites);
    return PureState::power(fourier_basis(d).column(0), sites);
}

/// Haar-like random pure state (normalized complex Gaussian vector).
inline PureState random_state(std::uint32_t d, std::uint64_t sites, Rng &rng) {
    std::vector<cplx> amps(statevector_size(d, sites));
    double s = 0.0;
    for (auto &a : amps) {
        a = cplx(rng.normal(), rng.normal());
        s += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(s);
    for (auto &a : amps) {
        a *= inv;
    }
    return PureState(d, sites, std::move(amps));
}

namespace detail {

inline std::uint64_t site_stride(std::uint32_t d, std::uint64_t sites, std::uint64_t site) {
    std::uint64_t stride = 1;
    for (std::uint64_t i = site + 1; i < sites; ++i) {
        stride *= d;
    }
    return stride;
}

// c[r] = sum_a conj(bra[a]) v[r with digit `site` = a]; r enumerates the
// remaining digits in order.
inline std::vector<cplx> contract_site(const std::vector<cplx> &v, std::uint32_t d, std::uint64_t sites,
                                       std::uint64_t site, const std::vector<cplx> &bra) {
    const std::uint64_t stride = site_stride(d, sites, site);
    const std::uint64_t block = stride * d;
    std::vector<cplx> c(v.size() / d, 0.0);
    for (std::uint64_t hi = 0; hi < v.size() / block; ++hi) {
        for (std::uint32_t a = 0; a < d; ++a) {
            const cplx w = std::conj(bra[a]);
            const cplx *src = &v[hi * block + a * stride];
            cplx *dst = &c[hi * stride];
            for (std::uint64_t lo = 0; lo < stride; ++lo) {
                dst[lo] += w * src[lo];
            }
        }
    }
    return c;
}

// Applies the projector |x><x| (outcome 0) or I - |x><x| (outcome 1) on one
// site in place, given the contraction c = (<x| tensor I) v.
inline void project_site(std::vector<cplx> &v, std::uint32_t d, std::uint64_t sites, std::uint64_t site,
                         const std::vector<cplx> &ket, const std::vector<cplx> &c, int outcome) {
    const std::uint64_t stride = site_stride(d, sites, site);
    const std::uint64_t block = stride * d;
    for (std::uint64_t hi = 0; hi < v.size() / block; ++hi) {
        for (std::uint32_t a = 0; a < d; ++a) {
            cplx *dst = &v[hi * block + a * stride];
            const cplx *src = &c[hi * stride];
            for (std::uint64_t lo = 0; lo < stride; ++lo) {
                const cplx proj = ket[a] * src[lo];
                dst[lo] = outcome == 0 ? proj : dst[lo] - proj;
            }
        }
    }
}

inline double squared_norm(const std::vector<cplx> &v) {
    double s = 0.0;
    for (const auto &a : v) {
        s += std::norm(a);
    }
    return s;
}

// Reorders sites: new site j is old site order[j].
inline std::vector<cplx> permute_sites(const std::vector<cplx> &v, std::uint32_t d, std::uint64_t sites,
                                       const std::vector<std::uint64_t> &order) {
    std::vector<std::uint64_t> new_stride(sites);
    for (std::uint64_t j = 0; j < sites; ++j) {
        new_stride[j] = site_stride(d, sites, j);
    }
    // old site s lands at new position pos[s]
    std::vector<std::uint64_t> pos(sites);
    for (std::uint64_t j = 0; j < sites; ++j) {
        pos[order[j]] = j;
    }
    std::vector<cplx> out(v.size());
    for (std::uint64_t idx = 0; idx < v.size(); ++idx) {
        std::uint64_t rest = idx;
        std::uint64_t target = 0;
        for (std::uint64_t s = sites; s-- > 0;) {
            target += (rest % d) * new_stride[pos[s]];
            rest /= d;
        }
        out[target] = v[idx];
    }
    return out;
}

inline std::vector<cplx> checked_unit_vector(const std::vector<cplx> &x, std::uint32_t d, const char *who) {
    require(x.size() == d, std::string(who) + ": test vector has wrong dimension");
    double s = 0.0;
    for (const auto &a : x) {
        s += std::norm(a);
    }
    require(std::abs(s - 1.0) <= kNormTolerance, std::string(who) + ": test vector is not normalized");
    return x;
}

}  // namespace detail

/// Result of one run of the sampling experiment.
struct ExperimentOutcome {
    SubsetIndex t;
    std::vector<std::uint8_t> q;  // test outcomes on t, ascending site order
    /// The n unmeasured sites (original order) followed by the m measured
    /// sites as a purifying register. The reduced state of the leading
    /// system_sites sites is the post-measurement state with the measured
    /// part traced out.
    PureState post_state;
    std::uint64_t system_sites = 0;
    double prob = 1.0;  // Born probability of q given t

    double weight() const {
        return static_cast<double>(std::count(q.begin(), q.end(), std::uint8_t{1})) / static_cast<double>(q.size());
    }
};

/// Draws a uniform m-subset t, measures the sites of t in ascending order
/// with the POVM {|x0><x0|, I - |x0><x0|} (Born sampling, renormalizing after
/// each outcome), and returns (t, q, post-measurement state).
inline ExperimentOutcome run_experiment(const PureState &state, std::uint64_t m, const std::vector<cplx> &x0,
                                        Rng &rng) {
    const std::uint32_t d = state.d();
    const std::uint64_t k = state.sites();
    detail::require(m >= 1 && m < k, "run_experiment: requires 1 <= m < number of sites");
    const auto ket = detail::checked_unit_vector(x0, d, "run_experiment");

    SubsetIndex t = sample_subset(k, m, rng);
    std::vector<cplx> psi = state.amplitudes();
    std::vector<std::uint8_t> q;
    q.reserve(m);
    double prob = 1.0;
    for (auto site : t.indices) {
        const auto c = detail::contract_site(psi, d, k, site, ket);
        const double p0 = std::clamp(detail::squared_norm(c), 0.0, 1.0);
        const int outcome = rng.uniform() < p0 ? 0 : 1;
        detail::project_site(psi, d, k, site, ket, c, outcome);
        const double p = outcome == 0 ? p0 : 1.0 - p0;
        prob *= p;
        const double inv = 1.0 / std::sqrt(detail::squared_norm(psi));
        for (auto &a : psi) {
            a *= inv;
        }
        q.push_back(static_cast<std::uint8_t>(outcome));
    }

    std::vector<std::uint64_t> order = t.complement();
    const std::uint64_t n = order.size();
    order.insert(order.end(), t.indices.begin(), t.indices.end());
    auto moved = detail::permute_sites(psi, d, k, order);
    return ExperimentOutcome{std::move(t), std::move(q), PureState(d, k, std::move(moved)), n, prob};
}

/// Probability of one (t, q) path of the experiment.
struct PathProbability {
    std::uint64_t t_mask = 0;  // bit s set when site s is sampled
    std::uint64_t q_bits = 0;  // bit j is the outcome on the j-th sampled site
    double prob = 0.0;         // includes the 1 / C(k, m) subset probability
};

/// Exhaustive joint distribution of (t, q): for every m-subset and outcome
/// string, the squared norm of the jointly projected state divided by the
/// number of subsets.
inline std::vector<PathProbability> path_distribution(const PureState &state, std::uint64_t m,
                                                      const std::vector<cplx> &x0) {
    const std::uint32_t d = state.d();
    const std::uint64_t k = state.sites();
    detail::require(m >= 1 && m < k, "path_distribution: requires 1 <= m < number of sites");
    detail::require(k < 64, "path_distribution: at most 63 sites");
    const auto ket = detail::checked_unit_vector(x0, d, "path_distribution");
    const double log_subsets = log_binomial(static_cast<std::int64_t>(k), static_cast<std::int64_t>(m));
    const double work = std::exp(log_subsets) * std::ldexp(1.0, static_cast<int>(std::min<std::uint64_t>(m, 60))) *
                        static_cast<double>(state.size());
    if (work > 1e9) {
        throw ResourceError("path_distribution: enumeration too large");
    }
    const double inv_subsets = std::exp(-log_subsets);

    std::vector<PathProbability> out;
    std::vector<std::uint64_t> sites;
    auto descend = [&](auto &&self, const std::vector<cplx> &v, std::size_t depth, std::uint64_t mask,
                       std::uint64_t bits) -> void {
        if (depth == sites.size()) {
            out.push_back({mask, bits, detail::squared_norm(v) * inv_subsets});
            return;
        }
        const auto c = detail::contract_site(v, d, k, sites[depth], ket);
        for (int outcome = 0; outcome < 2; ++outcome) {
            auto branch = v;
            detail::project_site(branch, d, k, sites[depth], ket, c, outcome);
            self(self, branch, depth + 1, mask, bits | (std::uint64_t(outcome) << depth));
        }
    };
    // Gosper's hack over all k-bit masks with m bits set.
    std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    const std::uint64_t limit = std::uint64_t{1} << k;
    while (mask < limit) {
        sites.clear();
        for (std::uint64_t s = 0; s < k; ++s) {
            if (mask >> s & 1) {
                sites.push_back(s);
            }
        }
        descend(descend, state.amplitudes(), 0, mask, 0);
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    return out;
}

inline std::uint64_t subset_mask(const SubsetIndex &t) {
    std::uint64_t mask = 0;
    for (auto s : t.indices) {
        mask |= std::uint64_t{1} << s;
    }
    return mask;
}

inline std::uint64_t outcome_bits(const std::vector<std::uint8_t> &q) {
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
        bits |= std::uint64_t{q[j]} << j;
    }
    return bits;
}

struct ChiSquareResult {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    std::size_t bins = 0;
};

/// Pearson goodness of fit of observed (t, q) counts against the exhaustive
/// path distribution. Outcomes with expected count below 5 are pooled; an
/// observation of a zero-probability path gives p = 0.
inline ChiSquareResult chi_square_paths(const std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> &observed,
                                        const std::vector<PathProbability> &expected, std::uint64_t trials) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, double> prob;
    for (const auto &p : expected) {
        prob[{p.t_mask, p.q_bits}] += p.prob;
    }
    for (const auto &[key, count] : observed) {
        const auto it = prob.find(key);
        if (count > 0 && (it == prob.end() || it->second <= 1e-15)) {
            return {std::numeric_limits<double>::infinity(), 0.0, 0.0, 0};
        }
    }
    std::vector<std::pair<double, double>> bins;  // (expected, observed)
    double pooled_exp = 0.0;
    double pooled_obs = 0.0;
    const auto nt = static_cast<double>(trials);
    for (const auto &[key, p] : prob) {
        const auto it = observed.find(key);
        const double obs = it == observed.end() ? 0.0 : static_cast<double>(it->second);
        const double e = p * nt;
        if (e < 5.0) {
            pooled_exp += e;
            pooled_obs += obs;
        } else {
            bins.emplace_back(e, obs);
        }
    }
    if (pooled_exp > 0.0) {
        if (pooled_exp >= 5.0 || bins.empty()) {
            bins.emplace_back(pooled_exp, pooled_obs);
        } else {
            auto smallest = std::min_element(bins.begin(), bins.end());
            smallest->first += pooled_exp;
            smallest->second += pooled_obs;
        }
    }
    ChiSquareResult r;
    r.bins = bins.size();
    if (bins.size() < 2) {
        return r;  // a single bin carries no information; p = 1
    }
    for (const auto &[e, o] : bins) {
        r.statistic += (o - e) * (o - e) / e;
    }
    r.dof = static_cast<double>(bins.size() - 1);
    r.p_value = chi_square_sf(r.statistic, r.dof);
    return r;
}

/// Min-entropy -log2 max_x p_x of a probability vector, in bits.
inline double min_entropy_classical(std::span<const double> dist) {
    detail::require(!dist.empty(), "min_entropy_classical: empty distribution");
    double sum = 0.0;
    double best = 0.0;
    for (double p : dist) {
        detail::require(p >= 0.0 && std::isfinite(p), "min_entropy_classical: negative or non-finite entry");
        sum += p;
        best = std::max(best, p);
    }
    detail::require(std::abs(sum - 1.0) <= 1e-9, "min_entropy_classical: entries do not sum to 1");
    return 0.0 - std::log2(best);
}

/// Outcome distribution of measuring the first `system_sites` sites, site s
/// in bases[s], marginalizing the remaining (trailing) sites.
inline std::vector<double> measurement_distribution(const PureState &state, std::span<const Basis> bases,
                                                    std::uint64_t system_sites) {
    const std::uint32_t d = state.d();
    const std::uint64_t k = state.sites();
    detail::require(system_sites >= 1 && system_sites <= k, "measurement_distribution: bad system size");
    detail::require(bases.size() == system_sites, "measurement_distribution: need one basis per system site");
    std::vector<cplx> v = state.amplitudes();
    std::vector<cplx> scratch(d);
    for (std::uint64_t s = 0; s < system_sites; ++s) {
        const Basis &b = bases[s];
        detail::require(b.dim() == d, "measurement_distribution: basis dimension mismatch");
        const std::uint64_t stride = detail::site_stride(d, k, s);
        const std::uint64_t block = stride * d;
        for (std::uint64_t hi = 0; hi < v.size() / block; ++hi) {
            for (std::uint64_t lo = 0; lo < stride; ++lo) {
                cplx *base = &v[hi * block + lo];
                for (std::uint32_t j = 0; j < d; ++j) {
                    cplx acc = 0.0;
                    for (std::uint32_t a = 0; a < d; ++a) {
                        acc += std::conj(b(a, j)) * base[a * stride];
                    }
                    scratch[j] = acc;
                }
                for (std::uint32_t j = 0; j < d; ++j) {
                    base[j * stride] = scratch[j];
                }
            }
        }
    }
    const std::uint64_t register_size = v.size() / statevector_size(d, system_sites);
    std::vector<double> dist(v.size() / register_size, 0.0);
    for (std::uint64_t i = 0; i < v.size(); ++i) {
        dist[i / register_size] += std::norm(v[i]);
    }
    return dist;
}

inline std::vector<double> measurement_distribution(const PureState &state, const Basis &basis,
                                                    std::uint64_t system_sites) {
    std::vector<Basis> bases(system_sites, basis);
    return measurement_distribution(state, bases, system_sites);
}

/// H_min of the outcome of measuring the first `system_sites` sites in
/// `basis` (trivial side information). Defaults to all sites.
inline double min_entropy_measured(const PureState &state, const Basis &basis, std::uint64_t system_sites = 0) {
    if (system_sites == 0) {
        system_sites = state.sites();
    }
    const auto dist = measurement_distribution(state, basis, system_sites);
    double sum = std::accumulate(dist.begin(), dist.end(), 0.0);
    return 0.0 - std::log2(*std::max_element(dist.begin(), dist.end()) / sum);
}

/// <phi| rho_sys |phi>, where rho_sys is the reduced state of the leading
/// phi.sites() sites of `state`.
inline double fidelity_with_system_state(const PureState &state, const PureState &phi) {
    detail::require(state.d() == phi.d() && phi.sites() <= state.sites(),
                    "fidelity_with_system_state: incompatible states");
    const std::uint64_t register_size = state.size() / phi.size();
    double f = 0.0;
    for (std::uint64_t r = 0; r < register_size; ++r) {
        cplx acc = 0.0;
        for (std::uint64_t s = 0; s < phi.size(); ++s) {
            acc += std::conj(phi[s]) * state[s * register_size + r];
        }
        f += std::norm(acc);
    }
    return f;
}

struct Lemma1Check {
    double lhs = 0.0;  // H_min(X|E) of the superposition
    double rhs = 0.0;  // H_min(X|E) of the mixture minus log2 |J|
    double log2_support = 0.0;
};

inline constexpr std::size_t kMaxLemma1Support = 64;

/// Both sides of H_min(X|E)_psi >= H_min(X|E)_rho - log2|J| for
/// psi = sum_i alpha_i |J_i>|phi_i> and rho = sum_i |alpha_i|^2 |J_i><J_i| (x) |phi_i><phi_i|.
/// E is treated as classical: it is read out in its computational basis and
/// the conditional min-entropy is -log2 sum_e max_x P(x, e).
inline Lemma1Check check_lemma1(std::span<const cplx> amplitudes, std::span<const std::uint32_t> support,
                                const Basis &X, std::span<const std::vector<cplx>> ancilla) {
    const std::size_t J = amplitudes.size();
    if (J > kMaxLemma1Support) {
        throw ResourceError("check_lemma1: support larger than 64");
    }
    detail::require(J >= 1, "check_lemma1: empty support");
    detail::require(support.size() == J && ancilla.size() == J, "check_lemma1: mismatched input sizes");
    detail::require(X.is_unitary(), "check_lemma1: X is not unitary");
    const std::uint32_t D = X.dim();
    const std::size_t E = ancilla[0].size();
    double total = 0.0;
    for (std::size_t i = 0; i < J; ++i) {
        detail::require(support[i] < D, "check_lemma1: support index outside the basis dimension");
        detail::require(ancilla[i].size() == E, "check_lemma1: ancilla dimensions differ");
        detail::require(std::abs(std::sqrt(detail::squared_norm(ancilla[i])) - 1.0) <= kNormTolerance,
                        "check_lemma1: ancilla state not normalized");
        total += std::norm(amplitudes[i]);
    }
    detail::require(std::abs(total - 1.0) <= kNormTolerance, "check_lemma1: amplitudes not normalized");
    std::vector<std::uint32_t> sorted(support.begin(), support.end());
    std::sort(sorted.begin(), sorted.end());
    detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                    "check_lemma1: repeated support index");

    double guess_pure = 0.0;
    double guess_mixed = 0.0;
    for (std::size_t e = 0; e < E; ++e) {
        double best_pure = 0.0;
        double best_mixed = 0.0;
        for (std::uint32_t x = 0; x < D; ++x) {
            cplx amp = 0.0;
            double mixed = 0.0;
            for (std::size_t i = 0; i < J; ++i) {
                const cplx overlap = std::conj(X(support[i], x));  // <x_x|J_i>
                amp += amplitudes[i] * overlap * ancilla[i][e];
                mixed += std::norm(amplitudes[i]) * std::norm(overlap) * std::norm(ancilla[i][e]);
            }
            best_pure = std::max(best_pure, std::norm(amp));
            best_mixed = std::max(best_mixed, mixed);
        }
        guess_pure += best_pure;
        guess_mixed += best_mixed;
    }
    Lemma1Check r;
    r.log2_support = std::log2(static_cast<double>(J));
    r.lhs = 0.0 - std::log2(std::min(1.0, guess_pure));
    r.rhs = 0.0 - std::log2(std::min(1.0, guess_mixed)) - r.log2_support;
    return r;
}

/// Convenience form: alpha_i = sqrt(weights[i]) on support {0, ..., |J|-1}.
inline Lemma1Check check_lemma1(std::span<const double> weights, const Basis &X,
                                std::span<const std::vector<cplx>> ancilla) {
    std::vector<cplx> amps;
    std::vector<std::uint32_t> support;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        detail::require(weights[i] >= 0.0, "check_lemma1: negative weight");
        amps.emplace_back(std::sqrt(weights[i]));
        support.push_back(static_cast<std::uint32_t>(i));
    }
    return check_lemma1(amps, support, X, ancilla);
}

struct Theorem1Trial {
    double weight = 0.0;   // w(q)
    double bound = 0.0;    // n gamma - n Hbar_d(w(q) + delta) log2 d
    double entropy = 0.0;  // H_min(Z) of the remaining n sites, non-smoothed
    bool satisfied = false;
};

struct Theorem1Report {
    std::uint64_t trials = 0;
    std::uint64_t satisfied = 0;
    double satisfaction_frequency = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double eps_prime = 0.0;
    double eps_dprime = 0.0;
    std::uint64_t seed = 0;
    std::vector<Theorem1Trial> per_trial;
    std::string entropy_label =
        "one-sided check: non-smoothed H_min(Z) of the remaining sites, a lower bound on the smoothed quantity";
};

/// Empirical check of the min-entropy bound after the sampling experiment,
/// for a pure input with trivial side information. Each trial runs the
/// experiment with test vector X column 0, measures the remaining n sites in
/// Z and compares H_min(Z) against n gamma - n Hbar_d(w(q) + delta) log2 d.
inline Theorem1Report check_theorem1(const PureState &state, const SamplingParams &p, const Basis &Z,
                                     const Basis &X, std::uint64_t trials, Rng &rng, unsigned workers = 1) {
    p.validate();
    detail::require(state.d() == p.d && Z.dim() == p.d && X.dim() == p.d, "check_theorem1: dimension mismatch");
    detail::require(state.sites() == p.total(), "check_theorem1: state must have m + n sites");
    detail::require(trials >= 1, "check_theorem1: at least one trial");
    Theorem1Report report;
    report.trials = trials;
    report.gamma = gamma_overlap(Z, X);
    report.delta = delta_from_epsilon(p);
    const auto eps = theorem1_epsilons(p.epsilon, p.beta);
    report.eps_prime = eps.eps_prime;
    report.eps_dprime = eps.eps_dprime;
    report.seed = rng();
    const auto x0 = X.column(0);
    const double n = static_cast<double>(p.n);
    const double log2d = std::log2(static_cast<double>(p.d));
    report.per_trial.resize(trials);
    parallel_for(trials, workers, [&](std::size_t i) {
        Rng local(derive_seed(report.seed, i));
        const auto outcome = run_experiment(state, p.m, x0, local);
        Theorem1Trial tr;
        tr.weight = outcome.weight();
        tr.bound = n * report.gamma - n * extended_dary_entropy(tr.weight + report.delta, p.d) * log2d;
        tr.entropy = min_entropy_measured(outcome.post_state, Z, outcome.system_sites);
        tr.satisfied = tr.entropy >= tr.bound - 1e-9;
        report.per_trial[i] = tr;
    });
    report.satisfied = static_cast<std::uint64_t>(
        std::count_if(report.per_trial.begin(), report.per_trial.end(), [](const auto &t) { return t.satisfied; }));
    report.satisfaction_frequency = static_cast<double>(report.satisfied) / static_cast<double>(trials);
    return report;
}

struct ClEntCheck {
    double lhs = 0.0;  // H_min(A|C)
    double rhs = 0.0;  // min_c H_min(A | C = c)
};

/// Both sides of H_min(A|C) >= min_c H_min(A)_{rho^c} for a classical joint
/// distribution given as (p_c, p(a|c)) pairs. For classical C the operator
/// definition of the conditional min-entropy evaluates to
/// -log2 sum_c p_c max_a p(a|c).
inline ClEntCheck cl_ent_check(std::span<const std::pair<double, std::vector<double>>> joint) {
    detail::require(!joint.empty(), "cl_ent_check: empty joint distribution");
    double total = 0.0;
    double guess = 0.0;
    double rhs = std::numeric_limits<double>::infinity();
    for (const auto &[pc, dist] : joint) {
        detail::require(pc >= 0.0, "cl_ent_check: negative p_c");
        total += pc;
        const double h = min_entropy_classical(dist);
        guess += pc * std::exp2(-h);
        if (pc > 0.0) {
            rhs = std::min(rhs, h);
        }
    }
    detail::require(std::abs(total - 1.0) <= 1e-9, "cl_ent_check: p_c do not sum to 1");
    return {0.0 - std::log2(guess), rhs};
}

}  // namespace eur
