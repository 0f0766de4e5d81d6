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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eur/basis.hpp"
#include "eur/errors.hpp"
#include "eur/extractor.hpp"
#include "eur/invariants.hpp"
#include "eur/qsim.hpp"
#include "eur/rates.hpp"
#include "eur/sampling.hpp"

namespace eur::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kConfigError = 2, kResourceError = 3 };

/// Invalid configuration; field() names the offending option.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
    const std::string &field() const { return field_; }

  private:
    std::string field_;
};

struct RunConfig {
    std::string subcommand;
    std::uint32_t d = 4;
    double noise = 0.02;
    double fraction = 0.07;
    double epsilon = 1e-36;
    double beta = 1.0 / 3.0;
    double eps_prime_l2 = 4e-12;
    std::uint64_t n_start = 1000;
    std::uint64_t n_stop = 100000000;
    std::uint64_t points = 60;
    bool log = true;
    std::vector<std::uint64_t> n_list;
    std::vector<double> delta;
    std::uint64_t trials = 0;  // 0: command default
    std::uint64_t seed = 1;
    unsigned workers = 0;      // 0: machine parallelism
    std::string mode = "auto";
    std::string state = "honest";
    std::string q_override = "worst";
    std::string out;
    std::string bits;
    std::string inject_fault;
    std::string config;
    bool raw = false;
    /// Options given on the command line or in the config file.
    std::set<std::string> explicit_keys;

    bool is_explicit(const std::string &key) const { return explicit_keys.count(key) > 0; }
};

inline constexpr std::uint64_t kSampleVerifyTrials = 100000;
inline constexpr std::uint64_t kSimulateTrials = 100000;
inline constexpr std::uint64_t kVerifyTrials = 20000;

inline std::uint64_t default_trials(const std::string &subcommand) {
    if (subcommand == "sample-verify") return kSampleVerifyTrials;
    if (subcommand == "simulate") return kSimulateTrials;
    if (subcommand == "verify") return kVerifyTrials;
    return 0;
}

/// Fills command defaults and checks every field against the ranges of the
/// module it feeds.
inline RunConfig resolve(RunConfig cfg) {
    if (cfg.trials == 0) {
        cfg.trials = default_trials(cfg.subcommand);
    }
    auto need = [](bool ok, const char *field, const std::string &msg) {
        if (!ok) throw ConfigError(field, msg);
    };
    need(cfg.subcommand == "rates" || cfg.subcommand == "sample-verify" || cfg.subcommand == "simulate" ||
             cfg.subcommand == "verify",
         "subcommand", "unknown subcommand '" + cfg.subcommand + "'");
    need(cfg.d >= 2 && cfg.d <= kMaxAlphabet, "d", "must lie in [2, 2^20]");
    need(cfg.noise >= 0.0 && cfg.noise <= 1.0, "noise", "must lie in [0, 1]");
    need(cfg.fraction > 0.0 && cfg.fraction < 0.5, "fraction", "must lie in (0, 1/2)");
    need(cfg.epsilon > 0.0 && cfg.epsilon < 1.0, "epsilon", "must lie in (0, 1)");
    need(cfg.beta > 0.0 && cfg.beta < 0.5, "beta", "must lie in (0, 1/2)");
    need(cfg.eps_prime_l2 > 0.0 && cfg.eps_prime_l2 < 1.0, "eps-prime-l2", "must lie in (0, 1)");
    need(cfg.n_start >= 1 && cfg.n_stop >= cfg.n_start, "n-start", "need 1 <= n-start <= n-stop");
    need(cfg.points >= 1, "points", "must be >= 1");
    for (double delta : cfg.delta) {
        need(delta >= 0.0 && delta <= 1.0, "delta", "must lie in [0, 1]");
    }
    need(cfg.q_override == "worst" || cfg.q_override == "zero" || cfg.q_override == "half", "q-override",
         "must be worst, zero or half");
    need(cfg.state == "honest" || cfg.state == "z0" || cfg.state == "x1" || cfg.state == "random", "state",
         "must be honest, z0, x1 or random");
    need(cfg.inject_fault.empty() || cfg.inject_fault == "fourier", "inject-fault", "only 'fourier' is supported");
    if (cfg.subcommand == "sample-verify") {
        need(cfg.mode == "auto" || cfg.mode == "mc" || cfg.mode == "exact", "mode",
             "sample-verify accepts auto, mc or exact");
        need(cfg.trials >= 10000, "trials", "sample-verify needs at least 1e4 trials");
    } else if (cfg.subcommand == "simulate") {
        need(cfg.mode == "auto" || cfg.mode == "fast" || cfg.mode == "statevector", "mode",
             "simulate accepts auto, fast or statevector");
        need(cfg.trials >= 1, "trials", "must be >= 1");
    } else {
        need(cfg.mode == "auto", "mode", "only meaningful for sample-verify and simulate");
    }
    if (cfg.subcommand == "verify") {
        need(cfg.trials >= 1000, "trials", "verify needs at least 1000 trials");
    }
    return cfg;
}

/// N values: the explicit list, else the (start, stop, points) range.
inline std::vector<std::uint64_t> n_values(const RunConfig &cfg) {
    if (!cfg.n_list.empty()) {
        return cfg.n_list;
    }
    return n_range(cfg.n_start, cfg.n_stop, cfg.points, cfg.log);
}

namespace detail {

template <typename T>
std::string join(const std::vector<T> &v) {
    std::ostringstream os;
    os << std::setprecision(12);
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? "," : "") << v[i];
    }
    return os.str();
}

inline ProtocolParams protocol(const RunConfig &cfg, std::uint64_t N) {
    ProtocolParams p;
    p.d = cfg.d;
    p.N = N;
    p.sample_fraction = cfg.fraction;
    p.epsilon = cfg.epsilon;
    p.beta = cfg.beta;
    p.eps_prime_ell2 = cfg.eps_prime_l2;
    return p;
}

}  // namespace detail

/// Effective configuration as '# key=value' lines, defaults included.
inline void write_config_header(std::ostream &os, const RunConfig &cfg) {
    os << std::setprecision(12);
    os << "# eurqrng " << cfg.subcommand << "\n"
       << "# d=" << cfg.d << "\n"
       << "# noise=" << cfg.noise << "\n"
       << "# fraction=" << cfg.fraction << "\n"
       << "# epsilon=" << cfg.epsilon << "\n"
       << "# beta=" << cfg.beta << "\n"
       << "# eps-prime-l2=" << cfg.eps_prime_l2 << "\n"
       << "# n-start=" << cfg.n_start << "\n"
       << "# n-stop=" << cfg.n_stop << "\n"
       << "# points=" << cfg.points << "\n"
       << "# log=" << (cfg.log ? "true" : "false") << "\n"
       << "# n-list=" << detail::join(cfg.n_list) << "\n"
       << "# delta=" << detail::join(cfg.delta) << "\n"
       << "# trials=" << cfg.trials << "\n"
       << "# seed=" << cfg.seed << "\n"
       << "# workers=" << (cfg.workers == 0 ? std::string("auto") : std::to_string(cfg.workers)) << "\n"
       << "# mode=" << cfg.mode << "\n"
       << "# state=" << cfg.state << "\n"
       << "# q-override=" << cfg.q_override << "\n"
       << "# raw=" << (cfg.raw ? "true" : "false") << "\n"
       << "# inject-fault=" << cfg.inject_fault << "\n"
       << "# out=" << cfg.out << "\n"
       << "# bits=" << cfg.bits << "\n"
       << "# config=" << cfg.config << "\n";
    const auto eps = theorem1_epsilons(cfg.epsilon, cfg.beta);
    os << "# eps_prime=" << eps.eps_prime << "\n"
       << "# eps_dprime=" << eps.eps_dprime << "\n"
       << "# eps_pa=" << protocol_pa_epsilon(cfg.epsilon, cfg.beta) << "\n";
}

inline int cmd_rates(const RunConfig &cfg, std::ostream &os) {
    const auto Ns = n_values(cfg);
    for (auto N : Ns) {
        if (N < kMinSweepN) {
            throw ConfigError(cfg.n_list.empty() ? "n-start" : "n-list", "every N must be >= 30");
        }
    }
    const auto rows = sweep(detail::protocol(cfg, 0), cfg.noise, Ns, cfg.workers);
    write_config_header(os, cfg);
    os << "N,m,n,delta,ell_ours,ell_1,ell_2,rate_ours,rate_1,rate_2,flags";
    if (cfg.raw) {
        os << ",raw_ours,raw_1,raw_2";
    }
    os << "\n";
    for (const auto &r : rows) {
        os << r.N << ',' << r.m << ',' << r.n << ',' << r.delta << ',' << r.ell_ours << ',' << r.ell_1 << ','
           << r.ell_2 << ',' << r.rate_ours << ',' << r.rate_1 << ',' << r.rate_2 << ',' << r.flags;
        if (cfg.raw) {
            os << ',' << r.raw_ours << ',' << r.raw_1 << ',' << r.raw_2;
        }
        os << "\n";
    }
    return kSuccess;
}

struct SampleVerifyRow {
    std::uint32_t d = 0;
    std::uint64_t N = 0, m = 0, n = 0;
    double delta = 0.0;
    std::uint64_t weight = 0;
    ErrorEstimate estimate;
    double bound = 1.0;
    bool pass = false;
};

/// Grid of (d, N, m, delta) cells. Explicit --d, N options, --fraction and
/// --delta replace the corresponding default axis.
inline std::vector<SampleVerifyRow> sample_verify_rows(const RunConfig &cfg) {
    std::vector<std::uint32_t> ds{2, 4, 16};
    if (cfg.is_explicit("d")) ds = {cfg.d};
    std::vector<std::uint64_t> Ns{100, 1000};
    if (cfg.is_explicit("n-list") || cfg.is_explicit("n-start") || cfg.is_explicit("n-stop") ||
        cfg.is_explicit("points")) {
        Ns = n_values(cfg);
    }
    std::vector<double> deltas{0.05, 0.1, 0.2};
    if (!cfg.delta.empty()) deltas = cfg.delta;
    EstimateOptions opts{EstimateMethod::automatic, cfg.workers};
    if (cfg.mode == "mc") opts.method = EstimateMethod::monte_carlo;
    if (cfg.mode == "exact") opts.method = EstimateMethod::exact;

    std::vector<SampleVerifyRow> rows;
    Rng rng(cfg.seed);
    for (auto d : ds) {
        for (auto N : Ns) {
            std::vector<std::uint64_t> ms;
            if (cfg.is_explicit("fraction")) {
                ms = {static_cast<std::uint64_t>(std::floor(cfg.fraction * static_cast<double>(N) + 0.5))};
            } else {
                const double Nd = static_cast<double>(N);
                ms = {static_cast<std::uint64_t>(std::floor(0.07 * Nd + 0.5)),
                      static_cast<std::uint64_t>(std::floor(0.25 * Nd + 0.5)), (N - 1) / 2};
            }
            for (auto m : ms) {
                if (m < 1 || m >= N - m) {
                    throw ConfigError("fraction", "m >= n (or m = 0) at N=" + std::to_string(N));
                }
                for (double delta : deltas) {
                    SampleVerifyRow row;
                    row.d = d;
                    row.N = N;
                    row.m = m;
                    row.n = N - m;
                    row.delta = delta;
                    row.bound = delta > 0.0 ? lemma2_bound(delta, m, N - m) : 1.0;
                    if (cfg.q_override == "worst") {
                        const auto r = worst_case_error_estimate(d, m, N - m, delta, cfg.trials, rng, opts);
                        row.weight = r.worst_weight;
                        row.estimate = r.estimate;
                    } else {
                        std::vector<std::uint32_t> q(N, 0);
                        if (cfg.q_override == "half") {
                            for (std::uint64_t i = 0; i < N; i += 2) q[i] = d - 1;
                        }
                        const DString s(q, d);
                        row.weight = s.hamming_weight();
                        row.estimate = estimate_error_probability(s, delta, m, cfg.trials, rng, opts);
                    }
                    row.pass = row.estimate.estimate <= row.bound + 5.0 * row.estimate.std_error + 1e-12;
                    rows.push_back(row);
                }
            }
        }
    }
    return rows;
}

inline int cmd_sample_verify(const RunConfig &cfg, std::ostream &os) {
    const auto rows = sample_verify_rows(cfg);
    write_config_header(os, cfg);
    os << "d,N,m,n,delta,weight,estimate,ci_low,ci_high,std_error,bound,trials,exact,pass\n";
    bool all = true;
    for (const auto &r : rows) {
        const auto &e = r.estimate;
        os << r.d << ',' << r.N << ',' << r.m << ',' << r.n << ',' << r.delta << ',' << r.weight << ','
           << e.estimate << ',' << std::max(0.0, e.estimate - e.ci_halfwidth) << ','
           << std::min(1.0, e.estimate + e.ci_halfwidth) << ',' << e.std_error << ',' << r.bound << ','
           << e.trials << ',' << (e.exact ? "true" : "false") << ',' << (r.pass ? "pass" : "FAIL") << "\n";
        all = all && r.pass;
    }
    os << "# cells=" << rows.size() << " failed="
       << std::count_if(rows.begin(), rows.end(), [](const auto &r) { return !r.pass; }) << "\n";
    return all ? kSuccess : kVerificationFailure;
}

struct SimulationReport {
    std::string mode;
    std::uint64_t N = 0, m = 0, n = 0;
    SubsetIndex t;
    std::uint64_t failures = 0;
    double w_obs = 0.0;
    double w_ci_halfwidth = 0.0;
    double delta = 0.0;
    double ell_raw = 0.0;
    std::uint64_t ell = 0;
    double pa_bound = 1.0;
    Extraction extraction;
    bool path_checked = false;
    ChiSquareResult path_fit;
    std::string path_note;
};

namespace detail {

/// Symbols of a fixed source site measured in the test basis and in Z.
/// Honest sites are depolarized: the test fails with probability x.
inline std::uint8_t fast_test_outcome(const RunConfig &cfg, Rng &rng) {
    if (cfg.state == "honest") return rng.uniform() < cfg.noise ? 1 : 0;
    if (cfg.state == "x1") return 1;
    return rng.uniform() < 1.0 / cfg.d ? 0 : 1;  // z0: |<x0|0>|^2 = 1/d
}

inline std::uint32_t fast_z_outcome(const RunConfig &cfg, Rng &rng) {
    if (cfg.state == "z0") return 0;
    return static_cast<std::uint32_t>(rng.below(cfg.d));
}

inline std::uint64_t sample_index(const std::vector<double> &dist, Rng &rng) {
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        u -= dist[i];
        if (u < 0.0) return i;
    }
    return dist.size() - 1;
}

/// One pure realization of the configured source. Honest sites with noise
/// are drawn from the ensemble |x0> w.p. 1 - x, |x_b> w.p. x / (d - 1).
inline PureState statevector_source(const RunConfig &cfg, std::uint64_t N, Rng &rng) {
    const auto F = fourier_basis(cfg.d);
    if (cfg.state == "random") return random_state(cfg.d, N, rng);
    if (cfg.state == "z0") {
        std::vector<cplx> e0(cfg.d, 0.0);
        e0[0] = 1.0;
        return PureState::power(e0, N);
    }
    if (cfg.state == "x1") return PureState::power(F.column(1), N);
    std::vector<std::vector<cplx>> factors;
    for (std::uint64_t s = 0; s < N; ++s) {
        std::uint32_t b = 0;
        if (rng.uniform() < cfg.noise) b = 1 + static_cast<std::uint32_t>(rng.below(cfg.d - 1));
        factors.push_back(F.column(b));
    }
    return PureState::product(cfg.d, factors);
}

}  // namespace detail

/// Source, test on a random subset, Z measurement of the rest, key length
/// from the observed weight, Toeplitz extraction.
inline SimulationReport simulate(const RunConfig &cfg) {
    const std::uint64_t N = cfg.n_list.empty() ? cfg.n_start : cfg.n_list.front();
    if (cfg.n_list.size() > 1) throw ConfigError("n-list", "simulate takes a single N");
    const auto p = detail::protocol(cfg, N);
    if (p.m() >= p.n()) throw ConfigError("fraction", "m >= n at N=" + std::to_string(N));
    bool statevector = cfg.mode == "statevector";
    if (cfg.mode == "auto") {
        const double log_size = static_cast<double>(N) * std::log2(static_cast<double>(cfg.d));
        statevector = log_size <= 24.0;
    }
    if (!statevector && cfg.state == "random") {
        throw ConfigError("state", "random sources need statevector mode");
    }

    SimulationReport rep;
    rep.mode = statevector ? "statevector" : "fast";
    rep.N = N;
    rep.m = p.m();
    rep.n = p.n();
    Rng rng(cfg.seed);
    std::vector<std::uint32_t> raw;
    if (statevector) {
        const auto psi = detail::statevector_source(cfg, N, rng);
        const auto x0 = fourier_basis(cfg.d).column(0);
        const auto out = run_experiment(psi, rep.m, x0, rng);
        rep.t = out.t;
        rep.failures = static_cast<std::uint64_t>(std::count(out.q.begin(), out.q.end(), std::uint8_t{1}));
        const auto dist = measurement_distribution(out.post_state, Basis::computational(cfg.d), out.system_sites);
        std::uint64_t z = detail::sample_index(dist, rng);
        raw.assign(rep.n, 0);
        for (std::uint64_t s = rep.n; s-- > 0;) {
            raw[s] = static_cast<std::uint32_t>(z % cfg.d);
            z /= cfg.d;
        }
        try {
            const auto expected = path_distribution(psi, rep.m, x0);
            std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
            Rng check_rng(derive_seed(cfg.seed, 1));
            for (std::uint64_t i = 0; i < cfg.trials; ++i) {
                const auto o = run_experiment(psi, rep.m, x0, check_rng);
                ++counts[{subset_mask(o.t), outcome_bits(o.q)}];
            }
            rep.path_fit = chi_square_paths(counts, expected, cfg.trials);
            rep.path_checked = true;
            rep.path_note = "exhaustive Born enumeration";
        } catch (const ResourceError &) {
            rep.path_note = "skipped: path enumeration too large";
        }
    } else {
        rep.t = sample_subset(N, rep.m, rng);
        for (std::uint64_t i = 0; i < rep.m; ++i) {
            rep.failures += detail::fast_test_outcome(cfg, rng);
        }
        raw.resize(rep.n);
        for (auto &r : raw) {
            r = detail::fast_z_outcome(cfg, rng);
        }
        rep.path_note = "not applicable in fast mode";
    }
    rep.w_obs = static_cast<double>(rep.failures) / static_cast<double>(rep.m);
    rep.w_ci_halfwidth = make_estimate(rep.failures, rep.m).ci_halfwidth;
    rep.delta = delta_from_epsilon(rep.m, rep.n, cfg.epsilon);
    rep.ell_raw = ell_ours_raw(p, rep.w_obs);
    rep.ell = static_cast<std::uint64_t>(std::floor(std::max(0.0, rep.ell_raw)));
    const double h_min = rep.ell_raw - 2.0 * std::log2(cfg.epsilon);
    const auto eps = theorem1_epsilons(cfg.epsilon, cfg.beta);
    rep.pa_bound = pa_distance_bound(h_min, static_cast<double>(rep.ell), eps.eps_prime);
    Rng seed_rng(derive_seed(cfg.seed, 2));
    rep.extraction = extract(DString(raw, cfg.d), rep.ell, seed_rng);
    return rep;
}

inline int cmd_simulate(const RunConfig &cfg, std::ostream &os) {
    const auto rep = simulate(cfg);
    if (!cfg.bits.empty()) {
        write_extraction(cfg.bits, rep.extraction);
    }
    write_config_header(os, cfg);
    os << std::setprecision(12);
    os << "mode=" << rep.mode << "\n"
       << "N=" << rep.N << "\n"
       << "m=" << rep.m << "\n"
       << "n=" << rep.n << "\n"
       << "t=" << detail::join(rep.t.indices) << "\n"
       << "failures=" << rep.failures << "\n"
       << "w_q=" << rep.w_obs << "\n"
       << "w_q_ci99=" << rep.w_ci_halfwidth << "\n"
       << "delta=" << rep.delta << "\n"
       << "ell_ours_raw=" << rep.ell_raw << "\n"
       << "ell=" << rep.ell << "\n"
       << "pa_distance_bound=" << rep.pa_bound << "\n"
       << "extracted_bits=" << rep.extraction.output.size() << "\n"
       << "bits_file=" << cfg.bits << "\n"
       << "path_check=" << rep.path_note << "\n";
    bool ok = true;
    if (rep.path_checked) {
        ok = rep.path_fit.p_value > 0.01;
        os << "path_chi2=" << rep.path_fit.statistic << "\n"
           << "path_dof=" << rep.path_fit.dof << "\n"
           << "path_p_value=" << rep.path_fit.p_value << "\n"
           << "path_consistent=" << (ok ? "true" : "false") << "\n";
    }
    return ok ? kSuccess : kVerificationFailure;
}

/// CSV determinism and header echo, on a small rates run.
inline std::vector<InvariantCase> cli_invariants() {
    return {
        {"cli", "csv_byte_identical",
         [](Rng &, const VerifyOptions &) {
             RunConfig c;
             c.subcommand = "rates";
             c.points = 12;
             std::ostringstream a, b;
             cmd_rates(c, a);
             c.workers = 3;
             cmd_rates(c, b);
             eur::detail::check(a.str().substr(a.str().find("\n# mode")) == b.str().substr(b.str().find("\n# mode")),
                                "rates CSV differs between runs");
             return std::string("12-point rates sweep");
         }},
        {"cli", "header_echoes_config",
         [](Rng &, const VerifyOptions &) {
             RunConfig c;
             c.subcommand = "rates";
             c.n_list = {1000};
             std::ostringstream os;
             cmd_rates(c, os);
             for (const char *key : {"d", "noise", "fraction", "epsilon", "beta", "eps-prime-l2", "n-start", "n-stop",
                                     "points", "log", "n-list", "trials", "seed", "workers", "out"}) {
                 eur::detail::check(os.str().find(std::string("# ") + key + "=") != std::string::npos,
                                    std::string("header lacks ") + key);
             }
             return std::string("all keys present");
         }},
    };
}

inline std::vector<InvariantCase> all_invariants() {
    std::vector<InvariantCase> all;
    for (auto suite : {entmath_invariants(), sampling_invariants(), rates_invariants(), qsim_invariants(),
                       extractor_invariants(), cli_invariants()}) {
        all.insert(all.end(), suite.begin(), suite.end());
    }
    return all;
}

inline int cmd_verify(const RunConfig &cfg, std::ostream &os) {
    VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.trials = cfg.trials;
    opt.workers = cfg.workers;
    opt.perturb_fourier = cfg.inject_fault == "fourier";
    const auto cases = all_invariants();
    const auto results = run_invariants(cases, opt);
    write_config_header(os, cfg);
    os << "module,invariant,status,detail\n";
    for (const auto &r : results) {
        os << r.module << ',' << r.name << ',' << (r.passed ? "pass" : "FAIL") << ",\"" << r.detail << "\"\n";
    }
    const bool ok = !results.empty() && results.back().passed;
    if (ok) {
        os << "# " << results.size() << "/" << cases.size() << " invariants passed\n";
        return kSuccess;
    }
    os << "# FAILED " << results.back().module << "." << results.back().name << ": " << results.back().detail << "\n";
    return kVerificationFailure;
}

/// Runs a resolved configuration, mapping errors onto exit codes.
inline int run(const RunConfig &raw_cfg, std::ostream &os, std::ostream &err) {
    try {
        const RunConfig cfg = resolve(raw_cfg);
        if (cfg.subcommand == "rates") return cmd_rates(cfg, os);
        if (cfg.subcommand == "sample-verify") return cmd_sample_verify(cfg, os);
        if (cfg.subcommand == "simulate") return cmd_simulate(cfg, os);
        return cmd_verify(cfg, os);
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ResourceError &e) {
        err << "resource limit: " << e.what() << "\n";
        return kResourceError;
    } catch (const DomainError &e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace eur::cli
