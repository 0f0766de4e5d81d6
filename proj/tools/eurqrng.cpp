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

// eurqrng: finite-size key rates, sampling-bound checks, protocol simulation
// and invariant suites for the entropic-uncertainty qudit random number generator.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "eur/cli.hpp"

int main(int argc, char **argv) {
    eur::cli::RunConfig cfg;
    CLI::App app{"Entropic-uncertainty qudit QRNG toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

    std::vector<CLI::Option *> tracked;
    auto track = [&](CLI::Option *opt) {
        tracked.push_back(opt);
        return opt;
    };
    track(app.add_option("--d", cfg.d, "alphabet size"));
    track(app.add_option("--noise", cfg.noise, "depolarizing noise x"));
    track(app.add_option("--fraction", cfg.fraction, "test fraction m/N"));
    track(app.add_option("--epsilon", cfg.epsilon, "security parameter"));
    track(app.add_option("--beta", cfg.beta, "beta in (0, 1/2)"));
    track(app.add_option("--eps-prime-l2", cfg.eps_prime_l2, "failure probability for the l2 baseline"));
    track(app.add_option("--n-start", cfg.n_start, "first N of the range (simulate: N)"));
    track(app.add_option("--n-stop", cfg.n_stop, "last N of the range"));
    track(app.add_option("--points", cfg.points, "number of N values"));
    track(app.add_option("--log", cfg.log, "log-spaced range (true/false)"));
    track(app.add_option("--n-list", cfg.n_list, "explicit N values")->delimiter(','));
    track(app.add_option("--delta", cfg.delta, "sample-verify delta values")->delimiter(','));
    track(app.add_option("--trials", cfg.trials, "Monte Carlo trials (0: command default)"));
    track(app.add_option("--seed", cfg.seed, "RNG seed"));
    track(app.add_option("--workers", cfg.workers, "worker threads (0: all cores)"));
    track(app.add_option("--mode", cfg.mode, "sample-verify: auto|mc|exact; simulate: auto|fast|statevector"));
    track(app.add_option("--state", cfg.state, "simulate source: honest|z0|x1|random"));
    track(app.add_option("--q-override", cfg.q_override, "sample-verify string: worst|zero|half"));
    track(app.add_option("--out", cfg.out, "output file (default: stdout)"));
    track(app.add_option("--bits", cfg.bits, "simulate: extracted bits file"));
    track(app.add_option("--inject-fault", cfg.inject_fault, "verify: fault to inject (fourier)"));
    track(app.add_flag("--raw", cfg.raw, "rates: append unclamped key lengths"));

    for (const char *name : {"rates", "sample-verify", "simulate", "verify"}) {
        app.add_subcommand(name)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return eur::cli::kConfigError;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (auto *c = app.get_option("--config"); c->count() > 0) {
        cfg.config = c->as<std::string>();
    }
    for (auto *opt : tracked) {
        if (opt->count() > 0) {
            cfg.explicit_keys.insert(opt->get_single_name());
        }
    }

    if (cfg.out.empty()) {
        return eur::cli::run(cfg, std::cout, std::cerr);
    }
    std::ofstream file(cfg.out);
    if (!file) {
        std::cerr << "config error: out: cannot open " << cfg.out << "\n";
        return eur::cli::kConfigError;
    }
    return eur::cli::run(cfg, file, std::cerr);
}
