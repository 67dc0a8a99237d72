// Copyright 2026 The specexp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// specexp: heat coefficients, cosmology tables, packing expansions and the
// verification suites from the command line.
//
// Exit codes: 0 ok, 2 bad input, 3 golden mismatch, 4 numeric check failed.

#include <cstring>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli_commands.hpp"
#include "specexp/zeta.hpp"

using namespace specexp::cli;

namespace {

// --config is read before the flags are bound so that flags override it.
std::optional<std::string> find_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) return std::string(argv[i + 1]);
        if (std::strncmp(argv[i], "--config=", 9) == 0) return std::string(argv[i] + 9);
    }
    return std::nullopt;
}

void add_format(CLI::App* sub, RunConfig& cfg, const std::string& choices) {
    sub->add_option("--format", cfg.format, "output format: " + choices)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        if (auto path = find_config(argc, argv)) apply_config(cfg, read_config_file(*path));
    } catch (const ValidationError& e) {
        std::cerr << "specexp: " << e.what() << "\n";
        return kValidation;
    }

    CLI::App app{"specexp: spectral action expansions for Robertson-Walker metrics and sphere packings"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string configPath;
    app.add_option("--config", configPath, "flat key = value file; flags override it");

    auto* coeff = app.add_subcommand("coeff", "heat coefficient a_{2M} as a polynomial");
    coeff->add_option("--order,-M", cfg.order, "M, the coefficient a_{2M}");
    coeff->add_option("--max-order", cfg.maxOrder, "complexity guard for --order")->capture_default_str();
    coeff->add_option("--form", cfg.form, "ab (A, B derivatives) or a (derivatives of a)")->capture_default_str();
    coeff->add_flag("--check-golden", cfg.checkGolden, "compare with the bundled golden file");
    add_format(coeff, cfg, "text, latex, json");

    auto* eval = app.add_subcommand("eval", "numeric a_{2M}(t) for a scale-factor family");
    eval->add_option("--family", cfg.family, "inflation, radiation, matter, empty, sphere");
    eval->add_option("--H", cfg.H, "family parameter")->capture_default_str();
    eval->add_option("--t", cfg.t, "time");
    eval->add_option("--maxM", cfg.maxM, "largest M (default 2)");
    eval->add_option("--max-order", cfg.maxOrder, "complexity guard for --maxM")->capture_default_str();
    bool evalCsv = false;
    eval->add_flag("--csv", evalCsv, "same as --format csv");
    add_format(eval, cfg, "text, latex, json, csv");

    auto* pscc = app.add_subcommand("pscc", "heat trace and spectral action of a sphere packing");
    pscc->add_option("--string", cfg.string, "ford, or a string descriptor (JSON path or bundled name)")
        ->capture_default_str();
    pscc->add_option("--geometry", cfg.geometry, "s4 or rw")->capture_default_str();
    pscc->add_option("--family", cfg.family, "scale-factor family for --geometry rw");
    pscc->add_option("--H", cfg.H, "family parameter")->capture_default_str();
    pscc->add_option("--t", cfg.t, "time for --geometry rw");
    pscc->add_option("--lambda", cfg.lambda, "cutoff at which the expansion is summed");
    pscc->add_option("--maxM", cfg.maxM, "largest bulk index (default 2 for ford, 3 otherwise)");
    pscc->add_option("--max-order", cfg.maxOrder, "complexity guard for --maxM")->capture_default_str();
    pscc->add_option("--testfn", cfg.testfn, "heat (exp(-x^2)) or quartic (exp(-x^4))")->capture_default_str();
    pscc->add_option("--expansion", cfg.expansion, "action or heat")->capture_default_str();
    pscc->add_flag("--reconcile-paper", cfg.reconcile, "Ford packing constants against the printed ones");
    add_format(pscc, cfg, "text, json, csv");

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("--suite", cfg.suite, "bridge, dawson, mellin, bell or all")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "seed for every random draw")->capture_default_str();
    verify->add_option("--tolerance", cfg.tolerance, "override the per-check tolerances");
    verify->add_option("--report", cfg.reportPath, "also write the JSON report to this file");
    add_format(verify, cfg, "text, json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }
    if (evalCsv) cfg.format = "csv";

    try {
        cfg.validate();
        if (*coeff) return cmd_coeff(cfg, std::cout, std::cerr);
        if (*eval) return cmd_eval(cfg, std::cout, std::cerr);
        if (*pscc) return cmd_pscc(cfg, std::cout, std::cerr);
        if (*verify) return cmd_verify(cfg, std::cout, std::cerr);
    } catch (const ValidationError& e) {
        std::cerr << "specexp: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "specexp: " << e.what() << "\n";
        return kValidation;
    } catch (const specexp::PoleError& e) {
        std::cerr << "specexp: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "specexp: " << e.what() << "\n";
        return kNumericFailure;
    }
    return kValidation;
}
