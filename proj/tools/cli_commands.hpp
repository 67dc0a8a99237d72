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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace specexp::cli {

enum ExitCode { kOk = 0, kValidation = 2, kGoldenMismatch = 3, kNumericFailure = 4 };

struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;

    // coeff
    int order = -1;
    int maxOrder = 4;
    std::string form = "ab";
    bool checkGolden = false;

    // eval, pscc --geometry rw
    std::string family;
    double H = 1.0;
    std::optional<double> t;
    std::optional<int> maxM;

    // pscc
    std::string string = "ford";
    std::string geometry = "s4";
    std::optional<double> lambda;
    std::string testfn = "heat";
    std::string expansion = "action";
    bool reconcile = false;

    // verify
    std::string suite = "all";
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    std::string reportPath;

    std::string format = "text";

    // Throws ValidationError.
    void validate() const;
};

// Flat "key = value" lines; '#' starts a comment.  Unknown keys and
// malformed values throw ValidationError.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv);

int cmd_coeff(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pscc(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace specexp::cli
