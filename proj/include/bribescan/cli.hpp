/*
   Copyright 2026 The Bribescan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <bribescan/chain_model.hpp>

namespace bribescan::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitRuntime = 3,
};

struct RunConfig {
    std::string subcommand;
    std::string blocks_path;
    std::string txs_path;
    std::string rpc_url;
    unsigned rpc_batch{50};
    std::optional<uint64_t> start;
    std::optional<uint64_t> end;
    uint64_t step{1000};
    uint64_t d{6000};
    double c{1.0};
    double epsilon{1e-18};
    double min_value_eth{0.0};
    std::string fork_date{"2021-08-05"};
    std::string proxy{"all"};
    std::string standardize{"on"};
    std::string labels_path;
    std::vector<std::string> factor_paths;
    std::vector<std::string> dependents;
    std::vector<std::string> controls;
    std::string out_dir{"."};
    unsigned threads{1};
    unsigned top_k{20};
};

//! The self-describing echo written to <out>/config.txt. Execution-only
//! settings (output directory, thread count) are left out so that the echo is
//! as reproducible as the data files.
std::string config_echo(const RunConfig& cfg);

//! Entry point; argv[0] is the program name. Diagnostics go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace bribescan::cli
