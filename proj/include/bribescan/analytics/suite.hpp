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

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <bribescan/analytics/ols.hpp>
#include <bribescan/analytics/panel.hpp>

namespace bribescan::analytics {

struct SuiteConfig {
    std::vector<std::string> dependents;
    std::vector<std::string> controls;
    std::vector<ProxyChoice> proxies{ProxyChoice::Benchmark, ProxyChoice::A, ProxyChoice::B};
    CalendarDate fork_date{kLondonForkDate};
    bool standardize{true};
};

struct SuiteCell {
    std::string dependent;
    ProxyChoice proxy{ProxyChoice::Benchmark};
    bool with_controls{false};
    std::size_t dropped{0};
    std::optional<RegressionResult> result;
    std::string error;  // set when the cell could not be estimated
};

//! For each dependent: one univariate column per proxy, then (when controls are
//! given) one column per proxy with controls. Degenerate cells (RankDeficient,
//! TooFewRows) are recorded and the suite continues; join errors propagate.
std::vector<SuiteCell> run_regression_suite(std::span<const DailyProxies> daily, std::span<const FactorTable> factors,
                                            const SuiteConfig& config);

//! dependent,proxy,spec,status,n,dropped,r2,adj_r2 then coef_/t_ pairs per term.
void write_suite_csv(std::ostream& out, std::span<const SuiteCell> cells, const std::vector<std::string>& controls);

}  // namespace bribescan::analytics
