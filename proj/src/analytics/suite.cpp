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

#include <bribescan/analytics/suite.hpp>

#include <bribescan/csv.hpp>
#include <bribescan/errors.hpp>

namespace bribescan::analytics {

std::vector<SuiteCell> run_regression_suite(std::span<const DailyProxies> daily, std::span<const FactorTable> factors,
                                            const SuiteConfig& config) {
    std::vector<SuiteCell> cells;
    std::vector<bool> specs{false};
    if (!config.controls.empty()) specs.push_back(true);
    for (const auto& dependent : config.dependents) {
        for (const bool with_controls : specs) {
            for (const auto proxy : config.proxies) {
                SuiteCell cell;
                cell.dependent = dependent;
                cell.proxy = proxy;
                cell.with_controls = with_controls;
                const Panel panel = build_panel(daily, proxy, factors, dependent,
                                                with_controls ? config.controls : std::vector<std::string>{},
                                                config.fork_date, config.standardize);
                cell.dropped = panel.dropped;
                try {
                    cell.result = regress_panel(panel, with_controls);
                } catch (const RankDeficient&) {
                    cell.error = "rank_deficient";
                } catch (const TooFewRows&) {
                    cell.error = "too_few_rows";
                }
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

void write_suite_csv(std::ostream& out, std::span<const SuiteCell> cells, const std::vector<std::string>& controls) {
    std::vector<std::string> terms{"const", "bribing"};
    terms.insert(terms.end(), controls.begin(), controls.end());
    terms.emplace_back("post");
    terms.emplace_back("post_x_bribing");

    out << "dependent,proxy,spec,status,n,dropped,r2,adj_r2";
    for (const auto& t : terms) out << ",coef_" << csv::escape(t) << ",t_" << csv::escape(t);
    out << '\n';
    for (const auto& c : cells) {
        out << csv::escape(c.dependent) << ',' << to_string(c.proxy) << ',' << (c.with_controls ? "controls" : "univariate")
            << ',' << (c.result ? "ok" : c.error) << ',';
        if (c.result) {
            out << c.result->n << ',' << c.dropped << ',' << csv::format_number(c.result->r2) << ','
                << csv::format_number(c.result->adj_r2);
        } else {
            out << ',' << c.dropped << ",,";
        }
        for (const auto& t : terms) {
            const auto coef = c.result ? c.result->coefficient(t) : std::nullopt;
            const auto ts = c.result ? c.result->t_stat(t) : std::nullopt;
            out << ',' << (coef ? csv::format_number(*coef) : "") << ',' << (ts ? csv::format_number(*ts) : "");
        }
        out << '\n';
    }
}

}  // namespace bribescan::analytics
