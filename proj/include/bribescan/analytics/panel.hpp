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
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <bribescan/chain_model.hpp>
#include <bribescan/proxies.hpp>

namespace bribescan::analytics {

//! Date-keyed numeric table from a `date,<name1>,<name2>,...` CSV. Blank cells are missing.
struct FactorTable {
    std::vector<std::string> columns;
    std::map<CalendarDate, std::vector<std::optional<double>>> rows;

    [[nodiscard]] std::optional<std::size_t> column_index(const std::string& name) const;
};

FactorTable parse_factor_csv(std::istream& in, const std::string& source_name = "<factors>");
FactorTable load_factor_csv(const std::filesystem::path& path);

enum class ProxyChoice { Benchmark, A, B };

std::string to_string(ProxyChoice p);
ProxyChoice parse_proxy_choice(std::string_view s);

struct PanelRow {
    CalendarDate date;
    double bribing{0.0};
    int post{0};
    double dependent{0.0};
    std::vector<double> controls;  // aligned with Panel::control_names
};

struct Panel {
    ProxyChoice proxy{ProxyChoice::Benchmark};
    std::string dependent_name;
    std::vector<std::string> control_names;
    bool standardized{false};
    std::vector<PanelRow> rows;
    //! Proxy dates dropped by the join because some variable was missing.
    std::size_t dropped{0};
};

//! Inner join of daily proxies with the factor tables on date. With
//! `standardize`, bribing, dependent and controls are z-scored over the joined
//! sample (sample std); post stays 0/1. A zero-variance column is only centred.
//! Throws MissingColumn or NoOverlap.
Panel build_panel(std::span<const DailyProxies> daily, ProxyChoice proxy, std::span<const FactorTable> factors,
                  const std::string& dependent, const std::vector<std::string>& controls, CalendarDate fork_date,
                  bool standardize);

}  // namespace bribescan::analytics
