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

#include <bribescan/analytics/panel.hpp>

#include <charconv>
#include <cmath>
#include <fstream>

#include <bribescan/csv.hpp>
#include <bribescan/errors.hpp>

namespace bribescan::analytics {

std::optional<std::size_t> FactorTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    return std::nullopt;
}

FactorTable parse_factor_csv(std::istream& in, const std::string& source_name) {
    const auto records = csv::read_all(in);
    if (records.empty() || records.front().empty() || records.front()[0] != "date") {
        throw SchemaMismatch("date", source_name + ": factor file must start with a 'date' column");
    }
    FactorTable t;
    t.columns.assign(records.front().begin() + 1, records.front().end());
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto date = CalendarDate::try_parse(r[0]);
        if (!date) throw MalformedLine(source_name, i + 1, "bad date '" + r[0] + "'");
        if (r.size() > t.columns.size() + 1) throw MalformedLine(source_name, i + 1, "too many cells");
        std::vector<std::optional<double>> values(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size() && c + 1 < r.size(); ++c) {
            const std::string& cell = r[c + 1];
            if (cell.find_first_not_of(" \t") == std::string::npos) continue;
            double v = 0.0;
            const auto first = cell.data() + cell.find_first_not_of(" \t");
            const auto last = cell.data() + cell.find_last_not_of(" \t") + 1;
            const auto [ptr, ec] = std::from_chars(first, last, v);
            if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
                throw MalformedLine(source_name, i + 1, "non-numeric cell '" + cell + "' in column " + t.columns[c]);
            }
            values[c] = v;
        }
        if (!t.rows.emplace(*date, std::move(values)).second) {
            throw MalformedLine(source_name, i + 1, "duplicate date " + date->to_string());
        }
    }
    return t;
}

FactorTable load_factor_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RuntimeFailure("cannot open " + path.string());
    return parse_factor_csv(in, path.string());
}

std::string to_string(ProxyChoice p) {
    switch (p) {
        case ProxyChoice::Benchmark: return "benchmark";
        case ProxyChoice::A: return "a";
        case ProxyChoice::B: return "b";
    }
    return "?";
}

ProxyChoice parse_proxy_choice(std::string_view s) {
    if (s == "benchmark") return ProxyChoice::Benchmark;
    if (s == "a" || s == "A") return ProxyChoice::A;
    if (s == "b" || s == "B") return ProxyChoice::B;
    throw DataError("unknown proxy '" + std::string{s} + "'");
}

namespace {

    struct ColumnRef {
        const FactorTable* table;
        std::size_t index;
    };

    ColumnRef find_column(std::span<const FactorTable> factors, const std::string& name) {
        for (const auto& t : factors) {
            if (const auto idx = t.column_index(name)) return {&t, *idx};
        }
        throw MissingColumn(name);
    }

    std::optional<double> lookup(const ColumnRef& col, CalendarDate date) {
        const auto it = col.table->rows.find(date);
        if (it == col.table->rows.end()) return std::nullopt;
        return it->second[col.index];
    }

    double pick(const DailyProxies& d, ProxyChoice p) {
        switch (p) {
            case ProxyChoice::Benchmark: return d.benchmark;
            case ProxyChoice::A: return d.a;
            case ProxyChoice::B: return d.b;
        }
        return 0.0;
    }

    template <typename Get>
    void zscore(std::vector<PanelRow>& rows, Get get) {
        const auto n = static_cast<double>(rows.size());
        double mean = 0.0;
        for (auto& r : rows) mean += get(r);
        mean /= n;
        double ss = 0.0;
        for (auto& r : rows) ss += (get(r) - mean) * (get(r) - mean);
        const double sd = rows.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        for (auto& r : rows) {
            double& v = get(r);
            v = sd > 0.0 ? (v - mean) / sd : v - mean;
        }
    }

}  // namespace

Panel build_panel(std::span<const DailyProxies> daily, ProxyChoice proxy, std::span<const FactorTable> factors,
                  const std::string& dependent, const std::vector<std::string>& controls, CalendarDate fork_date,
                  bool standardize) {
    const ColumnRef dep = find_column(factors, dependent);
    std::vector<ColumnRef> ctl;
    for (const auto& name : controls) ctl.push_back(find_column(factors, name));

    Panel panel;
    panel.proxy = proxy;
    panel.dependent_name = dependent;
    panel.control_names = controls;
    panel.standardized = standardize;

    for (const auto& day : daily) {
        const auto y = lookup(dep, day.date);
        if (!y) {
            ++panel.dropped;
            continue;
        }
        PanelRow row{day.date, pick(day, proxy), day.date >= fork_date ? 1 : 0, *y, {}};
        bool complete = true;
        for (const auto& c : ctl) {
            const auto v = lookup(c, day.date);
            if (!v) {
                complete = false;
                break;
            }
            row.controls.push_back(*v);
        }
        if (!complete) {
            ++panel.dropped;
            continue;
        }
        panel.rows.push_back(std::move(row));
    }
    if (panel.rows.empty()) throw NoOverlap();

    if (standardize) {
        zscore(panel.rows, [](PanelRow& r) -> double& { return r.bribing; });
        zscore(panel.rows, [](PanelRow& r) -> double& { return r.dependent; });
        for (std::size_t c = 0; c < controls.size(); ++c) {
            zscore(panel.rows, [c](PanelRow& r) -> double& { return r.controls[c]; });
        }
    }
    return panel;
}

}  // namespace bribescan::analytics
