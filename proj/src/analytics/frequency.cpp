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

#include <bribescan/analytics/frequency.hpp>

#include <algorithm>
#include <fstream>

#include <bribescan/csv.hpp>
#include <bribescan/errors.hpp>

namespace bribescan::analytics {

LabelMap load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RuntimeFailure("cannot open " + path.string());
    const auto rows = csv::read_all(in);
    if (rows.empty() || rows.front().size() < 2 || rows.front()[0] != "address" || rows.front()[1] != "label") {
        throw SchemaMismatch("address", "labels file must start with header address,label,is_mining_pool");
    }
    LabelMap out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() < 2) throw MalformedLine(path.string(), i + 1, "expected at least address,label");
        AddressLabel l{r[1], std::nullopt};
        if (r.size() > 2 && !r[2].empty()) {
            if (r[2] == "true" || r[2] == "1") l.is_mining_pool = true;
            else if (r[2] == "false" || r[2] == "0") l.is_mining_pool = false;
            else throw MalformedLine(path.string(), i + 1, "is_mining_pool must be true/false/1/0");
        }
        const auto parsed = detail::FixedBytes<20>::try_parse(r[0]);
        if (!parsed) throw MalformedLine(path.string(), i + 1, "bad address '" + r[0] + "'");
        out[Address{*parsed}] = std::move(l);
    }
    return out;
}

std::vector<FrequencyRow> frequency_table(std::span<const BlockDetection> detections, FrequencyRole role,
                                          std::size_t top_k, const LabelMap* labels) {
    if (top_k < 1) throw DataError("top_k must be at least 1");
    std::unordered_map<Address, std::size_t> counts;
    for (const auto& d : detections) {
        for (const auto& c : d.candidates) ++counts[role == FrequencyRole::Miner ? c.miner : c.sender];
    }
    std::vector<FrequencyRow> rows;
    rows.reserve(counts.size());
    for (const auto& [addr, n] : counts) rows.push_back({addr, std::nullopt, n, std::nullopt});
    std::sort(rows.begin(), rows.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.address < b.address;
    });
    if (rows.size() > top_k) rows.resize(top_k);
    if (labels != nullptr) {
        for (auto& r : rows) {
            if (const auto it = labels->find(r.address); it != labels->end()) {
                r.label = it->second.label;
                r.is_mining_pool = it->second.is_mining_pool;
            }
        }
    }
    return rows;
}

}  // namespace bribescan::analytics
