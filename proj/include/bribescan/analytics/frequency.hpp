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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <bribescan/chain_model.hpp>
#include <bribescan/detection.hpp>

namespace bribescan::analytics {

struct AddressLabel {
    std::string label;
    std::optional<bool> is_mining_pool;
};

using LabelMap = std::unordered_map<Address, AddressLabel>;

//! Reads `address,label,is_mining_pool` (header required; the flag may be blank).
LabelMap load_labels(const std::filesystem::path& path);

enum class FrequencyRole { Miner, Sender };

struct FrequencyRow {
    Address address;
    std::optional<std::string> label;
    std::size_t count{0};
    std::optional<bool> is_mining_pool;
};

//! Counts candidate transactions per miner or per candidate sender and returns
//! the top_k rows, descending by count with ties broken by address.
std::vector<FrequencyRow> frequency_table(std::span<const BlockDetection> detections, FrequencyRole role,
                                          std::size_t top_k, const LabelMap* labels = nullptr);

}  // namespace bribescan::analytics
