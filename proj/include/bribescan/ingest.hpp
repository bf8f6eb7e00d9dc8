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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <bribescan/store.hpp>

namespace bribescan {

struct ImportOptions {
    //! When set, transactions are spilled to this scratch file instead of memory.
    std::optional<std::filesystem::path> spill_path;
};

//! Loads the NDJSON blocks and txs files. Input order is free; the result is
//! sorted and validated (SchemaMismatch on duplicates, orphans, gaps).
ChainStore import_files(const std::filesystem::path& blocks_path, const std::filesystem::path& txs_path,
                        const ImportOptions& options = {});

//! Writes the canonical NDJSON form of a store.
void export_files(const ChainStore& store, const std::filesystem::path& blocks_path,
                  const std::filesystem::path& txs_path);

std::string to_ndjson(const BlockRecord& b);
std::string to_ndjson(const TxRecord& tx);

struct RpcOptions {
    int max_attempts{5};
    std::chrono::milliseconds base_delay{250};
    std::chrono::seconds timeout{30};
    std::optional<std::filesystem::path> spill_path;
};

//! Name of the environment variable holding the default node endpoint.
inline constexpr const char* kRpcUrlEnv = "BRIBESCAN_RPC_URL";

//! Pulls blocks [start, end] with full transaction objects via batched
//! eth_getBlockByNumber calls. Transient failures are retried with exponential
//! backoff (base_delay * 2^attempt).
ChainStore fetch_rpc(const std::string& endpoint, uint64_t start, uint64_t end, unsigned batch,
                     const RpcOptions& options = {});

}  // namespace bribescan
