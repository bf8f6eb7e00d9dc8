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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <bribescan/chain_model.hpp>

namespace bribescan {

//! Row-addressable transaction storage, sorted by (block_number, tx_index).
class TxSegment {
  public:
    virtual ~TxSegment() = default;
    [[nodiscard]] virtual std::size_t size() const = 0;
    //! Appends rows [first, first + count) to out. Safe to call concurrently.
    virtual void read(std::size_t first, std::size_t count, std::vector<TxRecord>& out) const = 0;
};

struct ValidationReport {
    bool ok{true};
    std::vector<uint64_t> gaps;
    std::size_t duplicates{0};
    std::size_t orphan_txs{0};
    std::size_t tx_count_mismatches{0};
};

//! Blocks are held in memory; transactions live in a TxSegment (memory or an
//! append-only file) addressed through a per-block row interval index.
class ChainStore {
  public:
    ChainStore() = default;

    //! Sorts the inputs but performs no validation, so invalid stores can be
    //! represented and reported on.
    static ChainStore from_records(std::vector<BlockRecord> blocks, std::vector<TxRecord> txs);

    [[nodiscard]] bool empty() const noexcept { return blocks_.empty(); }
    [[nodiscard]] uint64_t first_block() const;
    [[nodiscard]] uint64_t last_block() const;
    [[nodiscard]] std::span<const BlockRecord> blocks() const noexcept { return blocks_; }
    [[nodiscard]] std::size_t tx_count() const noexcept { return segment_ ? segment_->size() : 0; }

    [[nodiscard]] const BlockRecord* find_block(uint64_t number) const noexcept;
    //! Throws UnknownBlock.
    [[nodiscard]] const BlockRecord& block(uint64_t number) const;
    [[nodiscard]] bool covers(uint64_t lo, uint64_t hi) const noexcept;

    [[nodiscard]] std::vector<TxRecord> block_txs(uint64_t number) const;
    //! Appends every transaction of the blocks in [lo, hi] in store order.
    void read_block_range(uint64_t lo, uint64_t hi, std::vector<TxRecord>& out) const;
    //! Raw row access, including rows whose block is missing.
    void read_rows(std::size_t first, std::size_t count, std::vector<TxRecord>& out) const;

  private:
    friend class StoreBuilder;

    ChainStore(std::vector<BlockRecord> blocks, std::shared_ptr<const TxSegment> segment,
               std::span<const uint64_t> row_blocks);

    std::pair<std::size_t, std::size_t> row_span(uint64_t lo, uint64_t hi) const;

    std::vector<BlockRecord> blocks_;
    // row interval [begin, end) for each entry of blocks_
    std::vector<std::pair<uint64_t, uint64_t>> rows_;
    std::shared_ptr<const TxSegment> segment_;
};

//! Streams records into a ChainStore. With a spill path the transactions go to
//! an append-only file and only 16 bytes of sort key per row stay in memory.
class StoreBuilder {
  public:
    explicit StoreBuilder(std::optional<std::filesystem::path> spill_path = std::nullopt);
    ~StoreBuilder();
    StoreBuilder(const StoreBuilder&) = delete;
    StoreBuilder& operator=(const StoreBuilder&) = delete;

    void add_block(BlockRecord b);
    void add_tx(const TxRecord& tx);

    //! Sorts, then rejects anything validate_store would flag (SchemaMismatch).
    ChainStore finish();

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ValidationReport validate_store(const ChainStore& store);

}  // namespace bribescan
