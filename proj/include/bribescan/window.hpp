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
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <bribescan/chain_model.hpp>

namespace bribescan {

//! A transaction as seen from its recipient's side of the index.
struct WindowEntry {
    uint64_t block_number{0};
    uint32_t tx_index{0};
    Address from;
    double value_eth{0.0};
    TxHash tx_hash;

    friend bool operator==(const WindowEntry&, const WindowEntry&) = default;
};

//! Index of the transactions in the last `window_len` blocks, keyed by recipient.
//!
//! After advancing through block `hi` the window holds exactly the transactions
//! with a recipient in blocks [hi - window_len + 1, hi]. Eviction is by block.
class RecipientWindow {
  public:
    //! `next_block` is the first block the window expects to be advanced with.
    RecipientWindow(uint64_t window_len, uint64_t next_block);

    //! Adds `block_number` and evicts the block that falls out. Throws
    //! NonContiguousAdvance unless block_number == next_block().
    void advance(uint64_t block_number, std::span<const TxRecord> txs);

    //! Payments to `addr` in window order (block_number, tx_index).
    [[nodiscard]] std::vector<WindowEntry> payments_to(const Address& addr) const;
    //! Same, restricted to blocks [lo, hi].
    [[nodiscard]] std::vector<WindowEntry> payments_to(const Address& addr, uint64_t lo, uint64_t hi) const;

    [[nodiscard]] uint64_t window_len() const noexcept { return window_len_; }
    [[nodiscard]] uint64_t next_block() const noexcept { return next_; }
    //! Covered interval is [covered_lo(), next_block() - 1]; empty when equal to next_block().
    [[nodiscard]] uint64_t covered_lo() const noexcept { return lo_; }
    [[nodiscard]] std::size_t entry_count() const noexcept { return entries_; }
    [[nodiscard]] std::size_t address_count() const noexcept { return by_recipient_.size(); }

  private:
    struct Payments {
        std::vector<WindowEntry> items;
        std::size_t head{0};

        [[nodiscard]] std::span<const WindowEntry> live() const {
            return std::span<const WindowEntry>{items}.subspan(head);
        }
    };

    struct BlockSlot {
        uint64_t block_number;
        std::vector<Address> recipients;
    };

    void evict_oldest();

    uint64_t window_len_;
    uint64_t next_;
    uint64_t lo_;
    std::size_t entries_{0};
    std::unordered_map<Address, Payments> by_recipient_;
    std::deque<BlockSlot> slots_;
};

//! One block's transactions grouped by sender.
class SenderIndex {
  public:
    struct Entry {
        uint32_t tx_index;
        std::optional<Address> to;
        double value_eth;
        TxHash tx_hash;
    };

    SenderIndex(uint64_t block_number, std::span<const TxRecord> txs);

    [[nodiscard]] uint64_t block_number() const noexcept { return block_; }
    //! Transactions sent by `sender` in tx_index order.
    [[nodiscard]] std::span<const Entry> sent_by(const Address& sender) const;

  private:
    uint64_t block_;
    std::unordered_map<Address, std::vector<Entry>> by_sender_;
};

}  // namespace bribescan
