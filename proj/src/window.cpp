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

#include <bribescan/window.hpp>

#include <algorithm>
#include <stdexcept>

#include <bribescan/errors.hpp>

namespace bribescan {

RecipientWindow::RecipientWindow(uint64_t window_len, uint64_t next_block)
    : window_len_{window_len}, next_{next_block}, lo_{next_block} {
    if (window_len == 0) throw std::invalid_argument("window length must be positive");
}

void RecipientWindow::advance(uint64_t block_number, std::span<const TxRecord> txs) {
    if (block_number != next_) throw NonContiguousAdvance(next_, block_number);

    BlockSlot slot{block_number, {}};
    for (const auto& tx : txs) {
        if (!tx.to) continue;
        auto& payments = by_recipient_[*tx.to];
        payments.items.push_back({tx.block_number, tx.tx_index, tx.from, wei_to_eth(tx.value), tx.tx_hash});
        slot.recipients.push_back(*tx.to);
        ++entries_;
    }
    slots_.push_back(std::move(slot));
    ++next_;

    while (!slots_.empty() && slots_.front().block_number + window_len_ <= block_number) evict_oldest();
    if (next_ >= window_len_) lo_ = std::max(lo_, next_ - window_len_);
}

void RecipientWindow::evict_oldest() {
    for (const auto& addr : slots_.front().recipients) {
        const auto it = by_recipient_.find(addr);
        auto& p = it->second;
        ++p.head;
        --entries_;
        if (p.head == p.items.size()) {
            by_recipient_.erase(it);
        } else if (p.head >= 32 && 2 * p.head >= p.items.size()) {
            p.items.erase(p.items.begin(), p.items.begin() + static_cast<std::ptrdiff_t>(p.head));
            p.head = 0;
        }
    }
    slots_.pop_front();
}

std::vector<WindowEntry> RecipientWindow::payments_to(const Address& addr) const {
    const auto it = by_recipient_.find(addr);
    if (it == by_recipient_.end()) return {};
    const auto live = it->second.live();
    return {live.begin(), live.end()};
}

std::vector<WindowEntry> RecipientWindow::payments_to(const Address& addr, uint64_t lo, uint64_t hi) const {
    const auto it = by_recipient_.find(addr);
    if (it == by_recipient_.end() || lo > hi) return {};
    const auto live = it->second.live();
    const auto first = std::lower_bound(live.begin(), live.end(), lo,
                                        [](const WindowEntry& e, uint64_t n) { return e.block_number < n; });
    const auto last = std::upper_bound(first, live.end(), hi,
                                       [](uint64_t n, const WindowEntry& e) { return n < e.block_number; });
    return {first, last};
}

SenderIndex::SenderIndex(uint64_t block_number, std::span<const TxRecord> txs) : block_{block_number} {
    for (const auto& tx : txs) {
        if (tx.block_number != block_number) continue;
        by_sender_[tx.from].push_back({tx.tx_index, tx.to, wei_to_eth(tx.value), tx.tx_hash});
    }
}

std::span<const SenderIndex::Entry> SenderIndex::sent_by(const Address& sender) const {
    const auto it = by_sender_.find(sender);
    if (it == by_sender_.end()) return {};
    return it->second;
}

}  // namespace bribescan
