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

#include <bribescan/detection.hpp>

#include <algorithm>
#include <unordered_set>

#include <bribescan/errors.hpp>
#include <bribescan/scan.hpp>

namespace bribescan {

void DetectionParams::validate() const {
    if (startblock > endblock) throw DataError("startblock must not exceed endblock");
    if (step < 1) throw DataError("step must be at least 1");
    if (!(min_value_eth >= 0.0)) throw DataError("min value must be non-negative");
}

BlockDetection detect_block(const BlockRecord& target, const RecipientWindow& window, const SenderIndex& senders) {
    BlockDetection out;
    out.target_block = target.block_number;
    out.miner = target.miner;

    for (const auto& e : window.payments_to(target.miner)) {
        if (e.block_number >= target.block_number) continue;
        out.candidates.push_back({target.block_number, target.miner, {e.block_number, e.tx_index, e.tx_hash}, e.from,
                                  e.value_eth, e.block_number, target.block_number - e.block_number});
    }
    if (out.candidates.empty()) return out;

    std::vector<Address> candidate_senders;
    candidate_senders.reserve(out.candidates.size());
    for (const auto& c : out.candidates) candidate_senders.push_back(c.sender);
    std::sort(candidate_senders.begin(), candidate_senders.end());
    candidate_senders.erase(std::unique(candidate_senders.begin(), candidate_senders.end()), candidate_senders.end());

    for (const auto& sender : candidate_senders) {
        for (const auto& s : senders.sent_by(sender)) {
            out.followups.push_back({target.block_number, sender, s.value_eth, {target.block_number, s.tx_index, s.tx_hash}});
        }
    }
    std::sort(out.followups.begin(), out.followups.end(),
              [](const FollowupTx& a, const FollowupTx& b) { return a.tx.tx_index < b.tx.tx_index; });
    return out;
}

std::vector<BlockDetection> detect(const ChainStore& store, const DetectionParams& params, unsigned threads) {
    std::vector<BlockDetection> out;
    ScanParams sp;
    sp.detection = params;
    sp.threads = threads;
    scan(store, sp, [&](BlockScan&& s) { out.push_back(std::move(s.detection)); });
    return out;
}

BlockDetection filter_min_value(BlockDetection d, double threshold_eth) {
    if (threshold_eth <= 0.0) return d;
    std::erase_if(d.candidates, [&](const BribeCandidate& c) { return c.value_eth < threshold_eth; });
    std::unordered_set<Address> remaining;
    for (const auto& c : d.candidates) remaining.insert(c.sender);
    std::erase_if(d.followups, [&](const FollowupTx& f) { return !remaining.contains(f.sender); });
    return d;
}

std::vector<bool> self_payment_flags(const BlockDetection& d) {
    std::vector<bool> flags;
    flags.reserve(d.candidates.size());
    for (const auto& c : d.candidates) flags.push_back(c.sender == c.miner);
    return flags;
}

}  // namespace bribescan
