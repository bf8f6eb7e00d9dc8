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
#include <vector>

#include <bribescan/chain_model.hpp>
#include <bribescan/store.hpp>
#include <bribescan/window.hpp>

namespace bribescan {

struct TxRef {
    uint64_t block_number{0};
    uint32_t tx_index{0};
    TxHash tx_hash;

    friend bool operator==(const TxRef&, const TxRef&) = default;
};

struct DetectionParams {
    uint64_t startblock{0};
    uint64_t endblock{0};
    uint64_t step{1000};
    double min_value_eth{0.0};

    void validate() const;
};

//! A transfer to the miner of `target_block` made in one of the `step` blocks before it.
struct BribeCandidate {
    uint64_t target_block{0};
    Address miner;
    TxRef payment;
    Address sender;
    double value_eth{0.0};
    uint64_t payment_block{0};
    uint64_t distance{0};  // target_block - payment_block, in [1, step]

    friend bool operator==(const BribeCandidate&, const BribeCandidate&) = default;
};

//! A transaction in the target block sent by one of its candidate senders.
struct FollowupTx {
    uint64_t target_block{0};
    Address sender;
    double value_eth{0.0};
    TxRef tx;

    friend bool operator==(const FollowupTx&, const FollowupTx&) = default;
};

struct BlockDetection {
    uint64_t target_block{0};
    Address miner;
    std::vector<BribeCandidate> candidates;  // (payment_block, tx_index) order
    std::vector<FollowupTx> followups;       // tx_index order

    friend bool operator==(const BlockDetection&, const BlockDetection&) = default;
};

//! Candidates for block `target` from a window covering the `step` blocks
//! before it, and followups from the block's own transactions.
BlockDetection detect_block(const BlockRecord& target, const RecipientWindow& window, const SenderIndex& senders);

//! One BlockDetection per block in [startblock, endblock], in order. Throws
//! InsufficientHistory if the store lacks block startblock - step.
std::vector<BlockDetection> detect(const ChainStore& store, const DetectionParams& params, unsigned threads = 1);

//! Drops candidates below the threshold, then followups whose sender lost all candidates.
BlockDetection filter_min_value(BlockDetection d, double threshold_eth);

//! Per candidate: does the sender equal the miner.
std::vector<bool> self_payment_flags(const BlockDetection& d);

}  // namespace bribescan
