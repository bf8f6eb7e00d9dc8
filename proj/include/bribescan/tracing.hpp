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

#include <bribescan/detection.hpp>

namespace bribescan {

struct TraceParams {
    uint64_t d{6000};

    void validate() const;
};

//! A prior transfer into a candidate's sender, found within the d blocks
//! preceding the candidate's payment block.
struct TraceLink {
    std::size_t candidate{0};  // index into BlockDetection::candidates
    TxRef candidate_tx;
    TxRef traced_tx;
    uint64_t traced_block{0};
    double traced_value_eth{0.0};
    Address funder;

    friend bool operator==(const TraceLink&, const TraceLink&) = default;
};

struct BlockTrace {
    uint64_t target_block{0};
    std::vector<TraceLink> links;  // (candidate, traced_block, tx_index) order

    friend bool operator==(const BlockTrace&, const BlockTrace&) = default;
};

//! Tracing window for a payment in block p: blocks [p - d, p - 1].
struct TraceSpan {
    uint64_t lo;
    uint64_t hi;
};
TraceSpan trace_span(uint64_t payment_block, uint64_t d) noexcept;

//! Links for every candidate of `d` from a window that covers each candidate's trace span.
BlockTrace trace_block(const BlockDetection& d, const RecipientWindow& window, const TraceParams& params);

//! Standalone form: indexes the needed history from the store. Throws
//! InsufficientHistory if any candidate's trace span starts before the store.
BlockTrace trace(const ChainStore& store, const BlockDetection& d, const TraceParams& params);

}  // namespace bribescan
