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

#include <bribescan/tracing.hpp>

#include <algorithm>
#include <limits>

#include <bribescan/errors.hpp>

namespace bribescan {

void TraceParams::validate() const {
    if (d < 1) throw DataError("d must be at least 1");
}

TraceSpan trace_span(uint64_t payment_block, uint64_t d) noexcept {
    // payment_block >= 1 for every candidate (distance >= 1 from a later block)
    return {payment_block >= d ? payment_block - d : 0, payment_block == 0 ? 0 : payment_block - 1};
}

BlockTrace trace_block(const BlockDetection& det, const RecipientWindow& window, const TraceParams& params) {
    BlockTrace out;
    out.target_block = det.target_block;
    for (std::size_t ci = 0; ci < det.candidates.size(); ++ci) {
        const auto& c = det.candidates[ci];
        if (c.payment_block == 0) continue;
        const auto span = trace_span(c.payment_block, params.d);
        for (const auto& e : window.payments_to(c.sender, span.lo, span.hi)) {
            out.links.push_back({ci, c.payment, {e.block_number, e.tx_index, e.tx_hash}, e.block_number, e.value_eth, e.from});
        }
    }
    return out;
}

BlockTrace trace(const ChainStore& store, const BlockDetection& det, const TraceParams& params) {
    params.validate();
    if (det.candidates.empty()) return BlockTrace{det.target_block, {}};

    uint64_t lo = std::numeric_limits<uint64_t>::max();
    uint64_t hi = 0;
    for (const auto& c : det.candidates) {
        const auto span = trace_span(c.payment_block, params.d);
        lo = std::min(lo, span.lo);
        hi = std::max(hi, span.hi);
    }
    if (store.empty() || lo < store.first_block()) throw InsufficientHistory(lo, store.empty() ? 0 : store.first_block());
    if (hi > store.last_block()) throw UnknownBlock(hi);

    RecipientWindow window{hi - lo + 1, lo};
    std::vector<TxRecord> buf;
    store.read_block_range(lo, hi, buf);
    auto it = buf.begin();
    for (uint64_t b = lo; b <= hi; ++b) {
        const auto end = std::find_if(it, buf.end(), [&](const TxRecord& tx) { return tx.block_number != b; });
        window.advance(b, std::span<const TxRecord>{it, end});
        it = end;
    }
    return trace_block(det, window, params);
}

}  // namespace bribescan
