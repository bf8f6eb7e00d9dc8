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

#include <bribescan/scan.hpp>

#include <algorithm>
#include <exception>
#include <thread>

#include <bribescan/errors.hpp>

namespace bribescan {

namespace {

    constexpr uint64_t kReadBlocks = 256;
    constexpr uint64_t kMaxChunkBlocks = 1 << 14;

    uint64_t saturating_sub(uint64_t a, uint64_t b) noexcept { return a >= b ? a - b : 0; }

    void scan_chunk(const ChainStore& store, const ScanParams& params, uint64_t lo, uint64_t hi,
                    const std::function<void(BlockScan&&)>& emit) {
        const auto& dp = params.detection;
        const uint64_t first = store.first_block();
        const uint64_t d = params.trace ? params.trace->d : 0;
        const uint64_t warm = std::max(first, saturating_sub(lo, dp.step + d));

        RecipientWindow candidates_window{dp.step, warm};
        std::optional<RecipientWindow> trace_window;
        if (params.trace) trace_window.emplace(dp.step + d, warm);

        std::vector<TxRecord> buf;
        for (uint64_t batch_lo = warm; batch_lo <= hi; batch_lo += kReadBlocks) {
            const uint64_t batch_hi = std::min(hi, batch_lo + kReadBlocks - 1);
            buf.clear();
            store.read_block_range(batch_lo, batch_hi, buf);
            auto it = buf.begin();
            for (uint64_t b = batch_lo; b <= batch_hi; ++b) {
                const auto end = std::find_if(it, buf.end(), [&](const TxRecord& tx) { return tx.block_number != b; });
                const std::span<const TxRecord> txs{it, end};
                it = end;

                if (b >= lo) {
                    BlockScan s;
                    s.detection = detect_block(store.block(b), candidates_window, SenderIndex{b, txs});
                    s.detection = filter_min_value(std::move(s.detection), dp.min_value_eth);
                    s.trace.target_block = b;
                    if (params.trace) {
                        for (const auto& c : s.detection.candidates) {
                            const auto span = trace_span(c.payment_block, d);
                            if (span.lo < first) throw InsufficientHistory(span.lo, first);
                        }
                        s.trace = trace_block(s.detection, *trace_window, *params.trace);
                    }
                    emit(std::move(s));
                }
                candidates_window.advance(b, txs);
                if (trace_window) trace_window->advance(b, txs);
            }
        }
    }

}  // namespace

void scan(const ChainStore& store, const ScanParams& params, const std::function<void(BlockScan&&)>& sink) {
    const auto& dp = params.detection;
    dp.validate();
    if (params.trace) params.trace->validate();
    if (store.empty()) throw DataError("store is empty");
    if (dp.startblock < store.first_block() || dp.endblock > store.last_block()) {
        throw UnknownBlock(dp.startblock < store.first_block() ? dp.startblock : dp.endblock);
    }
    const uint64_t needed = saturating_sub(dp.startblock, dp.step);
    if (needed < store.first_block()) throw InsufficientHistory(needed, store.first_block());

    const unsigned threads = std::max(1U, params.threads);
    const uint64_t range = dp.endblock - dp.startblock + 1;
    const uint64_t warmup = dp.step + (params.trace ? params.trace->d : 0);
    uint64_t chunk = params.chunk_blocks;
    if (chunk == 0) {
        chunk = std::max<uint64_t>((range + threads - 1) / threads, 4 * warmup);
        chunk = std::min(chunk, std::max<uint64_t>(kMaxChunkBlocks, 4 * warmup));
    }

    for (uint64_t wave_lo = dp.startblock; wave_lo <= dp.endblock;) {
        std::vector<std::pair<uint64_t, uint64_t>> chunks;
        uint64_t lo = wave_lo;
        while (chunks.size() < threads && lo <= dp.endblock) {
            const uint64_t hi = std::min(dp.endblock, lo + chunk - 1);
            chunks.emplace_back(lo, hi);
            if (hi == dp.endblock) {
                lo = hi + 1;
                break;
            }
            lo = hi + 1;
        }

        // The first chunk streams into the sink from this thread; the others
        // are buffered until it is done, which keeps the output in block order.
        std::vector<std::vector<BlockScan>> results(chunks.size());
        std::vector<std::exception_ptr> errors(chunks.size());
        {
            std::vector<std::jthread> workers;
            workers.reserve(chunks.size());
            for (std::size_t i = 1; i < chunks.size(); ++i) {
                workers.emplace_back([&, i] {
                    try {
                        scan_chunk(store, params, chunks[i].first, chunks[i].second,
                                   [&](BlockScan&& s) { results[i].push_back(std::move(s)); });
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                });
            }
            try {
                scan_chunk(store, params, chunks[0].first, chunks[0].second, sink);
            } catch (...) {
                errors[0] = std::current_exception();
            }
        }
        for (std::size_t i = 0; i < chunks.size(); ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            for (auto& s : results[i]) sink(std::move(s));
            std::vector<BlockScan>().swap(results[i]);
        }
        if (chunks.back().second == dp.endblock) break;
        wave_lo = chunks.back().second + 1;
    }
}

}  // namespace bribescan
