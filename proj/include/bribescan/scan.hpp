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

#include <functional>
#include <optional>

#include <bribescan/detection.hpp>
#include <bribescan/tracing.hpp>

namespace bribescan {

struct ScanParams {
    DetectionParams detection;
    std::optional<TraceParams> trace;  // no tracing when empty
    unsigned threads{1};
    //! Target blocks per work unit; 0 picks a size from the range and windows.
    uint64_t chunk_blocks{0};
};

struct BlockScan {
    BlockDetection detection;
    BlockTrace trace;
};

//! Single pass over [startblock, endblock] with incrementally advanced windows.
//! The range is split into chunks, each warmed up from step + d blocks earlier,
//! processed on up to `threads` workers and handed to `sink` in block order, so
//! the output does not depend on the thread count.
void scan(const ChainStore& store, const ScanParams& params, const std::function<void(BlockScan&&)>& sink);

}  // namespace bribescan
