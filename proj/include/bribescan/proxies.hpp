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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <bribescan/analytics/describe.hpp>
#include <bribescan/chain_model.hpp>
#include <bribescan/detection.hpp>
#include <bribescan/store.hpp>
#include <bribescan/tracing.hpp>

namespace bribescan {

struct ProxyParams {
    double c{1.0};
    double epsilon{1e-18};

    void validate() const;
};

enum class ProxyMode {
    A,  // untraced candidates keep their benchmark term
    B,  // untraced candidates are dropped
};

struct BlockProxies {
    uint64_t target_block{0};
    double p_benchmark{0.0};
    double p_a{0.0};
    double p_b{0.0};
    //! Largest single trace-link term in the block (0 without links).
    double max_link_term{0.0};
};

struct DailyProxies {
    CalendarDate date;
    double benchmark{0.0};
    double a{0.0};
    double b{0.0};
    uint64_t block_count{0};
    double max_link_term{0.0};
};

//! 1 + sum of followup values, or 1 when the block has no followups.
double followup_weight(const BlockDetection& d);

//! c * value / distance * followup_weight: one candidate's share of the benchmark.
double candidate_base(const BribeCandidate& c, double followup_weight, const ProxyParams& params);

//! 1 + (1 / gap) * value_s / (|value_s - value_j| + epsilon), where gap is the
//! block distance between the payment and the traced transfer.
double trace_weight(uint64_t gap, double payment_value, double traced_value, double epsilon);

//! Distance-weighted candidate values, scaled by the followup weight.
double proxy_benchmark(const BlockDetection& d, const ProxyParams& params);

//! Benchmark terms reweighted by each trace link. `t` must come from tracing
//! this exact detection (candidate indices are positional).
double proxy_bribing(const BlockDetection& d, const BlockTrace& t, const ProxyParams& params, ProxyMode mode);

BlockProxies block_proxies(const BlockDetection& d, const BlockTrace& t, const ProxyParams& params);

struct DateRange {
    CalendarDate first;
    CalendarDate last;
};

//! Sums per UTC day of each block's timestamp, in block order. Every date in
//! `span` (default: the series' own first..last date) gets a row. Throws
//! UnknownBlock for blocks absent from the store.
std::vector<DailyProxies> aggregate_daily(std::span<const BlockProxies> series, const ChainStore& store,
                                          std::optional<DateRange> span = std::nullopt);

struct ProxySummaryGroup {
    std::string label;  // "all", "before", "after"
    std::size_t days{0};
    analytics::Summary benchmark;
    analytics::Summary a;
    analytics::Summary b;
};

//! Overall statistics and, with a split date, the before (date < split) and
//! after (date >= split) groups. Empty groups are omitted.
std::vector<ProxySummaryGroup> describe_proxies(std::span<const DailyProxies> daily,
                                                std::optional<CalendarDate> split_date);

}  // namespace bribescan
