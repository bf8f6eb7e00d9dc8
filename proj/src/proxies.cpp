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

#include <bribescan/proxies.hpp>

#include <cmath>
#include <map>

#include <bribescan/errors.hpp>

namespace bribescan {

void ProxyParams::validate() const {
    if (!(c > 0.0)) throw DataError("c must be positive");
    if (!(epsilon > 0.0)) throw DataError("epsilon must be positive");
}

double followup_weight(const BlockDetection& d) {
    if (d.followups.empty()) return 1.0;
    double sum = 0.0;
    for (const auto& f : d.followups) sum += f.value_eth;
    return 1.0 + sum;
}

double candidate_base(const BribeCandidate& c, double fw, const ProxyParams& params) {
    return params.c * (c.value_eth / static_cast<double>(c.distance)) * fw;
}

double trace_weight(uint64_t gap, double payment_value, double traced_value, double epsilon) {
    return 1.0 + (1.0 / static_cast<double>(gap)) * (payment_value / (std::fabs(payment_value - traced_value) + epsilon));
}

double proxy_benchmark(const BlockDetection& d, const ProxyParams& params) {
    // Sum of per-candidate slices; algebraically c * sum(v/dist) * weight.
    const double fw = followup_weight(d);
    double total = 0.0;
    for (const auto& c : d.candidates) total += candidate_base(c, fw, params);
    return total;
}

namespace {

    struct BribingSums {
        double a{0.0};
        double b{0.0};
        double max_link{0.0};
    };

    BribingSums bribing_sums(const BlockDetection& d, const BlockTrace& t, const ProxyParams& params) {
        BribingSums out;
        const double fw = followup_weight(d);
        std::size_t li = 0;
        for (std::size_t ci = 0; ci < d.candidates.size(); ++ci) {
            const auto& c = d.candidates[ci];
            const double base = candidate_base(c, fw, params);
            double traced = 0.0;
            bool any = false;
            for (; li < t.links.size() && t.links[li].candidate == ci; ++li) {
                const auto& link = t.links[li];
                if (link.traced_block >= c.payment_block) throw NegativeBlockGap(c.payment_block, link.traced_block);
                const double term =
                    base * trace_weight(c.payment_block - link.traced_block, c.value_eth, link.traced_value_eth, params.epsilon);
                traced += term;
                out.max_link = std::max(out.max_link, term);
                any = true;
            }
            out.a += any ? traced : base;
            out.b += any ? traced : 0.0;
        }
        if (li != t.links.size()) throw DataError("trace links do not match the detection's candidates");
        return out;
    }

}  // namespace

double proxy_bribing(const BlockDetection& d, const BlockTrace& t, const ProxyParams& params, ProxyMode mode) {
    const auto sums = bribing_sums(d, t, params);
    return mode == ProxyMode::A ? sums.a : sums.b;
}

BlockProxies block_proxies(const BlockDetection& d, const BlockTrace& t, const ProxyParams& params) {
    const auto sums = bribing_sums(d, t, params);
    return {d.target_block, proxy_benchmark(d, params), sums.a, sums.b, sums.max_link};
}

std::vector<DailyProxies> aggregate_daily(std::span<const BlockProxies> series, const ChainStore& store,
                                          std::optional<DateRange> span) {
    std::map<CalendarDate, DailyProxies> by_day;
    for (const auto& bp : series) {
        const CalendarDate date = block_date(store.block(bp.target_block));
        auto& day = by_day[date];
        day.date = date;
        day.benchmark += bp.p_benchmark;
        day.a += bp.p_a;
        day.b += bp.p_b;
        day.max_link_term = std::max(day.max_link_term, bp.max_link_term);
        ++day.block_count;
    }
    if (!span) {
        if (by_day.empty()) return {};
        span = DateRange{by_day.begin()->first, by_day.rbegin()->first};
    }

    std::vector<DailyProxies> out;
    for (CalendarDate d = span->first; d <= span->last; d = d.next()) {
        const auto it = by_day.find(d);
        if (it != by_day.end()) {
            out.push_back(it->second);
        } else {
            DailyProxies zero;
            zero.date = d;
            out.push_back(zero);
        }
    }
    return out;
}

std::vector<ProxySummaryGroup> describe_proxies(std::span<const DailyProxies> daily,
                                                std::optional<CalendarDate> split_date) {
    auto summarize = [](std::string label, const std::vector<const DailyProxies*>& rows) {
        ProxySummaryGroup g;
        g.label = std::move(label);
        g.days = rows.size();
        std::vector<double> bench, a, b;
        for (const auto* r : rows) {
            bench.push_back(r->benchmark);
            a.push_back(r->a);
            b.push_back(r->b);
        }
        g.benchmark = analytics::describe_values(bench);
        g.a = analytics::describe_values(a);
        g.b = analytics::describe_values(b);
        return g;
    };

    std::vector<ProxySummaryGroup> out;
    std::vector<const DailyProxies*> all, before, after;
    for (const auto& d : daily) {
        all.push_back(&d);
        if (split_date) (d.date < *split_date ? before : after).push_back(&d);
    }
    if (!all.empty()) out.push_back(summarize("all", all));
    if (!before.empty()) out.push_back(summarize("before", before));
    if (!after.empty()) out.push_back(summarize("after", after));
    return out;
}

}  // namespace bribescan
