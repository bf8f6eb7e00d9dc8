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

#include "properties.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>

#include <bribescan/proxies.hpp>
#include <bribescan/scan.hpp>

#include "chains.hpp"

namespace bribescan::test {

namespace {

    struct Gen {
        std::mt19937_64 rng;

        uint64_t integer(uint64_t lo, uint64_t hi) { return std::uniform_int_distribution<uint64_t>{lo, hi}(rng); }
        double real(double lo, double hi) { return std::uniform_real_distribution<double>{lo, hi}(rng); }
        bool chance(unsigned one_in) { return integer(0, one_in - 1) == 0; }

        double eth() {
            switch (integer(0, 5)) {
                case 0: return 0.0;
                case 1: return static_cast<double>(integer(1, 100));
                case 2: return real(0.0, 1e-6);
                default: return real(0.0, 5000.0);
            }
        }
    };

    struct Case {
        BlockDetection det;
        BlockTrace trace;
    };

    Case random_case(Gen& g) {
        Case out;
        const uint64_t target = 1'000'000 + g.integer(0, 1000);
        const uint64_t step = g.integer(1, 1000);
        const uint64_t d = g.integer(1, 6000);
        out.det.target_block = target;
        out.det.miner = addr(1);
        out.trace.target_block = target;

        const auto n = g.integer(0, 6);
        std::vector<uint64_t> dists;
        for (uint64_t i = 0; i < n; ++i) dists.push_back(g.integer(1, step));
        std::sort(dists.rbegin(), dists.rend());
        for (uint64_t i = 0; i < n; ++i) {
            BribeCandidate c;
            c.target_block = target;
            c.miner = out.det.miner;
            c.sender = addr(10 + g.integer(0, 4));
            c.value_eth = g.eth();
            c.distance = dists[i];
            c.payment_block = target - c.distance;
            c.payment = TxRef{c.payment_block, static_cast<uint32_t>(i), hash(i)};
            out.det.candidates.push_back(c);
        }
        if (n > 0) {
            const auto f = g.integer(0, 3);
            for (uint64_t i = 0; i < f; ++i) {
                const auto& c = out.det.candidates[g.integer(0, n - 1)];
                out.det.followups.push_back(FollowupTx{target, c.sender, g.eth(), TxRef{target, static_cast<uint32_t>(i), hash(100 + i)}});
            }
        }
        for (std::size_t k = 0; k < out.det.candidates.size(); ++k) {
            const auto& c = out.det.candidates[k];
            const auto links = g.integer(0, 3);
            std::vector<uint64_t> gaps;
            for (uint64_t i = 0; i < links; ++i) gaps.push_back(g.integer(1, d));
            std::sort(gaps.rbegin(), gaps.rend());
            for (uint64_t i = 0; i < links; ++i) {
                TraceLink l;
                l.candidate = k;
                l.candidate_tx = c.payment;
                l.traced_block = c.payment_block - gaps[i];
                l.traced_tx = TxRef{l.traced_block, static_cast<uint32_t>(i), hash(1000 + 10 * k + i)};
                l.traced_value_eth = g.chance(5) ? c.value_eth : g.eth();
                l.funder = addr(20);
                out.trace.links.push_back(l);
            }
        }
        return out;
    }

    std::string describe(const BlockProxies& p) {
        return "benchmark=" + std::to_string(p.p_benchmark) + " a=" + std::to_string(p.p_a) + " b=" + std::to_string(p.p_b);
    }

}  // namespace

PropertyOutcome check_proxy_ordering(uint64_t seed, uint64_t cases) {
    Gen g{std::mt19937_64{seed}};
    PropertyOutcome out;
    for (uint64_t i = 0; i < cases; ++i) {
        const auto c = random_case(g);
        const ProxyParams params{g.real(0.01, 100.0), 1e-18};
        const auto p = block_proxies(c.det, c.trace, params);
        ++out.cases;
        if (!(0.0 <= p.p_b && p.p_b <= p.p_a && p.p_benchmark <= p.p_a)) out.fail("case " + std::to_string(i) + ": " + describe(p));
    }
    return out;
}

PropertyOutcome check_weight_monotonicity(uint64_t seed, uint64_t cases) {
    Gen g{std::mt19937_64{seed}};
    PropertyOutcome out;
    for (uint64_t i = 0; i < cases; ++i) {
        const double vs = g.real(0.01, 1000.0);
        const uint64_t gap = g.integer(1, 6000);
        const double d1 = g.real(0.0, 100.0);
        const double d2 = std::max(d1 * 1.01, d1 + 1e-9) + g.real(0.0, 100.0 - std::min(d1, 99.0));
        // traced value on either side of the payment value
        auto traced = [&](double diff) { return vs + (g.chance(2) && diff <= vs ? -diff : diff); };
        const double near = trace_weight(gap, vs, traced(d1), 1e-18);
        const double far = trace_weight(gap, vs, traced(d2), 1e-18);
        ++out.cases;
        if (!(near > far)) {
            out.fail("value: vs=" + std::to_string(vs) + " gap=" + std::to_string(gap) + " d1=" + std::to_string(d1) +
                     " d2=" + std::to_string(d2));
        }
        const uint64_t gap2 = gap + g.integer(1, 6000);
        const double vj = traced(d1);
        ++out.cases;
        if (!(trace_weight(gap, vs, vj, 1e-18) > trace_weight(gap2, vs, vj, 1e-18))) {
            out.fail("gap: vs=" + std::to_string(vs) + " gap=" + std::to_string(gap) + " gap2=" + std::to_string(gap2));
        }
    }
    return out;
}

PropertyOutcome check_c_linearity(uint64_t seed, uint64_t cases) {
    Gen g{std::mt19937_64{seed}};
    PropertyOutcome out;
    for (uint64_t i = 0; i < cases; ++i) {
        const auto c = random_case(g);
        const double base_c = g.real(0.01, 100.0);
        const double k = std::ldexp(1.0, static_cast<int>(g.integer(0, 20)) - 10);
        const auto p1 = block_proxies(c.det, c.trace, ProxyParams{base_c, 1e-18});
        const auto pk = block_proxies(c.det, c.trace, ProxyParams{base_c * k, 1e-18});
        ++out.cases;
        if (pk.p_benchmark != k * p1.p_benchmark || pk.p_a != k * p1.p_a || pk.p_b != k * p1.p_b) {
            out.fail("case " + std::to_string(i) + " k=" + std::to_string(k) + ": " + describe(p1) + " vs " + describe(pk));
        }
    }
    return out;
}

PropertyOutcome check_threshold_monotonicity(uint64_t seed, uint64_t chains) {
    Gen g{std::mt19937_64{seed}};
    PropertyOutcome out;
    for (uint64_t ch = 0; ch < chains; ++ch) {
        const auto store = random_chain({.blocks = 400, .address_pool = 20, .miner_pool = 5}, seed * 1000 + ch).store();
        const double lo = g.chance(3) ? 0.0 : g.real(0.0, 50.0);
        const double hi = lo + g.real(0.0, 200.0);
        auto run = [&](double threshold) {
            ScanParams sp;
            sp.detection = DetectionParams{101, 400, 50, threshold};
            sp.trace = TraceParams{50};
            std::vector<BlockScan> res;
            scan(store, sp, [&](BlockScan&& s) { res.push_back(std::move(s)); });
            return res;
        };
        const auto a = run(lo);
        const auto b = run(hi);
        const ProxyParams params{};
        for (std::size_t i = 0; i < a.size(); ++i) {
            ++out.cases;
            const auto& da = a[i].detection;
            const auto& db = b[i].detection;
            const bool subset = std::all_of(db.candidates.begin(), db.candidates.end(), [&](const BribeCandidate& c) {
                return std::find(da.candidates.begin(), da.candidates.end(), c) != da.candidates.end();
            });
            const auto pa = block_proxies(da, a[i].trace, params);
            const auto pb = block_proxies(db, b[i].trace, params);
            if (!subset || pb.p_benchmark > pa.p_benchmark || pb.p_a > pa.p_a || pb.p_b > pa.p_b) {
                out.fail("chain " + std::to_string(ch) + " block " + std::to_string(da.target_block) + " thresholds " +
                         std::to_string(lo) + "/" + std::to_string(hi));
            }
        }
    }
    return out;
}

PropertyOutcome check_daily_additivity(uint64_t seed, uint64_t cases) {
    Gen g{std::mt19937_64{seed}};
    PropertyOutcome out;
    for (uint64_t i = 0; i < cases; ++i) {
        const uint64_t blocks = g.integer(1, 40);
        std::vector<BlockRecord> recs;
        uint64_t ts = 1609459200 + g.integer(0, 86400 * 3);
        for (uint64_t b = 1; b <= blocks; ++b) {
            recs.push_back(BlockRecord{b, addr(1), ts, 0});
            ts += g.integer(0, 40000);
        }
        const auto store = ChainStore::from_records(recs, {});
        std::vector<BlockProxies> series;
        for (uint64_t b = 1; b <= blocks; ++b) {
            if (g.chance(4)) continue;
            const double bench = g.eth();
            const double a = bench + g.eth();
            series.push_back(BlockProxies{b, bench, a, g.chance(2) ? 0.0 : a * g.real(0.0, 1.0), 0.0});
        }
        const CalendarDate first = block_date(recs.front());
        const CalendarDate last = block_date(recs.back()).next();
        const auto daily = aggregate_daily(series, store, DateRange{first, last});

        std::map<CalendarDate, std::array<double, 3>> sums;
        std::map<CalendarDate, uint64_t> counts;
        for (const auto& bp : series) {
            const auto date = block_date(recs[bp.target_block - 1]);
            auto& s = sums[date];
            s[0] += bp.p_benchmark;
            s[1] += bp.p_a;
            s[2] += bp.p_b;
            ++counts[date];
        }
        ++out.cases;
        bool ok = !daily.empty() && daily.front().date == first && daily.back().date == last;
        for (std::size_t k = 0; ok && k < daily.size(); ++k) {
            const auto& day = daily[k];
            if (k > 0 && !(daily[k - 1].date.next() == day.date)) ok = false;
            const auto s = sums.count(day.date) ? sums[day.date] : std::array<double, 3>{0, 0, 0};
            if (day.benchmark != s[0] || day.a != s[1] || day.b != s[2] || day.block_count != counts[day.date]) ok = false;
        }
        if (!ok) out.fail("case " + std::to_string(i));
    }
    return out;
}

}  // namespace bribescan::test
