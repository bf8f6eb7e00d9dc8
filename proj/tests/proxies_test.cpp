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

#include <gtest/gtest.h>

#include <bribescan/detection.hpp>
#include <bribescan/errors.hpp>
#include <bribescan/proxies.hpp>
#include <bribescan/scan.hpp>
#include <bribescan/tracing.hpp>

#include "support/chains.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace bribescan {

namespace f1 = test::f1;

namespace {

    struct Run {
        BlockDetection det;
        BlockTrace trace;
    };

    Run run_f1(const test::ChainData& data, uint64_t d = 6) {
        const auto store = data.store();
        Run r;
        r.det = detect(store, DetectionParams{100, 100, 10, 0.0})[0];
        r.trace = trace(store, r.det, TraceParams{d});
        return r;
    }

    constexpr double kF1A = 8.0 * (1.0 + (1.0 / 3.0) * (10.0 / (1.0 + 1e-18)));

}  // namespace

TEST(ProxyBenchmark, FixtureF1) {
    EXPECT_EQ(proxy_benchmark(run_f1(f1::data()).det, ProxyParams{}), 8.0);
}

TEST(ProxyBenchmark, NoCandidates) { EXPECT_EQ(proxy_benchmark(BlockDetection{}, ProxyParams{}), 0.0); }

TEST(ProxyBenchmark, NoFollowups) {
    auto data = f1::data();
    data.remove_tx(f1::T2);
    EXPECT_EQ(proxy_benchmark(run_f1(data).det, ProxyParams{}), 2.0);
}

TEST(ProxyBenchmark, ZeroValuePaymentAddsNothing) {
    auto data = f1::data();
    data.add_tx(97, f1::B, f1::M, WeiAmount{uint64_t{0}});
    const auto r = run_f1(data);
    ASSERT_EQ(r.det.candidates.size(), 2u);
    // B sent nothing in block 100, so the followup weight is unchanged
    EXPECT_EQ(proxy_benchmark(r.det, ProxyParams{}), 8.0);
}

TEST(ProxyBribing, FixtureF1) {
    const auto r = run_f1(f1::data());
    const double a = proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::A);
    const double b = proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::B);
    EXPECT_NEAR(a, 34.6666666667, 34.6666666667 * 1e-9);
    EXPECT_NEAR(b, 34.6666666667, 34.6666666667 * 1e-9);
    EXPECT_DOUBLE_EQ(a, kF1A);
}

TEST(ProxyBribing, UntracedFallback) {
    auto data = f1::data();
    data.remove_tx(f1::T0);
    const auto r = run_f1(data);
    EXPECT_EQ(proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::A), 8.0);
    EXPECT_EQ(proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::B), 0.0);
}

TEST(ProxyBribing, ShortTraceWindowFallsBack) {
    const auto r = run_f1(f1::data(), 2);
    EXPECT_EQ(proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::A), 8.0);
    EXPECT_EQ(proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::B), 0.0);
}

TEST(ProxyBribing, NoCandidates) {
    EXPECT_EQ(proxy_bribing(BlockDetection{}, BlockTrace{}, ProxyParams{}, ProxyMode::A), 0.0);
    EXPECT_EQ(proxy_bribing(BlockDetection{}, BlockTrace{}, ProxyParams{}, ProxyMode::B), 0.0);
}

TEST(ProxyBribing, NonPositiveGapRejected) {
    auto r = run_f1(f1::data());
    r.trace.links[0].traced_block = 95;
    EXPECT_THROW(proxy_bribing(r.det, r.trace, ProxyParams{}, ProxyMode::A), NegativeBlockGap);
}

TEST(ProxyParams, Validation) {
    EXPECT_THROW((ProxyParams{0.0, 1e-18}.validate()), DataError);
    EXPECT_THROW((ProxyParams{1.0, 0.0}.validate()), DataError);
    EXPECT_NO_THROW(ProxyParams{}.validate());
}

TEST(TraceWeight, FixtureLink) { EXPECT_DOUBLE_EQ(trace_weight(3, 10.0, 9.0, 1e-18), 1.0 + 10.0 / 3.0); }

TEST(AggregateDaily, FixtureSingleBlock) {
    const auto store = f1::data().store();
    const auto r = run_f1(f1::data());
    const std::vector<BlockProxies> series{block_proxies(r.det, r.trace, ProxyParams{})};
    const auto daily = aggregate_daily(series, store);
    ASSERT_EQ(daily.size(), 1u);
    EXPECT_EQ(daily[0].date.to_string(), "2021-01-01");
    EXPECT_EQ(daily[0].benchmark, 8.0);
    EXPECT_DOUBLE_EQ(daily[0].a, kF1A);
    EXPECT_DOUBLE_EQ(daily[0].b, kF1A);
    EXPECT_EQ(daily[0].block_count, 1u);
}

TEST(AggregateDaily, SameDaySums) {
    const auto store = f1::data().store();
    const std::vector<BlockProxies> series{{10, 3.0, 3.0, 0.0, 0.0}, {11, 5.0, 5.0, 0.0, 0.0}};
    const auto daily = aggregate_daily(series, store);
    ASSERT_EQ(daily.size(), 1u);
    EXPECT_EQ(daily[0].benchmark, 8.0);
    EXPECT_EQ(daily[0].block_count, 2u);
}

TEST(AggregateDaily, EmptySeriesCalendarCompletion) {
    const auto store = f1::data().store();
    const auto daily = aggregate_daily({}, store, DateRange{CalendarDate{2021, 1, 1}, CalendarDate{2021, 1, 3}});
    ASSERT_EQ(daily.size(), 3u);
    for (const auto& d : daily) {
        EXPECT_EQ(d.benchmark, 0.0);
        EXPECT_EQ(d.a, 0.0);
        EXPECT_EQ(d.b, 0.0);
        EXPECT_EQ(d.block_count, 0u);
    }
    EXPECT_EQ(daily[2].date.to_string(), "2021-01-03");
}

TEST(DescribeProxies, SplitAtFork) {
    std::vector<DailyProxies> daily;
    for (int i = 0; i < 4; ++i) {
        DailyProxies d;
        d.date = CalendarDate{2021, 8, static_cast<unsigned>(3 + i)};
        d.benchmark = i;
        d.a = 2 * i;
        d.b = i;
        daily.push_back(d);
    }
    const auto groups = describe_proxies(daily, kLondonForkDate);
    ASSERT_EQ(groups.size(), 3u);
    EXPECT_EQ(groups[0].label, "all");
    EXPECT_EQ(groups[1].label, "before");
    EXPECT_EQ(groups[1].days, 2u);
    EXPECT_EQ(groups[2].days, 2u);
    EXPECT_EQ(groups[2].a.mean, 5.0);
    EXPECT_GE(groups[0].a.mean, groups[0].b.mean);
}

TEST(ProxyOracle, MatchesPseudocodeOnSmallChains) {
    for (uint64_t seed = 300; seed < 306; ++seed) {
        const auto store = test::random_chain({.blocks = 500, .address_pool = 20, .miner_pool = 4}, seed).store();
        const test::NaiveChain naive{store};
        ScanParams sp;
        sp.detection = DetectionParams{181, 500, 60, 0.0};
        sp.trace = TraceParams{120};
        scan(store, sp, [&](BlockScan&& s) {
            const auto got = block_proxies(s.detection, s.trace, ProxyParams{1.5, 1e-18});
            const auto want = test::naive_proxies(naive, s.detection.target_block, 60, 120, 1.5, 1e-18);
            EXPECT_TRUE(test::close_rel(got.p_benchmark, want.benchmark, 1e-9)) << s.detection.target_block;
            EXPECT_TRUE(test::close_rel(got.p_a, want.a, 1e-9)) << s.detection.target_block;
            EXPECT_TRUE(test::close_rel(got.p_b, want.b, 1e-9)) << s.detection.target_block;
        });
    }
}

TEST(ProxyProperties, Ordering) {
    const auto r = test::check_proxy_ordering(1, 3000);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(ProxyProperties, WeightMonotonicity) {
    const auto r = test::check_weight_monotonicity(2, 3000);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(ProxyProperties, CLinearity) {
    const auto r = test::check_c_linearity(3, 3000);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(ProxyProperties, ThresholdMonotonicity) {
    const auto r = test::check_threshold_monotonicity(4, 3);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

TEST(ProxyProperties, DailyAdditivity) {
    const auto r = test::check_daily_additivity(5, 1000);
    EXPECT_EQ(r.failures, 0u) << r.first_failure;
}

}  // namespace bribescan
