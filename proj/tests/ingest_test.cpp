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

#include <bribescan/errors.hpp>
#include <bribescan/ingest.hpp>

#include "support/chains.hpp"
#include "support/rpc_mock.hpp"
#include "support/temp_dir.hpp"

namespace bribescan {

using test::TempDir;

namespace {

    void expect_same(const ChainStore& a, const ChainStore& b) {
        ASSERT_EQ(a.blocks().size(), b.blocks().size());
        for (std::size_t i = 0; i < a.blocks().size(); ++i) {
            EXPECT_EQ(a.blocks()[i].block_number, b.blocks()[i].block_number);
            EXPECT_EQ(a.blocks()[i].miner, b.blocks()[i].miner);
            EXPECT_EQ(a.blocks()[i].timestamp, b.blocks()[i].timestamp);
            EXPECT_EQ(a.blocks()[i].tx_count, b.blocks()[i].tx_count);
        }
        ASSERT_EQ(a.tx_count(), b.tx_count());
        std::vector<TxRecord> ra, rb;
        a.read_rows(0, a.tx_count(), ra);
        b.read_rows(0, b.tx_count(), rb);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            EXPECT_EQ(ra[i].block_number, rb[i].block_number);
            EXPECT_EQ(ra[i].tx_index, rb[i].tx_index);
            EXPECT_EQ(ra[i].tx_hash, rb[i].tx_hash);
            EXPECT_EQ(ra[i].from, rb[i].from);
            EXPECT_EQ(ra[i].to, rb[i].to);
            EXPECT_EQ(ra[i].value, rb[i].value);
            EXPECT_EQ(ra[i].gas_used, rb[i].gas_used);
            EXPECT_EQ(ra[i].gas_price, rb[i].gas_price);
        }
    }

    template <typename E, typename F>
    E capture(F f) {
        try {
            f();
        } catch (const E& e) {
            return e;
        }
        ADD_FAILURE() << "expected exception not thrown";
        throw std::logic_error("unreachable");
    }

}  // namespace

TEST(ImportFiles, FixtureF1) {
    TempDir dir;
    test::f1::data().write_ndjson(dir / "b.ndjson", dir / "t.ndjson");
    const auto store = import_files(dir / "b.ndjson", dir / "t.ndjson");
    EXPECT_EQ(store.first_block(), 1u);
    EXPECT_EQ(store.last_block(), 100u);
    EXPECT_EQ(store.blocks().size(), 100u);
    EXPECT_EQ(store.tx_count(), 4u);
    EXPECT_TRUE(validate_store(store).ok);
}

TEST(ImportFiles, OneBlockNoTransactions) {
    TempDir dir;
    test::write_text(dir / "b.ndjson",
                     R"({"block_number":7,"miner":"0x0000000000000000000000000000000000000001","timestamp":5,"tx_count":0})"
                     "\n");
    test::write_text(dir / "t.ndjson", "");
    const auto store = import_files(dir / "b.ndjson", dir / "t.ndjson");
    EXPECT_EQ(store.blocks().size(), 1u);
    EXPECT_EQ(store.tx_count(), 0u);
    EXPECT_TRUE(validate_store(store).ok);
}

TEST(ImportFiles, OrphanTransactionRejected) {
    TempDir dir;
    auto data = test::f1::data();
    data.blocks.push_back(BlockRecord{999, test::f1::Z, test::f1::kDayStart + 99999, 0});
    data.add_tx(999, test::f1::A, test::f1::B, WeiAmount::from_eth(1));
    data.blocks.pop_back();
    data.write_ndjson(dir / "b.ndjson", dir / "t.ndjson");
    EXPECT_THROW(import_files(dir / "b.ndjson", dir / "t.ndjson"), SchemaMismatch);
}

TEST(ImportFiles, MalformedJsonReportsLine) {
    TempDir dir;
    test::f1::data().write_ndjson(dir / "b.ndjson", dir / "t.ndjson");
    std::string txs = test::read_text(dir / "t.ndjson");
    txs += "{not json\n";
    test::write_text(dir / "t.ndjson", txs);
    const auto e = capture<MalformedLine>([&] { (void)import_files(dir / "b.ndjson", dir / "t.ndjson"); });
    EXPECT_NE(std::string{e.what()}.find(":5"), std::string::npos) << e.what();
}

TEST(ImportFiles, MissingFieldNamesIt) {
    TempDir dir;
    test::write_text(dir / "b.ndjson", R"({"block_number":1,"timestamp":5,"tx_count":0})" "\n");
    test::write_text(dir / "t.ndjson", "");
    const auto e = capture<SchemaMismatch>([&] { (void)import_files(dir / "b.ndjson", dir / "t.ndjson"); });
    EXPECT_EQ(e.field(), "miner");
}

TEST(ImportFiles, BadValueNamesField) {
    TempDir dir;
    test::f1::data().write_ndjson(dir / "b.ndjson", dir / "t.ndjson");
    std::string txs = test::read_text(dir / "t.ndjson");
    txs.replace(txs.find("\"value_wei\":\""), 13, "\"value_wei\":\"-");
    test::write_text(dir / "t.ndjson", txs);
    const auto e = capture<SchemaMismatch>([&] { (void)import_files(dir / "b.ndjson", dir / "t.ndjson"); });
    EXPECT_EQ(e.field(), "value_wei");
}

TEST(ImportFiles, RoundTripRandomChains) {
    TempDir dir;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        const auto data = test::random_chain({.blocks = 300}, seed);
        const auto store = data.store();
        export_files(store, dir / "b.ndjson", dir / "t.ndjson");
        expect_same(store, import_files(dir / "b.ndjson", dir / "t.ndjson"));
        expect_same(store, import_files(dir / "b.ndjson", dir / "t.ndjson", ImportOptions{dir / "spill.bin"}));
    }
}

TEST(ValidateStore, FixtureOk) { EXPECT_TRUE(validate_store(test::f1::data().store()).ok); }

TEST(ValidateStore, ReportsGap) {
    auto data = test::f1::data();
    std::erase_if(data.blocks, [](const BlockRecord& b) { return b.block_number == 50; });
    const auto report = validate_store(data.store());
    EXPECT_FALSE(report.ok);
    EXPECT_EQ(report.gaps, std::vector<uint64_t>{50});
}

TEST(ValidateStore, ReportsDuplicate) {
    auto data = test::f1::data();
    const auto t1 = *std::find_if(data.txs.begin(), data.txs.end(), [](const TxRecord& t) { return t.tx_hash == test::f1::T1; });
    data.txs.push_back(t1);
    const auto report = validate_store(data.store());
    EXPECT_FALSE(report.ok);
    EXPECT_EQ(report.duplicates, 1u);
}

TEST(ValidateStore, ReportsTxCountMismatch) {
    auto data = test::f1::data();
    data.blocks[10].tx_count = 3;
    const auto report = validate_store(data.store());
    EXPECT_FALSE(report.ok);
    EXPECT_EQ(report.tx_count_mismatches, 1u);
}

TEST(FetchRpc, FixtureTail) {
    test::RpcMock node{test::f1::data()};
    const auto store = fetch_rpc(node.url(), 99, 100, 50);
    EXPECT_EQ(store.blocks().size(), 2u);
    EXPECT_EQ(store.tx_count(), 2u);
    const auto txs = store.block_txs(100);
    ASSERT_EQ(txs.size(), 1u);
    EXPECT_EQ(txs[0].tx_hash, test::f1::T2);
    EXPECT_EQ(wei_to_eth(txs[0].value), 3.0);
}

TEST(FetchRpc, SingleBlock) {
    test::RpcMock node{test::f1::data()};
    const auto store = fetch_rpc(node.url(), 95, 95, 50);
    EXPECT_EQ(store.blocks().size(), 1u);
    EXPECT_EQ(store.block_txs(95).at(0).tx_hash, test::f1::T1);
}

TEST(FetchRpc, MatchesFileImport) {
    const auto data = test::random_chain({.blocks = 120}, 42);
    test::RpcMock node{data};
    const auto via_rpc = fetch_rpc(node.url(), 1, 120, 7);
    TempDir dir;
    data.write_ndjson(dir / "b.ndjson", dir / "t.ndjson");
    expect_same(import_files(dir / "b.ndjson", dir / "t.ndjson"), via_rpc);
}

TEST(FetchRpc, RetriesTransientFailures) {
    test::RpcMock node{test::f1::data()};
    node.fail_next(2);
    RpcOptions opts;
    opts.base_delay = std::chrono::milliseconds{1};
    const auto store = fetch_rpc(node.url(), 99, 100, 50, opts);
    EXPECT_EQ(store.blocks().size(), 2u);
    EXPECT_EQ(node.requests(), 3);
}

TEST(FetchRpc, GivesUpAfterMaxAttempts) {
    test::RpcMock node{test::f1::data()};
    node.fail_next(100);
    RpcOptions opts;
    opts.base_delay = std::chrono::milliseconds{1};
    opts.max_attempts = 3;
    EXPECT_THROW(fetch_rpc(node.url(), 99, 100, 50, opts), NetworkError);
    EXPECT_EQ(node.requests(), 3);
}

TEST(FetchRpc, NullBlockIsMissing) {
    test::RpcMock node{test::f1::data()};
    node.null_block(100);
    RpcOptions opts;
    opts.base_delay = std::chrono::milliseconds{1};
    const auto e = capture<MissingBlock>([&] { (void)fetch_rpc(node.url(), 98, 100, 50, opts); });
    EXPECT_NE(std::string{e.what()}.find("100"), std::string::npos);
}

TEST(FetchRpc, UnreachableEndpoint) {
    RpcOptions opts;
    opts.base_delay = std::chrono::milliseconds{1};
    opts.max_attempts = 2;
    opts.timeout = std::chrono::seconds{1};
    EXPECT_THROW(fetch_rpc("http://127.0.0.1:1/", 1, 1, 1, opts), NetworkError);
}

}  // namespace bribescan
