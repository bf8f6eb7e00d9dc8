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

#include <bribescan/ingest.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include <bribescan/errors.hpp>

namespace bribescan {

namespace {

    using nlohmann::json;

    const json& field(const json& obj, const char* name) {
        const auto it = obj.find(name);
        if (it == obj.end()) throw SchemaMismatch(name, "field is missing");
        return *it;
    }

    template <typename UInt>
    UInt unsigned_field(const json& obj, const char* name) {
        const json& v = field(obj, name);
        if (!v.is_number_unsigned()) throw SchemaMismatch(name, "expected an unsigned integer");
        const auto raw = v.get<uint64_t>();
        if (raw > std::numeric_limits<UInt>::max()) throw SchemaMismatch(name, "value out of range");
        return static_cast<UInt>(raw);
    }

    const std::string& string_field(const json& obj, const char* name) {
        const json& v = field(obj, name);
        if (!v.is_string()) throw SchemaMismatch(name, "expected a string");
        return v.get_ref<const std::string&>();
    }

    template <typename Parse>
    auto parse_as(const char* name, const std::string& text, Parse parse) {
        try {
            return parse(text);
        } catch (const DataError& e) {
            throw SchemaMismatch(name, e.what());
        }
    }

    BlockRecord block_from_json(const json& j) {
        BlockRecord b;
        b.block_number = unsigned_field<uint64_t>(j, "block_number");
        b.miner = parse_as("miner", string_field(j, "miner"), Address::parse);
        b.timestamp = unsigned_field<uint64_t>(j, "timestamp");
        if (b.timestamp >= (uint64_t{1} << 63)) throw SchemaMismatch("timestamp", "value out of range");
        b.tx_count = unsigned_field<uint32_t>(j, "tx_count");
        return b;
    }

    TxRecord tx_from_json(const json& j) {
        TxRecord tx;
        tx.block_number = unsigned_field<uint64_t>(j, "block_number");
        tx.tx_index = unsigned_field<uint32_t>(j, "tx_index");
        tx.tx_hash = parse_as("tx_hash", string_field(j, "tx_hash"), TxHash::parse);
        tx.from = parse_as("from", string_field(j, "from"), Address::parse);
        const json& to = field(j, "to");
        if (!to.is_null()) {
            if (!to.is_string()) throw SchemaMismatch("to", "expected a string or null");
            tx.to = parse_as("to", to.get_ref<const std::string&>(), Address::parse);
        }
        tx.value = parse_as("value_wei", string_field(j, "value_wei"), WeiAmount::from_decimal);
        tx.gas_used = unsigned_field<uint64_t>(j, "gas_used");
        tx.gas_price = parse_as("gas_price_wei", string_field(j, "gas_price_wei"), WeiAmount::from_decimal);
        return tx;
    }

    template <typename OnRecord>
    void for_each_line(const std::filesystem::path& path, OnRecord on_record) {
        std::ifstream in(path);
        if (!in) throw RuntimeFailure("cannot open " + path.string());
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
            if (j.is_discarded()) throw MalformedLine(path.string(), line_no, "not valid JSON");
            if (!j.is_object()) throw MalformedLine(path.string(), line_no, "expected a JSON object");
            try {
                on_record(j);
            } catch (const SchemaMismatch& e) {
                throw SchemaMismatch(e.field(), path.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (in.bad()) throw RuntimeFailure("read error on " + path.string());
    }

    // -- JSON-RPC ---------------------------------------------------------------

    uint64_t hex_quantity(const json& obj, const char* name) {
        const auto it = obj.find(name);
        if (it == obj.end() || !it->is_string()) throw MalformedResponse(std::string{"missing quantity '"} + name + "'");
        const auto& s = it->get_ref<const std::string&>();
        if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X') || s.size() > 18) {
            throw MalformedResponse(std::string{"bad quantity '"} + name + "': " + s);
        }
        uint64_t v = 0;
        for (std::size_t i = 2; i < s.size(); ++i) {
            const char c = s[i];
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else throw MalformedResponse(std::string{"bad quantity '"} + name + "': " + s);
            v = (v << 4) | static_cast<uint64_t>(d);
        }
        return v;
    }

    template <typename T, typename Parse>
    T rpc_parse(const json& obj, const char* name, Parse parse) {
        const auto it = obj.find(name);
        if (it == obj.end() || !it->is_string()) throw MalformedResponse(std::string{"missing field '"} + name + "'");
        try {
            return parse(it->get_ref<const std::string&>());
        } catch (const DataError& e) {
            throw MalformedResponse(std::string{"bad field '"} + name + "': " + e.what());
        }
    }

    void block_from_rpc(const json& result, uint64_t expected, StoreBuilder& builder) {
        if (!result.is_object()) throw MalformedResponse("block result is not an object");
        BlockRecord b;
        b.block_number = hex_quantity(result, "number");
        if (b.block_number != expected) {
            throw MalformedResponse("asked for block " + std::to_string(expected) + ", got " +
                                    std::to_string(b.block_number));
        }
        b.miner = rpc_parse<Address>(result, "miner", Address::parse);
        b.timestamp = hex_quantity(result, "timestamp");
        const auto txs = result.find("transactions");
        if (txs == result.end() || !txs->is_array()) throw MalformedResponse("block has no transactions array");
        b.tx_count = static_cast<uint32_t>(txs->size());
        for (const json& t : *txs) {
            if (!t.is_object()) throw MalformedResponse("transactions must be full objects (hydrated)");
            TxRecord tx;
            tx.block_number = hex_quantity(t, "blockNumber");
            tx.tx_index = static_cast<uint32_t>(hex_quantity(t, "transactionIndex"));
            tx.tx_hash = rpc_parse<TxHash>(t, "hash", TxHash::parse);
            tx.from = rpc_parse<Address>(t, "from", Address::parse);
            const auto to = t.find("to");
            if (to != t.end() && !to->is_null()) tx.to = rpc_parse<Address>(t, "to", Address::parse);
            tx.value = rpc_parse<WeiAmount>(t, "value", WeiAmount::from_hex_quantity);
            // full tx objects carry the gas limit only; gasUsed needs receipts
            tx.gas_used = t.contains("gasUsed") ? hex_quantity(t, "gasUsed") : hex_quantity(t, "gas");
            tx.gas_price = t.contains("gasPrice") ? rpc_parse<WeiAmount>(t, "gasPrice", WeiAmount::from_hex_quantity)
                                                  : WeiAmount{};
            builder.add_tx(tx);
        }
        builder.add_block(std::move(b));
    }

    std::string to_hex(uint64_t v) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(v));
        return buf;
    }

    struct Endpoint {
        std::string scheme_host_port;
        std::string path;
    };

    Endpoint split_endpoint(const std::string& url) {
        const auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos) throw NetworkError("endpoint must be an http(s) URL: " + url);
        const auto path_start = url.find('/', scheme_end + 3);
        if (path_start == std::string::npos) return {url, "/"};
        return {url.substr(0, path_start), url.substr(path_start)};
    }

}  // namespace

ChainStore import_files(const std::filesystem::path& blocks_path, const std::filesystem::path& txs_path,
                        const ImportOptions& options) {
    StoreBuilder builder{options.spill_path};
    for_each_line(blocks_path, [&](const json& j) { builder.add_block(block_from_json(j)); });
    for_each_line(txs_path, [&](const json& j) { builder.add_tx(tx_from_json(j)); });
    return builder.finish();
}

std::string to_ndjson(const BlockRecord& b) {
    std::string out = "{\"block_number\":" + std::to_string(b.block_number) + ",\"miner\":\"" + b.miner.to_string() +
                      "\",\"timestamp\":" + std::to_string(b.timestamp) + ",\"tx_count\":" + std::to_string(b.tx_count) +
                      "}";
    return out;
}

std::string to_ndjson(const TxRecord& tx) {
    std::string out = "{\"block_number\":" + std::to_string(tx.block_number) +
                      ",\"tx_index\":" + std::to_string(tx.tx_index) + ",\"tx_hash\":\"" + tx.tx_hash.to_string() +
                      "\",\"from\":\"" + tx.from.to_string() + "\",\"to\":" +
                      (tx.to ? "\"" + tx.to->to_string() + "\"" : std::string{"null"}) + ",\"value_wei\":\"" +
                      tx.value.to_decimal() + "\",\"gas_used\":" + std::to_string(tx.gas_used) +
                      ",\"gas_price_wei\":\"" + tx.gas_price.to_decimal() + "\"}";
    return out;
}

void export_files(const ChainStore& store, const std::filesystem::path& blocks_path,
                  const std::filesystem::path& txs_path) {
    std::ofstream blocks(blocks_path, std::ios::trunc);
    std::ofstream txs(txs_path, std::ios::trunc);
    if (!blocks || !txs) throw RuntimeFailure("cannot create export files");
    for (const auto& b : store.blocks()) blocks << to_ndjson(b) << '\n';
    constexpr std::size_t kChunk = 1 << 15;
    std::vector<TxRecord> buf;
    for (std::size_t row = 0; row < store.tx_count(); row += kChunk) {
        buf.clear();
        store.read_rows(row, kChunk, buf);
        for (const auto& tx : buf) txs << to_ndjson(tx) << '\n';
    }
    if (!blocks || !txs) throw RuntimeFailure("write error during export");
}

ChainStore fetch_rpc(const std::string& endpoint, uint64_t start, uint64_t end, unsigned batch,
                     const RpcOptions& options) {
    if (start > end) throw DataError("fetch range start must not exceed end");
    if (batch == 0) throw DataError("batch size must be positive");
    const Endpoint ep = split_endpoint(endpoint);
    httplib::Client client{ep.scheme_host_port};
    if (!client.is_valid()) throw NetworkError("unsupported endpoint: " + endpoint);
    client.set_connection_timeout(options.timeout);
    client.set_read_timeout(options.timeout);
    client.set_keep_alive(true);

    StoreBuilder builder{options.spill_path};
    for (uint64_t lo = start; lo <= end;) {
        const uint64_t hi = std::min<uint64_t>(end, lo + batch - 1);
        json request = json::array();
        for (uint64_t n = lo; n <= hi; ++n) {
            request.push_back({{"jsonrpc", "2.0"},
                               {"id", n},
                               {"method", "eth_getBlockByNumber"},
                               {"params", json::array({to_hex(n), true})}});
        }
        const std::string body = request.dump();

        std::map<uint64_t, json> results;
        std::optional<uint64_t> missing;
        std::string last_failure;
        for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
            if (attempt > 0) std::this_thread::sleep_for(options.base_delay * (1 << (attempt - 1)));
            missing.reset();
            auto res = client.Post(ep.path, body, "application/json");
            if (!res) {
                last_failure = "cannot reach " + endpoint + ": " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 429 || res->status >= 500) {
                last_failure = "HTTP " + std::to_string(res->status) + " from " + endpoint;
                continue;
            }
            if (res->status != 200) throw NetworkError("HTTP " + std::to_string(res->status) + " from " + endpoint);
            json reply = json::parse(res->body, nullptr, false);
            if (reply.is_discarded()) throw MalformedResponse("response body is not JSON");
            if (reply.is_object()) reply = json::array({reply});
            if (!reply.is_array()) throw MalformedResponse("response is neither an object nor a batch");
            for (json& item : reply) {
                if (!item.is_object() || !item.contains("id") || !item["id"].is_number_unsigned()) {
                    throw MalformedResponse("response item without a numeric id");
                }
                const auto id = item["id"].get<uint64_t>();
                if (item.contains("error")) continue;  // retried below as missing
                if (item.contains("result") && !item["result"].is_null()) results[id] = std::move(item["result"]);
            }
            for (uint64_t n = lo; n <= hi; ++n) {
                if (!results.contains(n)) {
                    missing = n;
                    break;
                }
            }
            if (!missing) break;
            last_failure.clear();
        }
        if (results.size() < hi - lo + 1) {
            if (missing) throw MissingBlock(*missing);
            throw NetworkError(last_failure);
        }
        for (uint64_t n = lo; n <= hi; ++n) {
            block_from_rpc(results.at(n), n, builder);
        }
        lo = hi + 1;
        if (hi == std::numeric_limits<uint64_t>::max()) break;
    }
    return builder.finish();
}

}  // namespace bribescan
