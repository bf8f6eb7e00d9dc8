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

#include <bribescan/store.hpp>

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <system_error>

#include <bribescan/errors.hpp>

namespace bribescan {

namespace {

    constexpr std::size_t kRecordSize = 160;
    using RecordBytes = std::array<uint8_t, kRecordSize>;

    template <typename T>
    void put(RecordBytes& r, std::size_t off, T v) {
        std::memcpy(r.data() + off, &v, sizeof(T));
    }

    template <typename T>
    T get(const uint8_t* r, std::size_t off) {
        T v;
        std::memcpy(&v, r + off, sizeof(T));
        return v;
    }

    // Layout: block u64 | index u32 | has_to u8 | pad(3) | hash[32] | from[20] | to[20]
    //         | value[32] | gas_used u64 | gas_price[32]
    RecordBytes encode(const TxRecord& tx) {
        RecordBytes r{};
        put(r, 0, tx.block_number);
        put(r, 8, tx.tx_index);
        r[12] = tx.to ? 1 : 0;
        std::memcpy(r.data() + 16, tx.tx_hash.bytes.data(), 32);
        std::memcpy(r.data() + 48, tx.from.bytes.data(), 20);
        if (tx.to) std::memcpy(r.data() + 68, tx.to->bytes.data(), 20);
        const auto value = tx.value.to_bytes();
        std::memcpy(r.data() + 88, value.data(), 32);
        put(r, 120, tx.gas_used);
        const auto price = tx.gas_price.to_bytes();
        std::memcpy(r.data() + 128, price.data(), 32);
        return r;
    }

    TxRecord decode(const uint8_t* r) {
        TxRecord tx;
        tx.block_number = get<uint64_t>(r, 0);
        tx.tx_index = get<uint32_t>(r, 8);
        std::memcpy(tx.tx_hash.bytes.data(), r + 16, 32);
        std::memcpy(tx.from.bytes.data(), r + 48, 20);
        if (r[12] != 0) {
            Address to;
            std::memcpy(to.bytes.data(), r + 68, 20);
            tx.to = to;
        }
        std::array<uint8_t, 32> buf{};
        std::memcpy(buf.data(), r + 88, 32);
        tx.value = WeiAmount::from_bytes(buf);
        tx.gas_used = get<uint64_t>(r, 120);
        std::memcpy(buf.data(), r + 128, 32);
        tx.gas_price = WeiAmount::from_bytes(buf);
        return tx;
    }

    bool key_less(const TxRecord& a, const TxRecord& b) {
        return std::tie(a.block_number, a.tx_index) < std::tie(b.block_number, b.tx_index);
    }

    class MemoryTxSegment final : public TxSegment {
      public:
        explicit MemoryTxSegment(std::vector<TxRecord> rows) : rows_{std::move(rows)} {}

        std::size_t size() const override { return rows_.size(); }

        void read(std::size_t first, std::size_t count, std::vector<TxRecord>& out) const override {
            const auto begin = rows_.begin() + static_cast<std::ptrdiff_t>(std::min(first, rows_.size()));
            const auto end = rows_.begin() + static_cast<std::ptrdiff_t>(std::min(first + count, rows_.size()));
            out.insert(out.end(), begin, end);
        }

      private:
        std::vector<TxRecord> rows_;
    };

    class FileTxSegment final : public TxSegment {
      public:
        FileTxSegment(const std::filesystem::path& path, std::size_t rows) : rows_{rows} {
            fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
            if (fd_ < 0) throw RuntimeFailure("cannot open segment " + path.string() + ": " + std::strerror(errno));
            // scratch storage: the file lives as long as the descriptor
            ::unlink(path.c_str());
        }
        ~FileTxSegment() override { ::close(fd_); }
        FileTxSegment(const FileTxSegment&) = delete;
        FileTxSegment& operator=(const FileTxSegment&) = delete;

        std::size_t size() const override { return rows_; }

        void read(std::size_t first, std::size_t count, std::vector<TxRecord>& out) const override {
            if (first >= rows_) return;
            count = std::min(count, rows_ - first);
            constexpr std::size_t kChunkRows = 4096;
            std::vector<uint8_t> buf(std::min(count, kChunkRows) * kRecordSize);
            out.reserve(out.size() + count);
            while (count > 0) {
                const std::size_t n = std::min(count, kChunkRows);
                read_exact(buf.data(), n * kRecordSize, static_cast<off_t>(first * kRecordSize));
                for (std::size_t i = 0; i < n; ++i) out.push_back(decode(buf.data() + i * kRecordSize));
                first += n;
                count -= n;
            }
        }

      private:
        void read_exact(uint8_t* dst, std::size_t len, off_t off) const {
            while (len > 0) {
                const ssize_t got = ::pread(fd_, dst, len, off);
                if (got < 0 && errno == EINTR) continue;
                if (got <= 0) throw RuntimeFailure("short read from transaction segment");
                dst += got;
                len -= static_cast<std::size_t>(got);
                off += got;
            }
        }

        int fd_{-1};
        std::size_t rows_;
    };

    // Consumes (block, index) keys in sorted order.
    class KeyValidator {
      public:
        explicit KeyValidator(std::span<const BlockRecord> blocks) : blocks_{blocks}, seen_(blocks.size(), 0) {}

        void feed(uint64_t block, uint32_t index) {
            if (have_prev_ && prev_block_ == block && prev_index_ == index) ++report_.duplicates;
            have_prev_ = true;
            prev_block_ = block;
            prev_index_ = index;
            const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), block,
                                             [](const BlockRecord& b, uint64_t n) { return b.block_number < n; });
            if (it == blocks_.end() || it->block_number != block) {
                ++report_.orphan_txs;
            } else {
                ++seen_[static_cast<std::size_t>(it - blocks_.begin())];
            }
        }

        ValidationReport finish() {
            for (std::size_t i = 0; i < blocks_.size(); ++i) {
                if (i > 0) {
                    const uint64_t prev = blocks_[i - 1].block_number;
                    const uint64_t cur = blocks_[i].block_number;
                    if (cur == prev) {
                        ++report_.duplicates;
                        continue;
                    }
                    for (uint64_t n = prev + 1; n < cur; ++n) report_.gaps.push_back(n);
                }
                if (seen_[i] != blocks_[i].tx_count) ++report_.tx_count_mismatches;
            }
            report_.ok = report_.gaps.empty() && report_.duplicates == 0 && report_.orphan_txs == 0 &&
                         report_.tx_count_mismatches == 0;
            return std::move(report_);
        }

      private:
        std::span<const BlockRecord> blocks_;
        std::vector<uint64_t> seen_;
        ValidationReport report_;
        bool have_prev_{false};
        uint64_t prev_block_{0};
        uint32_t prev_index_{0};
    };

    void sort_blocks(std::vector<BlockRecord>& blocks) {
        std::stable_sort(blocks.begin(), blocks.end(),
                         [](const BlockRecord& a, const BlockRecord& b) { return a.block_number < b.block_number; });
    }

    void reject_if_invalid(const ValidationReport& r) {
        if (r.ok) return;
        if (r.orphan_txs > 0) {
            throw SchemaMismatch("block_number", std::to_string(r.orphan_txs) + " transaction(s) reference unknown blocks");
        }
        if (r.duplicates > 0) {
            throw SchemaMismatch("tx_index", std::to_string(r.duplicates) + " duplicate (block_number, tx_index) row(s)");
        }
        if (!r.gaps.empty()) {
            throw SchemaMismatch("block_number", "block range has a gap at " + std::to_string(r.gaps.front()));
        }
        throw SchemaMismatch("tx_count", std::to_string(r.tx_count_mismatches) +
                                             " block(s) whose tx_count disagrees with the transactions");
    }

}  // namespace

ChainStore::ChainStore(std::vector<BlockRecord> blocks, std::shared_ptr<const TxSegment> segment,
                       std::span<const uint64_t> row_blocks)
    : blocks_{std::move(blocks)}, segment_{std::move(segment)} {
    rows_.reserve(blocks_.size());
    for (const auto& b : blocks_) {
        const auto [lo, hi] = std::equal_range(row_blocks.begin(), row_blocks.end(), b.block_number);
        rows_.emplace_back(static_cast<uint64_t>(lo - row_blocks.begin()), static_cast<uint64_t>(hi - row_blocks.begin()));
    }
}

ChainStore ChainStore::from_records(std::vector<BlockRecord> blocks, std::vector<TxRecord> txs) {
    sort_blocks(blocks);
    std::stable_sort(txs.begin(), txs.end(), key_less);
    std::vector<uint64_t> row_blocks;
    row_blocks.reserve(txs.size());
    for (const auto& tx : txs) row_blocks.push_back(tx.block_number);
    auto segment = std::make_shared<MemoryTxSegment>(std::move(txs));
    return ChainStore{std::move(blocks), std::move(segment), row_blocks};
}

uint64_t ChainStore::first_block() const {
    if (blocks_.empty()) throw DataError("store is empty");
    return blocks_.front().block_number;
}

uint64_t ChainStore::last_block() const {
    if (blocks_.empty()) throw DataError("store is empty");
    return blocks_.back().block_number;
}

const BlockRecord* ChainStore::find_block(uint64_t number) const noexcept {
    const auto it = std::lower_bound(blocks_.begin(), blocks_.end(), number,
                                     [](const BlockRecord& b, uint64_t n) { return b.block_number < n; });
    if (it == blocks_.end() || it->block_number != number) return nullptr;
    return &*it;
}

const BlockRecord& ChainStore::block(uint64_t number) const {
    const BlockRecord* b = find_block(number);
    if (b == nullptr) throw UnknownBlock(number);
    return *b;
}

bool ChainStore::covers(uint64_t lo, uint64_t hi) const noexcept {
    return !blocks_.empty() && lo <= hi && blocks_.front().block_number <= lo && hi <= blocks_.back().block_number;
}

std::pair<std::size_t, std::size_t> ChainStore::row_span(uint64_t lo, uint64_t hi) const {
    const auto by_number = [](const BlockRecord& b, uint64_t n) { return b.block_number < n; };
    const auto first = std::lower_bound(blocks_.begin(), blocks_.end(), lo, by_number);
    const auto last = std::lower_bound(first, blocks_.end(), hi + 1, by_number);
    if (first == last) return {0, 0};
    const auto fi = static_cast<std::size_t>(first - blocks_.begin());
    const auto li = static_cast<std::size_t>(last - blocks_.begin()) - 1;
    return {rows_[fi].first, rows_[li].second};
}

std::vector<TxRecord> ChainStore::block_txs(uint64_t number) const {
    std::vector<TxRecord> out;
    read_block_range(number, number, out);
    return out;
}

void ChainStore::read_block_range(uint64_t lo, uint64_t hi, std::vector<TxRecord>& out) const {
    if (!segment_ || lo > hi) return;
    const auto [begin, end] = row_span(lo, hi);
    if (end > begin) segment_->read(begin, end - begin, out);
}

void ChainStore::read_rows(std::size_t first, std::size_t count, std::vector<TxRecord>& out) const {
    if (segment_) segment_->read(first, count, out);
}

ValidationReport validate_store(const ChainStore& store) {
    KeyValidator v{store.blocks()};
    constexpr std::size_t kChunk = 1 << 16;
    std::vector<TxRecord> buf;
    for (std::size_t row = 0; row < store.tx_count(); row += kChunk) {
        buf.clear();
        store.read_rows(row, kChunk, buf);
        for (const auto& tx : buf) v.feed(tx.block_number, tx.tx_index);
    }
    return v.finish();
}

struct StoreBuilder::Impl {
    struct Key {
        uint64_t block;
        uint32_t index;
        uint32_t pad{0};
        uint64_t row;
    };

    std::optional<std::filesystem::path> spill;
    std::vector<BlockRecord> blocks;
    std::vector<TxRecord> txs;
    std::vector<Key> keys;
    std::ofstream out;
    bool finished{false};
};

StoreBuilder::StoreBuilder(std::optional<std::filesystem::path> spill_path) : impl_{std::make_unique<Impl>()} {
    impl_->spill = std::move(spill_path);
    if (impl_->spill) {
        if (impl_->spill->has_parent_path()) std::filesystem::create_directories(impl_->spill->parent_path());
        impl_->out.open(*impl_->spill, std::ios::binary | std::ios::trunc);
        if (!impl_->out) throw RuntimeFailure("cannot create segment file " + impl_->spill->string());
    }
}

StoreBuilder::~StoreBuilder() {
    if (impl_ && impl_->spill && !impl_->finished) {
        impl_->out.close();
        std::error_code ec;
        std::filesystem::remove(*impl_->spill, ec);
    }
}

void StoreBuilder::add_block(BlockRecord b) { impl_->blocks.push_back(std::move(b)); }

void StoreBuilder::add_tx(const TxRecord& tx) {
    if (!impl_->spill) {
        impl_->txs.push_back(tx);
        return;
    }
    const auto bytes = encode(tx);
    impl_->out.write(reinterpret_cast<const char*>(bytes.data()), kRecordSize);
    impl_->keys.push_back({tx.block_number, tx.tx_index, 0, impl_->keys.size()});
}

ChainStore StoreBuilder::finish() {
    auto& im = *impl_;
    im.finished = true;
    sort_blocks(im.blocks);

    if (!im.spill) {
        ChainStore store = ChainStore::from_records(std::move(im.blocks), std::move(im.txs));
        reject_if_invalid(validate_store(store));
        return store;
    }

    im.out.close();
    if (!im.out) throw RuntimeFailure("failed writing segment file " + im.spill->string());

    const auto key_less = [](const Impl::Key& a, const Impl::Key& b) {
        return std::tie(a.block, a.index) < std::tie(b.block, b.index);
    };
    if (!std::is_sorted(im.keys.begin(), im.keys.end(), key_less)) {
        std::stable_sort(im.keys.begin(), im.keys.end(), key_less);
        // rewrite the segment in key order
        const auto sorted_path = std::filesystem::path{im.spill->string() + ".sorted"};
        {
            std::ifstream in(*im.spill, std::ios::binary);
            std::ofstream out(sorted_path, std::ios::binary | std::ios::trunc);
            RecordBytes rec{};
            for (const auto& k : im.keys) {
                in.seekg(static_cast<std::streamoff>(k.row * kRecordSize));
                in.read(reinterpret_cast<char*>(rec.data()), kRecordSize);
                out.write(reinterpret_cast<const char*>(rec.data()), kRecordSize);
            }
            if (!in || !out) throw RuntimeFailure("failed sorting segment file " + im.spill->string());
        }
        std::filesystem::rename(sorted_path, *im.spill);
    }

    KeyValidator v{im.blocks};
    std::vector<uint64_t> row_blocks;
    row_blocks.reserve(im.keys.size());
    for (const auto& k : im.keys) {
        v.feed(k.block, k.index);
        row_blocks.push_back(k.block);
    }
    const std::size_t rows = im.keys.size();
    std::vector<Impl::Key>().swap(im.keys);
    auto report = v.finish();
    if (!report.ok) {
        std::error_code ec;
        std::filesystem::remove(*im.spill, ec);
        reject_if_invalid(report);
    }
    auto segment = std::make_shared<FileTxSegment>(*im.spill, rows);
    return ChainStore{std::move(im.blocks), std::move(segment), row_blocks};
}

}  // namespace bribescan
