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

#include <array>
#include <chrono>
#include <compare>
#include <cstring>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bribescan {

namespace detail {
    template <std::size_t N>
    struct FixedBytes {
        std::array<uint8_t, N> bytes{};

        auto operator<=>(const FixedBytes&) const = default;

        //! Parses exactly 2*N hex digits with a 0x prefix, either case.
        static FixedBytes parse(std::string_view text);
        static std::optional<FixedBytes> try_parse(std::string_view text) noexcept;
        //! Lowercase, 0x-prefixed.
        [[nodiscard]] std::string to_string() const;
    };

    extern template struct FixedBytes<20>;
    extern template struct FixedBytes<32>;
}  // namespace detail

//! 20-byte account identifier. Canonical form is 0x followed by 40 lowercase hex digits.
struct Address : detail::FixedBytes<20> {
    Address() = default;
    explicit Address(const detail::FixedBytes<20>& b) : detail::FixedBytes<20>{b} {}
    auto operator<=>(const Address&) const = default;

    static Address parse(std::string_view text) { return Address{FixedBytes::parse(text)}; }
};

struct TxHash : detail::FixedBytes<32> {
    TxHash() = default;
    explicit TxHash(const detail::FixedBytes<32>& b) : detail::FixedBytes<32>{b} {}
    auto operator<=>(const TxHash&) const = default;

    static TxHash parse(std::string_view text) { return TxHash{FixedBytes::parse(text)}; }
};

//! Ether amount in Wei, unsigned 256-bit.
class WeiAmount {
  public:
    using Storage = boost::multiprecision::uint256_t;

    WeiAmount() = default;
    explicit WeiAmount(Storage v) : value_{std::move(v)} {}
    explicit WeiAmount(uint64_t v) : value_{v} {}

    static WeiAmount from_decimal(std::string_view text);
    //! Node-style hex quantity, e.g. "0x8ac7230489e80000".
    static WeiAmount from_hex_quantity(std::string_view text);
    static WeiAmount from_eth(uint64_t whole_eth);

    [[nodiscard]] std::string to_decimal() const;
    [[nodiscard]] const Storage& raw() const noexcept { return value_; }

    //! Big-endian 32-byte image.
    [[nodiscard]] std::array<uint8_t, 32> to_bytes() const;
    static WeiAmount from_bytes(const std::array<uint8_t, 32>& be);

    friend bool operator==(const WeiAmount&, const WeiAmount&) = default;
    friend std::strong_ordering operator<=>(const WeiAmount& a, const WeiAmount& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    Storage value_{0};
};

inline constexpr uint64_t kWeiPerEth = 1'000'000'000'000'000'000ULL;

//! w / 10^18 in binary floating point. Exact for whole-ETH multiples up to 2^53.
double wei_to_eth(const WeiAmount& w);

//! UTC calendar day.
class CalendarDate {
  public:
    CalendarDate() = default;
    explicit CalendarDate(std::chrono::sys_days d) : days_{d} {}
    CalendarDate(int year, unsigned month, unsigned day);

    //! Accepts YYYY-MM-DD only.
    static CalendarDate parse(std::string_view text);
    static std::optional<CalendarDate> try_parse(std::string_view text) noexcept;
    static CalendarDate from_unix_seconds(uint64_t ts);

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::chrono::sys_days days() const noexcept { return days_; }
    [[nodiscard]] CalendarDate next() const { return CalendarDate{days_ + std::chrono::days{1}}; }

    auto operator<=>(const CalendarDate&) const = default;

  private:
    std::chrono::sys_days days_{};
};

//! Day on which the London fee-market upgrade activated.
inline const CalendarDate kLondonForkDate{2021, 8, 5};

struct TxRecord {
    uint64_t block_number{0};
    uint32_t tx_index{0};
    TxHash tx_hash;
    Address from;
    std::optional<Address> to;  // absent for contract creation
    WeiAmount value;
    uint64_t gas_used{0};
    WeiAmount gas_price;

    friend bool operator==(const TxRecord&, const TxRecord&) = default;
};

struct BlockRecord {
    uint64_t block_number{0};
    Address miner;
    uint64_t timestamp{0};
    uint32_t tx_count{0};

    friend bool operator==(const BlockRecord&, const BlockRecord&) = default;
};

CalendarDate block_date(const BlockRecord& b);

}  // namespace bribescan

template <>
struct std::hash<bribescan::Address> {
    std::size_t operator()(const bribescan::Address& a) const noexcept {
        uint64_t w[3]{};
        std::memcpy(w, a.bytes.data(), 16);
        std::memcpy(&w[2], a.bytes.data() + 16, 4);
        uint64_t h = w[0] * 0x9e3779b97f4a7c15ULL;
        h = (h ^ (h >> 31) ^ w[1]) * 0xbf58476d1ce4e5b9ULL;
        h = (h ^ (h >> 29) ^ w[2]) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(h ^ (h >> 32));
    }
};
