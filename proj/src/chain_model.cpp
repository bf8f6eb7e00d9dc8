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

#include <bribescan/chain_model.hpp>

#include <algorithm>
#include <cstdio>
#include <iterator>
#include <limits>
#include <vector>
#include <stdexcept>

#include <bribescan/errors.hpp>

namespace bribescan {

namespace {

    int hex_value(char c) noexcept {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    }

    bool has_hex_prefix(std::string_view s) noexcept {
        return s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X');
    }

}  // namespace

namespace detail {

    template <std::size_t N>
    std::optional<FixedBytes<N>> FixedBytes<N>::try_parse(std::string_view text) noexcept {
        if (!has_hex_prefix(text)) return std::nullopt;
        text.remove_prefix(2);
        if (text.size() != 2 * N) return std::nullopt;
        FixedBytes out;
        for (std::size_t i = 0; i < N; ++i) {
            const int hi = hex_value(text[2 * i]);
            const int lo = hex_value(text[2 * i + 1]);
            if (hi < 0 || lo < 0) return std::nullopt;
            out.bytes[i] = static_cast<uint8_t>((hi << 4) | lo);
        }
        return out;
    }

    template <std::size_t N>
    FixedBytes<N> FixedBytes<N>::parse(std::string_view text) {
        auto parsed = try_parse(text);
        if (!parsed) {
            throw DataError("expected 0x followed by " + std::to_string(2 * N) + " hex digits, got '" +
                            std::string{text} + "'");
        }
        return *parsed;
    }

    template <std::size_t N>
    std::string FixedBytes<N>::to_string() const {
        static constexpr char kDigits[] = "0123456789abcdef";
        std::string out(2 + 2 * N, '0');
        out[1] = 'x';
        for (std::size_t i = 0; i < N; ++i) {
            out[2 + 2 * i] = kDigits[bytes[i] >> 4];
            out[3 + 2 * i] = kDigits[bytes[i] & 0x0f];
        }
        return out;
    }

    template struct FixedBytes<20>;
    template struct FixedBytes<32>;

}  // namespace detail

WeiAmount WeiAmount::from_decimal(std::string_view text) {
    if (text.empty() || text.size() > 78) throw DataError("invalid decimal Wei amount '" + std::string{text} + "'");
    Storage acc{0};
    Storage prev{0};
    for (char c : text) {
        if (c < '0' || c > '9') throw DataError("invalid decimal Wei amount '" + std::string{text} + "'");
        prev = acc;
        acc = acc * 10 + static_cast<unsigned>(c - '0');
        if (acc / 10 != prev) throw DataError("Wei amount overflows 256 bits: " + std::string{text});
    }
    return WeiAmount{acc};
}

WeiAmount WeiAmount::from_hex_quantity(std::string_view text) {
    if (!has_hex_prefix(text)) throw DataError("hex quantity must start with 0x: '" + std::string{text} + "'");
    text.remove_prefix(2);
    if (text.empty() || text.size() > 64) throw DataError("invalid hex quantity");
    Storage acc{0};
    for (char c : text) {
        const int v = hex_value(c);
        if (v < 0) throw DataError("invalid hex digit in quantity");
        acc = (acc << 4) | static_cast<unsigned>(v);
    }
    return WeiAmount{acc};
}

WeiAmount WeiAmount::from_eth(uint64_t whole_eth) { return WeiAmount{Storage{whole_eth} * kWeiPerEth}; }

std::string WeiAmount::to_decimal() const { return value_.str(); }

std::array<uint8_t, 32> WeiAmount::to_bytes() const {
    std::array<uint8_t, 32> out{};
    if (value_ == 0) return out;
    std::vector<uint8_t> minimal;
    minimal.reserve(32);
    boost::multiprecision::export_bits(value_, std::back_inserter(minimal), 8, true);
    std::copy(minimal.begin(), minimal.end(), out.end() - static_cast<std::ptrdiff_t>(minimal.size()));
    return out;
}

WeiAmount WeiAmount::from_bytes(const std::array<uint8_t, 32>& be) {
    Storage v;
    boost::multiprecision::import_bits(v, be.begin(), be.end(), 8, true);
    return WeiAmount{v};
}

double wei_to_eth(const WeiAmount& w) {
    const auto& v = w.raw();
    if (v <= std::numeric_limits<uint64_t>::max()) {
        const auto small = v.convert_to<uint64_t>();
        return static_cast<double>(small / kWeiPerEth) + static_cast<double>(small % kWeiPerEth) / 1e18;
    }
    const WeiAmount::Storage whole = v / kWeiPerEth;
    const WeiAmount::Storage frac = v % kWeiPerEth;
    return whole.convert_to<double>() + static_cast<double>(frac.convert_to<uint64_t>()) / 1e18;
}

CalendarDate::CalendarDate(int year, unsigned month, unsigned day) {
    const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) throw DataError("invalid calendar date");
    days_ = std::chrono::sys_days{ymd};
}

std::optional<CalendarDate> CalendarDate::try_parse(std::string_view text) noexcept {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len) -> int {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (text[i] < '0' || text[i] > '9') return -1;
            v = v * 10 + (text[i] - '0');
        }
        return v;
    };
    const int y = digits(0, 4);
    const int m = digits(5, 2);
    const int d = digits(8, 2);
    if (y < 0 || m < 0 || d < 0) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return CalendarDate{std::chrono::sys_days{ymd}};
}

CalendarDate CalendarDate::parse(std::string_view text) {
    auto d = try_parse(text);
    if (!d) throw DataError("expected a YYYY-MM-DD date, got '" + std::string{text} + "'");
    return *d;
}

CalendarDate CalendarDate::from_unix_seconds(uint64_t ts) {
    const std::chrono::sys_seconds s{std::chrono::seconds{static_cast<int64_t>(ts)}};
    return CalendarDate{std::chrono::floor<std::chrono::days>(s)};
}

std::string CalendarDate::to_string() const {
    const std::chrono::year_month_day ymd{days_};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

CalendarDate block_date(const BlockRecord& b) { return CalendarDate::from_unix_seconds(b.timestamp); }

}  // namespace bribescan
