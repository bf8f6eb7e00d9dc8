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
#include <stdexcept>
#include <string>

namespace bribescan {

//! Problems with the input data or with a precondition the data fails to meet.
//! The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

//! Environment failures (I/O, network). The CLI maps these to exit code 3.
class RuntimeFailure : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class MalformedLine : public DataError {
  public:
    MalformedLine(std::string path, std::size_t line_no, const std::string& reason)
        : DataError(path + ":" + std::to_string(line_no) + ": malformed line: " + reason),
          path_{std::move(path)},
          line_no_{line_no} {}

    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[nodiscard]] std::size_t line_no() const noexcept { return line_no_; }

  private:
    std::string path_;
    std::size_t line_no_;
};

class SchemaMismatch : public DataError {
  public:
    explicit SchemaMismatch(std::string field, const std::string& detail = {})
        : DataError("schema mismatch on '" + field + "'" + (detail.empty() ? "" : ": " + detail)),
          field_{std::move(field)} {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

class InsufficientHistory : public DataError {
  public:
    InsufficientHistory(uint64_t needed_block, uint64_t first_available)
        : DataError("insufficient history: block " + std::to_string(needed_block) +
                    " is required but the store starts at block " + std::to_string(first_available)),
          needed_block_{needed_block} {}

    [[nodiscard]] uint64_t needed_block() const noexcept { return needed_block_; }

  private:
    uint64_t needed_block_;
};

class NonContiguousAdvance : public DataError {
  public:
    NonContiguousAdvance(uint64_t expected, uint64_t got)
        : DataError("window advance expected block " + std::to_string(expected) + " but got " +
                    std::to_string(got)) {}
};

class NegativeBlockGap : public DataError {
  public:
    NegativeBlockGap(uint64_t payment_block, uint64_t traced_block)
        : DataError("trace link at block " + std::to_string(traced_block) +
                    " does not precede its payment at block " + std::to_string(payment_block)) {}
};

class UnknownBlock : public DataError {
  public:
    explicit UnknownBlock(uint64_t block) : DataError("block " + std::to_string(block) + " is not in the store") {}
};

class MissingBlock : public RuntimeFailure {
  public:
    explicit MissingBlock(uint64_t block)
        : RuntimeFailure("node did not return block " + std::to_string(block)), block_{block} {}

    [[nodiscard]] uint64_t block() const noexcept { return block_; }

  private:
    uint64_t block_;
};

class NetworkError : public RuntimeFailure {
  public:
    using RuntimeFailure::RuntimeFailure;
};

class MalformedResponse : public RuntimeFailure {
  public:
    using RuntimeFailure::RuntimeFailure;
};

class MissingColumn : public DataError {
  public:
    explicit MissingColumn(const std::string& name) : DataError("missing column '" + name + "'") {}
};

class NoOverlap : public DataError {
  public:
    NoOverlap() : DataError("no dates in common between proxies and factors") {}
};

class RankDeficient : public DataError {
  public:
    RankDeficient() : DataError("design matrix is rank deficient") {}
};

class TooFewRows : public DataError {
  public:
    TooFewRows(std::size_t rows, std::size_t params)
        : DataError("regression needs more rows than parameters (" + std::to_string(rows) +
                    " rows, " + std::to_string(params) + " parameters)") {}
};

class EmptyInput : public DataError {
  public:
    EmptyInput() : DataError("empty input") {}
};

}  // namespace bribescan
