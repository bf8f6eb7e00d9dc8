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

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>

#include <httplib.h>

#include "chains.hpp"

namespace bribescan::test {

//! In-process JSON-RPC node answering eth_getBlockByNumber from canned chain data.
class RpcMock {
  public:
    explicit RpcMock(ChainData data);
    ~RpcMock();
    RpcMock(const RpcMock&) = delete;
    RpcMock& operator=(const RpcMock&) = delete;

    [[nodiscard]] std::string url() const;

    //! The next `n` requests get HTTP 503.
    void fail_next(int n) { failures_ = n; }
    //! Block `n` is always answered with a null result.
    void null_block(uint64_t n) { null_block_ = n; }
    [[nodiscard]] int requests() const { return requests_; }

  private:
    std::string handle(const std::string& body);

    ChainData data_;
    httplib::Server server_;
    int port_{0};
    std::thread thread_;
    std::atomic<int> failures_{0};
    std::atomic<int> requests_{0};
    std::optional<uint64_t> null_block_;
};

}  // namespace bribescan::test
