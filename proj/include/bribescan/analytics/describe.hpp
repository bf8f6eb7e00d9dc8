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

#include <cstddef>
#include <span>

namespace bribescan::analytics {

struct Summary {
    std::size_t n{0};
    double mean{0.0};
    double median{0.0};
    double max{0.0};
    double min{0.0};
    double std{0.0};  // sample (n - 1) standard deviation
    //! True when n < 2, in which case std is reported as 0.
    bool degenerate{false};
};

//! Throws EmptyInput on an empty sample. Even-sized samples use the midpoint median.
Summary describe_values(std::span<const double> xs);

}  // namespace bribescan::analytics
