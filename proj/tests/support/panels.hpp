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

// Synthetic daily proxy series and factor tables for the regression tests.

#include <cstdint>
#include <vector>

#include <bribescan/analytics/panel.hpp>
#include <bribescan/proxies.hpp>

namespace bribescan::test {

struct PlantedPanel {
    std::vector<DailyProxies> daily;
    analytics::FactorTable factors;  // columns: y, x1, x2
};

//! `days` consecutive days starting 2021-08-05 minus days/2, so half are post-fork.
//! y = b0 + b1*A + b2*post + b3*post*A + g1*x1 + g2*x2 + noise*N(0,1).
PlantedPanel planted_panel(std::size_t days, const std::vector<double>& beta, double g1, double g2, double noise,
                           uint64_t seed);

}  // namespace bribescan::test
