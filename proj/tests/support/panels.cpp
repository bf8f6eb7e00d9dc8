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

#include "panels.hpp"

#include <random>

namespace bribescan::test {

PlantedPanel planted_panel(std::size_t days, const std::vector<double>& beta, double g1, double g2, double noise,
                           uint64_t seed) {
    std::mt19937_64 rng{seed};
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> proxy{0.0, 5000.0};

    PlantedPanel out;
    out.factors.columns = {"y", "x1", "x2"};
    CalendarDate date{kLondonForkDate.days() - std::chrono::days{static_cast<int>(days / 2)}};
    for (std::size_t i = 0; i < days; ++i, date = date.next()) {
        DailyProxies d;
        d.date = date;
        d.a = proxy(rng);
        d.b = d.a * 0.5 * (1.0 + std::uniform_real_distribution<double>{}(rng));
        d.benchmark = d.a * 0.25 + proxy(rng) * 0.01;
        d.block_count = 6000;
        out.daily.push_back(d);

        const double post = date >= kLondonForkDate ? 1.0 : 0.0;
        const double x1 = normal(rng) * 3.0 + 1.0;
        const double x2 = normal(rng) * 0.5 - 2.0;
        const double y = beta[0] + beta[1] * d.a + beta[2] * post + beta[3] * post * d.a + g1 * x1 + g2 * x2 +
                         noise * normal(rng);
        out.factors.rows.emplace(date, std::vector<std::optional<double>>{y, x1, x2});
    }
    return out;
}

}  // namespace bribescan::test
