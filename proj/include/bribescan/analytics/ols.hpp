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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <bribescan/analytics/panel.hpp>

namespace bribescan::analytics {

struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd residuals;
    std::size_t n{0};
    std::size_t p{0};  // regressors excluding the intercept
    double r2{0.0};
    double adj_r2{0.0};
};

//! Least squares through a column-pivoted Householder QR with classical
//! (homoskedastic) standard errors. `x` must contain the intercept column.
//! Throws TooFewRows unless rows > columns, RankDeficient on a collinear design.
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x);

struct RegressionResult {
    std::vector<std::string> terms;  // "const", "bribing", controls..., "post", "post_x_bribing"
    std::vector<double> coefficients;
    std::vector<double> t_stats;
    std::size_t n{0};
    double r2{0.0};
    double adj_r2{0.0};

    [[nodiscard]] std::optional<double> coefficient(const std::string& term) const;
    [[nodiscard]] std::optional<double> t_stat(const std::string& term) const;
};

//! Design: intercept, bribing, the panel's controls (when `with_controls`),
//! post, and post x bribing.
RegressionResult regress_panel(const Panel& panel, bool with_controls);

}  // namespace bribescan::analytics
