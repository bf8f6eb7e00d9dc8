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

#include <bribescan/analytics/ols.hpp>

#include <algorithm>
#include <cmath>

#include <bribescan/errors.hpp>

namespace bribescan::analytics {

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& x) {
    const auto n = static_cast<std::size_t>(x.rows());
    const auto k = static_cast<std::size_t>(x.cols());
    if (y.size() != x.rows()) throw DataError("response and design have different row counts");
    if (k == 0 || n <= k) throw TooFewRows(n, k);

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr{x};
    if (static_cast<std::size_t>(qr.rank()) < k) throw RankDeficient();

    OlsFit fit;
    fit.n = n;
    fit.p = k - 1;
    fit.coefficients = qr.solve(y);
    fit.residuals = y - x * fit.coefficients;

    const double rss = fit.residuals.squaredNorm();
    const double tss = (y.array() - y.mean()).matrix().squaredNorm();
    const double dof = static_cast<double>(n - k);
    const double sigma2 = rss / dof;

    // (X'X)^-1 = P R^-1 R^-T P'
    const auto kk = static_cast<Eigen::Index>(k);
    const Eigen::MatrixXd r = qr.matrixR().topLeftCorner(kk, kk).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv = r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(kk, kk));
    const Eigen::MatrixXd m = r_inv * r_inv.transpose();
    const auto& perm = qr.colsPermutation().indices();
    fit.std_errors.resize(kk);
    for (Eigen::Index j = 0; j < kk; ++j) fit.std_errors[perm[j]] = std::sqrt(sigma2 * m(j, j));
    fit.t_stats = fit.coefficients.array() / fit.std_errors.array();

    fit.r2 = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
    fit.adj_r2 = 1.0 - (1.0 - fit.r2) * static_cast<double>(n - 1) / dof;
    return fit;
}

std::optional<double> RegressionResult::coefficient(const std::string& term) const {
    const auto it = std::find(terms.begin(), terms.end(), term);
    if (it == terms.end()) return std::nullopt;
    return coefficients[static_cast<std::size_t>(it - terms.begin())];
}

std::optional<double> RegressionResult::t_stat(const std::string& term) const {
    const auto it = std::find(terms.begin(), terms.end(), term);
    if (it == terms.end()) return std::nullopt;
    return t_stats[static_cast<std::size_t>(it - terms.begin())];
}

RegressionResult regress_panel(const Panel& panel, bool with_controls) {
    RegressionResult out;
    out.terms.emplace_back("const");
    out.terms.emplace_back("bribing");
    if (with_controls) out.terms.insert(out.terms.end(), panel.control_names.begin(), panel.control_names.end());
    out.terms.emplace_back("post");
    out.terms.emplace_back("post_x_bribing");

    const auto n = static_cast<Eigen::Index>(panel.rows.size());
    const auto k = static_cast<Eigen::Index>(out.terms.size());
    Eigen::MatrixXd x(n, k);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = panel.rows[static_cast<std::size_t>(i)];
        Eigen::Index c = 0;
        x(i, c++) = 1.0;
        x(i, c++) = row.bribing;
        if (with_controls) {
            for (double v : row.controls) x(i, c++) = v;
        }
        x(i, c++) = row.post;
        x(i, c++) = row.post * row.bribing;
        y[i] = row.dependent;
    }

    const OlsFit fit = ols(y, x);
    out.coefficients.assign(fit.coefficients.data(), fit.coefficients.data() + k);
    out.t_stats.assign(fit.t_stats.data(), fit.t_stats.data() + k);
    out.n = fit.n;
    out.r2 = fit.r2;
    out.adj_r2 = fit.adj_r2;
    return out;
}

}  // namespace bribescan::analytics
