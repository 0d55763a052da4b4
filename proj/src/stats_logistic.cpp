#include <cmath>
#include <string>

#include "onoma/errors.hpp"
#include "onoma/stats.hpp"

namespace onoma {
namespace {

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
    Eigen::MatrixXd D(X.rows(), X.cols() + 1);
    D.col(0).setOnes();
    D.rightCols(X.cols()) = X;
    return D;
}

double sigmoid(double eta) {
    if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
    const double e = std::exp(eta);
    return e / (1.0 + e);
}

double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& eta) {
    double ll = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double e = eta[i];
        // y*eta - log(1+exp(eta)), computed on the stable side
        ll += y[i] * e - (e > 0 ? e + std::log1p(std::exp(-e)) : std::log1p(std::exp(e)));
    }
    return ll;
}

std::string column_name(const Sample& s, Eigen::Index design_col) {
    if (design_col == 0) return "(intercept)";
    const auto j = static_cast<std::size_t>(design_col - 1);
    if (j < s.feature_names.size()) return s.feature_names[j];
    return "x" + std::to_string(j);
}

// Solve H d = g, raising a DataError that names the dependent columns when H
// is singular (collinear design).
Eigen::VectorXd solve_information(const Eigen::MatrixXd& H, const Eigen::VectorXd& g,
                                  const Sample& s) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
    lu.setThreshold(1e-10);
    if (lu.rank() < H.rows()) {
        const Eigen::MatrixXd kernel = lu.kernel();
        std::string cols;
        for (Eigen::Index c = 0; c < H.rows(); ++c) {
            if (kernel.row(c).cwiseAbs().maxCoeff() > 1e-8) {
                if (!cols.empty()) cols += ", ";
                cols += column_name(s, c);
            }
        }
        throw DataError("singular information matrix; collinear columns: " + cols);
    }
    return lu.solve(g);
}

}  // namespace

LogisticModel fit_logistic(const Sample& s, double tol, int max_iter) {
    const Eigen::Index n = s.X.rows();
    if (n < 2) throw DataError("fit_logistic: need at least 2 rows");
    if (s.y.size() != n) throw DataError("fit_logistic: X/y row mismatch");
    const double ymean = s.y.mean();
    if (ymean <= 0.0 || ymean >= 1.0)
        throw DataError("fit_logistic: both classes must be present");
    if (!s.X.allFinite()) throw DataError("fit_logistic: non-finite feature values");

    const Eigen::MatrixXd D = with_intercept(s.X);
    const Eigen::Index p = D.cols();
    LogisticModel m;
    m.beta = Eigen::VectorXd::Zero(p);
    Eigen::VectorXd eta = D * m.beta;
    double ll = log_likelihood(s.y, eta);

    for (int iter = 1; iter <= max_iter; ++iter) {
        m.n_iter = iter;
        Eigen::VectorXd mu(n), w(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mu[i] = sigmoid(eta[i]);
            w[i] = mu[i] * (1.0 - mu[i]);
        }
        const Eigen::VectorXd grad = D.transpose() * (s.y - mu);
        if (grad.cwiseAbs().maxCoeff() <= tol) {
            m.converged = true;
            break;
        }
        const Eigen::MatrixXd H = D.transpose() * w.asDiagonal() * D;
        const Eigen::VectorXd step = solve_information(H, grad, s);
        // Newton with step halving.
        double scale = 1.0;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const Eigen::VectorXd cand = m.beta + scale * step;
            const Eigen::VectorXd cand_eta = D * cand;
            const double cand_ll = log_likelihood(s.y, cand_eta);
            if (cand_ll >= ll - 1e-14) {
                m.beta = cand;
                eta = cand_eta;
                ll = cand_ll;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!improved) break;
        if (eta.cwiseAbs().maxCoeff() > 500.0) break;  // heading to infinity
    }
    m.log_lik = ll;
    // Perfect separation: every point on its own side with a huge margin.
    // The gradient also vanishes numerically in that state, so the check
    // must run even when the convergence test fired.
    bool separated = eta.cwiseAbs().minCoeff() > 10.0;
    for (Eigen::Index i = 0; i < n && separated; ++i)
        if ((s.y[i] > 0.5) != (eta[i] > 0.0)) separated = false;
    if (separated) {
        m.separation_warning = true;
        m.converged = false;
    }
    return m;
}

Eigen::VectorXd logistic_predict(const LogisticModel& m, const Eigen::MatrixXd& X) {
    if (X.cols() + 1 != m.beta.size())
        throw DataError("logistic_predict: feature count mismatch");
    Eigen::VectorXd out(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i)
        out[i] = sigmoid(m.beta[0] + X.row(i).dot(m.beta.tail(m.beta.size() - 1)));
    return out;
}

Diagnostics diagnostics(const LogisticModel& m, const Sample& s) {
    if (!m.converged) throw DataError("diagnostics: model did not converge");
    const Eigen::Index n = s.X.rows();
    const Eigen::MatrixXd D = with_intercept(s.X);
    const Eigen::Index p = D.cols();
    Eigen::VectorXd eta = D * m.beta;
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mu = sigmoid(eta[i]);
        w[i] = mu * (1.0 - mu);
    }
    const Eigen::MatrixXd H = D.transpose() * w.asDiagonal() * D;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(H);
    lu.setThreshold(1e-10);
    if (lu.rank() < p) throw DataError("diagnostics: singular information matrix");
    const Eigen::MatrixXd cov = lu.inverse();

    Diagnostics d;
    d.se.resize(p);
    d.wald_chi2.resize(p);
    d.p_values.resize(p);
    d.odds_ratios.resize(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        d.se[j] = std::sqrt(cov(j, j));
        const double z = m.beta[j] / d.se[j];
        d.wald_chi2[j] = z * z;
        d.p_values[j] = chi2_sf_df1(d.wald_chi2[j]);
        d.odds_ratios[j] = std::exp(m.beta[j]);
    }

    d.log_lik = log_likelihood(s.y, eta);
    const double ybar = s.y.mean();
    d.log_lik_null =
        static_cast<double>(n) * (ybar * std::log(ybar) + (1.0 - ybar) * std::log1p(-ybar));
    const double nn = static_cast<double>(n);
    const double ratio = std::exp(2.0 / nn * (d.log_lik_null - d.log_lik));
    const double denom = 1.0 - std::exp(2.0 / nn * d.log_lik_null);
    d.nagelkerke_r2 = denom > 0 ? (1.0 - ratio) / denom : 0.0;

    // VIF: OLS R^2 of each feature on the others (intercept included).
    const Eigen::Index k = s.X.cols();
    d.vif.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::MatrixXd other(n, k);  // intercept + remaining features
        other.col(0).setOnes();
        Eigen::Index c = 1;
        for (Eigen::Index jj = 0; jj < k; ++jj)
            if (jj != j) other.col(c++) = s.X.col(jj);
        const Eigen::VectorXd target = s.X.col(j);
        const Eigen::VectorXd coef = other.colPivHouseholderQr().solve(target);
        const double sse = (target - other * coef).squaredNorm();
        const double sst = (target.array() - target.mean()).matrix().squaredNorm();
        const double r2 = sst > 0 ? 1.0 - sse / sst : 1.0;
        if (r2 >= 1.0 - 1e-12) {
            d.vif[j] = Diagnostics::kVifSentinel;
            d.infinite_vif.push_back(static_cast<int>(j));
        } else {
            d.vif[j] = 1.0 / (1.0 - r2);
        }
    }
    return d;
}

}  // namespace onoma
