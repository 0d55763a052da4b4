#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "onoma/errors.hpp"
#include "onoma/stats.hpp"

namespace onoma {
namespace {

// Aggregated training point: duplicate (x, y) rows collapse into one dual
// variable whose box constraint scales with multiplicity. The reduced
// problem is exactly equivalent and keeps the kernel table at
// (#unique rows)^2, which is tiny for small integer features.
struct Aggregated {
    std::vector<int> uid;         // per point: row id into unique_x
    std::vector<double> y;        // +1 / -1
    std::vector<double> upper;    // C * multiplicity
    Eigen::MatrixXd unique_x;
};

Aggregated aggregate(const Sample& s, double cost) {
    Aggregated a;
    std::unordered_map<std::string, int> row_ids;
    std::unordered_map<std::string, int> point_ids;
    std::vector<Eigen::RowVectorXd> rows;
    const Eigen::Index n = s.X.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
        std::string row_key(reinterpret_cast<const char*>(s.X.row(i).eval().data()),
                            sizeof(double) * static_cast<std::size_t>(s.X.cols()));
        auto [rit, rnew] = row_ids.try_emplace(row_key, static_cast<int>(rows.size()));
        if (rnew) rows.emplace_back(s.X.row(i));
        const double yi = s.y[i] > 0.5 ? 1.0 : -1.0;
        std::string point_key = row_key + (yi > 0 ? '+' : '-');
        auto [pit, pnew] = point_ids.try_emplace(point_key, static_cast<int>(a.y.size()));
        if (pnew) {
            a.uid.push_back(rit->second);
            a.y.push_back(yi);
            a.upper.push_back(cost);
        } else {
            a.upper[static_cast<std::size_t>(pit->second)] += cost;
        }
    }
    a.unique_x.resize(static_cast<Eigen::Index>(rows.size()), s.X.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        a.unique_x.row(static_cast<Eigen::Index>(r)) = rows[r];
    return a;
}

Eigen::MatrixXd kernel_table(const Eigen::MatrixXd& U, double gamma) {
    const Eigen::Index u = U.rows();
    Eigen::VectorXd sq = U.rowwise().squaredNorm();
    Eigen::MatrixXd K = U * U.transpose();
    for (Eigen::Index i = 0; i < u; ++i)
        for (Eigen::Index j = 0; j < u; ++j)
            K(i, j) = std::exp(-gamma * std::max(0.0, sq[i] + sq[j] - 2.0 * K(i, j)));
    return K;
}

struct SmoSolution {
    std::vector<double> alpha;
    double b = 0.0;
};

// SMO with maximal-violating-pair working-set selection; stops when
// m(alpha) - M(alpha) <= tol, b = -(m + M)/2.
SmoSolution solve_smo(const Aggregated& a, const Eigen::MatrixXd& K, double tol,
                      std::size_t max_iter) {
    const std::size_t n = a.y.size();
    SmoSolution sol;
    sol.alpha.assign(n, 0.0);
    std::vector<double> grad(n, -1.0);

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double m_up = -std::numeric_limits<double>::infinity();
        double m_low = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -a.y[t] * grad[t];
            const bool in_up = (a.y[t] > 0 && sol.alpha[t] < a.upper[t]) ||
                               (a.y[t] < 0 && sol.alpha[t] > 0);
            const bool in_low = (a.y[t] > 0 && sol.alpha[t] > 0) ||
                                (a.y[t] < 0 && sol.alpha[t] < a.upper[t]);
            if (in_up && v > m_up) {
                m_up = v;
                i = t;
            }
            if (in_low && v < m_low) {
                m_low = v;
                j = t;
            }
        }
        if (i == n || j == n || m_up - m_low <= tol) {
            // Free support vectors sit at v_t = y_t + b - f_t = b, so the
            // violating-pair bounds bracket the bias.
            sol.b = (m_up + m_low) / 2.0;
            return sol;
        }
        const double kii = K(a.uid[i], a.uid[i]);
        const double kjj = K(a.uid[j], a.uid[j]);
        const double kij = K(a.uid[i], a.uid[j]);
        double quad = kii + kjj - 2.0 * kij;
        if (quad <= 0.0) quad = 1e-12;
        double delta = (m_up - m_low) / quad;
        // Keep both variables inside their boxes; the equality constraint is
        // preserved by construction. The selected pair always allows positive
        // movement, so only the upper travel limits bind.
        const double room_i = a.y[i] > 0 ? a.upper[i] - sol.alpha[i] : sol.alpha[i];
        const double room_j = a.y[j] > 0 ? sol.alpha[j] : a.upper[j] - sol.alpha[j];
        delta = std::min({delta, room_i, room_j});
        const double dai = a.y[i] * delta;
        const double daj = -a.y[j] * delta;
        sol.alpha[i] += dai;
        sol.alpha[j] += daj;
        for (std::size_t t = 0; t < n; ++t) {
            const double qti = a.y[t] * a.y[i] * K(a.uid[t], a.uid[i]);
            const double qtj = a.y[t] * a.y[j] * K(a.uid[t], a.uid[j]);
            grad[t] += qti * dai + qtj * daj;
        }
    }
    // Iteration cap hit: report the current bias estimate.
    double m_up = -std::numeric_limits<double>::infinity();
    double m_low = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -a.y[t] * grad[t];
        const bool in_up = (a.y[t] > 0 && sol.alpha[t] < a.upper[t]) ||
                           (a.y[t] < 0 && sol.alpha[t] > 0);
        const bool in_low = (a.y[t] > 0 && sol.alpha[t] > 0) ||
                            (a.y[t] < 0 && sol.alpha[t] < a.upper[t]);
        if (in_up) m_up = std::max(m_up, v);
        if (in_low) m_low = std::min(m_low, v);
    }
    sol.b = (m_up + m_low) / 2.0;
    return sol;
}

SvmModel assemble_model(const Sample& s, const Aggregated& a, const SmoSolution& sol,
                        double gamma, double cost) {
    SvmModel m;
    m.gamma = gamma;
    m.cost = cost;
    m.b = sol.b;
    m.platt_a = -1.0;
    m.platt_b = 0.0;
    m.feature_names = s.feature_names;
    std::size_t n_sv = 0;
    for (const double al : sol.alpha)
        if (al > 1e-12) ++n_sv;
    m.support_vectors.resize(static_cast<Eigen::Index>(n_sv), s.X.cols());
    m.dual_coef.resize(static_cast<Eigen::Index>(n_sv));
    Eigen::Index r = 0;
    for (std::size_t t = 0; t < sol.alpha.size(); ++t) {
        if (sol.alpha[t] <= 1e-12) continue;
        m.support_vectors.row(r) = a.unique_x.row(a.uid[t]);
        m.dual_coef[r] = a.y[t] * sol.alpha[t];
        ++r;
    }
    return m;
}

SvmModel fit_plain(const Sample& s, double gamma, double cost, double tol,
                   std::size_t max_iter) {
    const Aggregated a = aggregate(s, cost);
    const Eigen::MatrixXd K = kernel_table(a.unique_x, gamma);
    const SmoSolution sol = solve_smo(a, K, tol, max_iter);
    return assemble_model(s, a, sol, gamma, cost);
}

Sample subset_rows(const Sample& s, const std::vector<Eigen::Index>& idx) {
    Sample out;
    out.feature_names = s.feature_names;
    out.X.resize(static_cast<Eigen::Index>(idx.size()), s.X.cols());
    out.y.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
        out.X.row(static_cast<Eigen::Index>(i)) = s.X.row(idx[i]);
        out.y[static_cast<Eigen::Index>(i)] = s.y[idx[i]];
    }
    return out;
}

}  // namespace

double svm_decision(const SvmModel& m, const Eigen::RowVectorXd& x) {
    double f = m.b;
    for (Eigen::Index i = 0; i < m.support_vectors.rows(); ++i) {
        const double d2 = (m.support_vectors.row(i) - x).squaredNorm();
        f += m.dual_coef[i] * std::exp(-m.gamma * d2);
    }
    return f;
}

double svm_prob_female(const SvmModel& m, const Eigen::RowVectorXd& x) {
    const double f = svm_decision(m, x);
    const double z = m.platt_a * f + m.platt_b;
    if (z >= 0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(z));
}

double svm_dual_objective(const SvmModel& m, const Sample&) {
    // sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij over support
    // vectors (non-SV terms vanish).
    double sum_alpha = 0.0;
    for (Eigen::Index i = 0; i < m.dual_coef.size(); ++i)
        sum_alpha += std::fabs(m.dual_coef[i]);
    double quad = 0.0;
    for (Eigen::Index i = 0; i < m.dual_coef.size(); ++i) {
        for (Eigen::Index j = 0; j < m.dual_coef.size(); ++j) {
            const double d2 = (m.support_vectors.row(i) - m.support_vectors.row(j)).squaredNorm();
            quad += m.dual_coef[i] * m.dual_coef[j] * std::exp(-m.gamma * d2);
        }
    }
    return sum_alpha - 0.5 * quad;
}

PlattResult fit_platt(std::span<const double> decision, std::span<const int> positive) {
    const std::size_t n = decision.size();
    if (n != positive.size() || n == 0) throw DataError("fit_platt: bad input sizes");
    double prior1 = 0.0;
    for (const int p : positive) prior1 += p ? 1.0 : 0.0;
    const double prior0 = static_cast<double>(n) - prior1;
    const double hi = (prior1 + 1.0) / (prior1 + 2.0);
    const double lo = 1.0 / (prior0 + 2.0);
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = positive[i] ? hi : lo;

    constexpr int kMaxIter = 100;
    constexpr double kMinStep = 1e-10;
    constexpr double kSigma = 1e-12;
    double a = 0.0;
    double b = std::log((prior0 + 1.0) / (prior1 + 1.0));
    const auto fval = [&](double aa, double bb) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = aa * decision[i] + bb;
            if (z >= 0)
                v += t[i] * z + std::log1p(std::exp(-z));
            else
                v += (t[i] - 1.0) * z + std::log1p(std::exp(z));
        }
        return v;
    };
    double fv = fval(a, b);
    for (int iter = 0; iter < kMaxIter; ++iter) {
        double g1 = 0.0, g2 = 0.0, h11 = kSigma, h22 = kSigma, h21 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double z = a * decision[i] + b;
            double p;
            if (z >= 0) {
                const double e = std::exp(-z);
                p = e / (1.0 + e);
            } else {
                p = 1.0 / (1.0 + std::exp(z));
            }
            const double d1 = t[i] - p;
            const double d2 = p * (1.0 - p);
            g1 += decision[i] * d1;
            g2 += d1;
            h11 += decision[i] * decision[i] * d2;
            h22 += d2;
            h21 += decision[i] * d2;
        }
        if (std::fabs(g1) < 1e-5 && std::fabs(g2) < 1e-5) break;
        const double det = h11 * h22 - h21 * h21;
        const double da = -(h22 * g1 - h21 * g2) / det;
        const double db = -(-h21 * g1 + h11 * g2) / det;
        const double gd = g1 * da + g2 * db;
        double step = 1.0;
        bool moved = false;
        while (step >= kMinStep) {
            const double na = a + step * da;
            const double nb = b + step * db;
            const double nf = fval(na, nb);
            if (nf < fv + 1e-4 * step * gd) {
                a = na;
                b = nb;
                fv = nf;
                moved = true;
                break;
            }
            step /= 2.0;
        }
        if (!moved) break;
    }
    return {a, b};
}

SvmModel fit_svm_rbf_opt(const Sample& s, double gamma, double cost, const SvmOptions& opt) {
    if (gamma <= 0 || cost <= 0) throw DataError("fit_svm_rbf: gamma and cost must be > 0");
    const Eigen::Index n = s.X.rows();
    if (n < 2 || s.y.size() != n) throw DataError("fit_svm_rbf: bad sample");
    const double ymean = s.y.mean();
    if (ymean <= 0.0 || ymean >= 1.0)
        throw DataError("fit_svm_rbf: both classes must be present");

    SvmModel model = fit_plain(s, gamma, cost, opt.tol, opt.max_passes);
    if (!opt.platt) return model;

    // Deterministic stratified 20% holdout for the sigmoid: every 5th row of
    // each class, by row order. Small samples fall back to in-sample fitting.
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = 0; i < n; ++i) (s.y[i] > 0.5 ? pos : neg).push_back(i);
    std::vector<Eigen::Index> train, hold;
    for (std::size_t k = 0; k < pos.size(); ++k)
        (k % 5 == 0 ? hold : train).push_back(pos[k]);
    for (std::size_t k = 0; k < neg.size(); ++k)
        (k % 5 == 0 ? hold : train).push_back(neg[k]);

    std::vector<double> dec;
    std::vector<int> lab;
    const bool holdout_usable = pos.size() >= 5 && neg.size() >= 5 && !hold.empty();
    if (holdout_usable) {
        const Sample strain = subset_rows(s, train);
        const SvmModel inner = fit_plain(strain, gamma, cost, opt.tol, opt.max_passes);
        for (const Eigen::Index i : hold) {
            dec.push_back(svm_decision(inner, s.X.row(i)));
            lab.push_back(s.y[i] > 0.5 ? 1 : 0);
        }
    } else {
        for (Eigen::Index i = 0; i < n; ++i) {
            dec.push_back(svm_decision(model, s.X.row(i)));
            lab.push_back(s.y[i] > 0.5 ? 1 : 0);
        }
    }
    const PlattResult pr = fit_platt(dec, lab);
    model.platt_a = pr.a;
    model.platt_b = pr.b;
    return model;
}

SvmModel fit_svm_rbf(const Sample& s, double gamma, double cost, double tol) {
    SvmOptions opt;
    opt.tol = tol;
    return fit_svm_rbf_opt(s, gamma, cost, opt);
}

}  // namespace onoma
