#include <algorithm>
#include <cmath>
#include <vector>

#include "onoma/errors.hpp"
#include "onoma/evalm.hpp"
#include "onoma/rng.hpp"
#include "onoma/stats.hpp"

namespace onoma {
namespace {

Sample take_rows(const Sample& s, const std::vector<Eigen::Index>& idx) {
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

std::vector<int> predict(const ModelSpec& spec, const Sample& train, const Sample& test) {
    std::vector<int> pred(static_cast<std::size_t>(test.X.rows()));
    if (spec.kind == ModelSpec::Kind::logistic) {
        const LogisticModel m = fit_logistic(train);
        const Eigen::VectorXd p = logistic_predict(m, test.X);
        for (Eigen::Index i = 0; i < p.size(); ++i)
            pred[static_cast<std::size_t>(i)] = p[i] >= 0.5 ? 1 : 0;
    } else {
        SvmOptions opt;
        opt.platt = false;  // hard decisions only inside CV
        const SvmModel m = fit_svm_rbf_opt(train, spec.gamma, spec.cost, opt);
        for (Eigen::Index i = 0; i < test.X.rows(); ++i)
            pred[static_cast<std::size_t>(i)] = svm_decision(m, test.X.row(i)) >= 0 ? 1 : 0;
    }
    return pred;
}

}  // namespace

CvResult cross_validate(const ModelSpec& spec, const Sample& s, int folds, int repeats,
                        std::uint64_t seed) {
    const Eigen::Index n = s.X.rows();
    if (folds < 2) throw DataError("cross_validate: folds must be >= 2");
    if (n < folds) throw DataError("cross_validate: fewer rows than folds");
    if (repeats < 1) throw DataError("cross_validate: repeats must be >= 1");

    Rng rng(seed);
    std::vector<double> accs, kappas;
    for (int rep = 0; rep < repeats; ++rep) {
        // Stratified assignment: shuffle each class, deal round-robin.
        std::vector<int> fold_of(static_cast<std::size_t>(n), -1);
        for (const int cls : {1, 0}) {
            std::vector<Eigen::Index> members;
            for (Eigen::Index i = 0; i < n; ++i)
                if ((s.y[i] > 0.5 ? 1 : 0) == cls) members.push_back(i);
            rng.shuffle(members);
            for (std::size_t k = 0; k < members.size(); ++k)
                fold_of[static_cast<std::size_t>(members[k])] = static_cast<int>(k % folds);
        }
        for (int f = 0; f < folds; ++f) {
            std::vector<Eigen::Index> train_idx, test_idx;
            for (Eigen::Index i = 0; i < n; ++i)
                (fold_of[static_cast<std::size_t>(i)] == f ? test_idx : train_idx).push_back(i);
            if (test_idx.empty()) continue;
            const Sample train = take_rows(s, train_idx);
            const Sample test = take_rows(s, test_idx);
            const std::vector<int> pred = predict(spec, train, test);
            std::vector<int> truth(test_idx.size());
            for (std::size_t i = 0; i < test_idx.size(); ++i)
                truth[i] = test.y[static_cast<Eigen::Index>(i)] > 0.5 ? 1 : 0;
            const ConfusionTable ct = confusion(truth, pred);
            accs.push_back(metrics(ct).accuracy);
            kappas.push_back(kappa(ct).value);
        }
    }
    const auto mean_sd = [](const std::vector<double>& v) {
        double mean = 0.0;
        for (const double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (const double x : v) ss += (x - mean) * (x - mean);
        const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };
    CvResult r;
    r.folds = folds;
    r.repeats = repeats;
    std::tie(r.acc_mean, r.acc_sd) = mean_sd(accs);
    std::tie(r.kappa_mean, r.kappa_sd) = mean_sd(kappas);
    return r;
}

GridResult grid_search(const ModelSpec& spec, const Sample& s,
                       const std::vector<std::pair<double, double>>& grid_gamma_cost,
                       int folds, int repeats, std::uint64_t seed) {
    if (grid_gamma_cost.empty()) throw DataError("grid_search: empty grid");
    GridResult best;
    bool have_best = false;
    for (const auto& [gamma, cost] : grid_gamma_cost) {
        ModelSpec point = spec;
        point.gamma = gamma;
        point.cost = cost;
        const CvResult cv = cross_validate(point, s, folds, repeats, seed);
        best.evaluated.push_back({{gamma, cost}, cv});
        const bool better =
            !have_best || cv.acc_mean > best.cv.acc_mean ||
            (cv.acc_mean == best.cv.acc_mean &&
             (cost < best.cost || (cost == best.cost && gamma < best.gamma)));
        if (better) {
            best.gamma = gamma;
            best.cost = cost;
            best.cv = cv;
            have_best = true;
        }
    }
    return best;
}

}  // namespace onoma
