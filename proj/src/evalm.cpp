#include "onoma/evalm.hpp"

#include <algorithm>
#include <numeric>

#include "onoma/errors.hpp"

namespace onoma {

ConfusionTable confusion(std::span<const int> truth, std::span<const int> pred) {
    if (truth.size() != pred.size()) throw DataError("confusion: length mismatch");
    if (truth.empty()) throw DataError("confusion: empty input");
    ConfusionTable ct;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i]) {
            (pred[i] ? ct.tp : ct.fn)++;
        } else {
            (pred[i] ? ct.fp : ct.tn)++;
        }
    }
    return ct;
}

namespace {
std::optional<double> ratio(long long num, long long den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

MetricsResult metrics(const ConfusionTable& ct) {
    if (ct.total() < 1) throw DataError("metrics: empty table");
    MetricsResult m;
    m.accuracy = static_cast<double>(ct.tp + ct.tn) / static_cast<double>(ct.total());
    m.recall = ratio(ct.tp, ct.tp + ct.fn);
    m.specificity = ratio(ct.tn, ct.tn + ct.fp);
    m.fpr_standard = ratio(ct.fp, ct.fp + ct.tn);
    m.fnr_standard = ratio(ct.fn, ct.fn + ct.tp);
    m.fp_share = ratio(ct.fp, ct.fp + ct.tp);
    m.fn_share = ratio(ct.fn, ct.fn + ct.tn);
    return m;
}

KappaResult kappa(const ConfusionTable& ct) {
    const double n = static_cast<double>(ct.total());
    if (n < 1) throw DataError("kappa: empty table");
    const double po = static_cast<double>(ct.tp + ct.tn) / n;
    const double truth_pos = static_cast<double>(ct.tp + ct.fn) / n;
    const double pred_pos = static_cast<double>(ct.tp + ct.fp) / n;
    const double pe = truth_pos * pred_pos + (1.0 - truth_pos) * (1.0 - pred_pos);
    KappaResult r;
    if (pe >= 1.0) {
        r.value = 0.0;
        r.degenerate = true;
        return r;
    }
    r.value = (po - pe) / (1.0 - pe);
    return r;
}

double auc(std::span<const double> scores, std::span<const int> is_male) {
    if (scores.size() != is_male.size()) throw DataError("auc: length mismatch");
    std::size_t n_male = 0, n_female = 0;
    for (const int m : is_male) (m ? n_male : n_female)++;
    if (n_male == 0 || n_female == 0) throw DataError("auc: both classes required");

    // Rank-sum (Mann-Whitney) with midranks for ties.
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
    double rank_sum_male = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k)
            if (is_male[order[k]]) rank_sum_male += midrank;
        i = j;
    }
    const double u = rank_sum_male -
                     static_cast<double>(n_male) * (static_cast<double>(n_male) + 1.0) / 2.0;
    return u / (static_cast<double>(n_male) * static_cast<double>(n_female));
}

}  // namespace onoma
