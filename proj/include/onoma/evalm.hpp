#pragma once

#include <optional>
#include <span>
#include <vector>

namespace onoma {

// Positive class = female throughout.
struct ConfusionTable {
    long long tp = 0;  // female predicted female
    long long fp = 0;  // male predicted female
    long long tn = 0;  // male predicted male
    long long fn = 0;  // female predicted male
    long long total() const { return tp + fp + tn + fn; }
};

// truth/pred: 1 = female, 0 = male.
ConfusionTable confusion(std::span<const int> truth, std::span<const int> pred);

struct MetricsResult {
    double accuracy = 0.0;
    std::optional<double> recall;        // tp/(tp+fn); sensitivity for female
    std::optional<double> specificity;   // tn/(tn+fp)
    std::optional<double> fpr_standard;  // fp/(fp+tn)
    std::optional<double> fnr_standard;  // fn/(fn+tp)
    std::optional<double> fp_share;      // fp/(fp+tp): share of positive calls that are wrong
    std::optional<double> fn_share;      // fn/(fn+tn): share of negative calls that are wrong
};

MetricsResult metrics(const ConfusionTable& ct);

struct KappaResult {
    double value = 0.0;
    bool degenerate = false;  // chance agreement = 1; value fixed at 0
};

// Cohen's kappa with expected agreement from the marginals.
KappaResult kappa(const ConfusionTable& ct);

// Probability that a random male outranks a random female; ties count 1/2
// (higher score = more male).
double auc(std::span<const double> scores, std::span<const int> is_male);

}  // namespace onoma
