#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace onoma {

struct Sample {
    Eigen::MatrixXd X;  // rows = observations, no intercept column
    Eigen::VectorXd y;  // 1 = female, 0 = male
    std::vector<std::string> feature_names;
};

struct LogisticModel {
    Eigen::VectorXd beta;  // intercept first, then features in sample order
    bool converged = false;
    bool separation_warning = false;
    int n_iter = 0;
    double log_lik = 0.0;
};

struct Diagnostics {
    Eigen::VectorXd se;
    Eigen::VectorXd wald_chi2;    // (beta/se)^2, df = 1
    Eigen::VectorXd p_values;
    Eigen::VectorXd odds_ratios;  // e^beta
    double nagelkerke_r2 = 0.0;
    double log_lik = 0.0;
    double log_lik_null = 0.0;
    Eigen::VectorXd vif;               // per feature (intercept excluded)
    std::vector<int> infinite_vif;     // feature indices reported at the sentinel
    static constexpr double kVifSentinel = 1e12;
};

LogisticModel fit_logistic(const Sample& s, double tol = 1e-8, int max_iter = 100);
Diagnostics diagnostics(const LogisticModel& m, const Sample& s);
Eigen::VectorXd logistic_predict(const LogisticModel& m, const Eigen::MatrixXd& X);

struct SvmModel {
    Eigen::MatrixXd support_vectors;
    Eigen::VectorXd dual_coef;  // alpha_i * y_i per support vector
    double b = 0.0;
    double gamma = 0.0;
    double cost = 0.0;
    double platt_a = 0.0;  // p(female) = 1 / (1 + exp(a*f + b)); identity
    double platt_b = 0.0;  // (a=-1, b=0) when Platt fitting is not requested
    std::vector<std::string> feature_names;
};

struct SvmOptions {
    double tol = 1e-3;
    bool platt = true;
    std::size_t max_passes = 200000000;
};

// C-SVM with K(x,z) = exp(-gamma*|x-z|^2), trained by SMO with
// maximal-violating-pair working-set selection. Duplicate rows are
// aggregated into weighted points (box constraint scales with multiplicity),
// which keeps the kernel table small on integer-valued features.
// Platt's sigmoid is fit on a deterministic stratified 20% holdout, then the
// SVM is refit on all rows.
SvmModel fit_svm_rbf(const Sample& s, double gamma, double cost, double tol = 1e-3);
SvmModel fit_svm_rbf_opt(const Sample& s, double gamma, double cost, const SvmOptions& opt);

double svm_decision(const SvmModel& m, const Eigen::RowVectorXd& x);
double svm_prob_female(const SvmModel& m, const Eigen::RowVectorXd& x);
// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double svm_dual_objective(const SvmModel& m, const Sample& s);

struct PlattResult {
    double a = 0.0, b = 0.0;
};
PlattResult fit_platt(std::span<const double> decision, std::span<const int> positive);

struct ModelSpec {
    enum class Kind { logistic, svm_rbf } kind = Kind::svm_rbf;
    double gamma = 1.0;
    double cost = 1.0;
};

struct CvResult {
    double acc_mean = 0.0, acc_sd = 0.0;
    double kappa_mean = 0.0, kappa_sd = 0.0;
    int folds = 0, repeats = 0;
};

// Stratified k-fold, repeated; fold assignment drawn from the seed. Folds are
// evaluated in deterministic order.
CvResult cross_validate(const ModelSpec& spec, const Sample& s, int folds, int repeats,
                        std::uint64_t seed);

struct GridResult {
    double gamma = 0.0, cost = 0.0;
    CvResult cv;
    std::vector<std::pair<std::pair<double, double>, CvResult>> evaluated;
};

// Argmax of mean CV accuracy; ties go to smaller cost, then smaller gamma.
GridResult grid_search(const ModelSpec& spec, const Sample& s,
                       const std::vector<std::pair<double, double>>& grid_gamma_cost,
                       int folds, int repeats, std::uint64_t seed);

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double p = 1.0;
    bool infinite = false;  // nonzero mean difference with zero variance
};

TTestResult paired_ttest(std::span<const double> a, std::span<const double> b);

// chi^2 survival function with one degree of freedom: erfc(sqrt(x/2)).
double chi2_sf_df1(double x);
// Two-sided Student-t p-value via the regularized incomplete beta function.
double t_two_sided_p(double t, int df);
// Regularized incomplete beta I_x(a, b) by Lentz continued fractions.
double betainc_reg(double a, double b, double x);

}  // namespace onoma
