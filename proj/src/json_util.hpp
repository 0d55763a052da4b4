#pragma once

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "onoma/stats.hpp"

namespace onoma::detail {

inline nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json& arr) {
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Eigen::Index>(i)] = arr[i];
    return v;
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& rows, Eigen::Index cols_hint) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    Eigen::Index c = cols_hint;
    if (r > 0) c = static_cast<Eigen::Index>(rows[0].size());
    Eigen::MatrixXd m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j)
            m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

inline nlohmann::json svm_to_json(const SvmModel& m) {
    return nlohmann::json{{"gamma", m.gamma},
                          {"cost", m.cost},
                          {"b", m.b},
                          {"platt_a", m.platt_a},
                          {"platt_b", m.platt_b},
                          {"support_vectors", matrix_to_json(m.support_vectors)},
                          {"dual_coef", vector_to_json(m.dual_coef)},
                          {"features", m.feature_names}};
}

inline SvmModel svm_from_json(const nlohmann::json& j) {
    SvmModel m;
    m.gamma = j.at("gamma");
    m.cost = j.at("cost");
    m.b = j.at("b");
    m.platt_a = j.at("platt_a");
    m.platt_b = j.at("platt_b");
    m.feature_names = j.at("features").get<std::vector<std::string>>();
    m.support_vectors = matrix_from_json(j.at("support_vectors"),
                                         static_cast<Eigen::Index>(m.feature_names.size()));
    m.dual_coef = vector_from_json(j.at("dual_coef"));
    return m;
}

inline nlohmann::json grid_to_json(const GridResult& g) {
    nlohmann::json evaluated = nlohmann::json::array();
    for (const auto& [gc, cv] : g.evaluated) {
        evaluated.push_back(nlohmann::json{{"gamma", gc.first},
                                           {"cost", gc.second},
                                           {"acc_mean", cv.acc_mean},
                                           {"acc_sd", cv.acc_sd},
                                           {"kappa_mean", cv.kappa_mean},
                                           {"kappa_sd", cv.kappa_sd}});
    }
    return nlohmann::json{{"gamma", g.gamma},
                          {"cost", g.cost},
                          {"acc_mean", g.cv.acc_mean},
                          {"acc_sd", g.cv.acc_sd},
                          {"kappa_mean", g.cv.kappa_mean},
                          {"kappa_sd", g.cv.kappa_sd},
                          {"folds", g.cv.folds},
                          {"repeats", g.cv.repeats},
                          {"evaluated", std::move(evaluated)}};
}

inline GridResult grid_from_json(const nlohmann::json& j) {
    GridResult g;
    g.gamma = j.at("gamma");
    g.cost = j.at("cost");
    g.cv.acc_mean = j.at("acc_mean");
    g.cv.acc_sd = j.at("acc_sd");
    g.cv.kappa_mean = j.at("kappa_mean");
    g.cv.kappa_sd = j.at("kappa_sd");
    g.cv.folds = j.at("folds");
    g.cv.repeats = j.at("repeats");
    for (const auto& e : j.at("evaluated")) {
        CvResult cv;
        cv.acc_mean = e.at("acc_mean");
        cv.acc_sd = e.at("acc_sd");
        cv.kappa_mean = e.at("kappa_mean");
        cv.kappa_sd = e.at("kappa_sd");
        g.evaluated.push_back({{e.at("gamma"), e.at("cost")}, cv});
    }
    return g;
}

}  // namespace onoma::detail
