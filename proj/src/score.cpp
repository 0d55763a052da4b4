#include "onoma/score.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "json_util.hpp"
#include "onoma/errors.hpp"
#include "onoma/namefeat.hpp"
#include "onoma/nameproc.hpp"
#include "onoma/rng.hpp"

namespace onoma {

using nlohmann::json;

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::dictionary: return "dictionary";
        case Provenance::namchar: return "namchar";
        case Provenance::unscored: return "unscored";
    }
    return "?";
}

const char* to_string(Engine e) {
    return e == Engine::logistic ? "logistic" : "svm_rbf";
}

GenderScore census_score(const std::vector<DictEntry>& records) {
    double male = 0.0, female = 0.0;
    for (const auto& r : records) {
        if (r.source != Source::census) continue;
        male += r.male_weight;
        female += r.female_weight;
    }
    GenderScore s;
    if (male + female <= 0.0) return s;  // unscored
    s.value = (male - female) / (male + female);
    s.provenance = Provenance::dictionary;
    return s;
}

namespace {

double category_score(GenderCategory c, bool matched_is_first_token) {
    switch (c) {
        case GenderCategory::male: return 1.0;
        case GenderCategory::female: return -1.0;
        case GenderCategory::mostly_male: return 0.8;
        case GenderCategory::mostly_female: return -0.8;
        case GenderCategory::male_if_first_part:
            return matched_is_first_token ? 1.0 : 0.0;
        case GenderCategory::female_if_first_part:
            return matched_is_first_token ? -1.0 : 0.0;
        case GenderCategory::unisex: return 0.0;
    }
    return 0.0;
}

}  // namespace

GenderScore namdict_score(const std::vector<DictEntry>& records, bool matched_is_first_token) {
    GenderScore s;
    if (records.empty()) return s;
    double sum = 0.0;
    for (const auto& r : records) sum += category_score(r.category, matched_is_first_token);
    s.value = sum / static_cast<double>(records.size());
    s.provenance = Provenance::dictionary;
    return s;
}

GenderScore dictionary_score(const std::vector<DictEntry>& records, bool matched_is_first_token) {
    const bool any_census = std::any_of(records.begin(), records.end(), [](const DictEntry& r) {
        return r.source == Source::census;
    });
    if (any_census) return census_score(records);
    return namdict_score(records, matched_is_first_token);
}

Sample namchar_sample(const NameDb& db) {
    // Deterministic row order: sort keys.
    std::vector<std::pair<std::string, int>> rows;  // token, y
    for (const auto& [key, entries] : db.records()) {
        for (const auto& e : entries) {
            if (e.source != Source::namdict || e.derived) continue;
            if (e.category == GenderCategory::unisex) continue;
            if (e.name.find('+') != std::string::npos) continue;
            if (e.name.find(' ') != std::string::npos) continue;
            const std::string tok = normalize_joined(e.name);
            if (tok.empty()) continue;
            rows.push_back({tok, is_femaleish(e.category) ? 1 : 0});
        }
    }
    std::sort(rows.begin(), rows.end());
    Sample s;
    s.feature_names.assign(kPredictorNames.begin(), kPredictorNames.end());
    s.X.resize(static_cast<Eigen::Index>(rows.size()), 6);
    s.y.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto arr = predictor_row(extract(rows[i].first));
        for (int j = 0; j < 6; ++j) s.X(static_cast<Eigen::Index>(i), j) = arr[static_cast<std::size_t>(j)];
        s.y[static_cast<Eigen::Index>(i)] = rows[i].second;
    }
    return s;
}

namespace {

Sample stratified_subsample(const Sample& s, std::size_t target, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(s.X.rows());
    if (target == 0 || target >= n) return s;
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = 0; i < s.X.rows(); ++i)
        (s.y[i] > 0.5 ? pos : neg).push_back(i);
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    const double frac = static_cast<double>(target) / static_cast<double>(n);
    const auto want_pos = std::min(
        pos.size(),
        static_cast<std::size_t>(std::llround(frac * static_cast<double>(pos.size()))));
    const auto want_neg = std::min(neg.size(), target - want_pos);
    std::vector<Eigen::Index> keep;
    keep.insert(keep.end(), pos.begin(), pos.begin() + static_cast<std::ptrdiff_t>(want_pos));
    keep.insert(keep.end(), neg.begin(), neg.begin() + static_cast<std::ptrdiff_t>(want_neg));
    std::sort(keep.begin(), keep.end());
    Sample out;
    out.feature_names = s.feature_names;
    out.X.resize(static_cast<Eigen::Index>(keep.size()), s.X.cols());
    out.y.resize(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.X.row(static_cast<Eigen::Index>(i)) = s.X.row(keep[i]);
        out.y[static_cast<Eigen::Index>(i)] = s.y[keep[i]];
    }
    return out;
}

}  // namespace

NamCharModel train_namchar(const NameDb& db, Engine engine, std::uint64_t seed,
                           const NamCharOptions& opt) {
    Sample s = namchar_sample(db);
    if (s.X.rows() == 0) throw DataError("train_namchar: no usable name-dictionary rows");
    const double ymean = s.y.mean();
    if (ymean <= 0.0 || ymean >= 1.0)
        throw DataError("train_namchar: both classes required");

    NamCharModel m;
    m.engine = engine;
    m.feature_names = s.feature_names;
    m.training.seed = seed;
    m.training.n_rows = static_cast<std::size_t>(s.X.rows());
    m.training.n_female = static_cast<std::size_t>(s.y.sum());
    m.training.n_male = m.training.n_rows - m.training.n_female;

    if (engine == Engine::logistic) {
        m.logistic = fit_logistic(s);
        if (!m.logistic.converged) throw DataError("train_namchar: logistic fit did not converge");
        m.logistic_diag = diagnostics(m.logistic, s);
        return m;
    }

    if (opt.subsample > 0) {
        s = stratified_subsample(s, opt.subsample, seed);
        m.training.subsample = opt.subsample;
    }
    std::vector<std::pair<double, double>> grid = opt.grid;
    if (grid.empty()) {
        for (const double c : {0.5, 1.0, 2.0})
            for (const double g : {0.05, 0.1745521, 0.5})
                grid.push_back({g, c});
    }
    ModelSpec spec;
    spec.kind = ModelSpec::Kind::svm_rbf;
    m.training.grid = grid_search(spec, s, grid, opt.folds, opt.repeats, seed);
    m.svm = fit_svm_rbf(s, m.training.grid.gamma, m.training.grid.cost);
    return m;
}

NamCharPrediction namchar_predict(const NamCharModel& m, std::string_view token) {
    const std::string tok = normalize_joined(token);
    if (tok.empty()) throw DataError("namchar_predict: token has no letters");
    const auto arr = predictor_row(extract(tok));
    Eigen::RowVectorXd x(6);
    for (int j = 0; j < 6; ++j) x[j] = arr[static_cast<std::size_t>(j)];
    NamCharPrediction p;
    if (m.engine == Engine::logistic) {
        Eigen::MatrixXd X(1, 6);
        X.row(0) = x;
        p.p_female = logistic_predict(m.logistic, X)[0];
    } else {
        p.p_female = svm_prob_female(m.svm, x);
    }
    p.female = p.p_female >= 0.5;
    return p;
}

GenderScore namchar_score(const NameDb& db, const NamCharModel* m, std::string_view raw_name) {
    const NormalizedName n = normalize(raw_name);
    if (const auto match = first_match(db, n)) {
        GenderScore s = dictionary_score(*match->records, match->token_index == 0);
        s.matched_token = match->token;
        return s;
    }
    if (!n.tokens.empty() && m != nullptr) {
        const NamCharPrediction p = namchar_predict(*m, n.tokens.front());
        GenderScore s;
        s.value = 1.0 - 2.0 * p.p_female;
        s.provenance = Provenance::namchar;
        s.matched_token = n.tokens.front();
        return s;
    }
    return {};  // unscored
}

using detail::grid_from_json;
using detail::grid_to_json;
using detail::svm_from_json;
using detail::svm_to_json;
using detail::vector_from_json;
using detail::vector_to_json;

void save_namchar(const NamCharModel& m, std::ostream& out) {
    json j{{"schema_version", 1},
           {"model", "namchar"},
           {"engine", to_string(m.engine)},
           {"features", m.feature_names},
           {"training",
            json{{"seed", m.training.seed},
                 {"n_rows", m.training.n_rows},
                 {"n_male", m.training.n_male},
                 {"n_female", m.training.n_female},
                 {"subsample", m.training.subsample}}}};
    if (m.engine == Engine::logistic) {
        j["logistic"] = json{
            {"beta", vector_to_json(m.logistic.beta)},
            {"converged", m.logistic.converged},
            {"n_iter", m.logistic.n_iter},
            {"log_lik", m.logistic.log_lik},
            {"diagnostics",
             json{{"se", vector_to_json(m.logistic_diag.se)},
                  {"wald_chi2", vector_to_json(m.logistic_diag.wald_chi2)},
                  {"p_values", vector_to_json(m.logistic_diag.p_values)},
                  {"odds_ratios", vector_to_json(m.logistic_diag.odds_ratios)},
                  {"nagelkerke_r2", m.logistic_diag.nagelkerke_r2},
                  {"log_lik_null", m.logistic_diag.log_lik_null},
                  {"vif", vector_to_json(m.logistic_diag.vif)},
                  {"infinite_vif", m.logistic_diag.infinite_vif}}}};
    } else {
        j["svm"] = svm_to_json(m.svm);
        j["training"]["grid"] = grid_to_json(m.training.grid);
    }
    out << j.dump(1) << '\n';
}

NamCharModel load_namchar(std::istream& in) {
    json j;
    in >> j;
    if (j.value("schema_version", 0) != 1 || j.value("model", "") != "namchar")
        throw ParseError("not a namchar model file (schema_version 1 expected)");
    NamCharModel m;
    const std::string engine = j.at("engine");
    m.engine = engine == "logistic" ? Engine::logistic : Engine::svm_rbf;
    m.feature_names = j.at("features").get<std::vector<std::string>>();
    const json& tr = j.at("training");
    m.training.seed = tr.at("seed");
    m.training.n_rows = tr.at("n_rows");
    m.training.n_male = tr.at("n_male");
    m.training.n_female = tr.at("n_female");
    m.training.subsample = tr.at("subsample");
    if (m.engine == Engine::logistic) {
        const json& lg = j.at("logistic");
        m.logistic.beta = vector_from_json(lg.at("beta"));
        m.logistic.converged = lg.at("converged");
        m.logistic.n_iter = lg.at("n_iter");
        m.logistic.log_lik = lg.at("log_lik");
        const json& dg = lg.at("diagnostics");
        m.logistic_diag.se = vector_from_json(dg.at("se"));
        m.logistic_diag.wald_chi2 = vector_from_json(dg.at("wald_chi2"));
        m.logistic_diag.p_values = vector_from_json(dg.at("p_values"));
        m.logistic_diag.odds_ratios = vector_from_json(dg.at("odds_ratios"));
        m.logistic_diag.nagelkerke_r2 = dg.at("nagelkerke_r2");
        m.logistic_diag.log_lik_null = dg.at("log_lik_null");
        m.logistic_diag.vif = vector_from_json(dg.at("vif"));
        m.logistic_diag.infinite_vif = dg.at("infinite_vif").get<std::vector<int>>();
    } else {
        m.svm = svm_from_json(j.at("svm"));
        if (tr.contains("grid")) m.training.grid = grid_from_json(tr.at("grid"));
    }
    return m;
}

}  // namespace onoma
