#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onoma/corpus.hpp"
#include "onoma/stats.hpp"

namespace onoma {

enum class Provenance { dictionary, namchar, unscored };
const char* to_string(Provenance p);

// Male-leaning positive: +1 = given solely to men, -1 solely to women.
struct GenderScore {
    double value = 0.0;
    Provenance provenance = Provenance::unscored;
    std::optional<std::string> matched_token;
};

// (M - F) / (M + F) over the census-source records' usage weights.
GenderScore census_score(const std::vector<DictEntry>& records);

// Mean of per-record category scores: male +1, female -1, mostly +-0.8,
// unisex 0; *_if_first_part counts only when the matched token was the first
// token of the queried name.
GenderScore namdict_score(const std::vector<DictEntry>& records, bool matched_is_first_token);

// census_score when census records are present, namdict_score otherwise.
GenderScore dictionary_score(const std::vector<DictEntry>& records, bool matched_is_first_token);

enum class Engine { logistic, svm_rbf };
const char* to_string(Engine e);

struct NamCharTraining {
    std::uint64_t seed = 0;
    std::size_t n_rows = 0;
    std::size_t n_male = 0;
    std::size_t n_female = 0;
    std::size_t subsample = 0;  // 0 = all rows used
    GridResult grid;            // svm engine only
};

struct NamCharModel {
    Engine engine = Engine::logistic;
    std::vector<std::string> feature_names;
    LogisticModel logistic;
    Diagnostics logistic_diag;
    SvmModel svm;
    NamCharTraining training;
};

struct NamCharOptions {
    int folds = 10;
    int repeats = 3;
    std::size_t subsample = 0;  // stratified row cap before grid search; 0 = off
    std::vector<std::pair<double, double>> grid;  // (gamma, cost); empty = default
};

// The classifier's training rows: every single-token, non-unisex name-
// dictionary entry (compound and multi-word names excluded), y = 1 for the
// female-leaning categories, with the six-feature predictor set.
Sample namchar_sample(const NameDb& db);

NamCharModel train_namchar(const NameDb& db, Engine engine, std::uint64_t seed,
                           const NamCharOptions& opt = {});

struct NamCharPrediction {
    bool female = false;  // p_female >= 0.5 (ties go female)
    double p_female = 0.0;
};

NamCharPrediction namchar_predict(const NamCharModel& m, std::string_view token);

// Dictionary hit first (left-to-right token match); otherwise the classifier
// on the first token, value = 1 - 2*p_female; no letters at all = unscored.
GenderScore namchar_score(const NameDb& db, const NamCharModel* m, std::string_view raw_name);

// Versioned JSON (schema_version 1). Feature ordering is part of the schema.
void save_namchar(const NamCharModel& m, std::ostream& out);
NamCharModel load_namchar(std::istream& in);

}  // namespace onoma
