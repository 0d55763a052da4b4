#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "onoma/corpus.hpp"
#include "onoma/errors.hpp"
#include "onoma/evalm.hpp"
#include "onoma/lovins.hpp"
#include "onoma/namefeat.hpp"
#include "onoma/nameproc.hpp"
#include "onoma/pipeline.hpp"
#include "onoma/score.hpp"
#include "onoma/stats.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace onoma;

namespace {

struct DbArgs {
    std::vector<std::string> paths;
    std::string encoding = "latin1";
};

TextEncoding encoding_from(const std::string& s) {
    if (s == "latin1") return TextEncoding::latin1;
    if (s == "cp1252") return TextEncoding::cp1252;
    if (s == "utf8") return TextEncoding::utf8;
    throw DataError("unknown encoding: " + s);
}

std::ifstream open_input(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw DataError("cannot open " + p.string());
    return in;
}

void load_source_file(const fs::path& p, TextEncoding enc, std::vector<DictEntry>& entries) {
    const std::string base = p.filename().string();
    std::ifstream in = open_input(p);
    std::vector<DictEntry> got;
    if (base == "dist.male.first")
        got = parse_census(in, CensusGender::male);
    else if (base == "dist.female.first")
        got = parse_census(in, CensusGender::female);
    else if (p.extension() == ".tsv")
        got = parse_custom(in);
    else
        got = parse_namdict(in, enc);
    entries.insert(entries.end(), std::make_move_iterator(got.begin()),
                   std::make_move_iterator(got.end()));
}

// A --db path may be a census directory, a name-dictionary text file, or a
// custom TSV; a directory is scanned for the known file names (including
// census/ and namdict/ subdirectories). Default root: $NAMECHAR_DATA_DIR.
std::vector<DictEntry> load_entries(const DbArgs& db) {
    std::vector<std::string> paths = db.paths;
    if (paths.empty()) {
        if (const char* root = std::getenv("NAMECHAR_DATA_DIR"))
            paths.emplace_back(root);
        else
            throw DataError("no dictionary source: pass --db or set NAMECHAR_DATA_DIR");
    }
    const TextEncoding enc = encoding_from(db.encoding);
    std::vector<DictEntry> entries;
    for (const auto& ps : paths) {
        const fs::path p(ps);
        if (fs::is_directory(p)) {
            bool found = false;
            const auto try_dir = [&](const fs::path& dir) {
                for (const char* name : {"dist.male.first", "dist.female.first", "nam_dict.txt"}) {
                    if (!fs::exists(dir / name)) continue;
                    load_source_file(dir / name, enc, entries);
                    found = true;
                }
            };
            try_dir(p);
            for (const char* sub : {"census", "namdict"})
                if (fs::is_directory(p / sub)) try_dir(p / sub);
            if (!found) throw DataError("no recognized dictionary files under " + p.string());
        } else if (fs::exists(p)) {
            load_source_file(p, enc, entries);
        } else {
            throw DataError("no such path: " + ps);
        }
    }
    if (entries.empty()) throw DataError("dictionary sources were empty");
    return entries;
}

NameDb load_db(const DbArgs& db) { return build_db(load_entries(db)); }

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(1) << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_path);
    out << j.dump(1) << '\n';
}

NamCharModel load_namchar_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return load_namchar(in);
}

json score_json(std::string_view name, const GenderScore& s) {
    json j{{"name", std::string(name)},
           {"value", s.value},
           {"provenance", to_string(s.provenance)}};
    j["matched_token"] = s.matched_token ? json(*s.matched_token) : json(nullptr);
    return j;
}

json stats_summary_json(const NameDb& db) {
    json cats = json::array();
    for (const auto& [key, count] : db.source_stats())
        cats.push_back(json{{"source", to_string(key.first)},
                            {"category", to_string(key.second)},
                            {"count", count}});
    std::size_t entries = 0;
    std::size_t census_both = 0;
    for (const auto& [key, count] : db.source_stats()) {
        entries += count;
        if (key.first == Source::census && key.second == GenderCategory::unisex)
            census_both = count;
    }
    return json{{"distinct_names", db.distinct_names()},
                {"entries", entries},
                {"census_both_genders", census_both},
                {"categories", std::move(cats)}};
}

void write_histogram(const NameDb& db, const std::string& path) {
    std::array<long long, 40> bins{};
    long long scored = 0;
    for (const auto& [key, recs] : db.records()) {
        const GenderScore s = dictionary_score(recs, true);
        if (s.provenance == Provenance::unscored) continue;
        const int b = std::clamp(static_cast<int>(std::floor((s.value + 1.0) / 0.05)), 0, 39);
        ++bins[static_cast<std::size_t>(b)];
        ++scored;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << "bin_lo,bin_hi,count\n";
    for (std::size_t i = 0; i < bins.size(); ++i) {
        char line[64];
        std::snprintf(line, sizeof line, "%.2f,%.2f,%lld\n", -1.0 + 0.05 * static_cast<double>(i),
                      -0.95 + 0.05 * static_cast<double>(i), bins[i]);
        out << line;
    }
    std::cerr << "histogram: " << scored << " scored names -> " << path << '\n';
}

std::vector<UserRecord> load_corpus(const std::string& path, bool permissive) {
    std::ifstream in = open_input(path);
    std::vector<std::string> warnings;
    std::vector<UserRecord> users = read_users_jsonl(in, permissive, &warnings);
    for (const auto& w : warnings) std::cerr << path << ": " << w << '\n';
    return users;
}

Scoring scoring_from(const std::string& s) {
    if (s == "census") return Scoring::census;
    if (s == "namchar") return Scoring::namchar;
    throw DataError("unknown scoring config: " + s);
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json metrics_json(const ConfusionTable& ct) {
    if (ct.total() == 0) return json{{"n", 0}};
    const MetricsResult m = metrics(ct);
    const KappaResult k = kappa(ct);
    return json{{"n", ct.total()},
                {"tp", ct.tp},
                {"fp", ct.fp},
                {"tn", ct.tn},
                {"fn", ct.fn},
                {"accuracy", m.accuracy},
                {"recall", optional_json(m.recall)},
                {"specificity", optional_json(m.specificity)},
                {"fpr_standard", optional_json(m.fpr_standard)},
                {"fnr_standard", optional_json(m.fnr_standard)},
                {"fp_share", optional_json(m.fp_share)},
                {"fn_share", optional_json(m.fn_share)},
                {"kappa", k.value},
                {"kappa_degenerate", k.degenerate}};
}

// Loads the written-form model when the pipeline model's scoring needs it.
std::optional<NamCharModel> namchar_for(const PipelineModel& m, const std::string& path) {
    if (m.scoring != Scoring::namchar) return std::nullopt;
    if (path.empty())
        throw DataError("model uses namchar scoring; pass --namchar <model.json>");
    return load_namchar_file(path);
}

int run_dict_build(const DbArgs& db, const std::string& out_tsv) {
    const std::vector<DictEntry> entries = load_entries(db);
    std::ofstream out(out_tsv, std::ios::binary);
    if (!out) throw DataError("cannot write " + out_tsv);
    serialize_custom(entries, out);
    const NameDb built = build_db(entries);
    emit(stats_summary_json(built), "");
    std::cerr << "dictionary: " << built.distinct_names() << " distinct names, "
              << entries.size() << " entries -> " << out_tsv << '\n';
    return 0;
}

int run_dict_inspect(const DbArgs& db, const std::string& out_path,
                     const std::string& histogram_path) {
    const NameDb built = load_db(db);
    emit(stats_summary_json(built), out_path);
    if (!histogram_path.empty()) write_histogram(built, histogram_path);
    std::cerr << "dictionary: " << built.distinct_names() << " distinct names\n";
    return 0;
}

int run_name_features(const std::string& name, const std::string& out_path) {
    const NormalizedName n = normalize(name);
    if (n.tokens.empty()) throw DataError("name contains no letters: " + name);
    json tokens = json::array();
    for (const auto& t : n.tokens) {
        const NameFeatures f = extract(t);
        tokens.push_back(json{{"token", t},
                              {"n_consonants", f.n_consonants},
                              {"n_vowels", f.n_vowels},
                              {"n_syllables", f.n_syllables},
                              {"ends_in_vowel", f.ends_in_vowel},
                              {"n_bouba_consonants", f.n_bouba_consonants},
                              {"n_bouba_vowels", f.n_bouba_vowels},
                              {"n_kiki_consonants", f.n_kiki_consonants},
                              {"n_kiki_vowels", f.n_kiki_vowels},
                              {"vowel_brightness", f.vowel_brightness}});
    }
    emit(json{{"name", name}, {"normalized", n.cleaned}, {"tokens", std::move(tokens)}},
         out_path);
    return 0;
}

int run_name_score(const std::string& name, const DbArgs& db, const std::string& model_path,
                   const std::string& out_path) {
    const NameDb built = load_db(db);
    std::optional<NamCharModel> model;
    if (!model_path.empty()) model = load_namchar_file(model_path);
    const GenderScore s = namchar_score(built, model ? &*model : nullptr, name);
    emit(score_json(name, s), out_path);
    std::cerr << "score(" << name << ") = " << s.value << " [" << to_string(s.provenance)
              << "]\n";
    return 0;
}

int run_namchar_train(const DbArgs& db, const std::string& engine_name, std::uint64_t seed,
                      const NamCharOptions& opt, const std::string& out_path) {
    Engine engine;
    if (engine_name == "logistic")
        engine = Engine::logistic;
    else if (engine_name == "svm")
        engine = Engine::svm_rbf;
    else
        throw DataError("unknown engine: " + engine_name);
    const NameDb built = load_db(db);
    const NamCharModel m = train_namchar(built, engine, seed, opt);
    if (out_path.empty()) {
        save_namchar(m, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw DataError("cannot write " + out_path);
        save_namchar(m, out);
    }
    std::cerr << "trained " << to_string(m.engine) << " on " << m.training.n_rows << " rows ("
              << m.training.n_male << " male-ish, " << m.training.n_female << " female-ish)\n";
    if (engine == Engine::logistic) {
        std::cerr << "  converged=" << (m.logistic.converged ? "yes" : "no")
                  << " log_lik=" << m.logistic.log_lik
                  << " nagelkerke_r2=" << m.logistic_diag.nagelkerke_r2 << '\n';
        for (std::size_t i = 0; i < m.feature_names.size() + 1; ++i) {
            const std::string label = i == 0 ? "(intercept)" : m.feature_names[i - 1];
            std::cerr << "  " << label << " beta=" << m.logistic.beta[static_cast<Eigen::Index>(i)]
                      << " se=" << m.logistic_diag.se[static_cast<Eigen::Index>(i)]
                      << " p=" << m.logistic_diag.p_values[static_cast<Eigen::Index>(i)] << '\n';
        }
    } else {
        std::cerr << "  best gamma=" << m.training.grid.gamma
                  << " cost=" << m.training.grid.cost
                  << " cv_acc=" << m.training.grid.cv.acc_mean
                  << " cv_kappa=" << m.training.grid.cv.kappa_mean << '\n';
    }
    return 0;
}

int run_namchar_predict(const std::string& model_path, std::vector<std::string> names,
                        const std::string& names_file, const std::string& out_path) {
    const NamCharModel m = load_namchar_file(model_path);
    if (!names_file.empty()) {
        std::ifstream in = open_input(names_file);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) names.push_back(line);
        }
    }
    if (names.empty()) throw DataError("no names given");
    json rows = json::array();
    for (const auto& name : names) {
        const NormalizedName n = normalize(name);
        if (n.tokens.empty()) {
            rows.push_back(json{{"name", name}, {"error", "no letters"}});
            continue;
        }
        const NamCharPrediction p = namchar_predict(m, n.tokens.front());
        rows.push_back(json{{"name", name},
                            {"token", n.tokens.front()},
                            {"p_female", p.p_female},
                            {"label", p.female ? "female" : "male"}});
    }
    emit(rows, out_path);
    return 0;
}

int run_pipeline_train(const std::string& corpus_path, bool permissive, const DbArgs& db,
                       PipelineConfig cfg, const std::string& scoring,
                       const std::string& namchar_path, std::uint64_t seed,
                       const std::string& out_path) {
    cfg.scoring = scoring_from(scoring);
    const std::vector<UserRecord> corpus = load_corpus(corpus_path, permissive);
    const NameDb built = load_db(db);
    std::optional<NamCharModel> namchar;
    if (cfg.scoring == Scoring::namchar) {
        if (namchar_path.empty())
            throw DataError("namchar scoring requires --namchar <model.json>");
        namchar = load_namchar_file(namchar_path);
    }
    const PipelineModel m = train_pipeline(corpus, cfg, built, namchar ? &*namchar : nullptr, seed);
    if (out_path.empty()) {
        save_pipeline(m, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw DataError("cannot write " + out_path);
        save_pipeline(m, out);
    }
    std::cerr << "trained pipeline on " << m.training.n_users << " labeled users ("
              << m.training.n_male << " male, " << m.training.n_female << " female); "
              << "gamma=" << m.training.grid.gamma << " cost=" << m.training.grid.cost
              << " cv_acc=" << m.training.grid.cv.acc_mean << '\n';
    return 0;
}

int run_pipeline_classify(const std::string& model_path, const std::string& corpus_path,
                          bool permissive, const DbArgs& db, const std::string& namchar_path,
                          const std::string& out_path) {
    std::ifstream min = open_input(model_path);
    const PipelineModel m = load_pipeline(min);
    const std::vector<UserRecord> corpus = load_corpus(corpus_path, permissive);
    const NameDb built = load_db(db);
    const std::optional<NamCharModel> namchar = namchar_for(m, namchar_path);
    json rows = json::array();
    long long stage1 = 0;
    for (const auto& u : corpus) {
        const ClassifyResult r = classify(m, u, built, namchar ? &*namchar : nullptr);
        if (r.stage == 1) ++stage1;
        rows.push_back(json{{"user_id", u.user_id},
                            {"label", r.label == 1 ? "female" : "male"},
                            {"stage", r.stage},
                            {"gender_score", r.gender_score}});
    }
    emit(json{{"n", corpus.size()},
              {"stage1", stage1},
              {"stage2", static_cast<long long>(corpus.size()) - stage1},
              {"users", std::move(rows)}},
         out_path);
    std::cerr << "classified " << corpus.size() << " users (" << stage1 << " in stage 1)\n";
    return 0;
}

int run_pipeline_evaluate(const std::string& model_path, const std::string& corpus_path,
                          bool permissive, const DbArgs& db, const std::string& namchar_path,
                          const std::string& out_path) {
    std::ifstream min = open_input(model_path);
    const PipelineModel m = load_pipeline(min);
    const std::vector<UserRecord> corpus = load_corpus(corpus_path, permissive);
    const NameDb built = load_db(db);
    const std::optional<NamCharModel> namchar = namchar_for(m, namchar_path);

    std::vector<int> truth, pred, stage;
    std::vector<double> male_score;
    std::vector<int> is_male;
    std::size_t unlabeled = 0;
    for (const auto& u : corpus) {
        if (!u.true_gender) {
            ++unlabeled;
            continue;
        }
        const ClassifyResult r = classify(m, u, built, namchar ? &*namchar : nullptr);
        truth.push_back(*u.true_gender);
        pred.push_back(r.label);
        stage.push_back(r.stage);
        male_score.push_back(r.p_male);
        is_male.push_back(*u.true_gender == 0 ? 1 : 0);
    }
    if (truth.empty()) throw DataError("no labeled users to evaluate");
    ConfusionTable overall, s1, s2;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ConfusionTable& st = stage[i] == 1 ? s1 : s2;
        if (truth[i] == 1 && pred[i] == 1) ++overall.tp, ++st.tp;
        if (truth[i] == 0 && pred[i] == 1) ++overall.fp, ++st.fp;
        if (truth[i] == 0 && pred[i] == 0) ++overall.tn, ++st.tn;
        if (truth[i] == 1 && pred[i] == 0) ++overall.fn, ++st.fn;
    }
    json report{{"n", truth.size()},
                {"unlabeled_skipped", unlabeled},
                {"stage1", metrics_json(s1)},
                {"stage2", metrics_json(s2)},
                {"overall", metrics_json(overall)},
                {"auc", auc(male_score, is_male)},
                {"kappa", kappa(overall).value}};
    emit(report, out_path);
    std::cerr << "evaluated " << truth.size() << " labeled users: acc="
              << metrics(overall).accuracy << " kappa=" << kappa(overall).value << '\n';
    return 0;
}

int run_stats_ttest(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& out_path) {
    const TTestResult r = paired_ttest(x, y);
    emit(json{{"t", r.t}, {"df", r.df}, {"p", r.p}, {"infinite", r.infinite}}, out_path);
    std::cerr << "paired t-test: t=" << r.t << " df=" << r.df << " p=" << r.p << '\n';
    return 0;
}

void add_db_flags(CLI::App* cmd, DbArgs& db) {
    cmd->add_option("--db", db.paths,
                    "dictionary source: census dir, name-dictionary file, or custom TSV "
                    "(repeatable; default $NAMECHAR_DATA_DIR)");
    cmd->add_option("--encoding", db.encoding, "name-dictionary byte encoding")
        ->check(CLI::IsMember({"latin1", "cp1252", "utf8"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"name-based gender inference over dictionaries, written form, and tweets"};
    app.require_subcommand(1);
    int rc = 0;

    DbArgs db;
    std::string out_path, histogram_path, name, model_path, names_file, corpus_path;
    std::string engine_name = "logistic", scoring = "census", namchar_path, out_tsv;
    std::vector<std::string> names;
    std::vector<double> tt_x, tt_y;
    std::uint64_t seed = 0;
    bool permissive = false;
    NamCharOptions nc_opt;
    PipelineConfig pl_cfg;

    CLI::App* dict = app.add_subcommand("dict", "build or inspect the name dictionary");
    dict->require_subcommand(1);
    CLI::App* dict_build = dict->add_subcommand("build", "merge sources into a custom TSV");
    add_db_flags(dict_build, db);
    dict_build->add_option("--out", out_tsv, "TSV destination")->required();
    dict_build->callback([&] { rc = run_dict_build(db, out_tsv); });
    CLI::App* dict_inspect = dict->add_subcommand("inspect", "category counts and score histogram");
    add_db_flags(dict_inspect, db);
    dict_inspect->add_option("--out", out_path, "write the JSON report here instead of stdout");
    dict_inspect->add_option("--histogram", histogram_path,
                             "write score-distribution CSV (bins of width 0.05 over [-1,1])");
    dict_inspect->callback([&] { rc = run_dict_inspect(db, out_path, histogram_path); });

    CLI::App* name_cmd = app.add_subcommand("name", "single-name utilities");
    name_cmd->require_subcommand(1);
    CLI::App* name_features = name_cmd->add_subcommand("features", "written-form features");
    name_features->add_option("name", name, "name to analyze")->required();
    name_features->add_option("--out", out_path, "write JSON here instead of stdout");
    name_features->callback([&] { rc = run_name_features(name, out_path); });
    CLI::App* name_score = name_cmd->add_subcommand("score", "gender score for one name");
    name_score->add_option("name", name, "name to score")->required();
    add_db_flags(name_score, db);
    name_score->add_option("--model", model_path, "written-form model for dictionary misses");
    name_score->add_option("--out", out_path, "write JSON here instead of stdout");
    name_score->callback([&] { rc = run_name_score(name, db, model_path, out_path); });

    CLI::App* namchar = app.add_subcommand("namchar", "written-form classifier");
    namchar->require_subcommand(1);
    CLI::App* nc_train = namchar->add_subcommand("train", "fit on the name dictionary");
    add_db_flags(nc_train, db);
    nc_train->add_option("--engine", engine_name, "logistic or svm")
        ->check(CLI::IsMember({"logistic", "svm"}))
        ->capture_default_str();
    nc_train->add_option("--seed", seed, "RNG seed")->required();
    nc_train->add_option("--subsample", nc_opt.subsample,
                         "stratified row cap before the grid search (svm; 0 = all)");
    nc_train->add_option("--folds", nc_opt.folds, "CV folds")->capture_default_str();
    nc_train->add_option("--repeats", nc_opt.repeats, "CV repeats")->capture_default_str();
    nc_train->add_option("--out", out_path, "write the model JSON here instead of stdout");
    nc_train->callback([&] { rc = run_namchar_train(db, engine_name, seed, nc_opt, out_path); });
    CLI::App* nc_predict = namchar->add_subcommand("predict", "classify names by written form");
    nc_predict->add_option("--model", model_path, "model JSON")->required();
    nc_predict->add_option("names", names, "names to classify");
    nc_predict->add_option("--in", names_file, "file with one name per line");
    nc_predict->add_option("--out", out_path, "write JSON here instead of stdout");
    nc_predict->callback(
        [&] { rc = run_namchar_predict(model_path, names, names_file, out_path); });

    CLI::App* pipeline = app.add_subcommand("pipeline", "two-step user classifier");
    pipeline->require_subcommand(1);
    CLI::App* pl_train = pipeline->add_subcommand("train", "fit term lists and the step-2 SVM");
    pl_train->add_option("--corpus", corpus_path, "JSONL user records")->required();
    add_db_flags(pl_train, db);
    pl_train->add_option("--k", pl_cfg.k, "terms per gender per kind")->capture_default_str();
    pl_train->add_option("--tau", pl_cfg.tau, "stage-1 threshold")->capture_default_str();
    pl_train->add_option("--scoring", scoring, "census or namchar")
        ->check(CLI::IsMember({"census", "namchar"}))
        ->capture_default_str();
    pl_train->add_option("--namchar", namchar_path, "written-form model JSON");
    pl_train->add_option("--seed", seed, "RNG seed")->required();
    pl_train->add_flag("--permissive", permissive, "skip bad corpus lines with warnings");
    pl_train->add_option("--out", out_path, "write the model JSON here instead of stdout");
    pl_train->callback([&] {
        rc = run_pipeline_train(corpus_path, permissive, db, pl_cfg, scoring, namchar_path, seed,
                                out_path);
    });
    CLI::App* pl_classify = pipeline->add_subcommand("classify", "label users with a model");
    pl_classify->add_option("--model", model_path, "pipeline model JSON")->required();
    pl_classify->add_option("--corpus", corpus_path, "JSONL user records")->required();
    add_db_flags(pl_classify, db);
    pl_classify->add_option("--namchar", namchar_path, "written-form model JSON");
    pl_classify->add_flag("--permissive", permissive, "skip bad corpus lines with warnings");
    pl_classify->add_option("--report,--out", out_path, "write JSON here instead of stdout");
    pl_classify->callback([&] {
        rc = run_pipeline_classify(model_path, corpus_path, permissive, db, namchar_path,
                                   out_path);
    });
    CLI::App* pl_eval = pipeline->add_subcommand("evaluate", "score a model against labels");
    pl_eval->add_option("--model", model_path, "pipeline model JSON")->required();
    pl_eval->add_option("--corpus", corpus_path, "JSONL user records with gender labels")
        ->required();
    add_db_flags(pl_eval, db);
    pl_eval->add_option("--namchar", namchar_path, "written-form model JSON");
    pl_eval->add_flag("--permissive", permissive, "skip bad corpus lines with warnings");
    pl_eval->add_option("--report,--out", out_path, "write JSON here instead of stdout");
    pl_eval->callback([&] {
        rc = run_pipeline_evaluate(model_path, corpus_path, permissive, db, namchar_path,
                                   out_path);
    });

    CLI::App* stats = app.add_subcommand("stats", "statistical utilities");
    stats->require_subcommand(1);
    CLI::App* ttest = stats->add_subcommand("ttest", "paired t-test between two runs");
    ttest->add_option("--x", tt_x, "first sample (comma-separated)")
        ->required()
        ->delimiter(',');
    ttest->add_option("--y", tt_y, "second sample (comma-separated)")
        ->required()
        ->delimiter(',');
    ttest->add_option("--out", out_path, "write JSON here instead of stdout");
    ttest->callback([&] { rc = run_stats_ttest(tt_x, tt_y, out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
