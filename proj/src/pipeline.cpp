#include "onoma/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <unordered_map>

#include "json_util.hpp"
#include "onoma/errors.hpp"
#include "onoma/lovins.hpp"
#include "onoma/rng.hpp"

namespace onoma {

using json = nlohmann::json;

const char* to_string(TermKind k) {
    switch (k) {
        case TermKind::word: return "word";
        case TermKind::stem: return "stem";
        case TermKind::costem: return "costem";
        case TermKind::digram: return "digram";
        case TermKind::trigram: return "trigram";
        case TermKind::hashtag: return "hashtag";
    }
    return "?";
}

const char* to_string(Scoring s) { return s == Scoring::census ? "census" : "namchar"; }

namespace {

constexpr std::size_t idx(TermKind k) { return static_cast<std::size_t>(k); }

TermKind term_kind_from_string(const std::string& s) {
    for (TermKind k : kTermKinds)
        if (s == to_string(k)) return k;
    throw DataError("unknown term kind: " + s);
}

bool is_space_byte(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_letter_byte(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
char lower_byte(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

std::string letters_of(std::string_view s) {
    std::string out;
    for (char c : s)
        if (is_letter_byte(c)) out.push_back(lower_byte(c));
    return out;
}

void consume_token(std::string_view token, TweetTokens& out) {
    if (token.starts_with("http")) {
        ++out.n_links;
        return;
    }
    if (token.starts_with("@")) {
        ++out.n_mentions;
        return;
    }
    if (token.starts_with("#")) {
        std::string tag = letters_of(token.substr(1));
        if (!tag.empty()) out.hashtags.push_back(std::move(tag));
        return;
    }
    std::size_t i = 0;
    while (i < token.size()) {
        while (i < token.size() && !is_letter_byte(token[i])) ++i;
        std::size_t j = i;
        std::string run;
        while (j < token.size() && is_letter_byte(token[j])) run.push_back(lower_byte(token[j++]));
        if (!run.empty()) out.words.push_back(std::move(run));
        i = j;
    }
}

// One bag of terms per kind, in tweet order, duplicates kept.
std::array<std::vector<std::string>, 6> collect_terms(const TweetTokens& tok) {
    std::array<std::vector<std::string>, 6> terms;
    terms[idx(TermKind::word)] = tok.words;
    for (const auto& w : tok.words) {
        const LovinsParts parts = lovins_stem_parts(w);
        terms[idx(TermKind::stem)].push_back(parts.stem);
        std::string cs = costem(w, parts.pre_recode);
        if (!cs.empty()) terms[idx(TermKind::costem)].push_back(std::move(cs));
        for (auto& g : char_ngrams(w, 2)) terms[idx(TermKind::digram)].push_back(std::move(g));
        for (auto& g : char_ngrams(w, 3)) terms[idx(TermKind::trigram)].push_back(std::move(g));
    }
    terms[idx(TermKind::hashtag)] = tok.hashtags;
    return terms;
}

ProfileStats stats_from(const UserRecord& u, const TweetTokens& tok) {
    ProfileStats st;
    const double age = static_cast<double>(std::max<long long>(1, u.profile.age_days));
    const double n_tweets = static_cast<double>(u.tweets.size());
    const double mentions = static_cast<double>(u.profile.mention_count + tok.n_mentions);
    const double links = static_cast<double>(u.profile.link_count + tok.n_links);
    const double retweets = static_cast<double>(u.profile.retweet_count + tok.n_retweets);
    const double hashtags = static_cast<double>(tok.hashtags.size());
    st.tweets_per_day = n_tweets / age;
    st.mentions_per_day = mentions / age;
    st.hashtags_per_day = hashtags / age;
    st.links_per_day = links / age;
    st.retweets_per_day = retweets / age;
    st.retweet_tweet_ratio = n_tweets > 0 ? retweets / n_tweets : 0.0;
    st.friend_follower_ratio =
        u.profile.followers > 0
            ? static_cast<double>(u.profile.friends) / static_cast<double>(u.profile.followers)
            : 0.0;
    return st;
}

GenderScore score_for(const UserRecord& u, Scoring scoring, const NameDb& db,
                      const NamCharModel* namchar) {
    return namchar_score(db, scoring == Scoring::namchar ? namchar : nullptr, u.name);
}

FeatureVector features_from(const UserRecord& u, const PipelineModel& m, const NameDb& db,
                            const NamCharModel* namchar, const TweetTokens& tok) {
    const auto terms = collect_terms(tok);
    std::vector<double> vals;
    for (const auto& list : m.term_lists) {
        const auto& bag = terms[idx(list.kind)];
        std::unordered_map<std::string_view, double> occurrences;
        for (const auto& t : bag) occurrences[t] += 1.0;
        const double total = static_cast<double>(bag.size());
        const auto push_counts = [&](const std::vector<std::string>& selected) {
            for (const auto& t : selected) {
                const auto it = occurrences.find(std::string_view(t));
                vals.push_back(it != occurrences.end() && total > 0 ? it->second / total : 0.0);
            }
        };
        push_counts(list.male_terms);
        push_counts(list.female_terms);
    }
    const auto block = stats_from(u, tok).as_array();
    vals.insert(vals.end(), block.begin(), block.end());
    FeatureVector fv;
    fv.gender = score_for(u, m.scoring, db, namchar);
    vals.push_back(fv.gender.value);
    fv.values = Eigen::Map<const Eigen::RowVectorXd>(vals.data(),
                                                     static_cast<Eigen::Index>(vals.size()));
    return fv;
}

}  // namespace

TweetTokens tokenize_tweets(const std::vector<std::string>& tweets) {
    TweetTokens out;
    for (const auto& tweet : tweets) {
        std::string_view rest = tweet;
        if (rest.starts_with("RT ")) {
            ++out.n_retweets;
            rest.remove_prefix(3);
        }
        std::size_t i = 0;
        while (i < rest.size()) {
            while (i < rest.size() && is_space_byte(rest[i])) ++i;
            std::size_t j = i;
            while (j < rest.size() && !is_space_byte(rest[j])) ++j;
            if (j > i) consume_token(rest.substr(i, j - i), out);
            i = j;
        }
    }
    return out;
}

std::vector<std::string> char_ngrams(std::string_view word, int n) {
    std::vector<std::string> grams;
    if (n < 1 || word.size() < static_cast<std::size_t>(n)) return grams;
    for (std::size_t i = 0; i + n <= word.size(); ++i)
        grams.emplace_back(word.substr(i, static_cast<std::size_t>(n)));
    return grams;
}

std::array<double, 7> ProfileStats::as_array() const {
    return {tweets_per_day,      mentions_per_day,    hashtags_per_day,      links_per_day,
            retweets_per_day,    retweet_tweet_ratio, friend_follower_ratio};
}

ProfileStats profile_stats(const UserRecord& u) {
    return stats_from(u, tokenize_tweets(u.tweets));
}

TermList select_top_terms(const std::vector<UserRecord>& corpus, TermKind kind, int k) {
    if (k < 1) throw DataError("k must be >= 1");
    std::unordered_map<std::string, long long> male_counts, female_counts;
    bool saw_male = false, saw_female = false;
    for (const auto& u : corpus) {
        if (!u.true_gender) continue;
        const bool female = *u.true_gender == 1;
        (female ? saw_female : saw_male) = true;
        auto& counts = female ? female_counts : male_counts;
        const auto terms = collect_terms(tokenize_tweets(u.tweets));
        for (const auto& t : terms[idx(kind)]) ++counts[t];
    }
    if (!saw_male || !saw_female)
        throw DataError("term selection needs labeled users of both genders");
    std::unordered_map<std::string, long long> s;
    for (const auto& [t, c] : male_counts) s[t] += c;
    for (const auto& [t, c] : female_counts) s[t] -= c;
    if (s.empty()) throw DataError(std::string("empty vocabulary for term kind ") + to_string(kind));
    std::vector<std::pair<std::string, long long>> scored(s.begin(), s.end());
    TermList list;
    list.kind = kind;
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), scored.size());
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    for (std::size_t i = 0; i < take; ++i) list.male_terms.push_back(scored[i].first);
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    for (std::size_t i = 0; i < take; ++i) list.female_terms.push_back(scored[i].first);
    list.short_of_k = scored.size() < static_cast<std::size_t>(k);
    return list;
}

std::vector<std::string> pipeline_feature_names(const PipelineModel& m) {
    std::vector<std::string> names;
    for (const auto& list : m.term_lists) {
        const std::string kind = to_string(list.kind);
        for (const auto& t : list.male_terms) names.push_back(kind + ":male:" + t);
        for (const auto& t : list.female_terms) names.push_back(kind + ":female:" + t);
    }
    for (const char* s : {"tweets_per_day", "mentions_per_day", "hashtags_per_day",
                          "links_per_day", "retweets_per_day", "retweet_tweet_ratio",
                          "friend_follower_ratio"})
        names.push_back(std::string("profile:") + s);
    names.emplace_back("gender_score");
    return names;
}

FeatureVector user_features(const UserRecord& u, const PipelineModel& m, const NameDb& db,
                            const NamCharModel* namchar) {
    return features_from(u, m, db, namchar, tokenize_tweets(u.tweets));
}

ClassifyResult classify(const PipelineModel& m, const UserRecord& u, const NameDb& db,
                        const NamCharModel* namchar) {
    ClassifyResult r;
    const GenderScore gs = score_for(u, m.scoring, db, namchar);
    r.gender_score = gs.value;
    if (std::abs(gs.value) > m.tau) {
        r.stage = 1;
        r.label = gs.value > 0 ? 0 : 1;
        r.p_male = 0.5 * (1.0 + gs.value);
        return r;
    }
    r.stage = 2;
    const FeatureVector fv = user_features(u, m, db, namchar);
    r.label = svm_decision(m.svm, fv.values) >= 0 ? 1 : 0;
    r.p_male = 1.0 - svm_prob_female(m.svm, fv.values);
    return r;
}

PipelineModel train_pipeline(const std::vector<UserRecord>& corpus, const PipelineConfig& cfg,
                             const NameDb& db, const NamCharModel* namchar, std::uint64_t seed) {
    if (cfg.k < 1) throw DataError("k must be >= 1");
    if (cfg.tau < 0.0 || cfg.tau > 1.0) throw DataError("tau must be in [0,1]");
    if (cfg.scoring == Scoring::namchar && namchar == nullptr)
        throw DataError("namchar scoring requires a trained written-form model");

    std::vector<std::size_t> labeled;
    std::size_t n_male = 0, n_female = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!corpus[i].true_gender) continue;
        labeled.push_back(i);
        (*corpus[i].true_gender == 1 ? n_female : n_male) += 1;
    }
    if (n_male == 0 || n_female == 0)
        throw DataError("training corpus must contain both genders");

    PipelineModel m;
    m.k = cfg.k;
    m.tau = cfg.tau;
    m.scoring = cfg.scoring;
    for (TermKind kind : kTermKinds) m.term_lists.push_back(select_top_terms(corpus, kind, cfg.k));

    Sample full;
    full.feature_names = pipeline_feature_names(m);
    full.X.resize(static_cast<Eigen::Index>(labeled.size()),
                  static_cast<Eigen::Index>(full.feature_names.size()));
    full.y.resize(static_cast<Eigen::Index>(labeled.size()));
    std::vector<Eigen::Index> male_rows, female_rows;
    for (std::size_t r = 0; r < labeled.size(); ++r) {
        const UserRecord& u = corpus[labeled[r]];
        full.X.row(static_cast<Eigen::Index>(r)) = user_features(u, m, db, namchar).values;
        full.y[static_cast<Eigen::Index>(r)] = static_cast<double>(*u.true_gender);
        (*u.true_gender == 1 ? female_rows : male_rows).push_back(static_cast<Eigen::Index>(r));
    }

    // Parameter search runs on one stratified random half.
    Rng rng(seed);
    const auto half_of = [&rng](std::vector<Eigen::Index>& rows) {
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        std::vector<Eigen::Index> kept;
        for (std::size_t i = 0; i < (rows.size() + 1) / 2; ++i) kept.push_back(rows[order[i]]);
        return kept;
    };
    std::vector<Eigen::Index> half_rows = half_of(male_rows);
    for (Eigen::Index r : half_of(female_rows)) half_rows.push_back(r);
    std::sort(half_rows.begin(), half_rows.end());
    Sample half;
    half.feature_names = full.feature_names;
    half.X.resize(static_cast<Eigen::Index>(half_rows.size()), full.X.cols());
    half.y.resize(static_cast<Eigen::Index>(half_rows.size()));
    for (std::size_t i = 0; i < half_rows.size(); ++i) {
        half.X.row(static_cast<Eigen::Index>(i)) = full.X.row(half_rows[i]);
        half.y[static_cast<Eigen::Index>(i)] = full.y[half_rows[i]];
    }

    std::vector<std::pair<double, double>> grid = cfg.grid;
    if (grid.empty())
        for (double gamma : {0.01, 0.1, 1.0})
            for (double cost : {0.1, 1.0, 10.0}) grid.emplace_back(gamma, cost);

    ModelSpec spec;
    spec.kind = ModelSpec::Kind::svm_rbf;
    const GridResult gr =
        grid_search(spec, half, grid, cfg.grid_folds, cfg.grid_repeats, seed);

    SvmOptions opt;
    m.svm = fit_svm_rbf_opt(full, gr.gamma, gr.cost, opt);
    m.training.seed = seed;
    m.training.n_users = labeled.size();
    m.training.n_male = n_male;
    m.training.n_female = n_female;
    m.training.grid = gr;
    return m;
}

namespace {

bool counter_field(const json& profile, const char* key, long long& dst, std::string& err) {
    const auto it = profile.find(key);
    if (it == profile.end()) return true;
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
        err = std::string("\"") + key + "\" must be an integer";
        return false;
    }
    const long long v = it->get<long long>();
    if (v < 0) {
        err = std::string("\"") + key + "\" must be >= 0";
        return false;
    }
    dst = v;
    return true;
}

bool parse_user(const json& j, UserRecord& u, std::string& err) {
    if (!j.is_object()) {
        err = "record is not a JSON object";
        return false;
    }
    const auto uid = j.find("user_id");
    if (uid == j.end() || !uid->is_string() || uid->get_ref<const std::string&>().empty()) {
        err = "missing or empty \"user_id\"";
        return false;
    }
    u.user_id = uid->get<std::string>();
    const auto name = j.find("name");
    if (name == j.end() || !name->is_string()) {
        err = "missing \"name\"";
        return false;
    }
    u.name = name->get<std::string>();
    if (const auto tweets = j.find("tweets"); tweets != j.end()) {
        if (!tweets->is_array()) {
            err = "\"tweets\" must be an array";
            return false;
        }
        for (const auto& t : *tweets) {
            if (!t.is_string()) {
                err = "\"tweets\" entries must be strings";
                return false;
            }
            u.tweets.push_back(t.get<std::string>());
        }
    }
    if (const auto profile = j.find("profile"); profile != j.end()) {
        if (!profile->is_object()) {
            err = "\"profile\" must be an object";
            return false;
        }
        if (!counter_field(*profile, "age_days", u.profile.age_days, err) ||
            !counter_field(*profile, "friends", u.profile.friends, err) ||
            !counter_field(*profile, "followers", u.profile.followers, err) ||
            !counter_field(*profile, "retweet_count", u.profile.retweet_count, err) ||
            !counter_field(*profile, "mention_count", u.profile.mention_count, err) ||
            !counter_field(*profile, "link_count", u.profile.link_count, err))
            return false;
    }
    if (const auto gender = j.find("gender"); gender != j.end() && !gender->is_null()) {
        if (*gender == "male")
            u.true_gender = 0;
        else if (*gender == "female")
            u.true_gender = 1;
        else {
            err = "\"gender\" must be \"male\", \"female\", or null";
            return false;
        }
    }
    return true;
}

}  // namespace

std::vector<UserRecord> read_users_jsonl(std::istream& in, bool permissive,
                                         std::vector<std::string>* warnings) {
    std::vector<UserRecord> users;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string err;
        UserRecord u;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            err = "malformed JSON";
        else if (!parse_user(j, u, err) && err.empty())
            err = "invalid record";
        if (err.empty()) {
            users.push_back(std::move(u));
            continue;
        }
        if (!permissive) throw ParseError(err, line_no);
        if (warnings) warnings->push_back("line " + std::to_string(line_no) + ": " + err);
    }
    return users;
}

void save_pipeline(const PipelineModel& m, std::ostream& out) {
    json lists = json::array();
    for (const auto& list : m.term_lists)
        lists.push_back(json{{"kind", to_string(list.kind)},
                             {"male", list.male_terms},
                             {"female", list.female_terms},
                             {"short_of_k", list.short_of_k}});
    json j{{"schema_version", 1},
           {"model", "pipeline"},
           {"k", m.k},
           {"tau", m.tau},
           {"scoring", to_string(m.scoring)},
           {"term_lists", std::move(lists)},
           {"svm", detail::svm_to_json(m.svm)},
           {"training",
            json{{"seed", m.training.seed},
                 {"n_users", m.training.n_users},
                 {"n_male", m.training.n_male},
                 {"n_female", m.training.n_female},
                 {"grid", detail::grid_to_json(m.training.grid)}}}};
    out << j.dump(1) << '\n';
}

PipelineModel load_pipeline(std::istream& in) {
    json j = json::parse(in);
    if (j.value("schema_version", 0) != 1) throw DataError("unsupported model schema version");
    if (j.value("model", "") != "pipeline") throw DataError("not a pipeline model file");
    PipelineModel m;
    m.k = j.at("k");
    m.tau = j.at("tau");
    const std::string scoring = j.at("scoring");
    if (scoring == "census")
        m.scoring = Scoring::census;
    else if (scoring == "namchar")
        m.scoring = Scoring::namchar;
    else
        throw DataError("unknown scoring config: " + scoring);
    for (const auto& e : j.at("term_lists")) {
        TermList list;
        list.kind = term_kind_from_string(e.at("kind"));
        list.male_terms = e.at("male").get<std::vector<std::string>>();
        list.female_terms = e.at("female").get<std::vector<std::string>>();
        list.short_of_k = e.at("short_of_k");
        m.term_lists.push_back(std::move(list));
    }
    m.svm = detail::svm_from_json(j.at("svm"));
    const auto& tr = j.at("training");
    m.training.seed = tr.at("seed");
    m.training.n_users = tr.at("n_users");
    m.training.n_male = tr.at("n_male");
    m.training.n_female = tr.at("n_female");
    m.training.grid = detail::grid_from_json(tr.at("grid"));
    return m;
}

}  // namespace onoma
