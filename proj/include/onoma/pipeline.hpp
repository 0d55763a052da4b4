#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "onoma/corpus.hpp"
#include "onoma/score.hpp"
#include "onoma/stats.hpp"

namespace onoma {

// Account-level counters as supplied by the corpus; they describe the whole
// account, while the tweet texts carried alongside may be a sample.
struct Profile {
    long long age_days = 0;
    long long friends = 0;
    long long followers = 0;
    long long retweet_count = 0;
    long long mention_count = 0;
    long long link_count = 0;
};

struct UserRecord {
    std::string user_id;
    std::string name;
    std::vector<std::string> tweets;
    Profile profile;
    std::optional<int> true_gender;  // 1 = female, 0 = male
};

enum class TermKind { word, stem, costem, digram, trigram, hashtag };
inline constexpr std::array<TermKind, 6> kTermKinds = {TermKind::word,    TermKind::stem,
                                                       TermKind::costem,  TermKind::digram,
                                                       TermKind::trigram, TermKind::hashtag};
const char* to_string(TermKind k);

struct TermList {
    TermKind kind = TermKind::word;
    std::vector<std::string> male_terms;    // largest s(t) first
    std::vector<std::string> female_terms;  // smallest s(t) first
    bool short_of_k = false;                // vocabulary smaller than k
};

// Tokenization of one user's messages. A leading "RT " marks a retweet and
// the marker itself is dropped; tokens starting with "http" (links) and "@"
// (mentions) are excluded from words but counted; tokens starting with "#"
// contribute their letters as a hashtag term. Words are maximal lower-cased
// ASCII letter runs.
struct TweetTokens {
    std::vector<std::string> words;
    std::vector<std::string> hashtags;
    long long n_mentions = 0;
    long long n_links = 0;
    long long n_retweets = 0;
};

TweetTokens tokenize_tweets(const std::vector<std::string>& tweets);

// Contiguous within-word character n-grams in order, duplicates kept; empty
// when the word is shorter than n.
std::vector<std::string> char_ngrams(std::string_view word, int n);

// Per-day rates use the account age clamped to >= 1 day. Counter totals add
// the profile counters to what tokenization finds in the supplied messages;
// ratios with a zero denominator are 0 by convention.
struct ProfileStats {
    double tweets_per_day = 0.0;
    double mentions_per_day = 0.0;
    double hashtags_per_day = 0.0;
    double links_per_day = 0.0;
    double retweets_per_day = 0.0;
    double retweet_tweet_ratio = 0.0;
    double friend_follower_ratio = 0.0;
    std::array<double, 7> as_array() const;
};

ProfileStats profile_stats(const UserRecord& u);

// Most-gendered terms by s(t) = male occurrences - female occurrences over
// the labeled users; ties break lexicographically. Lists shorter than k are
// flagged. Unlabeled users are ignored.
TermList select_top_terms(const std::vector<UserRecord>& corpus, TermKind kind, int k);

enum class Scoring { census, namchar };
const char* to_string(Scoring s);

struct PipelineConfig {
    int k = 20;
    double tau = 0.85;
    Scoring scoring = Scoring::census;
    std::vector<std::pair<double, double>> grid;  // (gamma, cost); empty -> default grid
    int grid_folds = 5;
    int grid_repeats = 1;
};

struct PipelineTraining {
    std::uint64_t seed = 0;
    std::size_t n_users = 0;
    std::size_t n_male = 0;
    std::size_t n_female = 0;
    GridResult grid;
};

struct PipelineModel {
    int k = 20;
    double tau = 0.85;
    Scoring scoring = Scoring::census;
    std::vector<TermList> term_lists;  // word, stem, costem, digram, trigram, hashtag
    SvmModel svm;
    PipelineTraining training;
};

// Ordering: per kind (word, stem, costem, digram, trigram, hashtag) the male
// list then the female list, one s(u) entry per term; then the seven profile
// statistics; then the gender score.
std::vector<std::string> pipeline_feature_names(const PipelineModel& m);

struct FeatureVector {
    Eigen::RowVectorXd values;
    GenderScore gender;  // provenance of the final entry
};

FeatureVector user_features(const UserRecord& u, const PipelineModel& m, const NameDb& db,
                            const NamCharModel* namchar);

struct ClassifyResult {
    int label = 0;  // 1 = female
    int stage = 0;  // 1 = threshold short-circuit, 2 = SVM
    double gender_score = 0.0;
    double p_male = 0.0;  // ranking score in [0,1], males high
};

// Stage 1 labels when |gender score| > tau (male when positive); everything
// else goes to the SVM. The scoring config selects the plain dictionary
// score or the NamChar-backed score.
ClassifyResult classify(const PipelineModel& m, const UserRecord& u, const NameDb& db,
                        const NamCharModel* namchar);

// Term lists and the final SVM come from all labeled users; the (gamma, cost)
// grid search runs on one seeded stratified half. Throws DataError unless
// both genders are present (and a NamChar model is supplied when scoring
// requires one).
PipelineModel train_pipeline(const std::vector<UserRecord>& corpus, const PipelineConfig& cfg,
                             const NameDb& db, const NamCharModel* namchar, std::uint64_t seed);

// One JSON object per line. Strict mode throws ParseError with the line
// number; permissive mode records a warning and skips the line.
std::vector<UserRecord> read_users_jsonl(std::istream& in, bool permissive = false,
                                         std::vector<std::string>* warnings = nullptr);

// Versioned JSON (schema_version 1). Term order is part of the schema.
void save_pipeline(const PipelineModel& m, std::ostream& out);
PipelineModel load_pipeline(std::istream& in);

}  // namespace onoma
