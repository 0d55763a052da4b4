#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "onoma/corpus.hpp"
#include "onoma/nameproc.hpp"

using namespace onoma;

TEST_CASE("transliterate folds diacritics to ASCII") {
    CHECK(transliterate("Jürgen") == "Jurgen");
    CHECK(transliterate("Ángela") == "Angela");
    CHECK(transliterate("abc") == "abc");
    CHECK(transliterate("ñoño") == "nono");
    CHECK(transliterate("Strauß") == "Strauss");
    CHECK(transliterate("Ærø") == "AEro");
    CHECK(transliterate("Đorđe") == "Dorde");
}

TEST_CASE("transliterate leaves characters without a Latin base untouched") {
    CHECK(transliterate("山田") == "山田");
    CHECK(transliterate("Иван") == "Иван");
    CHECK(transliterate("Þ") == "Þ");
}

TEST_CASE("transliterate reads invalid UTF-8 bytes as Latin-1") {
    const std::string latin1_uuml = "J\xfcrgen";
    CHECK(transliterate(latin1_uuml) == "Jurgen");
}

TEST_CASE("normalize drops decoration and lower-cases") {
    auto n = normalize("[-!Raphael-]");
    CHECK(n.cleaned == "raphael");
    CHECK(n.tokens == std::vector<std::string>{"raphael"});

    CHECK(normalize("Big Daddy C").tokens == std::vector<std::string>{"big", "daddy", "c"});
    CHECK(normalize("O'Brien").tokens == std::vector<std::string>{"obrien"});
    CHECK(normalize("Anna-Maria").tokens == std::vector<std::string>{"annamaria"});
    CHECK(normalize("AlanLeong").tokens == std::vector<std::string>{"alanleong"});
}

TEST_CASE("normalize keeps whitespace as the only separator") {
    auto n = normalize("  anna \t maria\n");
    CHECK(n.cleaned == "anna maria");
    CHECK(n.tokens == std::vector<std::string>{"anna", "maria"});
}

TEST_CASE("strings without letters normalize to nothing") {
    CHECK(normalize("💫✨").tokens.empty());
    CHECK(normalize("12 34 !!").tokens.empty());
    CHECK(normalize("").tokens.empty());
    CHECK(normalize("山田太郎").tokens.empty());
}

TEST_CASE("normalize_joined removes separators entirely") {
    CHECK(normalize_joined("Jun+Wei") == "junwei");
    CHECK(normalize_joined("Jan Willem") == "janwillem");
    CHECK(normalize_joined("💫") == "");
}

TEST_CASE("normalize is idempotent on fixed samples") {
    for (const char* s : {"Jürgen", "[-!Raphael-]", "Big Daddy C", "O'Brien",
                          "💫✨", "MÜLLER-lüdenscheidt", "  x  Y  z  "}) {
        auto once = normalize(s);
        auto twice = normalize(once.cleaned);
        CHECK(twice.cleaned == once.cleaned);
        CHECK(twice.tokens == once.tokens);
    }
}

TEST_CASE("normalize is idempotent on random byte strings") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> len(0, 24);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int it = 0; it < 500; ++it) {
        std::string s;
        const int k = len(rng);
        for (int i = 0; i < k; ++i) s.push_back(static_cast<char>(byte(rng)));
        auto once = normalize(s);
        auto twice = normalize(once.cleaned);
        CHECK(twice.cleaned == once.cleaned);
        for (char c : once.cleaned)
            CHECK(((c >= 'a' && c <= 'z') || c == ' '));
        CHECK(once.cleaned.find("  ") == std::string::npos);
        if (!once.cleaned.empty()) {
            CHECK(once.cleaned.front() != ' ');
            CHECK(once.cleaned.back() != ' ');
        }
    }
}

namespace {

NameDb tiny_db(const std::vector<std::string>& names) {
    std::vector<DictEntry> entries;
    for (const auto& raw : names) {
        DictEntry e;
        e.name = raw;
        e.source = Source::namdict;
        e.category = GenderCategory::male;
        entries.push_back(e);
    }
    return build_db(entries);
}

}  // namespace

TEST_CASE("first_match scans left to right") {
    auto db = tiny_db({"sullivan"});
    auto m = first_match(db, normalize("CJ Sullivan"));
    REQUIRE(m.has_value());
    CHECK(m->token_index == 1);
    CHECK(m->token == "sullivan");
    REQUIRE(m->records != nullptr);
    CHECK(m->records->front().name == "sullivan");
}

TEST_CASE("first_match prefers the leftmost hit") {
    auto db = tiny_db({"anna", "maria"});
    auto m = first_match(db, normalize("Anna Maria"));
    REQUIRE(m.has_value());
    CHECK(m->token_index == 0);
    CHECK(m->token == "anna");
}

TEST_CASE("first_match is absent without a hit") {
    auto db = tiny_db({"sullivan"});
    CHECK_FALSE(first_match(db, normalize("xqz yzq")).has_value());
    CHECK_FALSE(first_match(db, normalize("")).has_value());
}

TEST_CASE("first_match equals the brute-force minimal index") {
    auto db = tiny_db({"bo", "cy", "dee"});
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> ntok(0, 4);
    std::uniform_int_distribution<int> pick(0, 5);
    const std::vector<std::string> pool = {"bo", "cy", "dee", "ed", "fay", "gus"};
    for (int it = 0; it < 200; ++it) {
        std::string raw;
        const int k = ntok(rng);
        for (int i = 0; i < k; ++i) {
            if (!raw.empty()) raw += ' ';
            raw += pool[static_cast<std::size_t>(pick(rng))];
        }
        auto n = normalize(raw);
        auto m = first_match(db, n);
        std::size_t expect = n.tokens.size();
        for (std::size_t i = 0; i < n.tokens.size(); ++i) {
            if (db.lookup(n.tokens[i]) != nullptr) {
                expect = i;
                break;
            }
        }
        if (expect == n.tokens.size()) {
            CHECK_FALSE(m.has_value());
        } else {
            REQUIRE(m.has_value());
            CHECK(m->token_index == expect);
        }
    }
}
