#include "onoma/namefeat.hpp"

#include <string_view>

#include "onoma/errors.hpp"

namespace onoma {
namespace {

constexpr bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

constexpr bool in_set(char c, std::string_view set) {
    return set.find(c) != std::string_view::npos;
}

}  // namespace

int count_syllables(std::string_view token) {
    int runs = 0;
    std::size_t last_start = 0, last_end = 0;
    std::size_t i = 0;
    while (i < token.size()) {
        if (is_vowel(token[i])) {
            const std::size_t start = i;
            while (i < token.size() && is_vowel(token[i])) ++i;
            ++runs;
            last_start = start;
            last_end = i;
        } else {
            ++i;
        }
    }
    if (runs > 1 && last_end == token.size() && last_end - last_start == 1 &&
        token[last_start] == 'e' && last_start > 0 && !is_vowel(token[last_start - 1])) {
        --runs;  // silent final 'e'
    }
    return runs > 0 ? runs : 1;
}

NameFeatures extract(std::string_view token) {
    if (token.empty()) throw DataError("extract: empty token");
    NameFeatures f;
    for (const char c : token) {
        if (c < 'a' || c > 'z')
            throw DataError("extract: token must be lower-case ASCII letters");
        if (is_vowel(c)) ++f.n_vowels;
        else ++f.n_consonants;
        if (in_set(c, "blmn")) ++f.n_bouba_consonants;
        if (in_set(c, "uo")) ++f.n_bouba_vowels;
        if (in_set(c, "kpt")) ++f.n_kiki_consonants;
        if (in_set(c, "ie")) ++f.n_kiki_vowels;
        if (in_set(c, "ei")) ++f.vowel_brightness;
    }
    f.n_syllables = count_syllables(token);
    f.ends_in_vowel = is_vowel(token.back()) ? 1 : 0;
    return f;
}

std::array<double, 6> predictor_row(const NameFeatures& f) {
    return {static_cast<double>(f.n_vowels),
            static_cast<double>(f.ends_in_vowel),
            static_cast<double>(f.n_bouba_consonants),
            static_cast<double>(f.n_bouba_vowels),
            static_cast<double>(f.n_kiki_consonants),
            static_cast<double>(f.n_kiki_vowels)};
}

}  // namespace onoma
