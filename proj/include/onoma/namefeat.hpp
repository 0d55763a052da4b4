#pragma once

#include <array>
#include <string_view>

namespace onoma {

struct NameFeatures {
    int n_consonants = 0;
    int n_vowels = 0;
    int n_syllables = 0;
    int ends_in_vowel = 0;  // 1 = vowel, 0 = consonant
    int n_bouba_consonants = 0;
    int n_bouba_vowels = 0;
    int n_kiki_consonants = 0;
    int n_kiki_vowels = 0;
    int vowel_brightness = 0;  // bright vowels; excluded from every model
};

// Letter-level characteristics of one normalized token. Vowels are
// {a,e,i,o,u} ('y' is always a consonant); bouba consonants {b,l,m,n},
// bouba vowels {u,o}, kiki consonants {k,p,t}, kiki vowels {i,e},
// bright vowels {e,i}. Throws DataError on empty or non-letter input.
NameFeatures extract(std::string_view token);

// Maximal vowel runs, minimum 1; a trailing lone 'e' after a consonant does
// not open a new syllable when at least one other vowel run exists.
int count_syllables(std::string_view token);

// The model predictor set: everything except vowel brightness, consonant
// count, and syllable count.
inline constexpr std::array<const char*, 6> kPredictorNames = {
    "n_vowels",          "ends_in_vowel",    "n_bouba_consonants",
    "n_bouba_vowels",    "n_kiki_consonants", "n_kiki_vowels",
};

std::array<double, 6> predictor_row(const NameFeatures& f);

}  // namespace onoma
