#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "onoma/corpus.hpp"

namespace onoma {

struct NormalizedName {
    std::string original;
    std::string ascii;    // post-transliteration
    std::string cleaned;  // [a-z] and single interior spaces
    std::vector<std::string> tokens;
};

// Fold Latin letters with diacritics to their ASCII base (ü→u, ß→ss);
// characters with no Latin base pass through for the drop step. Input is
// UTF-8; bytes that do not form valid UTF-8 are read as Latin-1.
std::string transliterate(std::string_view s);

// transliterate, drop non-letters (whitespace kept as separator), collapse
// whitespace, lower-case, tokenize. Idempotent.
NormalizedName normalize(std::string_view s);

// normalize() and join the tokens without separators ("Jun+Wei" → "junwei").
std::string normalize_joined(std::string_view s);

struct FirstMatch {
    std::size_t token_index = 0;
    std::string token;
    const std::vector<DictEntry>* records = nullptr;
};

// Scan tokens left to right; first token present in db wins.
std::optional<FirstMatch> first_match(const NameDb& db, const NormalizedName& n);

}  // namespace onoma
