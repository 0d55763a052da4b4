#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace onoma {

// Lovins (1968) suffix stripper: longest-ending removal under context
// conditions, then recoding (undoubling + respelling). `pre_recode` is the
// stem before recoding; co-stem slicing uses it so that word == pre_recode
// + costem byte-for-byte.
struct LovinsParts {
    std::string pre_recode;
    std::string stem;
};

LovinsParts lovins_stem_parts(std::string_view word);
std::string lovins_stem(std::string_view word);

// The removed suffix; empty when the word was not shortened.
std::string costem(std::string_view word, std::string_view pre_recode_stem);

struct LovinsEnding {
    std::string ending;
    std::string condition;
};

struct LovinsRespell {
    std::string target;
    std::string replacement;
    std::string forbidden_preceding;
};

// Tables parsed from the tab-separated rule file (kind\tfields...); used to
// audit the compiled-in tables against the shipped data file.
struct LovinsTables {
    std::vector<LovinsEnding> endings;
    std::vector<std::string> doubles;
    std::vector<LovinsRespell> respells;
};

LovinsTables load_lovins_tables(std::istream& in);
LovinsTables builtin_lovins_tables();

}  // namespace onoma
