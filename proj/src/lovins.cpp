#include "onoma/lovins.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "onoma/errors.hpp"

namespace onoma {

namespace {

struct EndingRule {
    const char* ending;
    const char* condition;
};

struct RespellRule {
    const char* target;
    const char* replacement;
    const char* forbidden;
};

#include "lovins_tables.inc"

bool one_of(char c, std::string_view set) { return set.find(c) != std::string_view::npos; }

// Context conditions from Lovins' Appendix B. `s` is the candidate stem and
// is always at least two characters long here.
bool condition_holds(std::string_view code, std::string_view s) {
    const char last = s.back();
    switch (code[0]) {
        case 'A':
            if (code == "AA")
                return one_of(last, "dflt") || s.ends_with("ph") || s.ends_with("th") ||
                       s.ends_with("er") || s.ends_with("or") || s.ends_with("es");
            return true;
        case 'B':
            if (code == "BB") return s.size() >= 3 && !s.ends_with("met") && !s.ends_with("ryst");
            return s.size() >= 3;
        case 'C':
            if (code == "CC") return last == 'l';
            return s.size() >= 4;
        case 'D': return s.size() >= 5;
        case 'E': return last != 'e';
        case 'F': return s.size() >= 3 && last != 'e';
        case 'G': return s.size() >= 3 && last == 'f';
        case 'H': return s.ends_with("t") || s.ends_with("ll");
        case 'I': return !one_of(last, "oe");
        case 'J': return !one_of(last, "ae");
        case 'K': return s.size() >= 3 && (one_of(last, "li") || (last == 'e' && s[s.size() - 3] == 'u'));
        case 'L': return !one_of(last, "ux") && (last != 's' || s[s.size() - 2] == 'o');
        case 'M': return !one_of(last, "acem");
        case 'N': return s.size() >= 4 || (s.size() == 3 && last != 's');
        case 'O': return one_of(last, "li");
        case 'P': return last != 'c';
        case 'Q': return s.size() >= 3 && !one_of(last, "ln");
        case 'R': return one_of(last, "nr");
        case 'S': return s.ends_with("dr") || (last == 't' && !s.ends_with("tt"));
        case 'T': return last == 's' || (last == 't' && !s.ends_with("ot"));
        case 'U': return one_of(last, "lmnr");
        case 'V': return last == 'c';
        case 'W': return !one_of(last, "su");
        case 'X': return one_of(last, "li") || (s.size() >= 3 && last == 'e' && s[s.size() - 3] == 'u');
        case 'Y': return s.ends_with("in");
        case 'Z': return last != 'f';
        default: throw DataError("unknown stemmer condition code: " + std::string(code));
    }
}

const std::unordered_map<std::string_view, std::string_view>& ending_index() {
    static const auto* index = [] {
        auto* m = new std::unordered_map<std::string_view, std::string_view>();
        for (const auto& rule : kEndings) m->emplace(rule.ending, rule.condition);
        return m;
    }();
    return *index;
}

// Longest ending whose condition accepts the remaining stem wins; on
// condition failure the search backtracks to shorter endings. The stem is
// never shortened below two characters.
std::string_view remove_ending(std::string_view word) {
    const auto& index = ending_index();
    const std::size_t longest = std::min<std::size_t>(11, word.size() - 2);
    for (std::size_t el = longest; el >= 1; --el) {
        const auto it = index.find(word.substr(word.size() - el));
        if (it == index.end()) continue;
        const std::string_view stem = word.substr(0, word.size() - el);
        if (condition_holds(it->second, stem)) return stem;
    }
    return word;
}

std::string recode(std::string_view pre) {
    std::string stem(pre);
    if (stem.size() >= 2) {
        const std::string_view tail = std::string_view(stem).substr(stem.size() - 2);
        for (const char* d : kDoubles) {
            if (tail == d) {
                stem.pop_back();
                break;
            }
        }
    }
    const RespellRule* best = nullptr;
    for (const auto& rule : kRespells) {
        const std::string_view target = rule.target;
        if (!std::string_view(stem).ends_with(target)) continue;
        if (best == nullptr || target.size() > std::string_view(best->target).size()) best = &rule;
    }
    if (best != nullptr) {
        const std::string_view target = best->target;
        const std::string_view forbidden = best->forbidden;
        if (stem.size() > target.size() &&
            one_of(stem[stem.size() - target.size() - 1], forbidden))
            return stem;
        stem.replace(stem.size() - target.size(), target.size(), best->replacement);
    }
    return stem;
}

}  // namespace

LovinsParts lovins_stem_parts(std::string_view word) {
    if (word.size() < 3) return {std::string(word), std::string(word)};
    const std::string_view pre = remove_ending(word);
    return {std::string(pre), recode(pre)};
}

std::string lovins_stem(std::string_view word) { return lovins_stem_parts(word).stem; }

std::string costem(std::string_view word, std::string_view pre_recode_stem) {
    if (!word.starts_with(pre_recode_stem)) return {};
    return std::string(word.substr(pre_recode_stem.size()));
}

LovinsTables load_lovins_tables(std::istream& in) {
    LovinsTables tables;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (fields[0] == "ending" && fields.size() == 3)
            tables.endings.push_back({fields[1], fields[2]});
        else if (fields[0] == "double" && fields.size() == 2)
            tables.doubles.push_back(fields[1]);
        else if (fields[0] == "respell" && (fields.size() == 3 || fields.size() == 4))
            tables.respells.push_back({fields[1], fields[2], fields.size() == 4 ? fields[3] : ""});
        else
            throw ParseError("bad stemmer rule row", line_no);
    }
    return tables;
}

LovinsTables builtin_lovins_tables() {
    LovinsTables tables;
    for (const auto& rule : kEndings) tables.endings.push_back({rule.ending, rule.condition});
    for (const char* d : kDoubles) tables.doubles.emplace_back(d);
    for (const auto& rule : kRespells)
        tables.respells.push_back({rule.target, rule.replacement, rule.forbidden});
    return tables;
}

}  // namespace onoma
