#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace onoma {

enum class Source { census, namdict, custom };

enum class GenderCategory {
    male,
    mostly_male,
    male_if_first_part,
    female,
    mostly_female,
    female_if_first_part,
    unisex,
};

const char* to_string(Source s);
const char* to_string(GenderCategory c);
std::optional<GenderCategory> category_from_string(std::string_view s);

bool is_maleish(GenderCategory c);    // male, mostly_male, male_if_first_part
bool is_femaleish(GenderCategory c);  // female, mostly_female, female_if_first_part

struct RegionUsage {
    std::string region;
    int weight = 0;  // 1 (rare) .. 13 (extremely common)
};

struct DictEntry {
    std::string name;  // as written in the source, escapes decoded
    Source source = Source::custom;
    GenderCategory category = GenderCategory::unisex;
    double male_weight = 0.0;    // M(n); Census: percent of population
    double female_weight = 0.0;  // F(n)
    std::vector<RegionUsage> regions;
    bool derived = false;  // indexed under one part of a compound name
};

// Region names for the 55 frequency columns of the name-dictionary format,
// in column order (Great Britain first).
extern const std::vector<std::string>& namdict_regions();

enum class CensusGender { male, female };
enum class TextEncoding { latin1, cp1252, utf8 };

// Whitespace-separated "NAME FREQ CUMFREQ RANK" lines, one entry per line.
std::vector<DictEntry> parse_census(std::istream& in, CensusGender gender);

// The fixed-column name-dictionary format documented in the file's own
// header. Skips comments, '=' equivalence lines, and the umlaut-expansion
// sort duplicates flagged with '+' in the first frequency column.
std::vector<DictEntry> parse_namdict(std::istream& in,
                                     TextEncoding encoding = TextEncoding::latin1);

// Canonical interchange format: UTF-8, header "name\tcategory\tregions",
// regions as semicolon-separated region:weight pairs. Weights M/F are two
// extra numeric columns so Census data round-trips too.
std::vector<DictEntry> parse_custom(std::istream& in);
void serialize_custom(const std::vector<DictEntry>& entries, std::ostream& out);

class NameDb {
public:
    // All records under a normalized key, or null.
    const std::vector<DictEntry>* lookup(std::string_view normalized) const;

    const std::unordered_map<std::string, std::vector<DictEntry>>& records() const {
        return records_;
    }
    // Stored entry count per source and category (derived part-entries not
    // counted; they alias a stored entry).
    const std::map<std::pair<Source, GenderCategory>, std::size_t>& source_stats() const {
        return stats_;
    }
    std::size_t distinct_names() const { return records_.size(); }

    friend NameDb build_db(const std::vector<DictEntry>& entries);

private:
    std::unordered_map<std::string, std::vector<DictEntry>> records_;
    std::map<std::pair<Source, GenderCategory>, std::size_t> stats_;
};

// Index entries by normalized name. Census male/female files are joined: a
// name present in both yields one record with both weights populated.
// Compound ('+') and multi-word names are additionally indexed under each
// part with derived=true.
NameDb build_db(const std::vector<DictEntry>& entries);

}  // namespace onoma
