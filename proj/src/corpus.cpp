#include "onoma/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "onoma/errors.hpp"
#include "onoma/nameproc.hpp"

namespace onoma {
namespace {

// <X/>-style escapes used by the name dictionary for letters outside
// Latin-1, per the table in its header. Keys are UTF-8.
struct Escape {
    const char* key;
    char32_t cp;
};
constexpr Escape kEscapes[] = {
    {"<A/>", 256},  {"<a/>", 257},  {"<Â>", 258},   {"<â>", 259},
    {"<A,>", 260},  {"<a,>", 261},  {"<C´>", 262},  {"<c´>", 263},
    {"<CH>", 268},  {"<C^>", 268},  {"<c^>", 269},  {"<ch>", 269},
    {"<d´>", 271},  {"<DJ>", 272},  {"<Ð>", 272},   {"<dj>", 273},
    {"<ð>", 273},   {"<E/>", 274},  {"<e/>", 275},  {"<E°>", 278},
    {"<e°>", 279},  {"<E,>", 280},  {"<e,>", 281},  {"<Ê>", 282},
    {"<ê>", 283},   {"<G^>", 286},  {"<g^>", 287},  {"<G,>", 290},
    {"<g´>", 291},  {"<I/>", 298},  {"<i/>", 299},  {"<I°>", 304},
    {"<i>", 305},   {"<IJ>", 306},  {"<ij>", 307},  {"<K,>", 310},
    {"<k,>", 311},  {"<L,>", 315},  {"<l,>", 316},  {"<L´>", 317},
    {"<l´>", 318},  {"<L/>", 321},  {"<l/>", 322},  {"<N,>", 325},
    {"<n,>", 326},  {"<N^>", 327},  {"<n^>", 328},  {"<Ö>", 336},
    {"<ö>", 337},   {"<OE>", 338},  {"<Œ>", 338},   {"<oe>", 339},
    {"<œ>", 339},   {"<R^>", 344},  {"<r^>", 345},  {"<S,>", 350},
    {"<s,>", 351},  {"<SCH>", 352}, {"<SH>", 352},  {"<S^>", 352},
    {"<Š>", 352},   {"<s^>", 353},  {"<sch>", 353}, {"<sh>", 353},
    {"<š>", 353},   {"<T,>", 354},  {"<t,>", 355},  {"<t´>", 357},
    {"<U/>", 362},  {"<u/>", 363},  {"<U°>", 366},  {"<u°>", 367},
    {"<U,>", 370},  {"<u,>", 371},  {"<Z°>", 379},  {"<z°>", 380},
    {"<Z^>", 381},  {"<z^>", 382},  {"<ß>", 7838},
};

void append_utf8_cp(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// CP-1252 positions 0x80-0x9F that differ from Latin-1. 0 = undefined byte.
constexpr char32_t kCp1252High[32] = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178,
};

std::string bytes_to_utf8(std::string_view bytes, TextEncoding enc, std::size_t line_no) {
    if (enc == TextEncoding::utf8) return std::string(bytes);
    std::string out;
    out.reserve(bytes.size());
    for (const char c : bytes) {
        auto b = static_cast<unsigned char>(c);
        char32_t cp = b;
        if (enc == TextEncoding::cp1252 && b >= 0x80 && b <= 0x9F) {
            cp = kCp1252High[b - 0x80];
            if (cp == 0)
                throw ParseError("byte 0x" + std::to_string(b) + " undefined in cp1252",
                                 line_no);
        }
        append_utf8_cp(out, cp);
    }
    return out;
}

std::string decode_escapes(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    std::size_t i = 0;
    while (i < name.size()) {
        if (name[i] == '<') {
            const std::size_t j = name.find('>', i);
            if (j != std::string_view::npos) {
                const std::string_view esc = name.substr(i, j - i + 1);
                const auto* hit =
                    std::find_if(std::begin(kEscapes), std::end(kEscapes),
                                 [&](const Escape& e) { return esc == e.key; });
                if (hit != std::end(kEscapes)) {
                    append_utf8_cp(out, hit->cp);
                    i = j + 1;
                    continue;
                }
            }
        }
        out.push_back(name[i]);
        ++i;
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) fields.emplace_back(line.substr(start, i - start));
    }
    return fields;
}

bool parse_double(std::string_view s, double& out) {
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

std::string rstrip(std::string_view s) {
    std::size_t end = s.size();
    while (end > 0 && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return std::string(s.substr(0, end));
}

std::vector<std::string> split_on(std::string_view s, char delim) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = s.find(delim, pos);
        const std::size_t end = (next == std::string_view::npos) ? s.size() : next;
        parts.emplace_back(s.substr(pos, end - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return parts;
}

void categorical_weights(DictEntry& e) {
    switch (e.category) {
        case GenderCategory::male:
        case GenderCategory::male_if_first_part:
            e.male_weight = 1.0;
            break;
        case GenderCategory::mostly_male:
            e.male_weight = 0.8;
            break;
        case GenderCategory::female:
        case GenderCategory::female_if_first_part:
            e.female_weight = 1.0;
            break;
        case GenderCategory::mostly_female:
            e.female_weight = 0.8;
            break;
        case GenderCategory::unisex:
            break;
    }
}

}  // namespace

const char* to_string(Source s) {
    switch (s) {
        case Source::census: return "census";
        case Source::namdict: return "namdict";
        case Source::custom: return "custom";
    }
    return "?";
}

const char* to_string(GenderCategory c) {
    switch (c) {
        case GenderCategory::male: return "male";
        case GenderCategory::mostly_male: return "mostly_male";
        case GenderCategory::male_if_first_part: return "male_if_first_part";
        case GenderCategory::female: return "female";
        case GenderCategory::mostly_female: return "mostly_female";
        case GenderCategory::female_if_first_part: return "female_if_first_part";
        case GenderCategory::unisex: return "unisex";
    }
    return "?";
}

std::optional<GenderCategory> category_from_string(std::string_view s) {
    static constexpr std::pair<const char*, GenderCategory> kMap[] = {
        {"male", GenderCategory::male},
        {"mostly_male", GenderCategory::mostly_male},
        {"male_if_first_part", GenderCategory::male_if_first_part},
        {"female", GenderCategory::female},
        {"mostly_female", GenderCategory::mostly_female},
        {"female_if_first_part", GenderCategory::female_if_first_part},
        {"unisex", GenderCategory::unisex},
    };
    for (const auto& [name, cat] : kMap)
        if (s == name) return cat;
    return std::nullopt;
}

bool is_maleish(GenderCategory c) {
    return c == GenderCategory::male || c == GenderCategory::mostly_male ||
           c == GenderCategory::male_if_first_part;
}

bool is_femaleish(GenderCategory c) {
    return c == GenderCategory::female || c == GenderCategory::mostly_female ||
           c == GenderCategory::female_if_first_part;
}

const std::vector<std::string>& namdict_regions() {
    static const std::vector<std::string> kRegions = {
        "Great Britain", "Ireland", "U.S.A.", "Italy", "Malta", "Portugal",
        "Spain", "France", "Belgium", "Luxembourg", "the Netherlands",
        "East Frisia", "Germany", "Austria", "Swiss", "Iceland", "Denmark",
        "Norway", "Sweden", "Finland", "Estonia", "Latvia", "Lithuania",
        "Poland", "Czech Republic", "Slovakia", "Hungary", "Romania",
        "Bulgaria", "Bosnia and Herzegovina", "Croatia", "Kosovo",
        "Macedonia", "Montenegro", "Serbia", "Slovenia", "Albania", "Greece",
        "Russia", "Belarus", "Moldova", "Ukraine", "Armenia", "Azerbaijan",
        "Georgia", "Kazakhstan/Uzbekistan,etc.", "Turkey", "Arabia/Persia",
        "Israel", "China", "India/Sri Lanka", "Japan", "Korea", "Vietnam",
        "other countries",
    };
    return kRegions;
}

std::vector<DictEntry> parse_census(std::istream& in, CensusGender gender) {
    std::vector<DictEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto fields = split_ws(line);
        if (fields.empty()) continue;
        if (fields.size() != 4)
            throw ParseError("expected 4 fields (NAME FREQ CUMFREQ RANK), got " +
                                 std::to_string(fields.size()),
                             line_no);
        double freq = 0, cumfreq = 0, rank = 0;
        if (!parse_double(fields[1], freq) || !parse_double(fields[2], cumfreq) ||
            !parse_double(fields[3], rank))
            throw ParseError("non-numeric frequency field", line_no);
        DictEntry e;
        e.name = fields[0];
        e.source = Source::census;
        if (gender == CensusGender::male) {
            e.category = GenderCategory::male;
            e.male_weight = freq;
        } else {
            e.category = GenderCategory::female;
            e.female_weight = freq;
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<DictEntry> parse_namdict(std::istream& in, TextEncoding encoding) {
    std::vector<DictEntry> entries;
    const auto& regions = namdict_regions();
    std::string line;
    std::size_t line_no = 0;
    bool started = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!started) {
            if (line.find("begin of name list") != std::string::npos) started = true;
            continue;
        }
        if (line.empty() || line[0] == '#' || line[0] == '=') continue;
        // '+' in the first frequency column flags the sort duplicate of an
        // umlaut name ("Ärne" filed also as "Arne"); the file's own rules say
        // to use the original.
        if (line.size() > 29 && line[29] == '+') continue;
        const std::string code = rstrip(line.substr(0, std::min<std::size_t>(2, line.size())));
        GenderCategory cat;
        if (code == "M") cat = GenderCategory::male;
        else if (code == "1M") cat = GenderCategory::male_if_first_part;
        else if (code == "?M") cat = GenderCategory::mostly_male;
        else if (code == "F") cat = GenderCategory::female;
        else if (code == "1F") cat = GenderCategory::female_if_first_part;
        else if (code == "?F") cat = GenderCategory::mostly_female;
        else if (code == "?") cat = GenderCategory::unisex;
        else throw ParseError("unknown gender code \"" + code + "\"", line_no);

        std::string name_field =
            line.size() > 3 ? line.substr(3, std::min<std::size_t>(26, line.size() - 3)) : "";
        DictEntry e;
        e.name = decode_escapes(rstrip(bytes_to_utf8(name_field, encoding, line_no)));
        if (e.name.empty()) throw ParseError("empty name field", line_no);
        e.source = Source::namdict;
        e.category = cat;
        categorical_weights(e);
        if (line.size() > 30) {
            const std::string freqs = line.substr(30, std::min<std::size_t>(55, line.size() - 30));
            for (std::size_t i = 0; i < freqs.size(); ++i) {
                const char c = freqs[i];
                if (c == ' ' || c == '$') continue;
                int w = 0;
                if (c >= '0' && c <= '9') w = c - '0';
                else if (c >= 'A' && c <= 'F') w = c - 'A' + 10;
                else throw ParseError(std::string("bad frequency digit '") + c + "'", line_no);
                e.regions.push_back({regions[i], w});
            }
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<DictEntry> parse_custom(std::istream& in) {
    std::vector<DictEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cols = split_on(line, '\t');
        if (!have_header) {
            if (cols.size() < 3 || cols[0] != "name" || cols[1] != "category" ||
                cols[2] != "regions")
                throw ParseError("expected header starting name\\tcategory\\tregions", line_no);
            header = cols;
            have_header = true;
            continue;
        }
        if (cols.size() < 3 || cols.size() > header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " columns, got " +
                                 std::to_string(cols.size()),
                             line_no);
        DictEntry e;
        e.name = cols[0];
        if (e.name.empty()) throw ParseError("empty name", line_no);
        const auto cat = category_from_string(cols[1]);
        if (!cat) throw ParseError("unknown category \"" + cols[1] + "\"", line_no);
        e.category = *cat;
        e.source = Source::custom;
        if (!cols[2].empty()) {
            for (const auto& pair : split_on(cols[2], ';')) {
                if (pair.empty()) continue;
                const std::size_t colon = pair.rfind(':');
                if (colon == std::string::npos)
                    throw ParseError("region entry missing ':' weight", line_no);
                double w = 0;
                if (!parse_double(std::string_view(pair).substr(colon + 1), w))
                    throw ParseError("non-numeric region weight", line_no);
                e.regions.push_back({pair.substr(0, colon), static_cast<int>(w)});
            }
        }
        bool have_weights = false;
        for (std::size_t c = 3; c < cols.size(); ++c) {
            if (header[c] == "male_weight") {
                if (!parse_double(cols[c], e.male_weight))
                    throw ParseError("non-numeric male_weight", line_no);
                have_weights = true;
            } else if (header[c] == "female_weight") {
                if (!parse_double(cols[c], e.female_weight))
                    throw ParseError("non-numeric female_weight", line_no);
                have_weights = true;
            } else if (header[c] == "source") {
                if (cols[c] == "census") e.source = Source::census;
                else if (cols[c] == "namdict") e.source = Source::namdict;
                else if (cols[c] == "custom") e.source = Source::custom;
                else throw ParseError("unknown source \"" + cols[c] + "\"", line_no);
            }
        }
        if (!have_weights) categorical_weights(e);
        entries.push_back(std::move(e));
    }
    if (!have_header && !entries.empty())
        throw ParseError("missing header", 1);
    return entries;
}

void serialize_custom(const std::vector<DictEntry>& entries, std::ostream& out) {
    out << "name\tcategory\tregions\tmale_weight\tfemale_weight\tsource\n";
    for (const auto& e : entries) {
        if (e.derived) continue;  // re-derived by build_db
        out << e.name << '\t' << to_string(e.category) << '\t';
        for (std::size_t i = 0; i < e.regions.size(); ++i) {
            if (i) out << ';';
            out << e.regions[i].region << ':' << e.regions[i].weight;
        }
        out << '\t' << e.male_weight << '\t' << e.female_weight << '\t'
            << to_string(e.source) << '\n';
    }
}

const std::vector<DictEntry>* NameDb::lookup(std::string_view normalized) const {
    const auto it = records_.find(std::string(normalized));
    if (it == records_.end()) return nullptr;
    return &it->second;
}

NameDb build_db(const std::vector<DictEntry>& entries) {
    NameDb db;
    for (const auto& entry : entries) {
        const NormalizedName norm = normalize(entry.name);
        if (norm.tokens.empty()) continue;  // nothing indexable
        const std::string key = norm.cleaned;
        auto& bucket = db.records_[key];
        bool merged = false;
        if (entry.source == Source::census) {
            // Join the two Census files: one record per name with both
            // weights. A name in both files is by definition used by both
            // genders, i.e. unisex.
            for (auto& existing : bucket) {
                if (existing.source != Source::census || existing.derived) continue;
                const bool adds_male = entry.male_weight > 0 && existing.male_weight == 0;
                const bool adds_female = entry.female_weight > 0 && existing.female_weight == 0;
                if (adds_male || adds_female) {
                    db.stats_[{existing.source, existing.category}]--;
                    existing.male_weight += entry.male_weight;
                    existing.female_weight += entry.female_weight;
                    existing.category = GenderCategory::unisex;
                    db.stats_[{existing.source, existing.category}]++;
                    merged = true;
                    break;
                }
            }
        }
        if (!merged) {
            bucket.push_back(entry);
            bucket.back().derived = false;
            db.stats_[{entry.source, entry.category}]++;
        }
        // Compound ('+') and multi-word names: index each part, too.
        std::string splittable = entry.name;
        std::replace(splittable.begin(), splittable.end(), '+', ' ');
        const NormalizedName parts = normalize(splittable);
        if (parts.tokens.size() > 1) {
            for (const auto& part : parts.tokens) {
                if (part == key) continue;
                DictEntry d = entry;
                d.derived = true;
                db.records_[part].push_back(std::move(d));
            }
        }
    }
    return db;
}

}  // namespace onoma
