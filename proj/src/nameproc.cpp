#include "onoma/nameproc.hpp"

#include <algorithm>
#include <cctype>

namespace onoma {
namespace {

struct TranslitEntry {
    char32_t cp;
    const char* out;
};

constexpr TranslitEntry kTranslit[] = {
#include "translit_table.inc"
};

const char* translit_lookup(char32_t cp) {
    auto it = std::lower_bound(std::begin(kTranslit), std::end(kTranslit), cp,
                               [](const TranslitEntry& e, char32_t v) { return e.cp < v; });
    if (it != std::end(kTranslit) && it->cp == cp) return it->out;
    return nullptr;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Decode the next codepoint; malformed sequences fall back to one byte read
// as Latin-1 so arbitrary byte strings are still processable.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    const auto b = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    const unsigned char c0 = b(i);
    if (c0 < 0x80) {
        ++i;
        return c0;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) {
        len = 2;
        cp = c0 & 0x1F;
    } else if ((c0 & 0xF0) == 0xE0) {
        len = 3;
        cp = c0 & 0x0F;
    } else if ((c0 & 0xF8) == 0xF0) {
        len = 4;
        cp = c0 & 0x07;
    } else {
        ++i;
        return c0;  // stray continuation byte: Latin-1 fallback
    }
    if (i + len > s.size()) {
        ++i;
        return c0;
    }
    for (std::size_t k = 1; k < len; ++k) {
        if ((b(i + k) & 0xC0) != 0x80) {
            ++i;
            return c0;
        }
        cp = (cp << 6) | (b(i + k) & 0x3F);
    }
    constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return c0;
    }
    i += len;
    return cp;
}

}  // namespace

std::string transliterate(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const char32_t cp = next_codepoint(s, i);
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
            continue;
        }
        if (const char* rep = translit_lookup(cp)) {
            out += rep;
        } else {
            append_utf8(out, cp);
        }
    }
    return out;
}

NormalizedName normalize(std::string_view s) {
    NormalizedName n;
    n.original.assign(s);
    n.ascii = transliterate(s);
    // Drop everything but ASCII letters; ASCII whitespace separates tokens.
    // (Multi-byte pass-through characters consist of bytes >= 0x80 only, so a
    // byte-level filter is exact here.)
    std::string cleaned;
    cleaned.reserve(n.ascii.size());
    bool pending_space = false;
    for (const char ch : n.ascii) {
        const auto uc = static_cast<unsigned char>(ch);
        if (uc < 0x80 && std::isalpha(uc)) {
            if (pending_space && !cleaned.empty()) cleaned.push_back(' ');
            pending_space = false;
            cleaned.push_back(static_cast<char>(std::tolower(uc)));
        } else if (uc < 0x80 && std::isspace(uc)) {
            pending_space = true;
        }
    }
    n.cleaned = std::move(cleaned);
    std::size_t pos = 0;
    while (pos < n.cleaned.size()) {
        const std::size_t sp = n.cleaned.find(' ', pos);
        const std::size_t end = (sp == std::string::npos) ? n.cleaned.size() : sp;
        n.tokens.emplace_back(n.cleaned.substr(pos, end - pos));
        pos = end + 1;
    }
    return n;
}

std::string normalize_joined(std::string_view s) {
    const NormalizedName n = normalize(s);
    std::string out;
    for (const auto& t : n.tokens) out += t;
    return out;
}

std::optional<FirstMatch> first_match(const NameDb& db, const NormalizedName& n) {
    for (std::size_t i = 0; i < n.tokens.size(); ++i) {
        if (const auto* recs = db.lookup(n.tokens[i])) {
            return FirstMatch{i, n.tokens[i], recs};
        }
    }
    return std::nullopt;
}

}  // namespace onoma
