#!/usr/bin/env python3
"""Regenerate src/translit_table.inc.

Emits a sorted codepoint -> ASCII replacement table: NFKD decomposition with
combining marks stripped, kept only when the result is pure ASCII, plus a
small exception table for letters with no decomposition. Codepoints absent
from the table pass through transliteration unchanged (and are dropped later
by the non-letter filter). Run from the repository root:

    python3 tools/gen_translit_table.py > src/translit_table.inc
"""
import sys
import unicodedata

EXCEPTIONS = {
    "ß": "ss", "ẞ": "ss", "æ": "ae", "Æ": "AE",
    "ø": "o", "Ø": "O", "đ": "d", "Đ": "D",
}


def mapping(cp: int):
    ch = chr(cp)
    if ch in EXCEPTIONS:
        return EXCEPTIONS[ch]
    dec = unicodedata.normalize("NFKD", ch)
    base = "".join(c for c in dec if not unicodedata.combining(c))
    if base and all(ord(c) < 128 for c in base):
        return base
    return None


def main():
    out = sys.stdout
    out.write("// Generated by tools/gen_translit_table.py -- do not edit.\n")
    out.write("// Unicode data version: %s\n" % unicodedata.unidata_version)
    entries = []
    for cp in range(0x80, 0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        rep = mapping(cp)
        if rep is not None:
            entries.append((cp, rep))
    out.write("// entries: %d\n" % len(entries))
    for cp, rep in entries:
        esc = rep.replace("\\", "\\\\").replace('"', '\\"')
        out.write('{0x%X, "%s"},\n' % (cp, esc))


if __name__ == "__main__":
    main()
