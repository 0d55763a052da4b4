#!/usr/bin/env python3
"""Regenerate src/lovins_tables.inc from data/lovins/lovins_tables.tsv.

The TSV is the canonical copy of the stemmer tables; the .inc embeds them so
the library needs no file access at runtime. A unit test re-parses the TSV
and asserts it matches the embedded tables. Run from the repository root:

    python3 tools/gen_lovins_inc.py > src/lovins_tables.inc
"""
import sys

ENDINGS, DOUBLES, RESPELLS = [], [], []
with open("data/lovins/lovins_tables.tsv", encoding="utf-8") as fh:
    for raw in fh:
        line = raw.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if parts[0] == "ending":
            ENDINGS.append((parts[1], parts[2]))
        elif parts[0] == "double":
            DOUBLES.append(parts[1])
        elif parts[0] == "respell":
            forbid = parts[3] if len(parts) > 3 else ""
            RESPELLS.append((parts[1], parts[2], forbid))
        else:
            raise SystemExit(f"unknown row kind: {parts[0]!r}")

out = sys.stdout
out.write("// Generated by tools/gen_lovins_inc.py -- do not edit.\n")
out.write(f"// endings: {len(ENDINGS)} doubles: {len(DOUBLES)} respells: {len(RESPELLS)}\n")
out.write("static constexpr EndingRule kEndings[] = {\n")
for ending, cond in ENDINGS:
    out.write(f'    {{"{ending}", "{cond}"}},\n')
out.write("};\n")
out.write("static constexpr const char* kDoubles[] = {\n    ")
out.write(", ".join(f'"{d}"' for d in DOUBLES))
out.write("\n};\n")
out.write("static constexpr RespellRule kRespells[] = {\n")
for target, repl, forbid in RESPELLS:
    out.write(f'    {{"{target}", "{repl}", "{forbid}"}},\n')
out.write("};\n")
