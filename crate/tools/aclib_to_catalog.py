#!/usr/bin/env python3
"""Build data/catalog.json from the Aclib pcp presentations (gap/pcpgrp4.gi).

usage: aclib_to_catalog.py PCPGRP4_GI EXPECTATIONS_JSON OUT_JSON

Families and parameter classes are taken from the expectations file.
The integral holonomy matrix of a holonomy generator g is the inverse of
the matrix whose column j holds the same-weight exponents of the
conjugate of lattice generator j by g.
"""
import json
import re
import sys
from fractions import Fraction

HOLONOMY_NAMES = ["alpha", "beta", "gamma"]
LATTICE_NAMES = ["a", "b", "c", "d"]


def parse_word(text):
    toks = [t.strip() for t in text.split(",")]
    return [(int(toks[i]), toks[i + 1]) for i in range(0, len(toks), 2)]


def parse_source(src):
    funcs = {}
    pat = r"ACPcpGroupDim4Nr(\w+)\s*:=\s*function\s*\(([^)]*)\)(.*?)\nend;"
    for m in re.finditer(pat, src, re.S):
        name, params, body = m.group(1), m.group(2), m.group(3)
        key = name if name.startswith("B") else name.lstrip("0")
        n = int(re.search(r"FromTheLeftCollector\(\s*(\d+)\s*\)", body).group(1))
        ro, pw, cj = {}, {}, {}
        for mm in re.finditer(r"SetRelativeOrder\(\s*FTL,\s*(\d+),\s*(\d+)\s*\)", body):
            ro[int(mm.group(1))] = int(mm.group(2))
        for mm in re.finditer(r"SetPower\(\s*FTL,\s*(\d+),\s*\[([^\]]*)\]\s*\)", body):
            pw[int(mm.group(1))] = parse_word(mm.group(2))
        for mm in re.finditer(r"SetConjugate\(\s*FTL,\s*(\d+),\s*(\d+),\s*\[([^\]]*)\]\s*\)", body):
            cj[(int(mm.group(1)), int(mm.group(2)))] = parse_word(mm.group(3))
        funcs[key] = dict(
            name=name,
            params=[p.strip() for p in params.split(",") if p.strip()],
            n=n, ro=ro, pw=pw, cj=cj,
        )
    return funcs


def norm_exp(e):
    e = " ".join(e.split())
    try:
        return int(e)
    except ValueError:
        return e


def const(e):
    return int(eval(e, {"__builtins__": {}}, {}))


def word_json(word, names):
    return [[names[g], norm_exp(e)] for g, e in word if norm_exp(e) != 0]


def inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[x for x in row[n:]] for row in a]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def record(key, f, holonomy, classes):
    n = f["n"]
    h = len(f["ro"])
    three_step = key.startswith("B")
    names = {}
    gens = []
    for i in range(1, h + 1):
        names[i] = HOLONOMY_NAMES[i - 1]
        gens.append({"name": names[i], "role": "holonomy"})
    lattice = list(range(h + 1, n + 1))
    for k, g in enumerate(lattice):
        names[g] = LATTICE_NAMES[k]
        gens.append({"name": names[g], "role": "lattice"})
    weight = dict(zip(lattice, (1, 1, 2, 3) if three_step else (1, 1, 1, 2)))

    relations = []
    for i in range(1, n + 1):
        if i in f["ro"]:
            relations.append({
                "lhs": [[names[i], f["ro"][i]]],
                "rhs": word_json(f["pw"].get(i, []), names),
            })
        for j in range(i + 1, n + 1):
            rhs = f["cj"].get((j, i), [(j, "1")])
            relations.append({
                "lhs": [[names[i], -1], [names[j], 1], [names[i], 1]],
                "rhs": word_json(rhs, names),
            })

    matrices = {}
    for i in range(1, h + 1):
        cols = []
        for gj in lattice:
            w = dict(f["cj"].get((gj, i), [(gj, "1")]))
            cols.append([const(w[gi]) if weight[gi] == weight[gj] and gi in w else 0 for gi in lattice])
        a = [[cols[c][r] for c in range(4)] for r in range(4)]
        matrices[names[i]] = inverse(a)

    return {
        "family": key,
        "holonomy": holonomy,
        "nilpotency_class": 3 if three_step else 2,
        "source": "Aclib ACPcpGroupDim4Nr%s (%s-step, Dekimpe LNM 1639 %s)"
        % (f["name"], "3" if three_step else "2", "7.3" if three_step else "7.2"),
        "orientable": True,
        "parameters": f["params"],
        "generators": gens,
        "relations": relations,
        "holonomy_matrices": matrices,
        "parameter_classes": classes,
    }


def dump(catalog):
    lines = ['{', '  "format_version": 1,', '  "records": [']
    recs = []
    for r in catalog["records"]:
        parts = []
        for k, v in r.items():
            if k == "relations":
                inner = ",\n".join("        " + json.dumps(x) for x in v)
                parts.append('      "relations": [\n%s\n      ]' % inner)
            elif k == "holonomy_matrices":
                inner = ",\n".join("        %s: %s" % (json.dumps(g), json.dumps(m)) for g, m in v.items())
                parts.append('      "holonomy_matrices": {\n%s\n      }' % inner if v else '      "holonomy_matrices": {}')
            else:
                parts.append("      %s: %s" % (json.dumps(k), json.dumps(v)))
        recs.append("    {\n" + ",\n".join(parts) + "\n    }")
    lines.append(",\n".join(recs))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def main():
    src, expectations, out = sys.argv[1:4]
    funcs = parse_source(open(src).read())
    rows = json.load(open(expectations))["rows"]
    order, hol, classes = [], {}, {}
    for row in rows:
        fam = row["family"]
        if fam not in hol:
            order.append(fam)
            hol[fam] = row["holonomy"]
            classes[fam] = []
        classes[fam].append(row["params"])
    catalog = {
        "format_version": 1,
        "records": [record(fam, funcs[fam], hol[fam], classes[fam]) for fam in order],
    }
    open(out, "w").write(dump(catalog))


if __name__ == "__main__":
    main()
