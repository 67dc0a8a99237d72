#!/usr/bin/env python3
# Copyright 2026 The specexp Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Transcribe the published heat coefficients and Dawson simplex formulas
from the LaTeX source into the JSON data files under data/.

Usage: extract_goldens.py SOURCE.md OUTDIR
"""
import json
import re
import sys
from fractions import Fraction
from pathlib import Path


def split_top(expr):
    """Split a LaTeX sum at top-level + and - signs."""
    terms, depth, cur, sign = [], 0, "", 1
    i = 0
    while i < len(expr):
        c = expr[i]
        if c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
        if depth == 0 and c in "+-" and cur.strip():
            terms.append((sign, cur.strip()))
            cur, sign = "", (1 if c == "+" else -1)
        elif depth == 0 and c in "+-":
            sign = sign * (1 if c == "+" else -1)
        else:
            cur += c
        i += 1
    if cur.strip():
        terms.append((sign, cur.strip()))
    return terms


def brace_arg(s, i):
    assert s[i] == "{", s[i:i + 20]
    depth = 0
    for j in range(i, len(s)):
        if s[j] == "{":
            depth += 1
        elif s[j] == "}":
            depth -= 1
            if depth == 0:
                return s[i + 1:j], j + 1
    raise ValueError("unbalanced")


SYM = re.compile(r"([AB])(?:('+)|\^\{\((\d+)\)\})?\(t\)(?:\^\{?(-?\d+(?:/\d+)?)\}?)?")


def parse_factor_list(s):
    """Integer prefactor and list of (letter, order, exponent) symbols."""
    s = s.strip()
    m = re.match(r"^(\d+)\s*", s)
    num = 1
    if m:
        num = int(m.group(1))
        s = s[m.end():]
    syms = []
    pos = 0
    for mm in SYM.finditer(s):
        assert s[pos:mm.start()].strip() == "", (s, pos)
        pos = mm.end()
        letter = mm.group(1)
        order = len(mm.group(2)) if mm.group(2) else (int(mm.group(3)) if mm.group(3) else 0)
        exp = Fraction(mm.group(4)) if mm.group(4) else Fraction(1)
        syms.append((letter, order, exp))
    assert s[pos:].strip() == "", s[pos:]
    return num, syms


def parse_ab_term(sign, t):
    t = t.strip().rstrip(",. ")
    assert t.startswith("\\frac"), t
    num, i = brace_arg(t, 5)
    den, i = brace_arg(t, i)
    assert t[i:].strip() == "", t[i:]
    if num.strip() == "1":
        num = ""
    pn, nsyms = parse_factor_list(num)
    pd, dsyms = parse_factor_list(den)
    coeff = Fraction(sign * pn, pd)
    bhalf, a, b = 0, {}, {}
    for letter, order, exp in nsyms:
        if order == 0:
            assert letter == "B"
            bhalf += int(2 * exp)
        else:
            tgt = a if letter == "A" else b
            tgt[order] = tgt.get(order, 0) + int(exp)
    for letter, order, exp in dsyms:
        assert letter == "B" and order == 0, den
        bhalf -= int(2 * exp)
    return coeff, bhalf, a, b


def int_json(x):
    return x if abs(x) < 2**62 else str(x)


def ab_json(expr):
    acc = {}
    for sign, t in split_top(expr):
        c, bh, a, b = parse_ab_term(sign, t)
        key = (bh, tuple(sorted(a.items())), tuple(sorted(b.items())))
        acc[key] = acc.get(key, Fraction(0)) + c
    terms = []
    for (bh, a, b), c in sorted(acc.items()):
        if c == 0:
            continue
        terms.append({"coeff": {"p": int_json(c.numerator), "q": int_json(c.denominator), "p2": 0, "q2": 1},
                      "bHalf": bh, "a": [list(x) for x in a], "b": [list(x) for x in b]})
    return {"terms": terms}


def a_form_json(terms):
    """terms: list of (Fraction, aPow, {order: exp})."""
    acc = {}
    for c, p, d in terms:
        key = (p, tuple(sorted(d.items())))
        acc[key] = acc.get(key, Fraction(0)) + c
    out = []
    for (p, d), c in sorted(acc.items()):
        if c:
            out.append({"coeff": {"p": c.numerator, "q": c.denominator}, "aPow": p, "d": [list(x) for x in d]})
    return {"terms": out}


# Hand transcription of the scale-factor forms of a_0, a_2, a_4.
F = Fraction
A_FORM = {
    0: [(F(1, 2), 3, {})],
    1: [(F(1, 4), 2, {2: 1}), (F(1, 4), 1, {1: 2}), (F(-1, 4), 1, {})],
    2: [(F(3, 120), 2, {4: 1}), (F(9, 120), 1, {1: 1, 3: 1}), (F(3, 120), 1, {2: 2}),
        (F(-4, 120), 0, {1: 2, 2: 1}), (F(-5, 120), 0, {2: 1})],
    # Printed sixth-order a-form, transcribed verbatim including the repeated
    # A'A'''/a terms; only used as a diagnostic.
    3: [(F(-1, 240), -2, {1: 2, 2: 1}), (F(-1, 84), -2, {1: 4, 2: 1}), (F(1, 120), -1, {2: 2}),
        (F(1, 21), -1, {1: 2, 2: 2}), (F(-1, 90), 0, {2: 3}), (F(1, 240), -1, {1: 1, 3: 1}),
        (F(1, 84), -1, {1: 1, 3: 1}), (F(-1, 20), 0, {1: 1, 2: 1, 3: 1}), (F(-1, 1680), 1, {3: 2}),
        (F(-1, 240), 0, {4: 1}), (F(-1, 120), 0, {1: 2, 4: 1}), (F(1, 840), 1, {2: 1, 4: 1}),
        (F(1, 140), 1, {1: 1, 5: 1}), (F(1, 560), 2, {6: 1})],
}


FARG = re.compile(r"F\\left\(\\frac\{([^{}]*)\}\{2 \\sqrt\{2\}\}\\right\)")
USUM = re.compile(r"\\left\(([^()]*)\\right\)|u_(\d)")


def uset(s):
    return sorted(int(x) for x in re.findall(r"u_(\d)", s))


def parse_dawson_term(sign, t):
    t = t.strip().rstrip(",. ")
    assert t.startswith("\\frac"), t
    num, i = brace_arg(t, 5)
    den, i = brace_arg(t, i)
    m = FARG.search(num)
    farg = uset(m.group(1))
    rest = num[:m.start()] + num[m.end():]
    rest = rest.replace("\\sqrt{2}", " ")
    cm = re.match(r"\s*(\d+)", rest)
    coeff = int(cm.group(1))
    rest = rest[cm.end():]
    numer = [int(x) for x in re.findall(r"u_(\d)", rest)]
    assert re.sub(r"u_\d", "", rest).strip() == "", rest
    denom = []
    for mm in USUM.finditer(den):
        denom.append(uset(mm.group(1)) if mm.group(1) is not None else [int(mm.group(2))])
    return {"sign": sign, "coeff": coeff, "FArg": farg, "numer": numer, "denom": denom}


def dawson_json(expr, n):
    terms = [parse_dawson_term(s, t) for s, t in split_top(expr)]
    return {"n": n, "sqrt2": True, "terms": terms}


def main():
    src = Path(sys.argv[1]).read_text().splitlines()
    out = Path(sys.argv[2])
    (out / "golden").mkdir(parents=True, exist_ok=True)

    def line_after(pattern, start=0):
        for k in range(start, len(src)):
            if pattern in src[k]:
                return k
        raise KeyError(pattern)

    k0 = line_after("a_0(t) = \\frac{1}{2 B(t)^{3/2}}")
    a0 = src[k0].split("=", 1)[1]
    k2 = line_after("a_2(t) = \\frac{3 A'(t)^2}", k0)
    a2 = src[k2].split("=", 1)[1]
    k4 = line_after("\\begin{math}", k2)
    a4 = src[k4 + 1]
    # the two unnumbered closing sections: Dawson n=4 list, then a_6 and a_8
    tail = [k for k, line in enumerate(src) if line.startswith("\\section*{")]
    ka, kb = tail[0], tail[1]
    k6 = line_after("\\begin{math}", kb)
    a6 = src[k6 + 1]
    k8 = line_after("\\begin{math}", k6 + 2)
    a8 = src[k8 + 1]
    for M, e in enumerate([a0, a2, a4, a6, a8]):
        j = ab_json(e)
        (out / "golden" / f"a{2 * M}_ab.json").write_text(json.dumps(j, indent=1) + "\n")
        print(f"a{2 * M}: {len(j['terms'])} terms")
    for M, t in A_FORM.items():
        name = f"a{2 * M}_a.json" if M < 3 else f"a{2 * M}_a_printed.json"
        (out / "golden" / name).write_text(json.dumps(a_form_json(t), indent=1) + "\n")

    kx = line_after("\\int_{\\Delta^3} \\exp")
    k3 = line_after("\\begin{math}", kx)
    d3 = dawson_json(src[k3 + 1], 3)
    k4a = line_after("\\begin{math}", ka)
    d4 = dawson_json(src[k4a + 1], 4)
    for d in (d3, d4):
        (out / f"dawson_simplex_n{d['n']}.json").write_text(json.dumps(d, indent=1) + "\n")
        print(f"dawson n={d['n']}: {len(d['terms'])} terms")


if __name__ == "__main__":
    main()
