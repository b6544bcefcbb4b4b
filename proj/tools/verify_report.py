#!/usr/bin/env python3
# Copyright 2026 The kahlercone Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Re-checks the certificates in a kahlercone report with plain fractions.

Handles reports of the decide, dual-inner-test and blowdown commands.
Exit status: 0 if every certificate checks, 1 if one fails, 2 on bad input.
"""

import argparse
import itertools
import json
import sys
from fractions import Fraction


def rat(v):
    if isinstance(v, bool) or isinstance(v, float):
        raise ValueError(f"not a rational: {v!r}")
    return Fraction(v)


def vec(v):
    return [rat(e) for e in v]


def pair(gram, x, y):
    return sum(x[i] * gram[i][j] * y[j]
               for i in range(len(x)) for j in range(len(y)))


def sign_pattern(gram):
    """(pos, zero, neg) by symmetric elimination with pivoting."""
    a = [row[:] for row in gram]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i] != 0), None)
        if p is None:
            off = next(((i, j) for i in active for j in active
                        if i < j and a[i][j] != 0), None)
            if off is None:
                break
            i, j = off
            # Replace row/column i by i + j to create a nonzero pivot.
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            continue
        d = a[p][p]
        pos += d > 0
        neg += d < 0
        active.remove(p)
        for i in active:
            f = a[i][p] / d
            for j in active:
                a[i][j] -= f * a[p][j]
    return pos, n - pos - neg, neg


def is_psd(m):
    a = [row[:] for row in m]
    n = len(a)
    for p in range(n):
        d = a[p][p]
        if d < 0:
            return False
        if d == 0:
            if any(a[p][j] != 0 for j in range(p, n)):
                return False
            continue
        for i in range(p + 1, n):
            f = a[i][p] / d
            for j in range(p, n):
                a[i][j] -= f * a[p][j]
    return True


class Model:
    def __init__(self, doc):
        self.kind = doc["kind"]
        self.gram = [vec(r) for r in doc["gram"]]
        self.kappa = vec(doc["kappa_ref"])
        self.ns = [vec(b) for b in doc["ns_basis"]]
        curves = [vec(c["class"]) for c in doc["curves"]]
        self.cuts = [] if self.kind == "torus" else curves

    def sq(self, x):
        return pair(self.gram, x, x)

    def in_closure(self, eta):
        return (any(eta) and self.sq(eta) >= 0
                and pair(self.gram, eta, self.kappa) > 0
                and all(pair(self.gram, eta, c) >= 0 for c in self.cuts))


def check_inner(model, x, verdict, where, problems):
    status = verdict["status"]
    if status == "Inner":
        pc = verdict.get("positive")
        if pc is None:
            problems.append(f"{where}: Inner without a decomposition")
            return
        y = vec(pc["y"])
        a = vec(pc["coefficients"])
        if len(a) != len(model.cuts):
            problems.append(f"{where}: coefficient count differs from cut count")
            return
        if any(c < 0 for c in a):
            problems.append(f"{where}: negative cut coefficient")
        total = list(y)
        for c, cut in zip(a, model.cuts):
            total = [t + c * e for t, e in zip(total, cut)]
        if total != x:
            problems.append(f"{where}: y + sum a_i c_i != x")
        if model.sq(y) <= 0 or pair(model.gram, y, model.kappa) <= 0:
            problems.append(f"{where}: y is not in the open forward cone")
        margin = verdict.get("margin")
        if margin is not None:
            m_sq = rat(margin["margin_sq"])
            lam = rat(margin["multiplier"])
            gy = [sum(model.gram[i][j] * y[j] for j in range(len(y)))
                  for i in range(len(y))]
            n = len(y)
            mat = [[gy[i] * gy[j] / m_sq - lam * model.gram[i][j] - (i == j)
                    for j in range(n)] for i in range(n)]
            if m_sq <= 0 or lam < 0 or not is_psd(mat):
                problems.append(f"{where}: margin certificate fails")
    elif status == "NotInner":
        eta = verdict.get("negative")
        if eta is None:
            problems.append(f"{where}: NotInner without eta")
            return
        eta = vec(eta)
        if not model.in_closure(eta):
            problems.append(f"{where}: eta is not in the closed cone")
        if pair(model.gram, x, eta) > 0:
            problems.append(f"{where}: (x.eta) > 0")
    elif status != "Undetermined":
        problems.append(f"{where}: unknown status {status}")


def embed(model, coeffs):
    out = [Fraction(0)] * len(model.gram)
    for c, b in zip(coeffs, model.ns):
        out = [o + c * e for o, e in zip(out, b)]
    return out


def check_decide(report, problems):
    model = Model(report["input"])
    v = report["verdict"]
    status = v["status"]
    ns_gram = [[pair(model.gram, a, b) for b in model.ns] for a in model.ns]
    if status == "Projective":
        w = v["witness"]
        coeffs = vec(w["coefficients"])
        x = embed(model, coeffs)
        if any(c.denominator != 1 for c in coeffs) or x != vec(w["class"]):
            problems.append("witness: class does not match its coefficients")
        if w["inner"]["status"] != "Inner":
            problems.append("witness: not Inner")
        check_inner(model, x, w["inner"], "witness", problems)
    elif status == "NotProjective":
        ob = v["obstruction"]
        pos, zero, neg = sign_pattern(ns_gram)
        if [pos, zero, neg] != ob["ns_signature"]:
            problems.append(f"obstruction: NS signature is ({pos},{zero},{neg})")
        kind = ob["kind"]
        if kind == "NSNegativeDefinite":
            if pos != 0 or zero != 0:
                problems.append("obstruction: NS is not negative definite")
        elif kind == "NSNegativeSemiDefinite":
            if pos != 0 or zero == 0:
                problems.append("obstruction: NS is not semidefinite")
        elif kind == "PerCandidateCertificates":
            bound = ob["bound"]
            seen = set()
            for i, cert in enumerate(ob["certificates"]):
                coeffs = vec(cert["coefficients"])
                x = embed(model, coeffs)
                if x != vec(cert["class"]):
                    problems.append(f"certificate {i}: class mismatch")
                check_inner(model, x, {"status": "NotInner", "negative": cert["eta"]},
                            f"certificate {i}", problems)
                seen.add(tuple(coeffs))
            box = set(itertools.product(range(-bound, bound + 1), repeat=len(model.ns)))
            box.discard(tuple([0] * len(model.ns)))
            if {tuple(Fraction(c) for c in b) for b in box} != seen:
                problems.append("certificates do not cover the box")
        else:
            problems.append(f"unknown obstruction {kind}")
    elif status != "Undetermined":
        problems.append(f"unknown status {status}")


def check_dual(report, problems):
    model = Model(report["input"])
    check_inner(model, vec(report["point"]), report["verdict"], "verdict", problems)


def check_blowdown(report, problems):
    source = Model(report["input"])
    target = Model(report["target_model"])
    x = vec(report["source_point"])
    y = vec(report["point"])
    if x[:len(y)] != y or len(x) != len(y) + 1:
        problems.append("point is not the blow-down of the source point")
    check_inner(source, x, report["source_verdict"], "source", problems)
    check_inner(target, y, report["verdict"], "target", problems)
    if report["contradiction"]:
        problems.append("report flags a contradiction")


CHECKERS = {
    "decide": check_decide,
    "dual-inner-test": check_dual,
    "blowdown": check_blowdown,
}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("report", help="report JSON file, or - for stdin")
    args = parser.parse_args(argv)
    try:
        text = sys.stdin.read() if args.report == "-" else open(args.report).read()
        report = json.loads(text)
        if report.get("format") != "kahlercone-report":
            raise ValueError("not a kahlercone report")
        checker = CHECKERS.get(report.get("command"))
        if checker is None:
            raise ValueError(f"no checker for command {report.get('command')!r}")
        problems = []
        checker(report, problems)
    except (OSError, ValueError, KeyError, TypeError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    for p in problems:
        print(f"problem: {p}")
    print("verified" if not problems else "REJECTED")
    return 0 if not problems else 1


if __name__ == "__main__":
    sys.exit(main())
