"""Exact convergence reports for the two counterexample sequences.

``run_exm0`` follows x_n = ((P_n)^n + a) / ((P_n)^(2n) + b) + alpha, where
P_n is the product of the first n monic irreducibles: it tends to
beta = alpha + a/b at every finite place and to alpha at infinity.

``run_exm1`` follows y_n = t^(p^(n!)), which is Cauchy at every place
where t is a unit and tends to 1 only at the place of t - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import factorial

from .fields import INF, FpPoly, RatFunc, check_prime, irreducibles, iter_irreducibles
from .places import Place, valuation, valuation_t_power_difference

__all__ = [
    "ReportRow",
    "ConvergenceReport",
    "run_exm0",
    "run_exm1",
    "default_exm1_places",
    "EXM1_MAX_N",
    "DIRECT_CHECK_LIMIT",
]

EXM1_MAX_N = 4
DIRECT_CHECK_LIMIT = 1 << 16


def _fmt_val(v):
    return str(v) if v == INF else v


@dataclass
class ReportRow:
    n: int
    place: str
    target: str
    valuation: object

    def to_dict(self):
        return {"n": self.n, "place": self.place, "target": self.target, "valuation": _fmt_val(self.valuation)}


@dataclass
class ConvergenceReport:
    sequence_id: str
    parameters: dict
    rows: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def valuations(self, place, target):
        """The valuations in row order for one (place, target) pair."""
        return [r.valuation for r in self.rows if r.place == place and r.target == target]

    def to_dict(self):
        return {
            "sequence_id": self.sequence_id,
            "parameters": self.parameters,
            "rows": [r.to_dict() for r in self.rows],
            "verdicts": self.verdicts,
            "notes": self.notes,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def format_table(self):
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{self.sequence_id}: {params}", ""]
        w_place = max([len("place")] + [len(r.place) for r in self.rows])
        w_target = max([len("quantity")] + [len(r.target) for r in self.rows])
        lines.append(f"{'n':>3}  {'place':<{w_place}}  {'quantity':<{w_target}}  valuation")
        for r in self.rows:
            lines.append(f"{r.n:>3}  {r.place:<{w_place}}  {r.target:<{w_target}}  {r.valuation}")
        lines.append("")
        for k, v in self.verdicts.items():
            lines.append(f"{k}: {v}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines)


def _strictly_increasing(vals):
    # +inf rows mean the term hit the target exactly; they carry no order information
    finite = [v for v in vals if v != INF]
    return all(a < b for a, b in zip(finite, finite[1:]))


def _converges(ns, vals):
    return all(v >= n for n, v in zip(ns, vals)) and _strictly_increasing(vals)


def run_exm0(p, a, b, alpha, n_max):
    """Valuations of x_n - beta at the first n finite places and x_n - alpha at infinity."""
    check_prime(p)
    a = a if isinstance(a, FpPoly) else FpPoly(p, a)
    b = b if isinstance(b, FpPoly) else FpPoly(p, b)
    alpha = alpha if isinstance(alpha, RatFunc) else RatFunc.const(p, alpha)
    if not b:
        raise ValueError("b must be nonzero")
    if not alpha:
        raise ValueError("alpha must be nonzero")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    A, B = RatFunc(a), RatFunc(b)
    beta = alpha + A / B
    if not beta:
        raise ValueError("beta = alpha + a/b must be nonzero")
    pis = irreducibles(p, n_max)
    places = [Place.finite(pi) for pi in pis]
    inf = Place.infinite(p)
    report = ConvergenceReport(
        "exm0",
        {"p": p, "a": str(a), "b": str(b), "alpha": str(alpha), "beta": str(beta), "n_max": n_max},
    )
    prod = FpPoly(p, 1)
    for n in range(1, n_max + 1):
        prod = prod * pis[n - 1]
        pn = RatFunc(prod**n)
        x = (pn + A) / (pn * pn + B) + alpha
        closed = pn * (B - A * pn) / (B * (pn * pn + B))
        if x - beta != closed:
            raise AssertionError(f"factorisation of x_{n} - beta failed")
        for v in places[:n]:
            report.rows.append(ReportRow(n, str(v), "x_n - beta", valuation(x - beta, v)))
        report.rows.append(ReportRow(n, "inf", "x_n - alpha", valuation(x - alpha, inf)))
    ok_all = True
    for j, v in enumerate(places, start=1):
        vals = report.valuations(str(v), "x_n - beta")
        ok = _converges(range(j, n_max + 1), vals)
        ok_all &= ok
        report.verdicts[str(v)] = "converges to beta" if ok else "no certified convergence"
    vals = report.valuations("inf", "x_n - alpha")
    ok = _converges(range(1, n_max + 1), vals)
    ok_all &= ok
    report.verdicts["inf"] = "converges to alpha" if ok else "no certified convergence"
    report.verdicts["overall"] = (
        "converges to beta at finite places, to alpha at infinity" if ok_all else "not certified"
    )
    if any(r.valuation == INF for r in report.rows):
        report.notes.append("rows with valuation +inf are exact hits (x_n equals the target)")
    return report


def _t_minus_one(p):
    return Place.finite(FpPoly(p, [p - 1, 1]))


def default_exm1_places(p, max_degree=2):
    return [Place.finite(f) for f in iter_irreducibles(p, max_degree) if f != FpPoly.t(p)]


def run_exm1(p, n_max, places=None):
    """Cauchy profile of t^(p^(n!)) and its distance to 1 at each place.

    Consecutive differences use t^(p^(m!)) - t^(p^(n!)) = (t^(p^(m! - n!)) - t)^(p^(n!))
    and the residue-order valuation of t^e - t, so no large power is
    expanded.  Rows whose exponents stay below DIRECT_CHECK_LIMIT are also
    recomputed by plain sparse subtraction.
    """
    check_prime(p)
    if n_max < 1 or n_max > EXM1_MAX_N:
        raise ValueError(f"n_max must be between 1 and {EXM1_MAX_N}")
    places = default_exm1_places(p) if places is None else list(places)
    for v in places:
        if v.p != p:
            raise ValueError("place of the wrong characteristic")
        if v.is_infinite or v.poly == FpPoly.t(p):
            raise ValueError(f"t is not a unit at {v}")
    special = _t_minus_one(p)
    report = ConvergenceReport("exm1", {"p": p, "n_max": n_max, "places": [str(v) for v in places]})
    checked = 0
    for v in places:
        for n in range(1, n_max):
            inner = valuation_t_power_difference(p ** (factorial(n + 1) - factorial(n)), 1, v)
            val = p ** factorial(n) * inner
            if p ** factorial(n + 1) <= DIRECT_CHECK_LIMIT:
                direct = valuation(
                    RatFunc(FpPoly.monomial(p, p ** factorial(n + 1)) - FpPoly.monomial(p, p ** factorial(n))), v
                )
                if direct != val:
                    raise AssertionError(f"identity and direct valuations differ at {v}, n={n}")
                checked += 1
            report.rows.append(ReportRow(n, str(v), "y_(n+1) - y_n", val))
        for n in range(1, n_max + 1):
            val = valuation_t_power_difference(p ** factorial(n), 0, v)
            report.rows.append(ReportRow(n, str(v), "y_n - 1", val))
    for v in places:
        diffs = report.valuations(str(v), "y_(n+1) - y_n")
        if not diffs:
            cauchy = "vacuous (single term)"
        elif all(a < b for a, b in zip(diffs, diffs[1:])):
            cauchy = "Cauchy (strictly increasing profile)"
        else:
            cauchy = "Cauchy not certified within n_max"
        if v == special:
            limit = "limit Q_v = 1"
        else:
            limit = "Q_v != 1 (y_n - 1 stays a unit)"
        report.verdicts[str(v)] = f"{cauchy}; {limit}"
    if special in places:
        report.notes.append(f"special place v_(t-1) is {special}")
    if p == 2:
        report.notes.append("in characteristic 2, v_(t-1) and v_(t+1) are the same place")
    report.notes.append(f"{checked} difference rows re-checked by direct sparse subtraction")
    return report
