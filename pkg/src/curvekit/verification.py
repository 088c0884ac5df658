"""Automated checks of the sequence's combinatorics.

Each function returns a :class:`~curvekit.report.Report`.  Failed
assertions become violation entries with a neutral ``claim:*`` tag; nothing
here raises on a mathematical failure.

Lower-bound assertions are made against ``value - slack`` and upper-bound
assertions against ``value + slack``, so a pass certifies the true
coefficient and not just the computed representative.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional

from .construction import SequenceBundle
from .curve_graph import distance_lower_by_witnesses, distance_small, is_filling, verify_path
from .errors import EmptyProjection, WitnessInvalid
from .oracles import enumerate_curves
from .projections import CoefficientRecord, annulus, four_holed, subsurface_coefficient
from .report import Report
from .surface import base_chart, canonical_key, intersection_number

NU_SLACK = 4
DEFAULT_WEIGHT_CUTOFF = 20


def _map(fn: Callable, items: Iterable, workers: int = 1) -> list:
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def intersection_bound_holds(rec: CoefficientRecord) -> bool:
    """``value <= 2 i(w1, w2) + 1 + slack`` for the witnessing representatives."""
    a, b = rec.witnesses
    n = 0 if a == b else intersection_number(a, b)
    return rec.value <= 2 * n + 1 + rec.slack


def bundle_meta(b: SequenceBundle) -> dict:
    return {
        "n": b.n,
        "schedule": b.schedule.to_json(),
        "powers": [str(e) for e in b.powers],
        "constants": b.constants.to_json(),
    }


def _coeff_row(rep: Report, rec: CoefficientRecord, **info) -> dict:
    if not intersection_bound_holds(rec):
        rep.violate("claim:intersection-bound", value=rec.value, **info)
    return {**info, "value": rec.value, "slack": rec.slack}


def verify_prop31(b: SequenceBundle, workers: int = 1) -> Report:
    """Overlap, filling, annular coefficients and growth certificates."""
    if b.n < 8:
        raise ValueError("need a sequence of length at least 9")
    g = b.curves
    n = b.n
    C = b.constants.C
    rep = Report("prop31", meta=bundle_meta(b))

    pairs = [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]
    inter = dict(zip(pairs, _map(lambda p: intersection_number(g[p[0]], g[p[1]]), pairs, workers)))
    rows = []
    for (i, j), k in inter.items():
        rows.append({"i": i, "j": j, "overlap": k > 0})
        if j >= i + 2 and k == 0:
            rep.violate("claim:overlap", i=i, j=j)
        if j == i + 1 and k != 0:
            rep.violate("claim:consecutive-disjoint", i=i, j=j)
    rep.tables["overlap"] = rows

    fpairs = [(i, j) for i in range(n + 1) for j in range(i + 4, n + 1)]
    fills = _map(lambda p: is_filling(g[p[0]], g[p[1]]), fpairs, workers)
    rep.tables["filling"] = [{"i": i, "j": j, "filling": f} for (i, j), f in zip(fpairs, fills)]
    for (i, j), f in zip(fpairs, fills):
        if not f:
            rep.violate("claim:filling", i=i, j=j)

    triples = [(i, j, jp) for i in range(2, n - 1) for j in range(0, i - 1) for jp in range(i + 2, n + 1)]
    recs = _map(lambda t: _coeff_or_none(annulus(g[t[0]]), g[t[1]], g[t[2]]), triples, workers)
    rows = []
    ratios = []
    for (i, j, jp), rec in zip(triples, recs):
        if rec is None:
            # a disjoint pair, already reported as an overlap failure
            continue
        e = b.e(i - 1)
        row = _coeff_row(rep, rec, i=i, j=j, j_prime=jp)
        row["e_prev"] = str(e)
        row["lower"] = e - C
        rows.append(row)
        ratios.append(rec.value / e)
        if rec.value - rec.slack < e - C:
            rep.violate("claim:annular-lower", i=i, j=j, j_prime=jp, value=rec.value, bound=e - C)
    rep.tables["annular"] = rows
    rep.meta["empirical_K"] = {
        "max_ratio": round(max(ratios), 6),
        "max_inverse_ratio": round(max(1 / r for r in ratios), 6),
    }

    rows = []
    for j in range(2, n + 1):
        path = g[: j + 1]
        if not verify_path(path, g[0], g[j]):
            rep.violate("claim:sequence-path", j=j)
        cores = [g[i] for i in range(2, j - 1, 4)]
        d, _ = distance_small(g[0], g[j])
        lower = 3 if d == ">=3" else d
        if cores:
            try:
                lower = max(lower, distance_lower_by_witnesses(g[0], g[j], cores, b.constants.G).lower)
            except WitnessInvalid as exc:
                rep.violate("claim:growth-witness", j=j, reason=str(exc))
        rows.append({"j": j, "lower": lower, "upper": j, "witness_cores": [2 + 4 * k for k in range(len(cores))]})
    rep.tables["growth"] = rows
    return rep


def sweep_family(b: SequenceBundle, radius: int, weight_cutoff: int = DEFAULT_WEIGHT_CUTOFF):
    """Curves of total weight at most ``weight_cutoff`` with ``i(c, g_0) + i(c, g_1) <= radius``."""
    g = b.curves
    out = []
    for c in enumerate_curves(base_chart(), weight_cutoff):
        if intersection_number(c, g[0]) + intersection_number(c, g[1]) <= radius:
            out.append(c)
    return sorted(out, key=canonical_key)


def _coeff_or_none(Y, m1, m2) -> Optional[CoefficientRecord]:
    try:
        return subsurface_coefficient(Y, m1, m2)
    except EmptyProjection:
        return None


def verify_bounded_combinatorics(b: SequenceBundle, N: Optional[int] = None, radius: int = 40,
                                 weight_cutoff: int = DEFAULT_WEIGHT_CUTOFF, workers: int = 1) -> Report:
    """Swept coefficients ``d_Y(mu, g_N)`` at depths ``N`` and ``N + 2``."""
    N = b.n - 2 if N is None else N
    if N + 2 > b.n:
        raise ValueError(f"depth {N} needs a sequence of length {N + 3}")
    g = b.curves
    G = b.constants.G
    m = b.marking
    family = sweep_family(b, radius, weight_cutoff)
    seq_keys = {canonical_key(c) for c in g}
    rep = Report("bounded", meta={**bundle_meta(b), "depth": N, "radius": radius,
                                  "weight_cutoff": weight_cutoff, "family_size": len(family),
                                  "nu_slack": NU_SLACK})
    nonann = list(family) + [c for c in g[: N + 3] if canonical_key(c) not in {canonical_key(x) for x in family}]
    off_seq = [c for c in family if canonical_key(c) not in seq_keys]
    maxima = {}
    for depth in (N, N + 2):
        target = g[depth]
        rows = []
        recs = _map(lambda c: _coeff_or_none(four_holed(c), m, target), nonann, workers)
        for c, rec in zip(nonann, recs):
            if rec is None:
                continue
            rows.append(_coeff_row(rep, rec, kind="nonannular", boundary=_short(c), depth=depth))
        recs = _map(lambda c: _coeff_or_none(annulus(c), m, target), off_seq, workers)
        for c, rec in zip(off_seq, recs):
            if rec is None:
                continue
            rows.append(_coeff_row(rep, rec, kind="annular", boundary=_short(c), depth=depth))
        rep.tables[f"depth_{depth}"] = rows
        mx_n = max((r["value"] for r in rows if r["kind"] == "nonannular"), default=0)
        mx_a = max((r["value"] for r in rows if r["kind"] == "annular"), default=0)
        maxima[depth] = (mx_n, mx_a)
        if mx_n > 2 * G + 11 + NU_SLACK:
            rep.violate("claim:nonannular-bound", depth=depth, value=mx_n, bound=2 * G + 11 + NU_SLACK)
        if mx_a > 2 * G + 29 + NU_SLACK:
            rep.violate("claim:annular-offsequence-bound", depth=depth, value=mx_a, bound=2 * G + 29 + NU_SLACK)
    rep.tables["maxima"] = [{"depth": d, "nonannular": v[0], "annular": v[1]} for d, v in sorted(maxima.items())]
    for k, name in ((0, "nonannular"), (1, "annular")):
        change = abs(maxima[N][k] - maxima[N + 2][k])
        rep.meta[f"{name}_change"] = change
        if change > 2 * NU_SLACK:
            rep.violate(f"claim:{name}-stability", change=change)

    # the two identities used for the swept bounds
    rows = []
    for i in range(2, N - 1):
        rec = subsurface_coefficient(four_holed(g[i]), g[i - 2], g[i + 2])
        rows.append({"i": i, "value": rec.value})
        if rec.value != 1:
            rep.violate("claim:boundary-identity", i=i, value=rec.value)
    rep.tables["boundary_identity"] = rows
    rows = []
    for beta in off_seq:
        for i in range(0, N - 3):
            if intersection_number(beta, g[i]):
                continue
            rec = _coeff_or_none(annulus(beta), g[i + 2], g[i + 4])
            if rec is None:
                continue
            rows.append({"beta": _short(beta), "i": i, "value": rec.value, "slack": rec.slack})
            if rec.value - rec.slack > 5:
                rep.violate("claim:disjoint-annulus-bound", beta=_short(beta), i=i, value=rec.value)
    rep.tables["disjoint_annuli"] = rows
    return rep


def _short(c) -> List[int]:
    return list(c.weights)


def divergence_certificate(b: SequenceBundle, N: Optional[int] = None) -> Report:
    """``d_{g_i}(mu, g_N)`` against ``e_{i-1}`` for ``2 <= i <= N - 2``."""
    N = b.n if N is None else N
    if N < 6:
        raise ValueError("need depth at least 6")
    g = b.curves
    C = b.constants.C
    E = b.constants.floor
    rep = Report("divergence", meta={**bundle_meta(b), "depth": N, "nu_slack": NU_SLACK})
    rows = []
    prev = None
    for i in range(2, N - 1):
        rec = subsurface_coefficient(annulus(g[i]), b.marking, g[N])
        e = b.e(i - 1)
        row = _coeff_row(rep, rec, i=i)
        row["e_prev"] = str(e)
        rows.append(row)
        if rec.value - rec.slack < e - C - NU_SLACK:
            rep.violate("claim:divergence-lower", i=i, value=rec.value, bound=e - C - NU_SLACK)
        if rec.value - rec.slack <= E - C - NU_SLACK:
            rep.violate("claim:divergence-floor", i=i, value=rec.value)
        if prev is not None and rec.value <= prev:
            rep.violate("claim:divergence-monotone", i=i, value=rec.value, previous=prev)
        prev = rec.value
    rep.tables["divergence"] = rows
    return rep


BEHRSTOCK_CONSTANT = 3


def verify_behrstock(samples: int = 1000, seed: int = 0, weight_cutoff: int = 16, twist_range: int = 30) -> Report:
    """``min(d_Y(dZ, m), d_Z(dY, m)) <= 3`` over random overlapping pairs.

    Boundaries and the test curve are small curves pushed far apart by
    random twists, so that one of the two coefficients is typically large.
    """
    import random

    from .errors import NotOverlapping
    from .mapping_classes import twist_power
    from .projections import Subsurface, behrstock_check

    rng = random.Random(seed)
    pool = sorted(enumerate_curves(base_chart(), weight_cutoff), key=canonical_key)
    kinds = [("annular", "annular"), ("nonannular", "nonannular"), ("annular", "nonannular")]
    rep = Report("behrstock", meta={"samples": samples, "seed": seed, "weight_cutoff": weight_cutoff,
                                    "twist_range": twist_range, "constant": BEHRSTOCK_CONSTANT})
    rows = []
    skipped = 0
    while len(rows) < samples:
        y, z, m = rng.sample(pool, 3)
        ky, kz = rng.choice(kinds)
        ty, tm = rng.randint(-twist_range, twist_range), rng.randint(-twist_range, twist_range)
        if not intersection_number(y, z):
            skipped += 1
            continue
        y = twist_power(z, y, ty)
        m = twist_power(y, m, tm)
        try:
            r = behrstock_check(m, Subsurface(ky, y), Subsurface(kz, z))
        except (NotOverlapping, EmptyProjection):
            skipped += 1
            continue
        for rec in (r.dY, r.dZ):
            _coeff_row(rep, rec, sample=len(rows))
        upper = min(r.dY.value + r.dY.slack, r.dZ.value + r.dZ.slack)
        rows.append({"sample": len(rows), "kinds": f"{ky}/{kz}", "dY": r.dY.value, "dZ": r.dZ.value,
                     "min_upper": upper})
        if upper > BEHRSTOCK_CONSTANT:
            rep.violate("claim:behrstock", sample=len(rows) - 1, dY=r.dY.value, dZ=r.dZ.value)
    rep.meta["skipped"] = skipped
    rep.meta["max_min"] = max(min(r["dY"], r["dZ"]) for r in rows)
    rep.tables["samples"] = rows
    return rep


def verify_covers(b: SequenceBundle, pairs: int = 100, seed: int = 0, d: Optional[int] = None,
                  weight_cutoff: int = 12) -> Report:
    """Lift checks on the genus two cover plus the lifted sequence tables."""
    import random

    from .covers import DEFAULT_D, build_tower, holonomy_by_walk, lift_curve, verify_lifted_sequence

    d = DEFAULT_D if d is None else d
    _, F = build_tower(2)
    rng = random.Random(seed)
    pool = sorted(enumerate_curves(base_chart(), weight_cutoff), key=canonical_key)
    rep = Report("covers", meta={"cover": F.to_json(), "pairs": pairs, "seed": seed, "d": d,
                                 "weight_cutoff": weight_cutoff})
    lifts = {}

    def lift(c):
        k = canonical_key(c)
        if k not in lifts:
            lifts[k] = lift_curve(F, c)
        return lifts[k]

    rows = []
    while len(rows) < pairs:
        a, c = rng.sample(pool, 2)
        La, Lc = lift(a), lift(c)
        conserved = all(La.weights()[x] == a.weights[F.edge_image(x)] for x in range(F.total.zeta))
        counts_ok = len(La) == F.component_count(a) == F.degree // (1 if not any(holonomy_by_walk(F, a)) else 2)
        upstairs = sum(intersection_number(u, v) for u in La for v in Lc)
        downstairs = intersection_number(a, c)
        rows.append({"pair": len(rows), "components": [len(La), len(Lc)], "upstairs": upstairs,
                     "downstairs": downstairs, "conserved": conserved})
        if not conserved:
            rep.violate("claim:weight-conservation", pair=len(rows) - 1)
        if not counts_ok:
            rep.violate("claim:component-count", pair=len(rows) - 1)
        if upstairs != F.degree * downstairs:
            rep.violate("claim:multiplicativity", pair=len(rows) - 1, upstairs=upstairs, downstairs=downstairs)
    rep.tables["pairs"] = rows

    lifted = verify_lifted_sequence(F, b, d)
    rep.tables["lifted_overlap"] = lifted["overlap"]
    rep.tables["lifted_annular"] = [{**r, "e_prev": str(r["e_prev"])} for r in lifted["annular"]]
    rep.tables["lifted_skipped"] = lifted["skipped"]
    rep.meta["lifted_empirical"] = {k: (round(v, 6) if isinstance(v, float) else v)
                                    for k, v in lifted["empirical"].items()}
    for v in lifted["violations"]:
        rep.violations.append(v)
    return rep
