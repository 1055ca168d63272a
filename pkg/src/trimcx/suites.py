"""Seeded verification suites bundling the structural checks of the library."""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field as dc_field

from .complexes import betti_table
from .field import DEFAULT_FIELD
from .ideal import Ideal
from .inverse import (
    InverseSystem,
    annihilator,
    genset_decomposition,
    is_compressed,
    phi_matrix,
    random_dual,
    random_instance,
    socle,
    tipping_point,
)
from .linalg import rank
from .pfaffian import build_V, submax_pfaffians
from .realize import realize
from .resolution import buchsbaum_eisenbud, minimal_free_resolution
from .tor import check_bounds
from .trimming import split_summands, compute_lifts, trimmed_betti, trimming_complex


@dataclass
class Case:
    label: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    cases: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def add(self, label, ok, detail=""):
        self.cases.append(Case(label, bool(ok), detail))

    def render(self) -> str:
        lines = [f"{'PASS' if c.ok else 'FAIL'} {self.name} {c.label} {c.detail}".rstrip()
                 for c in self.cases]
        npass = sum(c.ok for c in self.cases)
        lines.append(f"{self.name}: {npass}/{len(self.cases)} passed")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {"suite": self.name, "ok": self.ok,
                "cases": [c.__dict__ for c in self.cases]}


SWEEP_COMBOS = [(s, ell) for s in (3, 4, 5) for ell in range(1, min(4, s + 1) + 1)]


def sweep_parameters(count: int = 50, seed: int = 0) -> list:
    """``(s, ell, seed)`` triples cycling through the (s, ell) grid."""
    return [(*SWEEP_COMBOS[k % len(SWEEP_COMBOS)], seed + k) for k in range(count)]


def parse_range(text: str, s: int | None = None) -> list:
    """``"3..5"``, ``"1,2,4"``, ``"2"``; the symbol ``s`` may appear (``"1..s+1"``)."""
    def value(tok):
        tok = tok.strip()
        if "s" in tok:
            if s is None:
                raise ValueError(f"range {text!r} refers to s")
            tok = tok.replace("s", str(s))
        if not re.fullmatch(r"-?\d+([+-]\d+)*", tok):
            raise ValueError(f"cannot parse {tok!r} in range {text!r}")
        return sum(int(t) for t in re.findall(r"[+-]?\d+", tok))

    out = []
    for chunk in text.split(","):
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(value(lo), value(hi) + 1))
        else:
            out.append(value(chunk))
    return out


def _grid(s_values, ell_spec, trials, seed):
    k = 0
    for s in s_values:
        for ell in parse_range(ell_spec, s) if isinstance(ell_spec, str) else ell_spec:
            for _ in range(trials):
                yield s, ell, seed + k
                k += 1


def suite_tipping(s_values=(3, 4, 5), ell_spec="1..s+1", trials=1, seed=0,
                  field=DEFAULT_FIELD, duals=20) -> SuiteReport:
    rep = SuiteReport("tipping")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        tp = tipping_point(inst.N)
        rep.add(f"s={s} ell={ell} seed={sd}", tp == s, f"tipping point {tp}")
    rng = random.Random(seed)
    for k in range(duals):
        d = 3 + k % 7
        phi = random_dual(d, rng, field)
        N = InverseSystem([phi], field)
        tp = tipping_point(N)
        dual_ok = all(_surjective(N, i) == _injective(N, d - i) for i in range(d + 1))
        rep.add(f"single dual degree {d} #{k}", tp == math.ceil(d / 2) and dual_ok,
                f"tipping point {tp}, duality {'ok' if dual_ok else 'broken'}")
    return rep


def _surjective(N, i):
    P = phi_matrix(N, i)
    return rank(P.array, N.field) == P.shape[1]


def _injective(N, i):
    P = phi_matrix(N, i)
    return rank(P.array, N.field) == P.shape[0]


def suite_compressed(s_values=(3, 4), ell_spec="1..s+1", trials=1, seed=0,
                     field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("compressed")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        ok = bool(is_compressed(inst.I)) and bool(is_compressed(inst.I_t))
        rep.add(f"s={s} ell={ell} seed={sd}", ok, "I and I_t compressed")
        top = inst.top_dual
        for drop in range(1, ell + 1):
            kept = inst.small_duals[drop:]
            J = annihilator(InverseSystem(kept + [top], field))
            soc, _ = socle(J)
            want = {2 * s - 1: 1}
            if ell - drop:
                want[s] = ell - drop
            rep.add(f"s={s} ell={ell} seed={sd} drop={drop}",
                    bool(is_compressed(J)) and soc == want, f"socle {soc}")
    return rep


def suite_genset(s_values=(3, 4, 5), ell_spec="1..s+1", trials=1, seed=0,
                 field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("genset")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        try:
            dec = genset_decomposition(inst.I, inst.I_t)
            F = minimal_free_resolution(inst.I_t)
            b_ok = dec.b == betti_table(F, minimal=True)[(1, s + 1)]
            rep.add(f"s={s} ell={ell} seed={sd}", b_ok, f"b = {dec.b}")
        except ValueError as exc:
            rep.add(f"s={s} ell={ell} seed={sd}", False, str(exc))
    return rep


def trim_instance(inst, field=DEFAULT_FIELD):
    """``(decomposition, TrimmingData, cone)`` for a random instance."""
    dec = genset_decomposition(inst.I, inst.I_t)
    F = minimal_free_resolution(Ideal(dec.generators_of_top(), field))
    T = split_summands(F, dec.cut_indices())
    compute_lifts(T)
    return dec, T, trimming_complex(T)


def suite_trim_resolution(s_values=(3, 4), ell_spec="1..s+1", trials=1, seed=0,
                          field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("trim-resolution")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        dec, T, cone = trim_instance(inst, field)
        cone_b = betti_table(cone)
        formula_b = trimmed_betti(T)
        direct_b = betti_table(minimal_free_resolution(inst.I), minimal=True)
        same_ideal = T.trimmed_ideal().same_as(inst.I)
        rep.add(f"s={s} ell={ell} seed={sd}",
                cone_b == formula_b == direct_b and same_ideal,
                f"totals {direct_b.totals()}")
    return rep


def suite_gortype(s_values=(3, 4), ell_spec="1..s+1", trials=1, seed=0,
                  field=DEFAULT_FIELD, pfaffian_m=(2,)) -> SuiteReport:
    rep = SuiteReport("gortype")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        _, _, cone = trim_instance(inst, field)
        t = betti_table(cone).totals()[3]
        rep.add(f"s={s} ell={ell} seed={sd}", t == ell + 1, f"type {t}")
    for m in pfaffian_m:
        F = buchsbaum_eisenbud(build_V(m, 0, field))
        for ell in range(1, 2 * m + 2):
            T = split_summands(F, range(2 * m + 1 - ell, 2 * m + 1))
            compute_lifts(T)
            t = betti_table(trimming_complex(T)).totals()[3]
            rep.add(f"Pf(V_{m}^0) trim {ell}", t == ell + 1, f"type {t}")
    return rep


def suite_tor_bounds(s_values=(3, 4, 5), ell_spec="1..s+1", trials=1, seed=0,
                     field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("tor-bounds")
    for s, ell, sd in _grid(s_values, ell_spec, trials, seed):
        inst = random_instance(s, ell, sd, field)
        r = check_bounds(inst.I, inst.I_t)
        for name, ok in r.checks.items():
            rep.add(f"s={s} ell={ell} seed={sd} {name}", ok,
                    f"mu={r.mu} b={r.b} delta={r.delta_rank} T1_s={r.T1_s} "
                    f"T2_s1={r.T2_s1} T2_s2={r.T2_s2} verdict={r.verdict}")
    return rep


def pfaffian_table_matches(m: int, j: int, field=DEFAULT_FIELD):
    """``(ok, betti)`` for the expected table of the Pfaffians of ``V_m^j``."""
    I = submax_pfaffians(build_V(m, j, field))
    b = betti_table(minimal_free_resolution(I), minimal=True)
    d = 2 * m - j
    sigma = 4 * m - 2 * j - 1
    want = {(0, 0): 1, (1, d): 2 * m + 1 - j, (3, sigma + 3): 1}
    if j:
        want[(1, d + 1)] = j
    # Gorenstein symmetry: F_2 is dual to F_1 twisted by sigma + 3
    for (i, t), n in list(want.items()):
        if i == 1:
            want[(2, sigma + 3 - t)] = want.get((2, sigma + 3 - t), 0) + n
    ok = b == want and bool(is_compressed(I)) and I.top_socle_degree() == sigma
    return ok, b


def suite_pfaffian_tables(max_m: int = 4, field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("pfaffian-tables")
    for m in range(1, max_m + 1):
        for j in range(m + 1):
            ok, b = pfaffian_table_matches(m, j, field)
            rep.add(f"m={m} j={j}", ok, f"totals {b.totals()}")
    return rep


REALIZABILITY_PAIRS = [(2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (5, 3)]


def suite_realizability(pairs=None, field=DEFAULT_FIELD) -> SuiteReport:
    rep = SuiteReport("realizability")
    for r, N in pairs or REALIZABILITY_PAIRS:
        R = realize(r, N, field)
        rep.add(f"r={r} N={N}", R.ok,
                f"{R.report.verdict} totals {R.betti.totals()}"
                + (f" failed: {','.join(R.failures())}" if R.failures() else ""))
    return rep


SUITES = {
    "tipping": suite_tipping,
    "compressed": suite_compressed,
    "genset": suite_genset,
    "trim-resolution": suite_trim_resolution,
    "gortype": suite_gortype,
    "tor-bounds": suite_tor_bounds,
    "pfaffian-tables": suite_pfaffian_tables,
    "realizability": suite_realizability,
}

# suites parameterized by an (s, ell) grid
GRID_SUITES = {"tipping", "compressed", "genset", "trim-resolution", "gortype", "tor-bounds"}
