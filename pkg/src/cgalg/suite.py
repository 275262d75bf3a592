"""Verification suite behind ``cga verify``.

Per-(l, m) level data (dimensions, Kac matrix, determinant, factorization and
entry-wise structure checks) is computed once into a plain JSON payload and can
be cached.  All checks read the payload after a JSON round trip, so a cached run
and a cold run produce the same report.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import CGA, HalfInt
from .cache import LevelCache, canonical
from .exact import MU, rank
from .partitions import O, d, d_closed_form, d_enum, d_series, delta_degree_identity, e, odd_partition_identity
from .pbw import UEAElement, power_commutator, normal_order, uea_bracket
from .shapovalov import FactorizationMismatch, factor_check, kac_report
from .singular import (
    build_singular,
    delta_for_singular,
    null_space,
    quotient_null_space,
    recurrence_coefficients,
    verify_singular,
)
from .verma import HighestWeight, act, apply_element, basis_vector, enumerate_basis, level_shift

POWER_MAX = 4
ACTION_MAX = 6
SINGULAR_MAX_Q = 3
QUOTIENT_MAX_Q = 2
PARTITION_MAX = 30


@dataclass
class SuiteConfig:
    ells: tuple = ("1/2",)
    max_level: int = 8
    cache_dir: str | None = None
    jobs: int = 1


@dataclass(frozen=True)
class CheckResult:
    ell_twice: int
    name: str
    ok: bool
    detail: str = ""

    @property
    def ell(self) -> str:
        return str(HalfInt(self.ell_twice))

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} [l={self.ell}] {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def text(self) -> str:
        lines = [r.line() for r in self.results]
        lines.append("PASS" if self.ok else f"FAIL ({len(self.failures())} failing checks)")
        return "\n".join(lines)


# -- per-level payload --------------------------------------------------------

def level_payload(ell, m: int) -> dict:
    ell = HalfInt.parse(ell)
    rep = kac_report(ell, m, factor=False, structure=True)
    try:
        rep.factorization = factor_check(ell, m, rep.determinant)
        factor_error = None
    except FactorizationMismatch as exc:
        factor_error = str(exc)
    out = rep.to_json()
    out["dims"] = {"d": d(ell, m), "e": e(ell, m), "O": O(ell, m)}
    out["factor_error"] = factor_error
    return out


def _cell(args):
    ell, m = args
    return str(ell), m, json.loads(canonical(level_payload(ell, m)))


def level_payloads(cfg: SuiteConfig) -> dict:
    """``{(twice_l, m): payload}``; fans out to a process pool when ``jobs > 1``."""
    cells = [(HalfInt.parse(x), m) for x in cfg.ells for m in range(cfg.max_level + 1)]
    out = {}
    if cfg.cache_dir:
        cache = LevelCache(cfg.cache_dir)
        todo = []
        for c in cells:
            payload = cache.load(*c)
            if payload is None:
                todo.append(c)
            else:
                out[c[0].twice_value, c[1]] = payload
    else:
        cache, todo = None, cells
    if cfg.jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            computed = list(pool.map(_cell, todo))
    else:
        computed = [_cell(c) for c in todo]
    for ell, m, payload in computed:
        h = HalfInt.parse(ell)
        if cache is not None:
            cache.store(h, m, payload)
        out[h.twice_value, m] = payload
    return dict(sorted(out.items()))


def level_checks(twice: int, m: int, payload: dict) -> list:
    res = []
    fac = payload["factorization"]
    if payload["factor_error"] is not None:
        res.append(CheckResult(twice, f"kac-factorization m={m}", False, payload["factor_error"]))
    else:
        res.append(CheckResult(twice, f"kac-factorization m={m}", fac["mu_exponent"] == payload["dims"]["e"],
                               f"C={fac['constant']}"))
    st = payload["structure_checks"]
    res.append(CheckResult(twice, f"kac-structure m={m}", not st["failures"], "; ".join(st["failures"][:3])))
    return res


# -- per-l checks -------------------------------------------------------------

def commutator_checks(alg: CGA) -> CheckResult:
    t = alg.ell.twice_value
    bad = []
    C, H = alg.gen("C"), alg.gen("H")

    def power(g, k):
        return normal_order(alg, [g] * k)

    for k in range(POWER_MAX + 1):
        for j in range(t + 1):
            pj = UEAElement.generator(alg, alg.P(j))
            if uea_bracket(pj, power(C, k)) != power_commutator(alg, "PC", j=j, h=k):
                bad.append(f"PC j={j} h={k}")
            if uea_bracket(pj, power(alg.P(t - j), k)) != power_commutator(alg, "PPk", j=j, k=k):
                bad.append(f"PPk j={j} k={k}")
            if uea_bracket(UEAElement.generator(alg, H), power(alg.P(j), k)) != power_commutator(alg, "HPk", n=j, k=k):
                bad.append(f"HPk n={j} k={k}")
        if uea_bracket(UEAElement.generator(alg, H), power(C, k)) != power_commutator(alg, "HC", h=k):
            bad.append(f"HC h={k}")
    return CheckResult(t, "commutator closed forms vs normal ordering", not bad, ", ".join(bad[:5]))


def action_checks(alg: CGA, max_level: int) -> CheckResult:
    hw = HighestWeight.symbolic()
    gens = list(alg.raising) + [alg.gen("D"), alg.gen("M")]
    bad = []
    for m in range(min(max_level, ACTION_MAX) + 1):
        for lab in enumerate_basis(alg.ell, m):
            v = basis_vector(lab)
            for g in gens:
                target = m + level_shift(alg, g)
                if target < 0:
                    continue
                if act(alg, hw, g, v) != apply_element(alg, hw, UEAElement.generator(alg, g), v, level=target):
                    bad.append(f"{g} on {lab}")
    return CheckResult(alg.ell.twice_value, "raising actions vs normal ordering", not bad, ", ".join(bad[:5]))


def singular_checks(ell: HalfInt, max_level: int) -> list:
    out = []
    for q in range(1, min(SINGULAR_MAX_Q, max_level // 2) + 1):
        name = f"singular three-way q={q}"
        u = build_singular(ell, q, MU)
        problems = []
        if u.entries != recurrence_coefficients(ell, q):
            problems.append("recurrence solution differs from the expanded product")
        if not verify_singular(ell, q, mu=1, raise_on_failure=False).verified:
            problems.append("raising residuals non-zero")
        ker = null_space(ell, delta_for_singular(ell, q), 1, 2 * q)
        basis = enumerate_basis(ell, 2 * q)
        if ker.dimension != 1:
            problems.append(f"kernel dimension {ker.dimension}")
        elif rank([ker.basis[0].coords(basis), build_singular(ell, q, 1).coords(basis)]) != 1:
            problems.append("kernel is not spanned by the singular vector")
        out.append(CheckResult(ell.twice_value, name, not problems, "; ".join(problems)))
    return out


def quotient_checks(ell: HalfInt, max_level: int) -> list:
    out = []
    for q in range(1, min(QUOTIENT_MAX_Q, max_level // 2) + 1):
        problems = []
        for m in range(1, min(2 * q + 4, max_level) + 1):
            k = quotient_null_space(ell, q, 1, m)
            if k.dimension:
                problems.append(f"m={m} dim {k.dimension}")
            if m >= 2 * q:
                if k.notes["submodule_dimension"] != d(ell, m - 2 * q):
                    problems.append(f"m={m} submodule dim {k.notes['submodule_dimension']}")
                if not k.notes["complement_ok"]:
                    problems.append(f"m={m} complement")
        out.append(CheckResult(ell.twice_value, f"quotient irreducible q={q}", not problems, ", ".join(problems)))
    return out


def partition_checks(ell: HalfInt, max_level: int) -> CheckResult:
    bad = []
    top = max(PARTITION_MAX, max_level)
    for m in range(top + 1):
        if d_series(ell, m) != d_enum(ell, m):
            bad.append(f"d series/enum m={m}")
        if ell.twice_value <= 7 and d_closed_form(ell, m) != d_enum(ell, m):
            bad.append(f"d closed form m={m}")
        if not odd_partition_identity(ell, m):
            bad.append(f"odd-partition sum m={m}")
        if not delta_degree_identity(ell, m):
            bad.append(f"delta-degree rearrangement m={m}")
        e(ell, m)
    return CheckResult(ell.twice_value, f"partition identities m<={top}", not bad, ", ".join(bad[:5]))


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    report = SuiteReport(cfg)
    payloads = level_payloads(cfg)
    results = []
    for ell in sorted({HalfInt.parse(x) for x in cfg.ells}, key=lambda h: h.twice_value):
        alg = CGA(ell)
        for m in range(cfg.max_level + 1):
            results += level_checks(ell.twice_value, m, payloads[ell.twice_value, m])
        results.append(commutator_checks(alg))
        results.append(action_checks(alg, cfg.max_level))
        results += singular_checks(ell, cfg.max_level)
        results += quotient_checks(ell, cfg.max_level)
        results.append(partition_checks(ell, cfg.max_level))
    report.results = results
    return report
