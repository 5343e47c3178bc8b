"""Per-group reports and the battery of theorem checks run by the CLI."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .exactalg import field_for_characteristic
from .fox import alexander_poly, charvar_scan, elementary_ideal_gens, v11_in_one
from .laurent import render
from .malcev import malcev_gr_dims, malcev_presentation
from .presentation import GroupPresentation
from .resonance import cup_structure
from .series import (NotApplicable, almost_principal_check, b1_over_field, delta1_check,
                     elem_order_check, magnus, order)

PASS, FAIL, NA = "pass", "fail", "n/a"


@dataclass
class Check:
    name: str
    statement: str
    status: str
    detail: str = ""


@dataclass
class Report:
    group: str
    generators: int
    relators: int
    b1: int
    torsion: list[int]
    deficiency: int
    tags: list[str]
    delta: str
    delta_at_1: int
    e1_generators: list[str]
    charvar_level: int
    charvar: list[dict[str, Any]]
    charvar_full_torus: bool
    v11_in_one: bool
    degree: int
    gr_dims: list[int]
    malcev_minimal: list[int]
    resonance: dict[str, int]
    field: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Report:
        d = dict(d)
        d["checks"] = [Check(**c) for c in d.get("checks", [])]
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [
            f"group: {self.group}",
            f"generators: {self.generators}  relators: {self.relators}  deficiency: {self.deficiency}",
            f"b1: {self.b1}  torsion: {self.torsion or '[]'}",
            f"delta: {self.delta}  (at 1: {self.delta_at_1})",
            f"E1: {', '.join(self.e1_generators) if self.e1_generators else '(0)'}",
            f"V11 scan at level {self.charvar_level}: "
            + "; ".join(_format_char(c) for c in self.charvar)
            + ("  [E1 = 0: full torus component]" if self.charvar_full_torus else ""),
            f"V11 in {{1}}: {str(self.v11_in_one).lower()}",
            f"gr dims to degree {self.degree}: {self.gr_dims}",
            f"minimal Malcev presentation: {self.malcev_minimal[0]} generators, {self.malcev_minimal[1]} relators",
            f"cup product: rank {self.resonance['rank_mu']}, kernel dim {self.resonance['dim_K']}",
            "checks:",
        ]
        for c in self.checks:
            lines.append(f"  {c.status:4}  {c.name}: {c.detail}")
        return "\n".join(lines) + "\n"


def _format_char(c: dict[str, Any]) -> str:
    parts = c["free"] + c["torsion"]
    return f"({', '.join(map(str, parts))})/{c['level']} depth {c['depth']}"


FIELD_NAMES = {0: "Q", 2: "F2", 3: "F3", 5: "F5"}


def _check_converse(P, delta, b1) -> Check:
    stmt = "if Delta(1) = 0 then b1 >= 2"
    if b1 == 0:
        return Check("alexander-converse", stmt, NA, "b1 = 0")
    at1 = delta.at_one()
    ok = at1 != 0 or b1 >= 2
    return Check("alexander-converse", stmt, PASS if ok else FAIL, f"Delta(1) = {at1}, b1 = {b1}")


def _check_jump_loci(P, scan, b1) -> Check:
    stmt = "nilpotent groups jump only at the trivial character, with depth b1"
    if "nilpotent" not in P.tags:
        return Check("nilpotent-jump-loci", stmt, NA, "not tagged nilpotent")
    bad = [c for c, h in scan if not c.is_trivial]
    triv = [h for c, h in scan if c.is_trivial]
    ok = not bad and (triv == [b1] if b1 else not triv)
    detail = f"{len(bad)} nontrivial jump characters; trivial depth {triv[0] if triv else 0}"
    return Check("nilpotent-jump-loci", stmt, PASS if ok else FAIL, detail)


def _check_screen(P, verdict) -> Check:
    stmt = "nilpotent groups have V11 inside {1}"
    if "nilpotent" not in P.tags:
        return Check("nilpotence-screen", stmt, NA, f"not tagged nilpotent (V11 in {{1}}: {str(verdict).lower()})")
    return Check("nilpotence-screen", stmt, PASS if verdict else FAIL, f"V11 in {{1}}: {str(verdict).lower()}")


def _check_elem(P) -> Check:
    stmt = "E_i lies in m^(n_p - i) for i < n_p"
    details, ok = [], True
    for p in (0, 2, 3):
        F = field_for_characteristic(p)
        n_p = b1_over_field(P, p)
        good = all(elem_order_check(P, F, i) for i in range(n_p))
        ok = ok and good
        details.append(f"{FIELD_NAMES[p]}: n_p = {n_p} {'ok' if good else 'violated'}")
    return Check("elementary-ideal-order", stmt, PASS if ok else FAIL, "; ".join(details))


def _check_delta1(P, p, d) -> Check:
    stmt = f"if E1 is almost principal with exponent d = {d} then Delta lies in m^(n_p - d - 1)"
    F = field_for_characteristic(p)
    n_p = b1_over_field(P, p)
    if n_p <= d + 1:
        return Check("delta-order", stmt, NA, f"n_p = {n_p} <= d + 1")
    if p != 0:
        return Check("delta-order", stmt, NA, "almost principality is decided over Q only")
    if not almost_principal_check(P, d):
        return Check("delta-order", stmt, NA, f"E1 is not almost principal with d = {d}")
    try:
        ok = delta1_check(P, F, d)
    except NotApplicable as exc:  # pragma: no cover - guarded above
        return Check("delta-order", stmt, NA, str(exc))
    o = order(magnus(alexander_poly(P), F, max(6, n_p + 1)))
    return Check("delta-order", stmt, PASS if ok else FAIL, f"order {o} >= {n_p - d - 1} required")


def _is_nilpotent_torsion_free(P) -> bool:
    return "nilpotent" in P.tags and "torsion-free" in P.tags


def _check_positive_deficiency(P, verdict, gr) -> Check:
    stmt = "torsion-free nilpotent groups of positive deficiency are Z or Z^2"
    if not (_is_nilpotent_torsion_free(P) and verdict and P.deficiency > 0):
        return Check("positive-deficiency", stmt, NA, f"deficiency {P.deficiency}")
    A = P.abelian
    ok = not A.torsion and A.b1 <= 2 and all(x == 0 for x in gr[1:])
    return Check("positive-deficiency", stmt, PASS if ok else FAIL, f"b1 = {A.b1}, gr = {gr}")


def _check_duality(cs, gr) -> Check:
    stmt = "kernel of the cup product has the dimension of gr^2"
    if len(gr) < 2:
        return Check("cup-bracket-duality", stmt, NA, "degree < 2")
    ok = cs.dim_K == gr[1]
    return Check("cup-bracket-duality", stmt, PASS if ok else FAIL, f"dim K = {cs.dim_K}, gr^2 = {gr[1]}")


def _check_free_abelian(P, gr) -> Check:
    stmt = "a torsion-free nilpotent group has gr = (n, 0, ...) exactly when it is Z^n"
    if not _is_nilpotent_torsion_free(P):
        return Check("free-abelian-characterization", stmt, NA, "not tagged nilpotent and torsion-free")
    looks_abelian = all(x == 0 for x in gr[1:])
    ok = looks_abelian == ("free-abelian" in P.tags)
    return Check("free-abelian-characterization", stmt, PASS if ok else FAIL,
                 f"gr = {gr}, tagged free-abelian: {str('free-abelian' in P.tags).lower()}")


def build_report(P: GroupPresentation, level: int = 6, degree: int = 5, p: int = 0, d: int = 1) -> Report:
    A = P.abelian
    delta = alexander_poly(P)
    E1 = elementary_ideal_gens(P, 1)
    scan = charvar_scan(P, level)
    verdict = v11_in_one(P)
    MP = malcev_presentation(P, degree)
    gr = malcev_gr_dims(MP, degree)
    cs = cup_structure(P)
    checks = [
        _check_converse(P, delta, A.b1),
        _check_jump_loci(P, scan, A.b1),
        _check_screen(P, verdict),
        _check_elem(P),
        _check_delta1(P, p, d),
        _check_positive_deficiency(P, verdict, gr),
        _check_duality(cs, gr),
        _check_free_abelian(P, gr),
    ]
    return Report(
        group=P.name,
        generators=P.ngens,
        relators=P.nrels,
        b1=A.b1,
        torsion=list(A.torsion),
        deficiency=P.deficiency,
        tags=sorted(P.tags),
        delta=render(delta),
        delta_at_1=delta.at_one(),
        e1_generators=[render(g) for g in E1],
        charvar_level=level,
        charvar=[dict(rho.to_json(), depth=h) for rho, h in scan],
        charvar_full_torus=A.b1 > 0 and not E1,
        v11_in_one=verdict,
        degree=degree,
        gr_dims=gr,
        malcev_minimal=[MP.ngens, MP.nrels],
        resonance={"rank_mu": cs.rank_mu, "dim_K": cs.dim_K},
        field=FIELD_NAMES.get(p, f"F{p}"),
        checks=checks,
    )


__all__ = ["Report", "Check", "build_report", "PASS", "FAIL", "NA"]
