"""Enumerate inclusions ``M <| P <= Q`` where a closed-form model of the induced module applies."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .fpres.todd_coxeter import DEFAULT_MAX_COSETS
from .ident import family
from .induced import induce_subgroups
from .perm import PermGroup, abelianization, subgroup_classes, subgroups

# (label, family description); every group here has order at most 24
SWEEP_CATALOG: list[tuple[str, tuple]] = [
    ("C4", ("C", 4)),
    ("C6", ("C", 6)),
    ("C2^2", ("Ab", [2, 2])),
    ("C2^3", ("Ab", [2, 2, 2])),
    ("S3", ("S", 3)),
    ("D8", ("D", 8)),
    ("Q8", ("Q8",)),
    ("D10", ("D", 10)),
    ("D12", ("D", 12)),
    ("A4", ("A", 4)),
    ("Dih(C3^2)", ("Dih", [3, 3])),
    ("H5", ("H", 5)),
    ("H7+", ("H+", 7)),
    ("S4", ("S", 4)),
    ("SL(2,3)", ("SL", 2, 3)),
    ("D24", ("D", 24)),
]


@dataclass
class SweepCase:
    q_label: str
    Q: PermGroup
    P: PermGroup
    M: PermGroup
    kinds: tuple[str, ...]  # "module" and/or "normal_pair"
    predicted_order: int

    @property
    def label(self) -> str:
        return f"{self.q_label}: |M|={self.M.order} |P|={self.P.order} {'+'.join(self.kinds)}"


def _ab_order(G: PermGroup) -> int:
    inv, _ = abelianization(G)
    out = 1
    for d in inv:
        out *= d
    return out


def sweep_cases(max_predicted: int = 1024, catalog=None) -> tuple[list[SweepCase], list[SweepCase]]:
    """``(cases, skipped)``; cases whose predicted order exceeds ``max_predicted`` are skipped."""
    cases: list[SweepCase] = []
    skipped: list[SweepCase] = []
    for label, desc in catalog or SWEEP_CATALOG:
        Q = family(*desc)
        for P in subgroup_classes(Q):
            if P.order == 1:
                continue
            index = Q.order // P.order
            for M in subgroups(P):
                if M.order == 1 or not M.is_normal_in(P):
                    continue
                M_normal_Q = M.is_normal_in(Q)
                kinds = []
                if M.is_abelian and M_normal_Q:
                    kinds.append("module")
                if M_normal_Q and P.is_normal_in(Q):
                    kinds.append("normal_pair")
                if not kinds:
                    continue
                if "module" in kinds:
                    pred = M.order**index
                else:
                    pred = M.order * _ab_order(M) ** (index - 1)
                case = SweepCase(label, Q, P, M, tuple(kinds), pred)
                (cases if pred <= max_predicted else skipped).append(case)
    return cases, skipped


__all__ = ["SWEEP_CATALOG", "SweepCase", "sweep_cases"]


@dataclass
class SweepOutcome:
    case: SweepCase
    order: int
    oracles: dict[str, bool]
    seconds: float

    @property
    def agrees(self) -> bool:
        return bool(self.oracles) and all(self.oracles.values())


def run_case(case: SweepCase, max_cosets: int = DEFAULT_MAX_COSETS) -> SweepOutcome:
    """Induce through the general pipeline; the applicable oracles are compared in the report."""
    t0 = time.perf_counter()
    r = induce_subgroups(case.Q, case.P.gens, case.M.gens, max_cosets=max_cosets)
    return SweepOutcome(case, r.group.order, dict(r.report.oracles), time.perf_counter() - t0)


def run_sweep(max_predicted: int = 1024, catalog=None) -> tuple[list[SweepOutcome], list[SweepCase]]:
    cases, skipped = sweep_cases(max_predicted, catalog)
    return [run_case(c) for c in cases], skipped
