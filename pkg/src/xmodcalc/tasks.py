"""Task descriptions: resolving group and generator descriptions into concrete groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .fpres.todd_coxeter import DEFAULT_MAX_COSETS, todd_coxeter
from .fpres.words import evaluate_word, parse_presentation, parse_word
from .ident import DEFAULT_AUT_BUDGET, family, product
from .perm import Perm, PermGroup


class InputError(ValueError):
    pass


def resolve_group(desc) -> PermGroup:
    """A group from a family description ``["S", 4]``, a list of those (direct product),
    ``{"family": [...]}``, ``{"degree": n, "gens": [...]}`` or ``{"presentation": "<x | x^3>"}``.
    """
    try:
        if isinstance(desc, dict):
            if "family" in desc:
                return resolve_group(desc["family"])
            if "presentation" in desc:
                table = todd_coxeter(parse_presentation(desc["presentation"]), int(desc.get("max_cosets", DEFAULT_MAX_COSETS)))
                return table.group()
            if "gens" in desc:
                deg = int(desc["degree"])
                return PermGroup(deg, [Perm.parse(g, deg) for g in desc["gens"]])
            raise InputError(f"cannot read group description {desc!r}")
        if isinstance(desc, str):
            return family(*desc.split())
        if isinstance(desc, (list, tuple)) and desc and all(isinstance(s, (list, tuple)) for s in desc):
            return product(*(resolve_group(s) for s in desc))
        if isinstance(desc, (list, tuple)) and desc:
            return family(*desc)
    except InputError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as exc:
        raise InputError(f"bad group description {desc!r}: {exc}") from exc
    raise InputError(f"cannot read group description {desc!r}")


def resolve_elements(Q: PermGroup, items) -> list[Perm]:
    """Permutation text (``"(1,2)"`` or ``"[2,1,3]"``) or words in ``Q``'s generators (``"x*y^-1"``)."""
    names = [chr(ord("x") + i) for i in range(len(Q.gens))] if len(Q.gens) <= 3 else [f"f{i + 1}" for i in range(len(Q.gens))]
    out = []
    for it in items:
        try:
            if isinstance(it, str) and it.strip()[:1] not in ("(", "["):
                w = parse_word(it, names)
                out.append(evaluate_word(w, Q.gens) if Q.gens else Q.identity)
            else:
                out.append(Perm.parse(it, Q.degree))
        except ValueError as exc:
            raise InputError(f"bad element {it!r}: {exc}") from exc
        if out[-1] not in Q:
            raise InputError(f"element {it!r} is not in Q")
    return out


@dataclass
class TaskOptions:
    max_cosets: int = DEFAULT_MAX_COSETS
    aut_budget: int = DEFAULT_AUT_BUDGET
    checks: str = "exhaustive"
    seed: int = 0


@dataclass
class Task:
    Q: object
    P: list
    M: list
    options: TaskOptions = field(default_factory=TaskOptions)

    @classmethod
    def from_dict(cls, d: dict) -> Task:
        try:
            opts = TaskOptions(**d.get("options", {}))
            return cls(d["Q"], list(d["P"]), list(d["M"]), opts)
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad task: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> Task:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def resolve(self) -> tuple[PermGroup, PermGroup, PermGroup]:
        Q = resolve_group(self.Q)
        P = PermGroup(Q.degree, resolve_elements(Q, self.P), name="P")
        M = PermGroup(Q.degree, resolve_elements(Q, self.M), name="M")
        if not M.is_subgroup_of(P):
            raise InputError("M is not a subgroup of P")
        if not M.is_normal_in(P):
            raise InputError("M is not normal in P")
        return Q, P, M

