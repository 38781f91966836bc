"""Runs last: exhaustive axiom audit of every induced result built in this session."""

from __future__ import annotations

from conftest import audit_all, criterion


def test_every_induced_result_satisfies_the_axioms():
    with criterion(7, "axiom audit of induced results") as c:
        n, failures = audit_all()
        c.detail = f"{n - len(failures)}/{n} results of the whole session pass exhaustive CM1, CM2, central kernel, image and order checks"
        assert n > 0 and not failures, [f[1] for f in failures]
