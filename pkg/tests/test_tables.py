from __future__ import annotations

import json

import pytest

from xmodcalc.tables import format_table, load_table_data, run_row, run_table, table_rows
from xmodcalc.tasks import InputError, TaskOptions, Task, resolve_elements, resolve_group


class TestData:
    def test_versioned(self):
        data = load_table_data()
        assert data["version"] == 1
        assert len(table_rows(1, data)) == 8
        assert len(table_rows(2, data)) == 13

    def test_flag_only_on_h5_row(self):
        flagged = [r["id"] for t in ("1", "2") for r in table_rows(t) if r.get("flag")]
        assert flagged == ["1.5"]

    def test_unknown_table(self):
        with pytest.raises(KeyError):
            table_rows(3)

    @pytest.mark.parametrize("which", ["1", "2"])
    def test_rows_are_valid_chains(self, which):
        for row in table_rows(which):
            desc = Task(row["Q"], row["P"], row["M"])
            Q, P, M = desc.resolve()
            assert P.is_subgroup_of(Q) and M.is_normal_in(P)


class TestRun:
    def test_single_row(self):
        row = table_rows(1)[1]
        r = run_row(row)
        assert r.status == "PASS" and r.computed["label"] == "SL(2,3)"
        assert json.loads(json.dumps(r.to_dict()))["id"] == "1.2"

    def test_flagged_row(self):
        row = next(r for r in table_rows(1) if r["id"] == "1.5")
        r = run_row(row)
        assert r.status == "FLAGGED" and r.computed["order"] == 20
        assert any("FLAGGED" in m for m in r.messages)

    def test_wrong_expectation_fails(self):
        row = dict(table_rows(1)[0])
        row["expected"] = dict(row["expected"], order=8)
        assert run_row(row).status == "FAIL"

    def test_aut_budget_skip(self):
        row = next(r for r in table_rows(2) if r["id"] == "2.10")
        r = run_row(row, TaskOptions(aut_budget=50))
        assert r.computed["aut_order"] is None and "aut" not in r.checks

    def test_parallel_matches_serial(self):
        serial = run_table(1)
        parallel = run_table(1, jobs=2)
        assert [r.computed["fingerprint"] for r in serial] == [r.computed["fingerprint"] for r in parallel]

    def test_format(self):
        results = run_table(1)
        text = format_table(1, results)
        assert "8 rows: 7 PASS, 1 FLAGGED, 0 FAIL" in text
        assert "1.3: isomorphic to row 1.4: True" in text


class TestTasks:
    def test_group_descriptions(self):
        assert resolve_group(["S", 4]).order == 24
        assert resolve_group("A 4").order == 12
        assert resolve_group([["C", 3], ["SL", 2, 3]]).order == 72
        assert resolve_group({"family": ["D", 8]}).order == 8
        assert resolve_group({"degree": 3, "gens": ["(1,2,3)"]}).order == 3
        assert resolve_group({"presentation": "<x,y | x^2, y^3, (x*y)^2>"}).order == 6

    @pytest.mark.parametrize("bad", [["Z", 1], {"foo": 1}, 7, []])
    def test_bad_group(self, bad):
        with pytest.raises(InputError):
            resolve_group(bad)

    def test_elements(self):
        Q = resolve_group(["S", 4])
        a, b = resolve_elements(Q, ["(1,2)", "x*y"])
        assert str(a) == "(1,2)" and b == Q.gens[0] * Q.gens[1]
        with pytest.raises(InputError):
            resolve_elements(Q, ["(1,5)"])
        with pytest.raises(InputError):
            resolve_elements(Q, ["w"])

    def test_not_normal(self):
        with pytest.raises(InputError):
            Task(["S", 4], ["(1,2,3)", "(1,2)"], ["(1,2)"]).resolve()

    def test_not_subgroup(self):
        with pytest.raises(InputError):
            Task(["S", 4], ["(1,2)"], ["(1,2,3)"]).resolve()

    def test_load(self, tmp_path):
        path = tmp_path / "task.json"
        path.write_text(json.dumps({"Q": ["A", 4], "P": ["(1,2,3)"], "M": ["(1,2,3)"], "options": {"aut_budget": 30}}))
        desc = Task.load(path)
        assert desc.options.aut_budget == 30
        with pytest.raises(InputError):
            Task.from_dict({"Q": ["A", 4]})
