"""Expression grammar, command exit codes, and report determinism."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morphring.cli import (
    ExprSyntaxError,
    _build_checked,
    build_ring,
    default_corpus,
    parse_ring_expr,
    projected_order,
    run_command,
    serialize_ring_expr,
)
from morphring.rings import OrderCapExceeded

RECORD_KEYS = ["expression", "predicate", "status", "witness"]


def _records(capsys) -> list[dict]:
    lines = [line for line in capsys.readouterr().out.splitlines() if line]
    records = [json.loads(line) for line in lines]
    for record in records:
        assert list(record) == RECORD_KEYS
    return records


def _ring_exprs() -> st.SearchStrategy:
    base = st.one_of(
        st.tuples(st.just("z"), st.integers(1, 64)),
        st.tuples(st.just("gf"), st.sampled_from([2, 3, 5, 7]),
                  st.integers(1, 4)),
    )

    def extend(children: st.SearchStrategy) -> st.SearchStrategy:
        mod = st.one_of(
            st.just(("self",)),
            st.tuples(st.just("ideal"), st.integers(0, 9)),
        )
        return st.one_of(
            st.tuples(st.just("opp"), children),
            st.tuples(st.sampled_from(["mat", "tri", "poly"]), children,
                      st.integers(1, 4)),
            st.builds(lambda fs: ("prod", *fs),
                      st.lists(children, min_size=1, max_size=3)),
            st.tuples(st.just("trivext"), children, mod),
        )

    return st.recursive(base, extend, max_leaves=6)


class TestGrammar:
    @given(expr=_ring_exprs())
    @settings(max_examples=200)
    def test_round_trip(self, expr):
        assert parse_ring_expr(serialize_ring_expr(expr)) == expr

    def test_whitespace_tolerated(self):
        spaced = " trivext( prod( z2 , gf( 2 , 3 ) ) , ideal( 2 ) ) "
        expr = parse_ring_expr(spaced)
        assert serialize_ring_expr(expr) == "trivext(prod(z2,gf(2,3)),ideal(2))"

    def test_tables_path_round_trip(self):
        text = "trivext(z2,tables(/tmp/some file.txt))"
        expr = parse_ring_expr(text)
        assert expr == ("trivext", ("z", 2), ("tables", "/tmp/some file.txt"))
        assert serialize_ring_expr(expr) == text

    @pytest.mark.parametrize("text", [
        "", "z", "zx", "q4", "gf(4)", "mat(z2)", "mat(z2,2",
        "tri(z2,2))", "prod()", "trivext(z4,left(2))", "z4 z6",
        "trivext(z2,tables(unclosed", "opp", "poly(,2)",
    ])
    def test_syntax_errors_carry_positions(self, text):
        with pytest.raises(ExprSyntaxError) as err:
            parse_ring_expr(text)
        assert "at position" in str(err.value)
        assert 0 <= err.value.position <= len(text)

    @pytest.mark.parametrize("text,order", [
        ("z12", 12),
        ("gf(3,2)", 9),
        ("prod(z2,z3,z4)", 24),
        ("mat(z2,2)", 16),
        ("tri(z3,2)", 27),
        ("poly(z4,2)", 16),
        ("trivext(z4,ideal(2))", 8),
        ("trivext(z4,self)", 16),
        ("opp(tri(z2,2))", 8),
    ])
    def test_projected_order_matches_built_ring(self, text, order):
        expr = parse_ring_expr(text)
        assert projected_order(expr) == order
        assert build_ring(expr).order == order

    def test_order_cap_enforced_before_building(self):
        with pytest.raises(OrderCapExceeded, match="projected order"):
            _build_checked(parse_ring_expr("mat(z7,3)"))


class TestDefaultCorpus:
    def test_contents_at_cap(self):
        corpus = default_corpus(512)
        assert {f"z{n}" for n in range(2, 65)} <= set(corpus)
        for expected in ("poly(z2,2)", "poly(z2,3)", "poly(gf(2,2),2)",
                         "trivext(z4,ideal(2))", "trivext(z12,ideal(4))",
                         "mat(z2,2)", "tri(z2,2)", "tri(z2,3)", "mat(z4,2)"):
            assert expected in corpus
        assert "mat(z2,3)" in corpus  # order 512 is inside the cap
        assert "tri(z4,3)" not in corpus  # order 4096 is not
        assert len(corpus) == len(set(corpus))
        for text in corpus:
            assert projected_order(parse_ring_expr(text)) <= 512

    def test_max_order_prunes(self):
        small = default_corpus(16)
        assert "z16" in small and "z17" not in small
        assert "mat(z2,2)" in small and "mat(z3,2)" not in small
        assert all(projected_order(parse_ring_expr(t)) <= 16 for t in small)


class TestCommands:
    def test_classify_records(self, capsys):
        assert run_command(["classify", "tri(z2,2)", "--json"]) == 0
        records = _records(capsys)
        assert records[0] == {"expression": "tri(z2,2)", "predicate": "order",
                              "status": "8", "witness": None}
        by_predicate = {r["predicate"]: r for r in records}
        assert by_predicate["left_generalized_morphic"]["status"] == "true"
        assert by_predicate["left_pseudo_morphic"]["status"] == "false"
        assert by_predicate["left_pseudo_morphic"]["witness"] == {
            "counterexample": 2}
        assert len(records) == 30

    def test_classify_human_table(self, capsys):
        assert run_command(["classify", "z4"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("ring z4\n")
        assert "left_morphic" in out and "true" in out

    def test_parse_error_exits_2(self, capsys):
        assert run_command(["classify", "frob(z2)"]) == 2
        assert "unknown constructor" in capsys.readouterr().err

    def test_cap_violation_exits_2(self, capsys):
        assert run_command(["classify", "mat(z7,3)"]) == 2
        assert "projected order" in capsys.readouterr().err

    def test_verify_all_theorems(self, capsys):
        assert run_command(["verify", "z12", "--json"]) == 0
        names = [r["predicate"] for r in _records(capsys)]
        assert names == [
            "annihilator_chain_equivalence", "sum_intersection_witnesses",
            "pseudo_morphic_consequences", "pseudo_quasi_equivalence",
            "finite_dual_ring_battery", "regular_criteria",
            "reduced_ring_collapse",
        ]

    def test_verify_single_theorem(self, capsys):
        assert run_command(["verify", "z12", "--theorem",
                            "sum_intersection_witnesses", "--json"]) == 0
        (record,) = _records(capsys)
        assert record["status"] == "verified"
        assert record["witness"]["checked_sum"] == 144

    def test_verify_unknown_theorem_exits_2(self, capsys):
        assert run_command(["verify", "z6", "--theorem", "bogus"]) == 2
        assert "unknown theorem" in capsys.readouterr().err

    def test_verify_adds_heredity_for_extensions(self, capsys):
        assert run_command(["verify", "trivext(z2,self)", "--json"]) == 0
        names = [r["predicate"] for r in _records(capsys)]
        assert "extension_heredity" in names

    def test_verify_adds_example_identity_for_t2(self, capsys):
        assert run_command(["verify", "tri(z2,2)", "--json"]) == 0
        by_predicate = {r["predicate"]: r for r in _records(capsys)}
        assert by_predicate["triangular_example_identity"]["status"] == "verified"

    def test_verify_indeterminate_exits_0(self, capsys, monkeypatch):
        from morphring import cli
        from morphring.verify import VerificationReport

        stub = VerificationReport("finite_dual_ring_battery", "z4",
                                  "indeterminate", {"note": "lattice overflow"},
                                  0.0)
        monkeypatch.setitem(cli._RING_THEOREMS, "finite_dual_ring_battery",
                            lambda R: stub)
        assert run_command(["verify", "z4", "--theorem",
                            "finite_dual_ring_battery", "--json"]) == 0
        (record,) = _records(capsys)
        assert record["status"] == "indeterminate"

    def test_corpus_flags_known_mismatch(self, capsys):
        assert run_command(["corpus", "--json"]) == 1
        records = _records(capsys)
        mismatches = {(r["expression"], r["predicate"])
                      for r in records if r["status"] == "mismatch"}
        assert mismatches == {
            ("trivext(z4,ideal(2))", "left_morphic"),
            ("trivext(z4,ideal(2))", "right_morphic"),
        }
        for record in records:
            if record["status"] == "mismatch":
                assert record["witness"]["computed"] == "false"
                assert record["witness"]["expected"] == "true"

    def test_corpus_small_cap_all_match(self, capsys):
        assert run_command(["corpus", "--max-order", "4", "--json"]) == 0
        records = _records(capsys)
        assert {r["expression"] for r in records} == {"z4", "poly(z2,2)"}
        assert all(r["status"] == "match" for r in records)

    def test_corpus_deterministic_across_jobs(self, capsys):
        run_command(["corpus", "--json"])
        solo = capsys.readouterr().out
        run_command(["corpus", "--jobs", "2", "--json"])
        assert capsys.readouterr().out == solo

    def test_search_clean_at_64(self, capsys):
        assert run_command(["search", "--max-order", "64", "--json"]) == 0
        (record,) = _records(capsys)
        assert record["predicate"] == "pseudo_not_quasi_search"
        assert record["status"] == "verified"
        assert record["witness"]["hits"] == []
        assert record["witness"]["rings"] == len(default_corpus(64))

    def test_search_deterministic_across_jobs(self, capsys):
        run_command(["search", "--max-order", "64", "--json"])
        solo = capsys.readouterr().out
        run_command(["search", "--max-order", "64", "--jobs", "3", "--json"])
        assert capsys.readouterr().out == solo

    def test_qz_suite(self, capsys):
        assert run_command(["qz", "--bound", "6", "--json"]) == 0
        (record,) = _records(capsys)
        assert record["expression"] == "Z⋉(Q/Z)"
        assert record["predicate"] == "quotient_module_lattice"
        assert record["status"] == "verified"
        assert record["witness"]["pairs"] == 36

    def test_qz_requires_bound(self, capsys):
        assert run_command(["qz"]) == 2


class TestTablesLoader:
    def _write(self, tmp_path, text):
        path = tmp_path / "bimodule.txt"
        path.write_text(text)
        return str(path)

    def test_regular_bimodule_of_z2(self, tmp_path, capsys):
        path = self._write(tmp_path, "2 2\n0 1\n1 0\n0 0\n0 1\n0 0\n0 1\n")
        expr = parse_ring_expr(f"trivext(z2,tables({path}))")
        ring = build_ring(expr)
        assert ring.order == 4
        # Z2 extended by itself is Z2[x]/(x^2): every element is morphic.
        assert run_command(["classify", f"trivext(z2,tables({path}))",
                            "--json"]) == 0
        by_predicate = {r["predicate"]: r for r in _records(capsys)}
        assert by_predicate["left_morphic"]["status"] == "true"

    def test_order_header_mismatch(self, tmp_path):
        path = self._write(tmp_path, "2 3\n0 1\n1 0\n0 0\n0 1\n0 0\n0 1\n")
        with pytest.raises(ValueError, match="declares ring order 3"):
            build_ring(parse_ring_expr(f"trivext(z2,tables({path}))"))

    def test_entry_count_mismatch(self, tmp_path):
        path = self._write(tmp_path, "2 2\n0 1\n1 0\n0 0\n")
        with pytest.raises(ValueError, match="expected 12"):
            build_ring(parse_ring_expr(f"trivext(z2,tables({path}))"))

    def test_invalid_action_rejected(self, tmp_path):
        # Left action sends 1*m1 to m0: not a unital action.
        path = self._write(tmp_path, "2 2\n0 1\n1 0\n0 0\n0 0\n0 0\n0 1\n")
        with pytest.raises(ValueError, match="fails"):
            build_ring(parse_ring_expr(f"trivext(z2,tables({path}))"))

    def test_missing_file_exits_2(self, capsys):
        assert run_command(["classify", "trivext(z2,tables(/nonexistent))"]) == 2
        assert "error:" in capsys.readouterr().err
