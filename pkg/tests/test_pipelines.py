import json
import random

import pytest

from edgeideals.adpaths import initial_ideal
from edgeideals.errors import GuardError
from edgeideals.graphs import (
    Graph,
    canonical_form,
    complete_graph,
    encode_graph6,
    enumerate_graphs,
    parse_graph6,
    path_graph,
)
from edgeideals.oracle import groebner_basis, lead_ideal
from edgeideals.pipelines import (
    RecordCache,
    bounds_record,
    emit_report,
    relabel_regularities,
    render_bounds_csv,
    render_json,
    run_bounds,
    run_conjecture_scan,
    run_crosschecks,
)

SPIDER = Graph.from_edges(7, [(3, 2), (2, 1), (3, 4), (4, 5), (3, 6), (6, 7)])


def g6(graph):
    return encode_graph6(graph)


class TestBoundsRecord:
    def test_path5(self):
        r = bounds_record(g6(path_graph(5)), 32003)
        assert (r.ell, r.reg_init, r.n) == (4, 5, 5)
        assert r.bounds_ok and r.is_path

    def test_single_edge_tight_both_sides(self):
        r = bounds_record(g6(complete_graph(2)), 2)
        assert (r.ell, r.reg_init, r.n) == (1, 2, 2)
        assert r.bounds_ok

    def test_spider_strict_both_sides(self):
        r = bounds_record(g6(SPIDER), 32003)
        assert (r.ell, r.reg_init, r.n) == (4, 6, 7)
        assert r.ell + 1 < r.reg_init < r.n
        assert r.bounds_ok and r.prop35_ok and r.lemma34_ok and not r.is_path

    def test_flag_invariant(self):
        for g in enumerate_graphs(4):
            if g.edge_count == 0:
                continue
            r = bounds_record(g6(g), 2)
            assert r.bounds_ok == (r.ell + 1 <= r.reg_init <= r.n)


class TestRunBounds:
    def test_output_order_is_input_order(self):
        graphs = [g6(g) for g in enumerate_graphs(4)]
        graphs = graphs[::-1]
        result = run_bounds(graphs, 2)
        with_edges = [x for x in graphs if parse_graph6(x).edge_count]
        assert [r.graph6 for r in result["records"]] == with_edges

    def test_skip_reason_recorded(self):
        empty = g6(Graph(3, (0, 0, 0)))
        result = run_bounds([empty], 2)
        assert result["records"] == []
        assert result["skipped"] == [{"graph6": empty, "reason": "no edges"}]

    def test_parallel_matches_serial(self):
        graphs = [g6(g) for g in enumerate_graphs(4)]
        serial = run_bounds(graphs, 2, jobs=1)
        parallel = run_bounds(graphs, 2, jobs=4)
        assert render_bounds_csv(serial) == render_bounds_csv(parallel)

    def test_budget_guard(self):
        graphs = [g6(g) for g in enumerate_graphs(4)]
        with pytest.raises(GuardError, match="budget"):
            run_bounds(graphs, 2, budget_ms=0)

    def test_relabel_sweep_is_deterministic(self):
        lo1, hi1 = relabel_regularities(g6(SPIDER), 2, 5)
        lo2, hi2 = relabel_regularities(g6(SPIDER), 2, 5)
        assert (lo1, hi1) == (lo2, hi2)
        assert lo1 >= 5 and hi1 <= 7  # chain bounds for any labeling


class TestConjectureScan:
    def test_n3(self):
        s = run_conjecture_scan(3, 2)
        assert s.total == 4 and s.skipped_no_edges == 1
        assert [canonical_form(parse_graph6(x)) for x in s.extremal] == [
            canonical_form(path_graph(3))
        ]
        assert s.conjecture_ok and s.violations == 0

    def test_n4(self):
        s = run_conjecture_scan(4, 32003)
        assert s.total == 11
        assert [canonical_form(parse_graph6(x)) for x in s.extremal] == [
            canonical_form(path_graph(4))
        ]
        assert s.conjecture_ok

    def test_notes_present(self):
        s = run_conjecture_scan(3, 32003)
        assert "soundness" in s.notes and "wording" in s.notes and "field" in s.notes

    def test_guard_redirects_to_input(self):
        with pytest.raises(GuardError, match="input"):
            run_conjecture_scan(9, 2)

    def test_input_file(self, tmp_path):
        path = tmp_path / "corpus.g6"
        path.write_text("".join(g6(g) + "\n" for g in enumerate_graphs(3)))
        s = run_conjecture_scan(None, 2, input_path=str(path))
        assert s.n == 3 and s.conjecture_ok


class TestReports:
    def test_reports_are_byte_stable(self):
        graphs = [g6(g) for g in enumerate_graphs(3)]
        texts = set()
        for _ in range(3):
            result = run_bounds(graphs, 2)
            texts.add(render_bounds_csv(result))
            texts.add(render_json({"x": 1}))
        assert len(texts) == 2

    def test_empty_records_header_only(self):
        result = run_bounds([], 2)
        text = render_bounds_csv(result)
        assert text.splitlines() == [
            "graph6,n,edges,ell,reg_init,pd_init,depth_init,field,"
            "bounds_ok,prop35_ok,lemma34_ok,is_path,ms"
        ]

    def test_single_record_all_columns(self):
        result = run_bounds([g6(complete_graph(2))], 2)
        lines = render_bounds_csv(result).splitlines()
        assert len(lines) == 2
        assert lines[1].split(",") == [
            "A_", "2", "1", "1", "2", "1", "3", "2",
            "True", "True", "True", "True", "0",
        ]

    def test_timings_zeroed_by_default(self, tmp_path):
        result = run_bounds([g6(complete_graph(3))], 2)
        out = tmp_path / "r.json"
        emit_report(result, "json", str(out))
        data = json.loads(out.read_text())
        assert data["records"][0]["ms"] == 0
        emit_report(result, "json", str(out), include_timings=True)
        assert "records" in json.loads(out.read_text())

    def test_json_keys_sorted(self, tmp_path):
        result = run_bounds([g6(complete_graph(3))], 2)
        out = tmp_path / "r.json"
        emit_report(result, "json", str(out))
        text = out.read_text()
        assert text == render_json(json.loads(text))

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(run_bounds([], 2), "xml", None)

    def test_write_failure_names_destination(self):
        with pytest.raises(OSError, match="/nonexistent/dir/report.csv"):
            emit_report(run_bounds([], 2), "csv", "/nonexistent/dir/report.csv")


class TestCache:
    def test_store_then_lookup(self, tmp_path):
        cache = RecordCache(str(tmp_path))
        rec = bounds_record(g6(complete_graph(3)), 2)
        cache.store(rec)
        assert cache.lookup(g6(complete_graph(3)), 2) == rec

    def test_lookup_on_empty(self, tmp_path):
        cache = RecordCache(str(tmp_path))
        assert cache.lookup(g6(complete_graph(3)), 2) is None

    def test_field_separates_entries(self, tmp_path):
        cache = RecordCache(str(tmp_path))
        cache.store(bounds_record(g6(complete_graph(3)), 2))
        assert cache.lookup(g6(complete_graph(3)), 32003) is None

    def test_relabeling_is_a_miss(self, tmp_path):
        # same isomorphism class, different labeling: must not alias
        cache = RecordCache(str(tmp_path))
        a = path_graph(3)
        b = a.relabel((2, 1, 3))
        cache.store(bounds_record(g6(a), 2))
        assert cache.lookup(g6(b), 2) is None

    def test_corrupt_entry_recovers(self, tmp_path, capsys):
        cache = RecordCache(str(tmp_path))
        rec = bounds_record(g6(complete_graph(3)), 2)
        cache.store(rec)
        victim = next(tmp_path.iterdir())
        victim.write_text("{not json")
        assert cache.lookup(g6(complete_graph(3)), 2) is None
        assert "corrupt" in capsys.readouterr().err

    def test_cached_equals_recomputed(self, tmp_path):
        rng = random.Random(47)
        cache = RecordCache(str(tmp_path))
        graphs = [g for g in enumerate_graphs(5) if g.edge_count]
        for g in rng.sample(graphs, 10):
            fresh = bounds_record(g6(g), 2)
            cache.store(fresh)
            assert cache.lookup(g6(g), 2) == fresh

    def test_run_bounds_uses_cache(self, tmp_path):
        cache = RecordCache(str(tmp_path))
        graphs = [g6(g) for g in enumerate_graphs(3)]
        first = run_bounds(graphs, 2, cache=cache)
        second = run_bounds(graphs, 2, cache=cache)
        assert render_bounds_csv(first) == render_bounds_csv(second)


class TestCrosschecks:
    @pytest.mark.parametrize("p", [2, 32003])
    def test_all_suites_pass_n3(self, p):
        report = run_crosschecks(3, p)
        assert report["passed"], {
            k: v for k, v in report["suites"].items() if not v["pass"]
        }
        assert set(report["suites"]) == {
            "groebner_leads_match_paths",
            "wedge_colon_membership",
            "mapping_cone_dominance",
            "multiplicity_vanishing",
            "lyubeznik_claims",
            "induced_restriction_equality",
            "depth_bound",
            "degeneration_dominance",
        }

    def test_guard(self):
        with pytest.raises(GuardError):
            run_crosschecks(6, 2)

    def test_negative_control_dropped_generator_is_detected(self):
        # corrupting the admissible-path ideal must break the lead-term match
        g = complete_graph(3)
        gb_leads = lead_ideal(groebner_basis(g, 2)).gen_set()
        mutant = set(list(initial_ideal(g).gen_set())[1:])
        assert mutant != gb_leads

    def test_observation_counts_cover_oracle_graphs(self):
        report = run_crosschecks(3, 2)
        obs = report["observations"]
        total = (
            obs["init_regularity_equals_exact"]
            + obs["init_regularity_strictly_larger"]
        )
        assert total == report["suites"]["degeneration_dominance"]["checked"]
