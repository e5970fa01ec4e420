import pytest

from equlat.cli import main, parse_decider_expr
from equlat.dfa import dfa_from_text, equivalent
from equlat.partition import Partition, SmallEq


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def parts(tmp_path):
    e = tmp_path / "e.part"
    f = tmp_path / "f.part"
    e.write_text(Partition.from_classes([{0, 1}, {2, 3}]).to_text())
    f.write_text(Partition.from_classes([{1, 2}, {0}, {3}]).to_text())
    return e, f


class TestPartitionCommands:
    def test_meet_of_top_and_bottom_files(self, capsys, tmp_path):
        top = tmp_path / "top.part"
        bot = tmp_path / "bot.part"
        top.write_text(Partition.top(4).to_text())
        bot.write_text(Partition.bottom(4).to_text())
        code, out, _ = run(capsys, "partition", "meet", str(top), str(bot))
        assert code == 0
        assert Partition.from_text(out) == Partition.bottom(4)

    def test_join_round_trips_through_files(self, capsys, parts, tmp_path):
        e, f = parts
        target = tmp_path / "j.part"
        code, out, _ = run(capsys, "partition", "join", str(e), str(f), "--out", str(target))
        assert code == 0
        assert Partition.from_text(target.read_text()) == Partition.top(4)

    def test_complement_verifies(self, capsys, parts):
        e, _ = parts
        code, out, _ = run(capsys, "partition", "complement", str(e))
        assert code == 0
        got = Partition.from_text(out)
        assert Partition.from_text(e.read_text()).is_complement(got)

    def test_leq(self, capsys, parts):
        e, f = parts
        code, out, _ = run(capsys, "partition", "leq", str(e), str(f))
        assert code == 0
        assert out.strip() == "false"

    def test_malformed_file_names_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.part"
        bad.write_text("class: 0 1\nclutter\n")
        code, _, err = run(capsys, "partition", "meet", str(bad), str(bad))
        assert code == 2
        assert "line 2" in err

    def test_atoms(self, capsys, parts):
        e, _ = parts
        code, out, _ = run(capsys, "partition", "atoms", str(e))
        assert code == 0
        assert out.splitlines() == ["atom: 0 1", "atom: 2 3"]


class TestAutomaticCommands:
    def test_builtin_listing_and_export(self, capsys, tmp_path):
        code, out, _ = run(capsys, "automatic", "builtin")
        assert code == 0 and "parity" in out.split()
        target = tmp_path / "parity.dfa"
        code, _, _ = run(capsys, "automatic", "builtin", "parity", "--out", str(target))
        assert code == 0
        d = dfa_from_text(target.read_text())
        assert d.accepts("1B11")

    def test_decide_reflexive(self, capsys, tmp_path):
        target = tmp_path / "mod3.dfa"
        run(capsys, "automatic", "builtin", "mod3", "--out", str(target))
        code, out, _ = run(capsys, "automatic", "decide", str(target), "5", "5")
        assert code == 0 and out.strip() == "true"

    def test_check_reports_each_axiom(self, capsys, tmp_path):
        target = tmp_path / "b3.dfa"
        run(capsys, "automatic", "builtin", "bitlen3", "--out", str(target))
        code, out, _ = run(capsys, "automatic", "check", str(target))
        assert code == 0
        for axiom in ("format", "reflexivity", "symmetry", "transitivity"):
            assert f"[PASS] {axiom}" in out

    def test_reps_of_singleton_family(self, capsys, tmp_path):
        target = tmp_path / "s3.dfa"
        run(capsys, "automatic", "builtin", "single3", "--out", str(target))
        code, out, _ = run(capsys, "automatic", "reps", str(target))
        assert code == 0
        assert out.split() == ["0", "3"]

    def test_meet_emits_loadable_dfa(self, capsys, tmp_path):
        a = tmp_path / "a.dfa"
        b = tmp_path / "b.dfa"
        out_path = tmp_path / "m.dfa"
        run(capsys, "automatic", "builtin", "parity", "--out", str(a))
        run(capsys, "automatic", "builtin", "low2", "--out", str(b))
        code, _, _ = run(capsys, "automatic", "meet", str(a), str(b), "--out", str(out_path))
        assert code == 0
        emitted = dfa_from_text(out_path.read_text())
        assert equivalent(emitted, dfa_from_text(out_path.read_text()))

    def test_minimize_round_trip(self, capsys, tmp_path):
        a = tmp_path / "a.dfa"
        run(capsys, "automatic", "builtin", "prefix2", "--out", str(a))
        code, out, _ = run(capsys, "automatic", "minimize", str(a))
        assert code == 0
        assert equivalent(dfa_from_text(out), dfa_from_text(a.read_text()))


class TestDeciderCommands:
    def test_expression_meet(self, capsys):
        code, out, _ = run(capsys, "decider", "decide", "meet(parity, singular(even))", "2", "4")
        assert code == 0 and out.strip() == "true"
        code, out, _ = run(capsys, "decider", "decide", "meet(parity, singular(even))", "1", "3")
        assert code == 0 and out.strip() == "false"

    def test_expression_restrict_round_trips(self, capsys):
        code, out, _ = run(capsys, "decider", "restrict", "singular(even)", "6")
        assert code == 0
        assert Partition.from_text(out) == Partition.from_classes(
            [[0, 2, 4], [1], [3], [5]]
        )

    def test_unknown_name_is_an_error(self, capsys):
        code, _, err = run(capsys, "decider", "decide", "mystery", "1", "2")
        assert code == 2 and "unknown decider" in err

    def test_grammar_parses_nested(self):
        rel = parse_decider_expr("meet(complement(parity), top)")
        assert rel.decide(0, 1)

    def test_nonhalt_expression(self, capsys):
        code, out, _ = run(capsys, "decider", "decide", "nonhalt(5)", "3", "3")
        assert code == 0 and out.strip() == "true"


class TestTmCommands:
    def test_zoo_listing(self, capsys):
        code, out, _ = run(capsys, "tm", "zoo")
        assert code == 0
        assert "increment" in out

    def test_run(self, capsys):
        code, out, _ = run(capsys, "tm", "run", "increment", "11", "--bound", "10")
        assert code == 0
        assert "steps: 3 (halted)" in out
        assert "tape:  >111" in out

    def test_probe_agrees(self, capsys):
        code, out, _ = run(capsys, "tm", "probe", "increment", "11", "--bound", "50")
        assert code == 0
        assert "halts in 3 steps" in out

    def test_probe_loop(self, capsys):
        code, out, _ = run(capsys, "tm", "probe", "spin", "", "--bound", "30")
        assert code == 0
        assert "no halt within 30 steps" in out

    def test_machine_file_loading(self, capsys, tmp_path):
        from equlat.tm import tm_to_text, zoo

        path = tmp_path / "copy.tm"
        path.write_text(tm_to_text(zoo()["erase"]))
        code, out, _ = run(capsys, "tm", "run", str(path), "1", "--bound", "10")
        assert code == 0 and "(halted)" in out


class TestFamilyAndDemos:
    def test_family_meet_emits_small_relation(self, capsys):
        code, out, _ = run(
            capsys, "family", "meet", "--pred", "even", "--cuts", "2,4,8", "--k", "2"
        )
        assert code == 0
        got = SmallEq.from_text(out)
        assert got.tail_members_below() == (0, 2, 4, 6)

    def test_family_meet_restricted(self, capsys):
        code, out, _ = run(
            capsys,
            "family", "meet", "--pred", "even", "--cuts", "2,4,8", "--k", "1",
            "--restrict", "4",
        )
        assert code == 0
        assert Partition.from_text(out) == Partition.from_classes([[0, 2], [1], [3]])

    def test_family_meet_bitmask(self, capsys, tmp_path):
        mask = tmp_path / "mask.txt"
        mask.write_text("0110100000000000")
        code, out, _ = run(
            capsys,
            "family", "meet", "--pred", f"bitmask:{mask}", "--cuts", "4,8,16", "--k", "1",
        )
        assert code == 0
        assert SmallEq.from_text(out).tail_members_below() == (1, 2, 4)

    def test_demo_atoms(self, capsys):
        code, out, _ = run(capsys, "demo", "atoms", "--set", "1,3,5", "--n", "8")
        assert code == 0 and "[PASS]" in out

    def test_demo_meet_growth(self, capsys):
        code, out, _ = run(capsys, "demo", "automatic-meet-growth", "--k", "6")
        assert code == 0
        assert "2 3 4 5 6 7" in out

    def test_demo_join_undecidable(self, capsys):
        code, out, _ = run(
            capsys,
            "demo", "join-undecidable",
            "--machine", "increment", "--input", "11", "--bound", "50",
        )
        assert code == 0 and "halts in 3 steps" in out

    def test_demo_nonhalt(self, capsys):
        code, out, _ = run(capsys, "demo", "nonhalt-meet", "--k", "3")
        assert code == 0 and "[PASS]" in out

    def test_demo_family_meet(self, capsys):
        code, out, _ = run(
            capsys, "demo", "family-meet", "--pred", "prime", "--cuts", "3,6,12", "--k", "2"
        )
        assert code == 0 and "[PASS]" in out


class TestVerifyCommand:
    def test_constructions_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "constructions")
        assert code == 0
        assert "checks passed" in out
        assert "[FAIL]" not in out

    def test_tm_suite_small_bound(self, capsys):
        code, out, _ = run(capsys, "verify", "tm", "--tm-bound", "60")
        assert code == 0
        assert "[FAIL]" not in out


class TestExitContract:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "partition", "meet", "nope.part", "also-nope.part")
        assert code == 2 and "error" in err

    def test_unknown_builtin(self, capsys):
        code, _, err = run(capsys, "automatic", "builtin", "zzz")
        assert code == 2
