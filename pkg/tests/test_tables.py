import hashlib
import pathlib
import shutil

import pytest

from eaqecc.errors import DataIntegrityError, RecordParseError
from eaqecc.tables import (
    CodeRecord,
    TableStore,
    check_records,
    compress,
    expand,
    export_csv,
    ingest,
    load_bundled,
    load_data_text,
    query,
)


def rec(q, n, kappa, delta, c, purity="unknown", source="test"):
    return CodeRecord(q, n, kappa, delta, c, purity, source)


def test_record_line_round_trip():
    r = rec(3, 6, 1, 5, 3, "pure", "constructed")
    assert CodeRecord.from_line(r.to_line()) == r
    noted = CodeRecord(3, 19, 0, 20, 19, "unknown", "paper-table", note="verbatim_flag: x")
    back = CodeRecord.from_line(noted.to_line())
    assert back.note == "verbatim_flag: x"


def test_record_parse_errors_carry_line_numbers():
    with pytest.raises(RecordParseError) as e:
        ingest(["3 6 1 5", ""])
    assert e.value.line_number == 1
    with pytest.raises(RecordParseError) as e:
        ingest(["3 6 1 5 3 pure ok", "3 6 x 5 3"])
    assert e.value.line_number == 2
    with pytest.raises(RecordParseError):
        ingest(["3 6 1 5 3 shiny src"])


def test_ingest_dedupes_keeping_max_delta():
    store = ingest(["3 6 1 4 3 unknown a", "3 6 1 5 3 unknown b", "# comment", ""])
    assert len(store) == 1
    assert store.get(3, 6, 1, 3).delta == 5


def test_ingest_of_empty_is_empty():
    assert len(ingest([])) == 0


def test_expand_rule1_example():
    store = TableStore([rec(2, 3, 1, 3, 2)])
    exp = expand(store, rules={1}, n_max=5)
    recs = {(r.n, r.kappa, r.delta, r.c) for r in exp.records()}
    assert recs == {(3, 1, 3, 2), (4, 1, 3, 2), (5, 1, 3, 2)}


def test_expand_chains_are_recorded():
    store = TableStore([rec(2, 3, 1, 3, 2)])
    exp = expand(store, rules={1, 3}, n_max=4)
    derived = [r for r in exp.records(with_chains=True) if r.source.startswith("derived")]
    assert derived
    assert all(":" in r.source for r in derived)
    by_key = {(r.n, r.kappa, r.delta, r.c): r for r in exp.records(with_chains=True)}
    assert by_key[(4, 1, 3, 2)].source == "derived(test:1)"


def test_rule6_fires_only_for_pure_records():
    impure = TableStore([rec(3, 6, 1, 4, 2)])
    exp = expand(impure, rules={6}, n_max=6)
    assert len(exp.records()) == 1
    pure = TableStore([rec(3, 6, 1, 4, 2, purity="pure")])
    exp2 = expand(pure, rules={6}, n_max=6)
    keys = {(r.n, r.kappa, r.delta, r.c) for r in exp2.records()}
    assert (6, 2, 4, 3) in keys
    # and never on q=2 records
    pure2 = TableStore([rec(2, 6, 1, 3, 2, purity="pure")])
    assert len(expand(pure2, rules={6}, n_max=6).records()) == 1


def test_compress_drops_rule1_shadow():
    survivors = compress([rec(3, 6, 1, 5, 3), rec(3, 7, 1, 5, 3)])
    assert [(r.n) for r in survivors] == [6]


def test_compress_idempotent():
    records = [rec(3, 6, 1, 5, 3), rec(3, 7, 1, 5, 3), rec(3, 7, 2, 4, 3)]
    once = compress(records)
    assert compress(once) == once


def test_compress_keeps_incomparable_records():
    records = [rec(3, 6, 1, 5, 3), rec(3, 6, 2, 4, 2)]
    assert sorted(compress(records), key=lambda r: r.key) == sorted(
        records, key=lambda r: r.key
    )


def test_query_prefers_higher_delta_then_smaller_c():
    store = TableStore([rec(3, 6, 1, 4, 3, source="b"), rec(3, 6, 1, 4, 2, source="a")])
    hits = query(store, q=3, n=6, kappa=1, rules=frozenset(), n_max=6)
    assert len(hits) == 1 and hits[0].c == 2


def test_query_consults_closure():
    store = TableStore([rec(2, 3, 1, 3, 2)])
    hits = query(store, q=2, n=5, kappa=1, c=2, rules={1}, n_max=5)
    assert hits and hits[0].delta == 3


def test_query_empty_store():
    assert query(TableStore(), q=3, n=6) == []


def test_bundled_tables_load_and_counts():
    qubit = load_bundled("qubit")
    qutrit = load_bundled("qutrit")
    assert len(qubit) == 294
    assert len(qutrit) == 211
    assert qubit.max_n() == 64 and qutrit.max_n() == 36
    # the published qubit list keeps only assisted entries
    assert all(r.c > 0 for r in qubit)
    # normalized typographic entries keep their verbatim flags
    flagged = [r for r in qutrit if r.note]
    assert {(r.n, r.kappa, r.delta, r.c) for r in flagged} == {
        (19, 0, 20, 19),
        (27, 0, 27, 25),
    }


def test_bundled_golden_queries():
    qubit = load_bundled("qubit")
    hits = query(qubit, q=2, n=3, kappa=1, c=2)
    assert hits and hits[0].delta == 3
    # the thm10-style constructed record joins the store for this query
    qutrit = load_bundled("qutrit")
    qutrit.add(rec(3, 6, 1, 5, 3, purity="pure", source="constructed"))
    hits = query(qutrit, q=3, n=6, kappa=1, c=3)
    assert hits and hits[0].delta == 5


def test_bundled_tables_have_no_bound_violations():
    for which in ("qubit", "qutrit"):
        assert check_records(list(load_bundled(which))) == []


def test_checksum_gate(tmp_path):
    import eaqecc

    src = pathlib.Path(eaqecc.__file__).parent / "data" / "paper"
    work = tmp_path / "paper"
    shutil.copytree(src, work)
    # corruption trips the checksum
    p = work / "table_qutrit.txt"
    p.write_text(p.read_text().replace("3 6 2 4 2", "3 6 2 9 2"))
    with pytest.raises(DataIntegrityError):
        load_data_text("table_qutrit.txt", data_dir=work)
    # missing file is an explicit error
    (work / "g29_14_9.txt").unlink()
    with pytest.raises(DataIntegrityError):
        load_data_text("g29_14_9.txt", data_dir=work)
    # checksum manifest absent
    (work / "CHECKSUMS.sha256").unlink()
    with pytest.raises(DataIntegrityError):
        load_data_text("table_qubit.txt", data_dir=work)


def test_corrupted_entry_with_fixed_checksum_fails_bounds(tmp_path):
    import eaqecc

    src = pathlib.Path(eaqecc.__file__).parent / "data" / "paper"
    work = tmp_path / "paper"
    shutil.copytree(src, work)
    p = work / "table_qutrit.txt"
    text = p.read_text().replace("3 6 2 4 2", "3 6 5 5 2")
    p.write_text(text)
    sums = work / "CHECKSUMS.sha256"
    lines = []
    for line in sums.read_text().splitlines():
        digest, name = line.split()
        if name == "table_qutrit.txt":
            digest = hashlib.sha256(p.read_bytes()).hexdigest()
        lines.append(f"{digest}  {name}")
    sums.write_text("\n".join(lines) + "\n")
    store = load_bundled("qutrit", data_dir=work)
    bad = check_records(list(store))
    assert any(r.n == 6 and r.kappa == 5 for r, _ in bad)


def test_unknown_bundle_name():
    with pytest.raises(KeyError):
        load_bundled("ququart")


def test_expansion_from_pure_records_stays_bound_consistent():
    seeds = [
        rec(3, 6, 1, 5, 3, purity="pure", source="constructed"),
        rec(3, 5, 0, 5, 3, purity="pure", source="paper-table"),
        rec(2, 3, 1, 3, 2, purity="pure", source="paper-table"),
    ]
    exp = expand(TableStore(seeds), rules=frozenset(range(1, 9)), n_max=10)
    records = exp.records()
    assert len(records) > len(seeds)
    assert check_records(records) == []


def test_export_csv_stable():
    records = [rec(3, 6, 1, 5, 3), rec(2, 3, 1, 3, 2)]
    text = export_csv(records)
    assert text.splitlines()[0] == "q,n,kappa,delta,c,purity,source"
    assert text == export_csv(list(reversed(records)))
