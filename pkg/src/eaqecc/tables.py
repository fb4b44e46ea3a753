"""Best-known EAQECC parameter tables: storage, expansion, compression.

A CodeRecord is one claim [[n, kappa, delta; c]]_q with purity and
source tags.  Stores key records by (q, n, kappa, c) and keep the best
delta.  Expansion closes a store under a chosen subset of the eight
single-step rules (bounded by a maximum length); compression keeps the
records that no other stored record can reach, so a compressed table is
dominance-free.  Since every rule is unary, the closure of a set is the
union of single-record closures, which keeps both directions cheap.

Record line format: `q n kappa delta c purity source`, '#' comments
allowed.  Bundled transcriptions of the published qubit and qutrit
tables load through a checksum gate.
"""

from __future__ import annotations

import csv
import hashlib
import io
from dataclasses import dataclass

from . import propagate
from .construct import EaqeccParams
from .distance import DistanceFact
from .errors import DataIntegrityError, RecordParseError

DEFAULT_RULES = frozenset({1, 2, 3, 4, 5, 7})
ALL_RULES = frozenset(range(1, 9))


@dataclass(frozen=True)
class CodeRecord:
    q: int
    n: int
    kappa: int
    delta: int
    c: int
    purity: str = "unknown"
    source: str = "constructed"
    note: str | None = None

    @property
    def key(self):
        return (self.q, self.n, self.kappa, self.c)

    def is_pure_at_delta(self) -> bool:
        if self.purity == "pure":
            return True
        if self.purity.startswith("pure_to:"):
            return int(self.purity.split(":", 1)[1]) >= self.delta
        return False

    def to_line(self) -> str:
        line = f"{self.q} {self.n} {self.kappa} {self.delta} {self.c} {self.purity} {self.source}"
        if self.note:
            line += f"  # {self.note}"
        return line

    @classmethod
    def from_line(cls, line: str, line_number: int | None = None) -> "CodeRecord":
        body, _, comment = line.partition("#")
        toks = body.split()
        if len(toks) < 5:
            raise RecordParseError(f"need at least 5 fields, got {len(toks)}", line_number)
        try:
            q, n, kappa, delta, c = (int(t) for t in toks[:5])
        except ValueError as exc:
            raise RecordParseError(f"non-integer parameter ({exc})", line_number) from None
        if min(q, n) < 1 or min(kappa, delta, c) < 0:
            raise RecordParseError("parameters out of range", line_number)
        purity = toks[5] if len(toks) > 5 else "unknown"
        if purity != "pure" and purity != "unknown" and not purity.startswith("pure_to:"):
            raise RecordParseError(f"bad purity tag {purity!r}", line_number)
        source = toks[6] if len(toks) > 6 else "unknown"
        note = comment.strip() or None
        return cls(q, n, kappa, delta, c, purity, source, note)

    def to_params(self) -> EaqeccParams:
        """Parameter object for bound checking; delta becomes a citation fact."""
        return EaqeccParams(
            q=self.q,
            n=self.n,
            kappa=self.kappa,
            delta=DistanceFact(self.delta, "exact", "citation"),
            c=self.c,
            purity=self.purity,
            provenance=(self.source,),
        )


class TableStore:
    """Best record per (q, n, kappa, c), duplicates collapsed on ingest."""

    def __init__(self, records=()):
        self.records: dict = {}
        for r in records:
            self.add(r)

    def add(self, rec: CodeRecord):
        old = self.records.get(rec.key)
        if old is None or rec.delta > old.delta:
            self.records[rec.key] = rec

    def get(self, q, n, kappa, c) -> CodeRecord | None:
        return self.records.get((q, n, kappa, c))

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(sorted(self.records.values(), key=lambda r: r.key + (-r.delta,)))

    def max_n(self, q=None) -> int:
        ns = [r.n for r in self.records.values() if q is None or r.q == q]
        return max(ns) if ns else 0


def ingest(lines) -> TableStore:
    """Parse record lines into a store; malformed lines carry line numbers."""
    store = TableStore()
    for no, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        store.add(CodeRecord.from_line(line, no))
    return store


# --------------------------------------------------------------------------
# closure under the single-step rules
# --------------------------------------------------------------------------


def _closure_map(rec: CodeRecord, rules, n_max, with_parents=False):
    """Best reachable delta per (n, kappa, c, purebit), bucket search.

    Every rule keeps or lowers delta, so processing states in descending
    delta order finalizes each state on first visit.  Returns
    {(n, kappa, c, pure): delta} plus parent pointers when asked.
    """
    rules = sorted(rules)
    start = (rec.n, rec.kappa, rec.c, 1 if rec.is_pure_at_delta() else 0)
    val = {start: rec.delta}
    parent = {start: None} if with_parents else None
    buckets = [[] for _ in range(rec.delta + 1)]
    buckets[rec.delta].append(start)
    for delta in range(rec.delta, 0, -1):
        queue = buckets[delta]
        qi = 0
        while qi < len(queue):
            state = queue[qi]
            qi += 1
            if val.get(state) != delta:
                continue
            n, kappa, c, pure = state
            for rule in rules:
                ok, _ = propagate.simple_rule_applicable(
                    rule, rec.q, n, kappa, delta, c, bool(pure)
                )
                if not ok:
                    continue
                n2, k2, d2, c2 = propagate.simple_rule_transform(rule, n, kappa, delta, c)
                if n2 > n_max or n2 < 1:
                    continue
                pure2 = 1 if rule == 6 else 0
                s2 = (n2, k2, c2, pure2)
                if val.get(s2, -1) >= d2:
                    continue
                val[s2] = d2
                if with_parents:
                    parent[s2] = (state, rule)
                buckets[d2].append(s2)
    return (val, parent) if with_parents else val


def _chain(parent, state):
    rules = []
    while parent[state] is not None:
        state, rule = parent[state]
        rules.append(rule)
    return tuple(reversed(rules))


class ExpandedStore:
    """Closure of a store under a rule subset, kept as a lazy cell map."""

    def __init__(self, roots, rules, n_max):
        self.roots = list(roots)
        self.rules = frozenset(rules)
        self.n_max = n_max
        self.cells = {}  # (q, n, kappa, c, pure) -> (delta, root_index)
        for idx, rec in enumerate(self.roots):
            for (n, kappa, c, pure), d in _closure_map(rec, self.rules, n_max).items():
                key = (rec.q, n, kappa, c, pure)
                cur = self.cells.get(key)
                if cur is None or d > cur[0]:
                    self.cells[key] = (d, idx)

    def best_delta(self, q, n, kappa, c, need_pure=False):
        """Best claimable delta at a cell (None if unreachable)."""
        out = None
        for pure in (0, 1):
            if need_pure and not pure:
                continue
            hit = self.cells.get((q, n, kappa, c, pure))
            if hit is not None and (out is None or hit[0] > out):
                out = hit[0]
        return out

    def _delta_covers(self, reached, claimed) -> bool:
        # without rule 3 the final distance cannot be lowered freely, and
        # the cell map only retains per-cell maxima, so demand equality
        if 3 in self.rules:
            return reached >= claimed
        return reached == claimed

    def covers(self, rec: CodeRecord) -> bool:
        q, n, kappa, c = rec.key
        if rec.is_pure_at_delta():
            hit = self.cells.get((q, n, kappa, c, 1))
            return hit is not None and self._delta_covers(hit[0], rec.delta)
        d = self.best_delta(q, n, kappa, c)
        return d is not None and self._delta_covers(d, rec.delta)

    def records(self, with_chains=False):
        """Materialized best records, one per (q, n, kappa, c) cell."""
        best = {}
        for (q, n, kappa, c, pure), (d, idx) in self.cells.items():
            key = (q, n, kappa, c)
            cur = best.get(key)
            if cur is None or d > cur[0] or (d == cur[0] and pure > cur[1]):
                best[key] = (d, pure, idx)
        chains = {}
        if with_chains:
            for idx, rec in enumerate(self.roots):
                if not any(i == idx for (_, _, i) in best.values()):
                    continue
                val, parent = _closure_map(rec, self.rules, self.n_max, with_parents=True)
                for key, (d, pure, i) in best.items():
                    if i != idx:
                        continue
                    state = (key[1], key[2], key[3], pure)
                    if val.get(state) == d:
                        chains[key] = _chain(parent, state)
        out = []
        for key in sorted(best):
            d, pure, idx = best[key]
            root = self.roots[idx]
            q, n, kappa, c = key
            if (n, kappa, c, d) == (root.n, root.kappa, root.c, root.delta):
                out.append(root)
                continue
            purity = f"pure_to:{d}" if pure else "unknown"
            chain = chains.get(key)
            tag = ",".join(str(r) for r in chain) if chain else "*"
            out.append(
                CodeRecord(q, n, kappa, d, c, purity, f"derived({root.source}:{tag})")
            )
        return out


def expand(store, rules=DEFAULT_RULES, n_max=None) -> ExpandedStore:
    """Close the store under the chosen rules, up to length n_max."""
    roots = list(store)
    if n_max is None:
        n_max = max((r.n for r in roots), default=1)
    return ExpandedStore(roots, rules, n_max)


def compress(records, rules=DEFAULT_RULES, n_max=None):
    """Dominance-free subset: drop records another record can derive.

    Rule chains never return to their starting parameters, so the
    maximal elements of a closure are always original records; it
    suffices to test each record against the closures of the others.
    """
    if isinstance(records, ExpandedStore):
        roots = records.roots
        rules = records.rules
        n_max = records.n_max
    else:
        roots = list(records)
        if n_max is None:
            n_max = max((r.n for r in roots), default=1)
    singles = [ExpandedStore([r], rules, n_max) for r in roots]
    survivors = []
    for i, rec in enumerate(roots):
        dominated = any(j != i and singles[j].covers(rec) for j in range(len(roots)))
        if not dominated:
            survivors.append(rec)
    return survivors


def query(store, q=None, n=None, kappa=None, c=None, rules=DEFAULT_RULES, n_max=None):
    """Best records in the expansion closure matching the filter.

    Ties on delta break toward smaller c, then lexicographic source.
    """
    if n_max is None:
        n_max = n if n is not None else max((r.n for r in store), default=1)
    exp = store if isinstance(store, ExpandedStore) else expand(store, rules, n_max)
    hits = {}
    for rec in exp.records():
        if q is not None and rec.q != q:
            continue
        if n is not None and rec.n != n:
            continue
        if kappa is not None and rec.kappa != kappa:
            continue
        if c is not None and rec.c != c:
            continue
        sel = (rec.q, rec.n, rec.kappa)
        cur = hits.get(sel)
        if (
            cur is None
            or rec.delta > cur.delta
            or (rec.delta == cur.delta and (rec.c, rec.source) < (cur.c, cur.source))
        ):
            hits[sel] = rec
    return [hits[k] for k in sorted(hits)]


# --------------------------------------------------------------------------
# bound checking and formats
# --------------------------------------------------------------------------


def check_records(records, assume_route="hermitian"):
    """[(record, report)] for records violating any applicable bound.

    Records that fail the structural invariants (kappa or c out of
    range) are reported as violations too rather than aborting the scan.
    """
    from . import bounds
    from .bounds import BoundCheck, BoundReport
    from .errors import PreconditionError

    bad = []
    for rec in records:
        try:
            params = rec.to_params()
        except PreconditionError as exc:
            bad.append(
                (rec, BoundReport((BoundCheck("structure", True, str(exc), False, None),)))
            )
            continue
        report = bounds.check_all(params, assume_route=assume_route)
        if not report.ok:
            bad.append((rec, report))
    return bad


def export_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "n", "kappa", "delta", "c", "purity", "source"])
    for r in sorted(records, key=lambda r: r.key + (-r.delta,)):
        writer.writerow([r.q, r.n, r.kappa, r.delta, r.c, r.purity, r.source])
    return buf.getvalue()


# --------------------------------------------------------------------------
# bundled table transcriptions
# --------------------------------------------------------------------------

BUNDLED_TABLES = {"qubit": "table_qubit.txt", "qutrit": "table_qutrit.txt"}


def _data_dir():
    from importlib.resources import files

    return files("eaqecc") / "data" / "paper"


def load_data_text(name: str, data_dir=None) -> str:
    """Checksum-gated read of a bundled data file."""
    import pathlib

    root = pathlib.Path(data_dir) if data_dir is not None else _data_dir()
    path = root / name
    try:
        raw = path.read_bytes()
    except (FileNotFoundError, OSError):
        raise DataIntegrityError(f"bundled data file {name!r} is missing") from None
    try:
        sums = (root / "CHECKSUMS.sha256").read_text()
    except (FileNotFoundError, OSError):
        raise DataIntegrityError("checksum manifest CHECKSUMS.sha256 is missing") from None
    want = None
    for line in sums.splitlines():
        parts = line.split()
        if len(parts) == 2 and parts[1] == name:
            want = parts[0]
    if want is None:
        raise DataIntegrityError(f"no checksum recorded for {name!r}")
    got = hashlib.sha256(raw).hexdigest()
    if got != want:
        raise DataIntegrityError(f"checksum mismatch for {name!r}")
    return raw.decode()


def load_bundled(which: str, data_dir=None) -> TableStore:
    """One of the transcribed published tables ('qubit' or 'qutrit')."""
    if which not in BUNDLED_TABLES:
        raise KeyError(f"unknown table {which!r}; choose from {sorted(BUNDLED_TABLES)}")
    text = load_data_text(BUNDLED_TABLES[which], data_dir)
    return ingest(text.splitlines())
