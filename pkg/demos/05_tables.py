"""Best-known parameter tables: query, expand, compress.

The bundled qubit (3 <= n <= 64) and qutrit (3 <= n <= 36) tables load
through a checksum gate.  Queries consult the closure under the
single-step rules, so a stored [[3,1,3;2]] also answers length-5
questions; compression goes the other way and keeps only records no
other record can reach.
"""

from eaqecc import tables

qubit = tables.load_bundled("qubit")
qutrit = tables.load_bundled("qutrit")
print(f"qubit records: {len(qubit)} (n <= {qubit.max_n()})")
print(f"qutrit records: {len(qutrit)} (n <= {qutrit.max_n()})")

print("\nbound check across both tables:")
bad = tables.check_records(list(qubit)) + tables.check_records(list(qutrit))
print("  violations:", len(bad))

print("\nbest qutrit distance at n=16 for each kappa (closure-aware):")
for rec in tables.query(qutrit, q=3, n=16):
    print("  ", rec.to_line())

print("\nexpansion tags derived records with their rule chains:")
seed = tables.TableStore([tables.CodeRecord(2, 3, 1, 3, 2, source="table")])
for rec in tables.expand(seed, rules={1, 3}, n_max=5).records(with_chains=True):
    print("  ", rec.to_line())

print("\ncompression drops whatever another record already implies:")
pair = [
    tables.CodeRecord(3, 6, 1, 5, 3, source="a"),
    tables.CodeRecord(3, 7, 1, 5, 3, source="b"),   # rule-1 shadow of the first
    tables.CodeRecord(3, 7, 2, 4, 3, source="c"),
]
for rec in tables.compress(pair):
    print("  kept:", rec.to_line())

print("\nthe two typographic entries carry their verbatim flags:")
for rec in qutrit:
    if rec.note:
        print("  ", rec.to_line())
