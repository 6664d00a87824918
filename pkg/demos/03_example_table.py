"""Verify the catalog of non-negative non-SOS polynomials.

Both certifiers run on every row in exact arithmetic.  Five catalogued
rows are defective (three are not even non-negative, two admit distinct
half-polytope pairs so the criterion is inconclusive); the report calls
them out with the precise reason.
"""

from halfsquares import reproduce_table

report = reproduce_table()
for row in report.rows:
    status = "PASS" if row.ok else "FAIL"
    print(f"[{status}] n={row.n} d={row.d}: {row.detail}")
print(f"\n{sum(r.ok for r in report.rows)} of {len(report.rows)} rows verified")
