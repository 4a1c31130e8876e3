"""Dimensions of weight-n double zeta spans for q = 2 and q = 3.

Run: python demos/weight_report.py
"""
from dzv.pipeline import table, to_text

for q, lo, hi in ((2, 2, 12), (3, 3, 12)):
    reports, errors = table(lo, hi, q, verify=False)
    print(to_text(reports))
    for r in reports:
        # d_n = n - |V| + rank: everything outside V is independent of pi^n
        print(f"  weight {r.n:>2}: |V|={r.v_size:<2} rank={r.rank:<2} relations={r.relations:<2} "
              f"ell={r.ell:<3} sup_degree={r.sup_degree}")
    print()
