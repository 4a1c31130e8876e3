"""From an F_q[t]-relation among special points to a zeta relation.

At q = 2, weight 2 the point Xi_(1,1) is killed by a = (t^2 + t)^2.  The
relation becomes a(theta) * alpha(theta) * zeta(1,1) = c0 * pi^2, and the
numeric check recovers c0 in F_q[theta].
"""
from dzv.carlitz import carlitz_action
from dzv.numeric import point_weight_factor, verify_relation
from dzv.pipeline import dimension, get_xi

for q, n in ((2, 2), (2, 4), (3, 5)):
    rep = dimension(n, q, verify=False)
    print(f"q={q} weight {n}: dimension {rep.dimension}, {len(rep.certificates)} certificates")
    for cert in rep.certificates:
        terms = []
        for lab, a in zip(cert.labels, cert.a):
            if a:
                fac, idx = point_weight_factor(q, lab)
                terms.append(f"({(a.with_var('theta') * fac)!r}) zeta{idx}")
        res = verify_relation(q, n, cert.labels, cert.a)
        rhs = f"({res.c0!r}) pi^{n}" if n % (q - 1) == 0 else "0"
        print(f"  [{cert.kind}] " + " + ".join(terms) + f" = {rhs}   [{res.status}, margin {res.margin}]")

# the torsion witness, checked directly under the t-action
xi = get_xi(1, 1, 2)
a = dimension(2, 2, verify=False).certificates[0].a[0]
print("\n[a](Xi_(1,1)) =", carlitz_action(a, xi), "with a =", a)
