"""Relations coming from products of two single zetas.

For A-even r <= s the product zeta(r) zeta(s) is a k-multiple of pi^(r+s)
and expands into double zetas of weight r+s.  The number of independent
relations obtained this way is the F_p-linear count; it is compared with
the full relation count n - d_n.
"""
from dzv.chen import chen_vectors, fp_linear_count, numeric_residual
from dzv.pipeline import dimension

q = 2
for n in range(2, 11):
    vecs = chen_vectors(n, q)
    for v in vecs:
        assert numeric_residual(v, 8).is_zero()
    d = dimension(n, q, verify=False).dimension
    print(f"weight {n:>2}: {len(vecs)} products, {fp_linear_count(n, q)} independent, "
          f"{n - d} relations among pi^n and double zetas overall")

v = chen_vectors(5, 2)[0]
print("\nq=2, (r,s) = (1,4):", v.pi_coeff, "* pi^5 =",
      " + ".join(f"zeta{s}" for s in v.support()))
