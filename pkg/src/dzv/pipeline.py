"""Weight reports: the V-set, dimensions, zeta-like counts and tables.

Xi points and Anderson-Thakur polynomials are cached as JSON files under a
cache directory, one file per key, published by write-then-rename.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import field
from .algebra.serial import bipoly_from_json, bipoly_to_json, poly_to_json
from .carlitz import TensorPoint, context
from .chen import fp_linear_count
from .fmodule import special_point_vn, xi_point
from .numeric import MAX_ENUMERATION, verify_relation
from .siegel import relation_rank

log = logging.getLogger(__name__)

VERIFY_THRESHOLD = 12
"""Weights up to this are numerically verified by default."""


class VerificationFailure(AssertionError):
    """A relation certificate failed the numeric check."""


def v_set(n: int, q: int) -> list[tuple[int, int]]:
    """Pairs (s1, s2) of weight n with (q-1) | s2, ordered by s1."""
    if n < 2:
        raise ValueError("weight n >= 2")
    return sorted((n - s2, s2) for s2 in range(q - 1, n, q - 1))


def is_frobenius_image(s, p: int) -> bool:
    """True if every entry of s is divisible by p, so zeta(s) is a p-th power."""
    return all(x % p == 0 for x in s)


def default_dmax(q: int) -> int:
    d = 0
    while q ** (d + 1) <= MAX_ENUMERATION and d < 12:
        d += 1
    return d


# -- cache


class Cache:
    """Directory of JSON records for Xi points and H polynomials."""

    def __init__(self, root):
        self.root = Path(root)

    def _xi_path(self, q, s1, s2):
        F = field(q)
        return self.root / "xi" / f"q{q}_p{F.p}_e{F.e}_{s1}_{s2}.json"

    def _h_path(self, q, m):
        return self.root / "H" / f"q{q}_{m}.json"

    @staticmethod
    def _read(path):
        try:
            with open(path) as fh:
                return json.load(fh)
        except FileNotFoundError:
            return None

    @staticmethod
    def _write(path, record):
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise

    def load_xi(self, q, s1, s2):
        rec = self._read(self._xi_path(q, s1, s2))
        if rec is None:
            return None
        return TensorPoint.from_json(q, rec["xi"])

    def store_xi(self, q, s1, s2, xi: TensorPoint):
        F = field(q)
        rec = {
            "q": q, "p": F.p, "e": F.e, "s1": s1, "s2": s2, "n": s1 + s2,
            "alpha": poly_to_json(context(q).alpha(s2)),
            "xi": xi.to_json(),
            "sup_degree": int(xi.sup_degree()) if not xi.is_zero() else -1,
        }
        self._write(self._xi_path(q, s1, s2), rec)

    def has_H(self, q, m):
        return self._h_path(q, m).exists()

    def load_H(self, q, m):
        rec = self._read(self._h_path(q, m))
        if rec is None:
            return None
        return bipoly_from_json(field(q), rec["H"])

    def store_H(self, q, m, h):
        self._write(self._h_path(q, m), {"q": q, "index": m, "H": bipoly_to_json(h)})


def warm_H(q: int, upto: int, cache: Cache | None):
    """Fill the context's H table up to index upto, using and feeding the cache."""
    ctx = context(q)
    known = ctx.known_H()
    for m in range(upto + 1):
        on_disk = cache.has_H(q, m) if cache else False
        if m >= known and on_disk:
            ctx.set_H(m, cache.load_H(q, m))
            continue
        h = ctx.H(m)
        if cache and not on_disk:
            cache.store_H(q, m, h)


def get_xi(s1: int, s2: int, q: int, cache: Cache | None = None) -> TensorPoint:
    if cache:
        xi = cache.load_xi(q, s1, s2)
        if xi is not None:
            return xi
    warm_H(q, max(s1, s2) - 1, cache)
    xi = xi_point(s1, s2, q)
    if cache:
        cache.store_xi(q, s1, s2, xi)
    return xi


# -- reports


@dataclass
class Certificate:
    labels: list
    a: list
    kind: str = "span"  # "span": relation among all Xi_s; "zeta_like": pair test
    status: str = "unverified"  # numeric check
    delta: object = None  # BiPoly witness from the solver
    verified: bool = False  # checked under the t-action

    def to_dict(self):
        return {
            "kind": self.kind,
            "points": [list(lab) for lab in self.labels],
            "a": [poly_to_json(x) for x in self.a],
            "delta": None if self.delta is None else bipoly_to_json(self.delta),
            "verified": self.verified,
            "status": self.status,
        }


@dataclass
class WeightReport:
    q: int
    n: int
    v_size: int
    relations: int  # independent F_q[t]-relations among the Xi_s
    rank: int
    dimension: int
    fp_linear: int | None
    zeta_like: int
    zeta_like_all: int
    zeta_like_indices: list
    certificates: list = dc_field(default_factory=list)
    ell: int = 0
    sup_degree: int = 0
    timing: float = 0.0

    def check(self):
        q, n = self.q, self.n
        assert self.v_size == (n - 1) // (q - 1)
        assert self.relations + self.rank == self.v_size
        assert self.dimension == n - self.v_size + self.rank
        assert 1 <= self.dimension <= n
        assert (self.fp_linear is None) == bool(n % (q - 1))

    def to_dict(self, timing=False):
        d = {
            "q": self.q, "weight": self.n, "V_size": self.v_size,
            "relations": self.relations, "rank": self.rank, "dimension": self.dimension,
            "fp_linear": self.fp_linear, "zeta_like": self.zeta_like,
            "zeta_like_all": self.zeta_like_all,
            "zeta_like_indices": [list(s) for s in self.zeta_like_indices],
            "ell": self.ell, "sup_degree": self.sup_degree,
            "certificates": [c.to_dict() for c in self.certificates],
        }
        if timing:
            d["timing"] = round(self.timing, 3)
        return d


def _verify(q, n, labels, vec, d_max):
    res = verify_relation(q, n, labels, vec, d_max=d_max)
    if res.status == "fail":
        raise VerificationFailure(f"q={q} n={n} relation on {labels} failed: {res.detail}")
    return res.status


def zeta_like_indices(n: int, q: int, points=None, verify=False, d_max=None, cache=None):
    """Indices s in V with zeta(s)/zeta(n) in k, with their pair certificates.

    Indices outside V never qualify.  For A-even n the test is that Xi_s is
    torsion; for A-odd n that v_n and Xi_s are dependent.
    """
    V = v_set(n, q)
    if points is None:
        points = [get_xi(s1, s2, q, cache) for s1, s2 in V]
    even = n % (q - 1) == 0
    vn = None if even else special_point_vn(n, q)
    out, certs = [], []
    for s, xi in zip(V, points):
        if even:
            res = relation_rank([xi], n, q)
            hit = res.rank == 0
            labels = [("xi",) + s]
        else:
            res = relation_rank([vn, xi], n, q)
            hit = res.rank == 1
            labels = [("vn", n), ("xi",) + s]
        if hit:
            out.append(s)
            for vec, dl in zip(res.relations.vectors, res.relations.deltas):
                c = Certificate(labels, vec, "zeta_like", delta=dl, verified=res.relations.verified)
                if verify:
                    c.status = _verify(q, n, labels, vec, d_max or default_dmax(q))
                certs.append(c)
    return out, certs


def zeta_like_count(n: int, q: int, primitive: bool = True, cache=None) -> int:
    """Number of zeta-like double zetas of weight n.

    With ``primitive`` the indices with p | s1 and p | s2 are skipped: their
    zeta values are p-th powers of lower weight ones.  This is the convention
    of the published tables.
    """
    idx, _ = zeta_like_indices(n, q, cache=cache)
    p = field(q).p
    if primitive:
        idx = [s for s in idx if not is_frobenius_image(s, p)]
    return len(idx)


def dimension(n: int, q: int, verify: bool | None = None, cache: Cache | None = None,
              d_max: int | None = None) -> WeightReport:
    """Full report for weight n."""
    t0 = time.perf_counter()
    if verify is None:
        verify = n <= VERIFY_THRESHOLD
    d_max = d_max or default_dmax(q)
    V = v_set(n, q)
    points = [get_xi(s1, s2, q, cache) for s1, s2 in V]
    res = relation_rank(points, n, q)
    labels = [("xi",) + s for s in V]
    certs = []
    for vec, dl in zip(res.relations.vectors, res.relations.deltas):
        c = Certificate(labels, vec, delta=dl, verified=res.relations.verified)
        if verify:
            c.status = _verify(q, n, labels, vec, d_max)
        certs.append(c)
    zl, zl_certs = zeta_like_indices(n, q, points, verify, d_max)
    p = field(q).p
    fp = fp_linear_count(n, q) if n % (q - 1) == 0 else None
    sup = max((int(x.sup_degree()) for x in points if not x.is_zero()), default=0)
    rep = WeightReport(
        q=q, n=n, v_size=len(V), relations=len(res.relations), rank=res.rank,
        dimension=n - len(V) + res.rank, fp_linear=fp,
        zeta_like=sum(1 for s in zl if not is_frobenius_image(s, p)),
        zeta_like_all=len(zl), zeta_like_indices=zl,
        certificates=certs + zl_certs, ell=res.ell, sup_degree=sup,
        timing=time.perf_counter() - t0,
    )
    rep.check()
    return rep


def _dimension_job(args):
    n, q, verify, cache_root, d_max = args
    try:
        return dimension(n, q, verify, Cache(cache_root) if cache_root else None, d_max), None
    except Exception as exc:  # reported per weight, the sweep continues
        return None, (n, type(exc).__name__, str(exc))


def table(n_min: int, n_max: int, q: int, jobs: int = 1, verify: bool | None = None,
          cache: Cache | None = None, d_max: int | None = None):
    """Reports for every weight in [n_min, n_max] and a list of per-weight failures."""
    if not 2 <= n_min <= n_max:
        raise ValueError("need 2 <= n_min <= n_max")
    root = str(cache.root) if cache else None
    args = [(n, q, verify, root, d_max) for n in range(n_min, n_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_dimension_job, args))
    else:
        results = [_dimension_job(a) for a in args]
    reports = [r for r, _ in results if r is not None]
    errors = [e for _, e in results if e is not None]
    for n, kind, msg in errors:
        log.error("weight %d failed: %s: %s", n, kind, msg)
    return reports, errors


CSV_COLUMNS = ("weight", "dimension", "fp_linear", "zeta_like", "V_size", "rank", "relations")


def to_csv(reports) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in reports:
        d = r.to_dict()
        lines.append(",".join("" if d[c] is None else str(d[c]) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def to_json(reports, timing=False) -> str:
    return json.dumps([r.to_dict(timing) for r in reports], indent=1, sort_keys=True) + "\n"


def to_text(reports) -> str:
    if not reports:
        return ""
    q = reports[0].q
    rows = [
        ("Weight", [r.n for r in reports]),
        ("Dimension", [r.dimension for r in reports]),
        ("F_p-linear", ["" if r.fp_linear is None else r.fp_linear for r in reports]),
        ("Zeta-like", [r.zeta_like for r in reports]),
    ]
    w = max(len(str(x)) for _, xs in rows for x in xs)
    out = [f"q = {q}"]
    for name, xs in rows:
        out.append(f"{name:<11}" + " ".join(f"{str(x):>{w}}" for x in xs))
    return "\n".join(out) + "\n"
