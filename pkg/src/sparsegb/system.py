"""Polynomial-system files and seeded benchmark families with planted roots.

Text format (UTF-8, ``#`` starts a comment)::

    prime 65521
    dim 4
    support family 2:1 2:1        # or: support generators / support polytope ... end
    poly
    17 : 1 0 1 0
    ...
    end
    max_degree 3
    order_weights
    1 1 1 1
    ...
    end
    plant 5 9 11 2
    meta seed 7

Without a ``support`` stanza the support is taken from the polynomials
and translated so that a vertex sits at the origin.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .ffield import DEFAULT_PRIME, check_prime
from .lattice import Facet, PolytopeSpec, product, simplex
from .semigroup import Exp, GeneratorSet, SemigroupError

RNG_NAME = "numpy.random.PCG64"


class SystemFormatError(ValueError):
    pass


@dataclass
class SystemFile:
    prime: int
    dim: int
    polys: list[dict[Exp, int]]
    support: str = "auto"  # auto | generators | polytope | family
    generators: list[Exp] | None = None
    points: list[Exp] | None = None
    facets: list[tuple[Exp, int]] | None = None
    normal: bool = False
    blocks: list[tuple[int, int]] | None = None
    max_degree: int | None = None
    order_weights: list[Exp] | None = None
    cap_dimension: int | None = None
    plant: tuple[int, ...] | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def canonical(self) -> "SystemFile":
        p = self.prime
        polys = [{tuple(e): c % p for e, c in sorted(f.items(), reverse=True) if c % p} for f in self.polys]
        out = SystemFile(**{**self.__dict__, "polys": polys})
        if out.generators is not None:
            out.generators = sorted(set(map(tuple, out.generators)))
        if out.points is not None:
            out.points = sorted(set(map(tuple, out.points)))
        return out

    # support ---------------------------------------------------------------

    def polytope(self) -> PolytopeSpec | None:
        if self.support == "family":
            return product(*(simplex(n, d) for n, d in self.blocks))
        if self.support == "polytope":
            facets = None if self.facets is None else tuple(Facet(tuple(a), b) for a, b in self.facets)
            return PolytopeSpec(frozenset(self.points), self.dim, facets, self.normal)
        return None

    def generator_points(self) -> list[Exp] | None:
        if self.support == "generators":
            return list(self.generators)
        P = self.polytope()
        return None if P is None else P.sorted_points()

    # text ------------------------------------------------------------------

    def emit(self) -> str:
        s = self.canonical()
        lines = [f"prime {s.prime}", f"dim {s.dim}"]
        row = lambda v: " ".join(str(int(x)) for x in v)
        if s.support == "generators":
            lines += ["support generators", *map(row, s.generators), "end"]
        elif s.support == "polytope":
            lines += ["support polytope", f"normal {'true' if s.normal else 'false'}", *map(row, s.points)]
            lines += [f"facet {row(a)} <= {b}" for a, b in (s.facets or [])]
            lines.append("end")
        elif s.support == "family":
            lines.append("support family " + " ".join(f"{n}:{d}" for n, d in s.blocks))
        for f in s.polys:
            lines.append("poly")
            lines += [f"{c} : {row(e)}" for e, c in f.items()]
            lines.append("end")
        if s.max_degree is not None:
            lines.append(f"max_degree {s.max_degree}")
        if s.cap_dimension is not None:
            lines.append(f"cap_dimension {s.cap_dimension}")
        if s.order_weights is not None:
            lines += ["order_weights", *map(row, s.order_weights), "end"]
        if s.plant is not None:
            lines.append(f"plant {row(s.plant)}")
        for k in sorted(s.meta):
            lines.append(f"meta {k} {s.meta[k]}")
        return "\n".join(lines) + "\n"

    # json ------------------------------------------------------------------

    def to_json(self) -> dict:
        s = self.canonical()
        d = {"prime": s.prime, "dim": s.dim, "support": s.support,
             "polys": [[[c, list(e)] for e, c in f.items()] for f in s.polys]}
        for k in ("generators", "points", "order_weights", "blocks"):
            v = getattr(s, k)
            if v is not None:
                d[k] = [list(x) for x in v]
        if s.facets is not None:
            d["facets"] = [[list(a), b] for a, b in s.facets]
        if s.support == "polytope":
            d["normal"] = s.normal
        for k in ("max_degree", "cap_dimension"):
            if getattr(s, k) is not None:
                d[k] = getattr(s, k)
        if s.plant is not None:
            d["plant"] = list(s.plant)
        if s.meta:
            d["meta"] = dict(sorted(s.meta.items()))
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SystemFile":
        tup = lambda rows: None if rows is None else [tuple(r) for r in rows]
        return cls(
            prime=int(d["prime"]), dim=int(d["dim"]), support=d.get("support", "auto"),
            polys=[{tuple(e): int(c) for c, e in f} for f in d["polys"]],
            generators=tup(d.get("generators")), points=tup(d.get("points")),
            facets=None if d.get("facets") is None else [(tuple(a), int(b)) for a, b in d["facets"]],
            normal=bool(d.get("normal", False)), blocks=tup(d.get("blocks")),
            max_degree=d.get("max_degree"), order_weights=tup(d.get("order_weights")),
            cap_dimension=d.get("cap_dimension"),
            plant=None if d.get("plant") is None else tuple(d["plant"]), meta=dict(d.get("meta", {})),
        ).canonical()


def _ints(tokens: Sequence[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise SystemFormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from exc


def parse(text: str) -> SystemFile:
    """Parse the text system format; raises SystemFormatError with a line number."""
    raw = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in raw if ln]
    kw: dict = {"prime": DEFAULT_PRIME, "dim": None, "polys": [], "meta": {}}
    k = 0
    while k < len(lines):
        no = lines[k][0]
        try:
            k = _stanza(lines, k, kw)
        except SystemFormatError:
            raise
        except (IndexError, ValueError) as exc:
            raise SystemFormatError(f"line {no}: {exc or 'missing value'}") from exc
    if not kw["polys"]:
        raise SystemFormatError("no polynomials")
    if kw["dim"] is None:
        kw["dim"] = len(next(iter(kw["polys"][0])))
    for f in kw["polys"]:
        if any(len(e) != kw["dim"] for e in f):
            raise SystemFormatError(f"exponent rows must have length {kw['dim']}")
    return SystemFile(**kw).canonical()


def _block(lines: list[tuple[int, str]], start: int) -> tuple[list[tuple[int, str]], int]:
    j = start
    while j < len(lines) and lines[j][1] != "end":
        j += 1
    if j == len(lines):
        raise SystemFormatError(f"line {lines[start - 1][0]}: stanza without 'end'")
    return lines[start:j], j + 1


def _stanza(lines: list[tuple[int, str]], k: int, kw: dict) -> int:
    """Consume the stanza starting at ``lines[k]`` into ``kw``; returns the next index."""
    no, ln = lines[k]
    head, *rest = ln.split()
    if head in ("prime", "dim", "max_degree", "cap_dimension"):
        kw[head] = check_prime(int(rest[0])) if head == "prime" else int(rest[0])
        return k + 1
    if head == "plant":
        kw["plant"] = _ints(rest, no)
        return k + 1
    if head == "meta":
        kw["meta"][rest[0]] = " ".join(rest[1:])
        return k + 1
    if head == "order_weights":
        body, k = _block(lines, k + 1)
        kw["order_weights"] = [_ints(b.split(), i) for i, b in body]
        return k
    if head == "poly":
        body, k = _block(lines, k + 1)
        f: dict[Exp, int] = {}
        for i, b in body:
            if ":" not in b:
                raise SystemFormatError(f"line {i}: terms read 'c : a_1 ... a_n'")
            c, e = b.split(":", 1)
            (c,), e = _ints(c.split(), i), _ints(e.split(), i)
            f[e] = (f.get(e, 0) + c) % kw["prime"]
        kw["polys"].append(f)
        return k
    if head != "support":
        raise SystemFormatError(f"line {no}: unknown keyword {head!r}")
    kind = rest[0] if rest else ""
    if kind == "family":
        try:
            kw["blocks"] = [tuple(int(x) for x in b.split(":")) for b in rest[1:]]
        except ValueError as exc:
            raise SystemFormatError(f"line {no}: family blocks are written n:d") from exc
        if not kw["blocks"] or any(len(b) != 2 for b in kw["blocks"]):
            raise SystemFormatError(f"line {no}: family blocks are written n:d")
        kw["support"] = "family"
        return k + 1
    if kind == "generators":
        body, k = _block(lines, k + 1)
        kw["support"] = "generators"
        kw["generators"] = [_ints(b.split(), i) for i, b in body]
        return k
    if kind == "polytope":
        body, k = _block(lines, k + 1)
        kw["support"] = "polytope"
        pts, facets = [], []
        for i, b in body:
            t = b.replace("≤", "<=").split()
            if t[0] == "normal":
                kw["normal"] = t[1].lower() == "true"
            elif t[0] == "facet":
                if "<=" not in t:
                    raise SystemFormatError(f"line {i}: facet rows read 'facet a_1 ... a_n <= b'")
                j = t.index("<=")
                facets.append((_ints(t[1:j], i), int(t[j + 1])))
            else:
                pts.append(_ints(t, i))
        kw["points"] = pts
        kw["facets"] = facets or None
        return k
    raise SystemFormatError(f"line {no}: unknown support kind {kind!r}")


def load(path: str) -> SystemFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return SystemFile.from_json(json.loads(text))
    return parse(text)


# --- benchmark families -------------------------------------------------------

def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _planted(support: Sequence[Exp], m: int, plant: Sequence[int], rng, p: int) -> list[dict[Exp, int]]:
    """``m`` random polynomials on ``support`` (which holds the origin) vanishing at ``plant``."""
    origin = (0,) * len(plant)
    others = [e for e in support if e != origin]
    vals = [1] * len(others)
    for k, e in enumerate(others):
        for x, a in zip(plant, e):
            vals[k] = vals[k] * pow(x, a, p) % p
    polys = []
    for _ in range(m):
        c = [int(v) for v in rng.integers(1, p, size=len(others))]
        f = dict(zip(others, c))
        const = -sum(a * b for a, b in zip(c, vals)) % p
        if const:
            f[origin] = const
        polys.append(f)
    return polys


def _family_system(blocks, m, seed, p, label) -> SystemFile:
    rng = _rng(seed)
    P = product(*(simplex(n, d) for n, d in blocks))
    n = P.dim
    plant = tuple(int(x) for x in rng.integers(1, p, size=n))
    polys = _planted(P.sorted_points(), m, plant, rng, p)
    return SystemFile(prime=p, dim=n, polys=polys, support="family", blocks=list(blocks), plant=plant,
                      meta={"family": label, "seed": str(seed), "rng": RNG_NAME, "retries": "0"}).canonical()


def gen_bilinear(n_x: int, n_y: int, m: int, seed: int, p: int = DEFAULT_PRIME) -> SystemFile:
    if min(n_x, n_y, m) < 1:
        raise ValueError("parameters must be positive")
    return _family_system([(n_x, 1), (n_y, 1)], m, seed, p, f"bilinear {n_x} {n_y} {m}")


def gen_bidegree(d_x: int, d_y: int, n_x: int, n_y: int, m: int, seed: int, p: int = DEFAULT_PRIME) -> SystemFile:
    if min(d_x, d_y, n_x, n_y, m) < 1:
        raise ValueError("parameters must be positive")
    return _family_system([(n_x, d_x), (n_y, d_y)], m, seed, p, f"bidegree {d_x} {d_y} {n_x} {n_y} {m}")


def gen_fewnomial(n: int, t: int, m: int, seed: int, p: int = DEFAULT_PRIME, max_retries: int = 100) -> SystemFile:
    """``m`` polynomials on ``t`` random quadratic monomials plus a constant term.

    Supports whose monomials do not span a rank-``n`` lattice are redrawn;
    the number of redraws is recorded under ``meta retries``.
    """
    if min(n, t, m) < 1:
        raise ValueError("parameters must be positive")
    quads = []
    for i, j in itertools.combinations_with_replacement(range(n), 2):
        e = [0] * n
        e[i] += 1
        e[j] += 1
        quads.append(tuple(e))
    if t > len(quads):
        raise ValueError(f"only {len(quads)} quadratic monomials in {n} variables")
    quads.sort()
    rng = _rng(seed)
    for retry in range(max_retries + 1):
        pick = sorted(quads[i] for i in rng.choice(len(quads), size=t, replace=False))
        try:
            gens = GeneratorSet([(0,) * n, *pick])
        except SemigroupError:
            continue
        if gens.rank() == n:
            break
    else:
        raise ValueError(f"no full-rank pointed support after {max_retries} redraws")
    plant = tuple(int(x) for x in rng.integers(1, p, size=n))
    polys = _planted([(0,) * n, *pick], m, plant, rng, p)
    return SystemFile(prime=p, dim=n, polys=polys, support="generators", generators=[(0,) * n, *pick],
                      plant=plant, meta={"family": f"fewnomial {n} {t} {m}", "seed": str(seed),
                                         "rng": RNG_NAME, "retries": str(retry)}).canonical()
