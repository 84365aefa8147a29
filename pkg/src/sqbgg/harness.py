"""Instance generators and theorem-suite runners with replayable reports."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .betti import betti_bgg, betti_hochster, betti_koszul, extremal, projdim_reg
from .bgg import (
    bgg_L_free,
    distinguished_pairs_sq,
    distinguished_pairs_z,
    dual_S,
)
from .exactla import Field, QQ, MalformedInputError, Mat, kernel
from .simplicial import (
    SimplicialComplex,
    alexander_dual,
    format_subset,
    popcount,
    reduced_homology,
)
from .sqmod import (
    NEG_INF,
    ChainMap,
    SqComplex,
    SqModule,
    SqMorphism,
    alexander,
    as_complex,
    cohomology,
    cohomology_dims,
    complex_dual_E,
    complex_functor_E,
    direct_sum,
    ext_dims,
    functor_E,
    hilbert_data_of_dims,
    hom_space,
    mapping_cone,
    min_free_resolution,
    shift,
    sr_module,
)

SUITES = (
    "main2", "roemer-sq", "dist-extremal", "bcp", "projreg", "theoremA", "homology-duality",
    "z-main", "z-roemer", "positivity", "functor-duality", "oracle-agreement", "ext-bound",
)
GENERATORS = ("all", "random", "cone")
# suites whose statement is about a simplicial complex rather than a module or complex
COMPLEX_ONLY = frozenset({"theoremA", "homology-duality"})
EXHAUSTIVE_MAX_N = 4

_GEN_ALIASES = {
    "all": "all", "all-complexes": "all",
    "random": "random", "random-complex": "random",
    "cone": "cone", "random-cone-complex": "cone",
}


class SuiteMismatchError(ValueError):
    """The suite cannot be evaluated on instances of the requested generator."""


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    n_min: int = 0
    n_max: int = 3
    samples: int = 100
    seed: int = 0
    field: Field = QQ
    generator: str = "all"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise MalformedInputError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}")
        gen = _GEN_ALIASES.get(self.generator)
        if gen is None:
            raise MalformedInputError(f"unknown generator {self.generator!r}")
        object.__setattr__(self, "generator", gen)
        if self.n_min < 0 or self.n_max < self.n_min:
            raise MalformedInputError(f"bad n range {self.n_min}..{self.n_max}")
        if self.samples < 0:
            raise MalformedInputError("samples must be nonnegative")
        if gen == "all" and self.n_max > EXHAUSTIVE_MAX_N:
            raise MalformedInputError(
                f"exhaustive enumeration refused for n = {self.n_max} > {EXHAUSTIVE_MAX_N}")
        if gen == "cone" and self.suite in COMPLEX_ONLY:
            raise SuiteMismatchError(f"suite {self.suite!r} needs simplicial complexes, not cone complexes")


@dataclass(frozen=True)
class Instance:
    """One test object: a simplicial complex or an S-complex, over a field.

    ``tag`` records where it came from, e.g. ``random:n=4:#17``.
    """

    kind: str          # "complex" | "sq-complex"
    n: int
    field: Field
    tag: str
    delta: SimplicialComplex | None = None
    complex: SqComplex | None = None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "n": self.n, "field": self.field.name, "tag": self.tag}
        if self.kind == "complex":
            d["complex"] = self.delta.to_dict()
        else:
            d["complex"] = self.complex.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        try:
            field = Field.parse(d.get("field", "q"))
            kind = d["kind"]
            tag = str(d.get("tag", "replay"))
            if kind == "complex":
                delta = SimplicialComplex.from_dict(d["complex"])
                return cls("complex", delta.n, field, tag, delta=delta)
            if kind == "sq-complex":
                C = SqComplex.from_dict(d["complex"])
                return cls("sq-complex", C.n, C.field, tag, complex=C)
        except (KeyError, TypeError, AttributeError) as e:
            raise MalformedInputError(f"malformed instance: {e}") from None
        raise MalformedInputError(f"unknown instance kind {d.get('kind')!r}")

    def s_objects(self) -> list[tuple[str, SqComplex]]:
        """The S-complexes a module-level suite is run on."""
        if self.kind == "complex":
            return [
                ("face-ring", SqComplex.from_module(sr_module(self.delta, "face-ring", "S", self.field))),
                ("ideal", SqComplex.from_module(sr_module(self.delta, "ideal", "S", self.field))),
            ]
        return [("complex", self.complex)]


# --- generators -------------------------------------------------------------------

def antichains(n: int) -> Iterator[frozenset[int]]:
    """Every antichain of subsets of [n], i.e. every facet set of a simplicial complex."""
    subsets = sorted(range(1 << n), key=lambda m: (-popcount(m), m))

    def rec(k: int, chosen: list[int]):
        if k == len(subsets):
            yield frozenset(chosen)
            return
        yield from rec(k + 1, chosen)
        s = subsets[k]
        # later subsets are never larger, so only "s inside a chosen facet" can clash
        if all(s & c != s for c in chosen):
            chosen.append(s)
            yield from rec(k + 1, chosen)
            chosen.pop()

    yield from rec(0, [])


def all_complexes(n: int) -> list[SimplicialComplex]:
    if n > EXHAUSTIVE_MAX_N:
        raise MalformedInputError(f"exhaustive enumeration refused for n = {n} > {EXHAUSTIVE_MAX_N}")
    out = [SimplicialComplex.from_facets(n, a) for a in antichains(n)]
    out.sort(key=lambda d: (len(d.faces), sorted(d.facets)))
    return out


def brute_force_complexes(n: int) -> set[frozenset[int]]:
    """Downward-closed families by filtering all 2^(2^n) families (tiny n only)."""
    N = 1 << n
    out = set()
    for fam in range(1 << N):
        faces = {m for m in range(N) if fam >> m & 1}
        if all(f & ~(1 << b) in faces for f in faces for b in range(n) if f >> b & 1):
            out.add(frozenset(faces))
    return out


def random_complex(n: int, rng: random.Random) -> SimplicialComplex:
    roll = rng.random()
    if roll < 0.03:
        return SimplicialComplex.void(n)
    if roll < 0.06:
        return SimplicialComplex.irrelevant(n)
    k = rng.randint(1, max(1, n + 1))
    p = rng.uniform(0.25, 0.8)
    facets = [sum(1 << v for v in range(n) if rng.random() < p) for _ in range(k)]
    return SimplicialComplex.from_facets(n, facets)


def _random_sr(n: int, rng: random.Random, field: Field) -> SqModule:
    parts = [sr_module(random_complex(n, rng), rng.choice(("face-ring", "ideal")), "S", field)
             for _ in range(rng.choice((1, 1, 2)))]
    return parts[0] if len(parts) == 1 else direct_sum(parts)


def principal_free(n: int, F: int, field: Field) -> SqModule:
    """S(-F) in squarefree form: the ideal (x_F), whose complex has the single minimal nonface F."""
    full = (1 << n) - 1
    if not F:
        return sr_module(SimplicialComplex.void(n), "ideal", "S", field)
    delta = SimplicialComplex.from_facets(n, [full & ~(1 << v) for v in range(n) if F >> v & 1])
    return sr_module(delta, "ideal", "S", field)


def _random_source(n: int, rng: random.Random, field: Field) -> SqModule:
    # free sources make Hom(source, -) large; Stanley-Reisner sources keep some variety
    if rng.random() < 0.25:
        return _random_sr(n, rng, field)
    parts = [principal_free(n, rng.randrange(1 << n), field) for _ in range(rng.randint(1, 3))]
    return parts[0] if len(parts) == 1 else direct_sum(parts)


def _random_morphism(M: SqModule, N: SqModule, rng: random.Random, basis=None) -> SqMorphism:
    basis = hom_space(M, N) if basis is None else basis
    out = SqMorphism.zero(M, N)
    for f in basis:
        c = rng.randint(-2, 2)
        if c and not M.field(c):
            c = 1  # over small primes keep the coefficient nonzero
        if c:
            out = out + f.scale(c)
    return out


def _cycle_morphisms(A: SqModule, C: SqComplex, p: int) -> list[SqMorphism]:
    """Basis of {f: A -> C^p with d^p f = 0}."""
    basis = hom_space(A, C.term(p))
    if not basis or p >= C.hi:
        return basis
    d = C.diff(p)
    comps = [d @ f for f in basis]
    rows = []
    for F in range(1 << C.n):
        for r in range(C.term(p + 1).dims[F]):
            for c in range(A.dims[F]):
                rows.append([g.comps[F].data[r][c] for g in comps])
    if not rows:
        return basis
    ker = kernel(Mat(A.field, len(rows), len(basis), rows))
    out = []
    for j in range(ker.cols):
        f = SqMorphism.zero(A, C.term(p))
        for k, g in enumerate(basis):
            c = ker.data[k][j]
            if c:
                f = f + g.scale(c)
        out.append(f)
    return out


def random_cone_complex(n: int, rng: random.Random, field: Field, steps: int | None = None) -> SqComplex:
    """Iterated mapping cones of random maps from shifted Stanley-Reisner modules."""
    steps = rng.randint(1, 2) if steps is None else steps
    A, B = _random_source(n, rng, field), _random_sr(n, rng, field)
    pos = rng.randint(-1, 1)
    f = _random_morphism(A, B, rng)
    C = mapping_cone(ChainMap(SqComplex.from_module(A, pos), SqComplex.from_module(B, pos), {pos: f}))
    for _ in range(steps - 1):
        A = _random_source(n, rng, field)
        p = rng.randint(C.lo, C.hi)
        g = _random_morphism(A, C.term(p), rng, _cycle_morphisms(A, C, p))
        C = mapping_cone(ChainMap(SqComplex.from_module(A, p), C, {p: g}))
    if rng.random() < 0.3:
        C = shift(C, rng.choice((-1, 1)))
    return C.trimmed()


def _rng(seed: int, n: int, k: int) -> random.Random:
    return random.Random(f"{seed}:{n}:{k}")


def gen_instances(cfg: SuiteConfig) -> Iterator[Instance]:
    for n in range(cfg.n_min, cfg.n_max + 1):
        if cfg.generator == "all":
            for k, d in enumerate(all_complexes(n)):
                yield Instance("complex", n, cfg.field, f"all:n={n}:#{k}", delta=d)
        elif cfg.generator == "random":
            for k in range(cfg.samples):
                d = random_complex(n, _rng(cfg.seed, n, k))
                yield Instance("complex", n, cfg.field, f"random:seed={cfg.seed}:n={n}:#{k}", delta=d)
        else:
            for k in range(cfg.samples):
                C = random_cone_complex(n, _rng(cfg.seed, n, k), cfg.field)
                yield Instance("sq-complex", n, cfg.field, f"cone:seed={cfg.seed}:n={n}:#{k}", complex=C)


# --- witnesses ------------------------------------------------------------------

def _sq_pairs(pairs) -> list:
    return sorted([format_subset(p.F), p.i] for p in pairs)


def _z_pairs(pairs) -> list:
    return sorted([p.d, p.i] for p in pairs)


def _fine(entries: dict) -> list:
    return sorted([i, format_subset(F), v] for (i, F), v in entries.items())


def _coarse(entries: dict) -> list:
    return sorted([i, j, v] for (i, j), v in entries.items())


def _jsonable_dims(H: dict) -> dict:
    return {str(i): {format_subset(F): v for F, v in enumerate(d) if v} for i, d in sorted(H.items())}


def _num(x):
    return None if x == NEG_INF else x


@dataclass
class _Check:
    failures: list = dc_field(default_factory=list)

    def expect(self, name: str, expected, actual, **extra):
        if expected != actual:
            self.failures.append({"check": name, "expected": expected, "actual": actual, **extra})


# --- suite bodies: each appends to ``ck`` for one S-complex ``C`` --------------

def _s_main2(C: SqComplex, ck: _Check, label: str):
    H = cohomology_dims(C)
    D = cohomology_dims(dual_S(C))
    left = {(p.F, -popcount(p.F) - p.i) for p in distinguished_pairs_sq(H)}
    right = {(p.F, p.i) for p in distinguished_pairs_sq(D)}
    ck.expect(f"{label}: pairs of dual", sorted([format_subset(F), i] for F, i in left),
              sorted([format_subset(F), i] for F, i in right))
    for p in distinguished_pairs_sq(H):
        j = -popcount(p.F) - p.i
        a = H[p.i][p.F]
        b = D.get(j, (0,) * (1 << C.n))[p.F]
        ck.expect(f"{label}: dim at ({format_subset(p.F)},{p.i})", a, b)


def _l_dims(N: SqComplex) -> dict:
    return cohomology_dims(bgg_L_free(N))


def _s_roemer(C: SqComplex, ck: _Check, label: str):
    n = C.n
    N = complex_functor_E(C)
    H = _l_dims(N)
    D = _l_dims(complex_dual_E(N))
    left = {(p.F, 2 * n - popcount(p.F) - p.i) for p in distinguished_pairs_sq(H)}
    right = {(p.F, p.i) for p in distinguished_pairs_sq(D)}
    ck.expect(f"{label}: pairs of D_E", sorted([format_subset(F), i] for F, i in left),
              sorted([format_subset(F), i] for F, i in right))
    for p in distinguished_pairs_sq(H):
        j = 2 * n - popcount(p.F) - p.i
        ck.expect(f"{label}: dim at ({format_subset(p.F)},{p.i})", H[p.i][p.F],
                  D.get(j, (0,) * (1 << n))[p.F])


def _s_dist_extremal(C: SqComplex, ck: _Check, label: str):
    n = C.n
    H = _l_dims(complex_dual_E(complex_functor_E(C)))
    from_pairs = {}
    for p in distinguished_pairs_sq(H):
        from_pairs[(p.i + popcount(p.F) - n, p.F)] = H[p.i][p.F]
    ext = extremal(betti_koszul(C)).entries
    ck.expect(f"{label}: extremal vs distinguished", _fine(ext), _fine(from_pairs))


def _s_bcp(C: SqComplex, ck: _Check, label: str):
    e1 = {(popcount(F) - i, F): v for (i, F), v in extremal(betti_koszul(C)).entries.items()}
    e2 = extremal(betti_koszul(alexander(C))).entries
    ck.expect(f"{label}: extremal of A(M) vs moved extremal of M", _fine(e1), _fine(e2))


def _s_projreg(C: SqComplex, ck: _Check, label: str):
    pd, reg = projdim_reg(betti_koszul(C))
    pdA, regA = projdim_reg(betti_koszul(alexander(C)))
    ck.expect(f"{label}: projdim(M) = reg(A(M))", pd, regA)
    ck.expect(f"{label}: reg(M) = projdim(A(M))", reg, pdA)


def _s_z_main(C: SqComplex, ck: _Check, label: str):
    H = cohomology_dims(C)
    D = cohomology_dims(dual_S(C))
    P = distinguished_pairs_z(H)
    left = {(p.d, -p.d - p.i) for p in P}
    right = {(p.d, p.i) for p in distinguished_pairs_z(D)}
    ck.expect(f"{label}: z-pairs of dual", sorted(map(list, left)), sorted(map(list, right)))
    for p in P:
        a = hilbert_data_of_dims(H[p.i]).deg
        b = hilbert_data_of_dims(D.get(-p.d - p.i, (0,) * (1 << C.n))).deg
        ck.expect(f"{label}: deg at ({p.d},{p.i})", a, b)


def _s_z_roemer(C: SqComplex, ck: _Check, label: str):
    n = C.n
    N = complex_functor_E(C)
    H = _l_dims(N)
    D = _l_dims(complex_dual_E(N))
    P = distinguished_pairs_z(H)
    left = {(p.d, 2 * n - p.d - p.i) for p in P}
    right = {(p.d, p.i) for p in distinguished_pairs_z(D)}
    ck.expect(f"{label}: z-pairs of D_E", sorted(map(list, left)), sorted(map(list, right)))
    for p in P:
        a = hilbert_data_of_dims(H[p.i]).deg
        b = hilbert_data_of_dims(D.get(2 * n - p.d - p.i, (0,) * (1 << n))).deg
        ck.expect(f"{label}: e at ({p.d},{p.i})", a, b)


def _positivity_module(N: SqModule, ck: _Check, label: str):
    if N.total_dim >= 1 << N.n or N.is_zero():
        return  # certificate for "no free summand" unavailable
    bad = [[p.d, p.i] for p in distinguished_pairs_z(_l_dims(SqComplex.from_module(N))) if p.d <= 0]
    ck.expect(f"{label}: pairs with d = 0", [], sorted(bad))


def _s_positivity(C: SqComplex, ck: _Check, label: str):
    mods = [(f"{label} term {i}", C.term(i)) for i in range(C.lo, C.hi + 1)]
    mods += [(f"{label} H^{i}", M) for i, M in cohomology(C).items() if not M.is_zero()]
    for lab, M in mods:
        _positivity_module(functor_E(M), ck, lab)


def _s_functor_duality(C: SqComplex, ck: _Check, label: str):
    n = C.n
    N = complex_functor_E(C)
    lhs = cohomology_dims(bgg_L_free(N).dual(), n, C.field)
    rhs = _l_dims(complex_dual_E(N))
    moved = {i - 2 * n: d for i, d in rhs.items()}
    ck.expect(f"{label}: H(D_S(L N)) vs H(L(D_E N))[2n]", _jsonable_dims(lhs), _jsonable_dims(moved))


def _s_oracle(C: SqComplex, ck: _Check, label: str, delta=None, which=None):
    k = betti_koszul(C)
    b = betti_bgg(C)
    ck.expect(f"{label}: koszul vs bgg", _fine(k.entries), _fine(b.entries))
    if C.is_module():
        M = C.terms[0]
        res = min_free_resolution(M)
        r = {(i - C.lo, F): v for (i, F), v in res.betti().entries.items()}
        ck.expect(f"{label}: koszul vs resolution", _fine(k.entries), _fine(r))
        # Ext^p(M[-lo], ω) = Ext^{p+lo}(M, ω)
        ext = cohomology_dims(res.free_complex().dual(), C.n, C.field)
        ext = {p - C.lo: d for p, d in ext.items()}
        ck.expect(f"{label}: dual_S vs Ext oracle", _jsonable_dims(ext),
                  _jsonable_dims(cohomology_dims(dual_S(C))))
    if delta is not None:
        h = betti_hochster(delta, which, C.field)
        ck.expect(f"{label}: koszul vs hochster", _fine(k.entries), _fine(h.entries))


def _ext_bound_module(M: SqModule, ck: _Check, label: str):
    if M.is_zero():
        return
    E = ext_dims(M)
    for p, dims in E.items():
        d = hilbert_data_of_dims(dims).dim
        if d != NEG_INF and d > -p:
            ck.expect(f"{label}: dim Ext^{p} <= {-p}", f"<= {-p}", d)
    hd = hilbert_data_of_dims(M.dims)
    top = hilbert_data_of_dims(E.get(-hd.dim, (0,) * (1 << M.n)))
    ck.expect(f"{label}: dim Ext^-dim", hd.dim, _num(top.dim))
    ck.expect(f"{label}: deg Ext^-dim", hd.deg, top.deg)


def _s_ext_bound(C: SqComplex, ck: _Check, label: str):
    for i in range(C.lo, C.hi + 1):
        _ext_bound_module(C.term(i), ck, f"{label} term {i}")


_S_SUITES = {
    "main2": _s_main2,
    "roemer-sq": _s_roemer,
    "dist-extremal": _s_dist_extremal,
    "bcp": _s_bcp,
    "projreg": _s_projreg,
    "z-main": _s_z_main,
    "z-roemer": _s_z_roemer,
    "positivity": _s_positivity,
    "functor-duality": _s_functor_duality,
    "ext-bound": _s_ext_bound,
}


def _homology_duality(delta: SimplicialComplex, field: Field, ck: _Check):
    n = delta.n
    if n == 0:
        return  # the identity runs through degree [n] != ∅; at n = 0 void and {∅} swap
    h = reduced_homology(delta, field)          # index k holds degree k - 1
    hd = reduced_homology(alexander_dual(delta), field)

    def at(vec, deg):
        return vec[deg + 1] if 0 <= deg + 1 < len(vec) else 0

    for i in range(0, n + 2):
        ck.expect(f"h~_{n - i - 1}(D) = h~_{i - 2}(D dual)", at(h, n - i - 1), at(hd, i - 2))


def _theorem_a(delta: SimplicialComplex, field: Field, ck: _Check):
    ring = betti_koszul(sr_module(delta, "face-ring", "S", field))
    ideal = betti_koszul(sr_module(alexander_dual(delta), "ideal", "S", field))
    e1 = extremal(ring, "coarse").entries
    e2 = extremal(ideal, "coarse").entries
    moved = {(j - i, j): v for (i, j), v in e1.items()}   # (i, i+j) -> (j, i+j)
    ck.expect("coarse extremal of I(dual) vs K[D]", _coarse(moved), _coarse(e2))


def check_instance(suite: str, inst: Instance) -> list[dict]:
    """Evaluate one suite on one instance; the empty list means ok."""
    if suite not in SUITES:
        raise MalformedInputError(f"unknown suite {suite!r}")
    ck = _Check()
    if suite in COMPLEX_ONLY:
        if inst.kind != "complex":
            raise SuiteMismatchError(f"suite {suite!r} needs a simplicial complex")
        if suite == "homology-duality":
            _homology_duality(inst.delta, inst.field, ck)
        else:
            _theorem_a(inst.delta, inst.field, ck)
        return ck.failures
    for label, C in inst.s_objects():
        if suite == "oracle-agreement":
            if inst.kind == "complex":
                _s_oracle(C, ck, label, inst.delta, label)
            else:
                _s_oracle(C, ck, label)
        elif suite == "positivity" and inst.kind == "complex":
            _positivity_module(sr_module(inst.delta, label, "E", inst.field), ck, label)
        else:
            _S_SUITES[suite](C, ck, label)
    return ck.failures


@dataclass
class VerificationReport:
    suite: str
    checked: int
    failures: list
    seed: int
    elapsed_ms: float | None = None
    generator: str = ""
    field: str = "q"

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "suite": self.suite,
            "generator": self.generator,
            "field": self.field,
            "checked": self.checked,
            "failures": self.failures,
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3) if timing and self.elapsed_ms is not None else None,
        }


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    checked = 0
    failures = []
    for inst in gen_instances(cfg):
        fails = check_instance(cfg.suite, inst)
        checked += 1
        if fails:
            failures.append({"instance": inst.to_dict(), "witness": fails})
    ms = (time.perf_counter() - t0) * 1000.0
    return VerificationReport(cfg.suite, checked, failures, cfg.seed, ms, cfg.generator, cfg.field.name)


def replay(failure: dict, suite: str) -> list[dict]:
    """Re-run the check recorded in one report failure."""
    return check_instance(suite, Instance.from_dict(failure["instance"]))
