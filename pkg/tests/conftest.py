import random
from collections import Counter

import pytest

from dolbeault.constructions import Morphism, direct_sum, shift
from dolbeault.double_complex import DoubleComplex
from dolbeault.fixtures import dot, iwasawa, kodaira_thurston, square, zigzag_l
from dolbeault.linalg import Matrix, Scalar, kernel_basis, rank


def vertical_zigzag(p=0, q=0):
    return DoubleComplex({(p, q): 1, (p, q + 1): 1}, d2={(p, q): Matrix([[1]])})


def three_zigzag(p=0, q=0):
    # (p, q+1) -d1-> (p+1, q+1) <-d2- (p+1, q)
    return DoubleComplex({(p, q + 1): 1, (p + 1, q + 1): 1, (p + 1, q): 1},
                         d1={(p, q + 1): Matrix([[1]])}, d2={(p + 1, q): Matrix([[1]])})


ATOMS = [dot, square, zigzag_l, vertical_zigzag, three_zigzag]


def random_scalar(rng, lo=-2, hi=2, gaussian=True):
    return Scalar(rng.randint(lo, hi), rng.randint(lo, hi) if gaussian else 0)


def random_invertible(rng, n):
    while True:
        m = Matrix([[random_scalar(rng) for _ in range(n)] for _ in range(n)])
        if rank(m) == n:
            return m


def inverse(m):
    from dolbeault.linalg import coordinates_in_span
    n = m.rows
    cols = [coordinates_in_span([1 if i == j else 0 for i in range(n)], m) for j in range(n)]
    return Matrix.from_columns(cols, n)


def conjugate_complex(k, rng):
    """Return ``(k', T)`` with ``k' = T k T^{-1}`` for random blockwise invertible ``T``."""
    T = {bd: random_invertible(rng, n) for bd, n in k.dims.items()}
    Tinv = {bd: inverse(m) for bd, m in T.items()}
    d1 = {(p, q): T.get((p + 1, q), Matrix.zeros(0, 0)) @ k.D1(p, q) @ Tinv[(p, q)]
          for (p, q) in k.support if k.dim(p + 1, q)}
    d2 = {(p, q): T.get((p, q + 1), Matrix.zeros(0, 0)) @ k.D2(p, q) @ Tinv[(p, q)]
          for (p, q) in k.support if k.dim(p, q + 1)}
    return DoubleComplex(k.dims, d1, d2), T


def random_complex(rng, max_dim=8, spread=2, atoms=ATOMS, mix=True):
    parts = []
    total = 0
    while True:
        atom = rng.choice(atoms)(rng.randint(0, spread), rng.randint(0, spread))
        if total + atom.total_dim > max_dim:
            break
        parts.append(atom)
        total += atom.total_dim
        if rng.random() < 0.25:
            break
    if not parts:
        parts = [dot(rng.randint(0, spread), rng.randint(0, spread))]
    k = direct_sum(parts).without_sigma() if len(parts) > 1 else parts[0].without_sigma()
    if mix:
        k, _ = conjugate_complex(k, rng)
    return k


def convolve(a, b):
    out = Counter()
    for (p, q), h in a.items():
        for (r, s), g in b.items():
            out[(p + r, q + s)] += h * g
    return dict(out)


def random_extension(a, c, rng):
    """Random short exact sequence ``a → b → c`` with ``b = a ⊕ c`` twisted by
    maps ``h1``, ``h2`` from ``c`` to ``a`` drawn from the solution space of the
    double-complex axioms."""
    variables = []   # (which, source bidegree, row, col)
    for (p, q) in c.support:
        for which, tgt in (("h1", (p + 1, q)), ("h2", (p, q + 1))):
            for i in range(a.dim(*tgt)):
                for j in range(c.dim(p, q)):
                    variables.append((which, (p, q), i, j))

    def assemble(vec):
        h = {"h1": {}, "h2": {}}
        for x, (which, (p, q), i, j) in zip(vec, variables):
            tgt = (p + 1, q) if which == "h1" else (p, q + 1)
            blk = h[which].setdefault((p, q), [[Scalar(0)] * c.dim(p, q) for _ in range(a.dim(*tgt))])
            blk[i][j] = x
        return ({bd: Matrix(m) for bd, m in h["h1"].items()},
                {bd: Matrix(m) for bd, m in h["h2"].items()})

    def get(hd, bd, rows, cols):
        m = hd.get(bd)
        return m if m is not None else Matrix.zeros(rows, cols)

    def residual(vec):
        h1, h2 = assemble(vec)
        H1 = lambda p, q: get(h1, (p, q), a.dim(p + 1, q), c.dim(p, q))
        H2 = lambda p, q: get(h2, (p, q), a.dim(p, q + 1), c.dim(p, q))
        out = []
        for (p, q) in c.support:
            terms = [
                a.D1(p + 1, q) @ H1(p, q) + H1(p + 1, q) @ c.D1(p, q),
                a.D2(p, q + 1) @ H2(p, q) + H2(p, q + 1) @ c.D2(p, q),
                a.D1(p, q + 1) @ H2(p, q) + H1(p, q + 1) @ c.D2(p, q)
                + a.D2(p + 1, q) @ H1(p, q) + H2(p + 1, q) @ c.D1(p, q),
            ]
            for t in terms:
                out.extend(x for row in t.tolist() for x in row)
        return out

    if variables:
        n = len(variables)
        cols = [residual([Scalar(1 if i == j else 0) for i in range(n)]) for j in range(n)]
        nres = len(cols[0])
        sol = kernel_basis(Matrix.from_columns(cols, nres)) if nres else Matrix.identity(n)
        vec = [Scalar(0)] * n
        for col in sol.columns():
            coef = random_scalar(rng, gaussian=False)
            vec = [v + coef * x for v, x in zip(vec, col)]
    else:
        vec = []
    h1, h2 = assemble(vec)

    support = sorted(set(a.support) | set(c.support))
    dims = {bd: a.dim(*bd) + c.dim(*bd) for bd in support}

    def twisted(da, dc, h, step):
        out = {}
        for (p, q) in support:
            tgt = (p + step[0], q + step[1])
            top = da(p, q).hstack(get(h, (p, q), a.dim(*tgt), c.dim(p, q)))
            bottom = Matrix.zeros(c.dim(*tgt), a.dim(p, q)).hstack(dc(p, q))
            out[(p, q)] = top.vstack(bottom)
        return out

    b = DoubleComplex(dims, twisted(a.D1, c.D1, h1, (1, 0)), twisted(a.D2, c.D2, h2, (0, 1)))
    f = Morphism(a, b, {bd: Matrix.identity(a.dim(*bd)).vstack(Matrix.zeros(c.dim(*bd), a.dim(*bd)))
                        for bd in support})
    g = Morphism(b, c, {bd: Matrix.zeros(c.dim(*bd), a.dim(*bd)).hstack(Matrix.identity(c.dim(*bd)))
                        for bd in support})
    return f, g


@pytest.fixture(scope="session")
def iw():
    return iwasawa()


@pytest.fixture(scope="session")
def kt():
    return kodaira_thurston()


@pytest.fixture
def rng():
    return random.Random(20261017)


def random_expr(rng, depth=3):
    """Grammar-valid expression tree, not necessarily evaluable."""
    from dolbeault.dsl import BlowUp, Diamond, FlagBundle, Leaf, Product, ProjBundle
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["P", "torus", "curve", "hopf", "point", "diamond"])
        if kind in ("hopf", "point"):
            return Leaf(kind)
        if kind == "diamond":
            n = rng.randint(0, 3)
            return Diamond(n, tuple((rng.randint(0, n), rng.randint(0, n), rng.randint(0, 9))
                                    for _ in range(rng.randint(0, 3))))
        return Leaf(kind, rng.randint(0, 12))
    kind = rng.choice(["product", "projbundle", "blowup", "flagbundle"])
    if kind == "product":
        return Product(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == "projbundle":
        return ProjBundle(random_expr(rng, depth - 1), rng.randint(0, 5))
    if kind == "blowup":
        return BlowUp(random_expr(rng, depth - 1), random_expr(rng, depth - 1), rng.randint(0, 5))
    return FlagBundle(random_expr(rng, depth - 1),
                      tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 4))))


def random_evaluable(rng, depth=3):
    """Expression that evaluates without error, with known leaves only."""
    from dolbeault.dsl import BlowUp, FlagBundle, Leaf, Product, ProjBundle, evaluate
    if depth == 0 or rng.random() < 0.3:
        kind = rng.choice(["P", "torus", "curve", "hopf", "point"])
        return Leaf(kind) if kind in ("hopf", "point") else Leaf(kind, rng.randint(1, 3))
    kind = rng.choice(["product", "projbundle", "blowup", "flagbundle"])
    base = random_evaluable(rng, depth - 1)
    if kind == "product":
        return Product(base, random_evaluable(rng, depth - 1))
    if kind == "projbundle":
        return ProjBundle(base, rng.randint(1, 3))
    if kind == "flagbundle":
        return FlagBundle(base, tuple(rng.randint(1, 2) for _ in range(rng.randint(1, 3))))
    n = evaluate(base).n
    if n < 2:
        return ProjBundle(base, 2)
    r = rng.randint(2, n)
    center = Leaf("point") if r == n else rng.choice([Leaf("P", n - r), Leaf("torus", n - r)])
    return BlowUp(base, center, r)
