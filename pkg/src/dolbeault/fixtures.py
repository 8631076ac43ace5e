"""Built-in leaf diamonds and double complexes.

The nilmanifold complexes are the bigraded exterior algebras of the dual of a
complex nilpotent Lie algebra. They are finite models, and their agreement
with the cohomology of the actual compact manifold is a result from the
literature that this package does not test.
"""

from __future__ import annotations

import re
from itertools import combinations
from math import comb
from typing import Dict, List, Sequence, Tuple

from .double_complex import DoubleComplex
from .errors import InternalInconsistencyError, NotFoundError
from .hodge import HodgePolynomial
from .linalg import ONE, Matrix, Scalar

__all__ = ["leaf", "leaf_names", "builtin_complex", "complex_names", "lie_algebra_complex",
           "dot", "square", "zigzag_l", "iwasawa", "kodaira_thurston"]


# --- leaves --------------------------------------------------------------

def projective_space(n: int) -> HodgePolynomial:
    return HodgePolynomial(n, {(i, i): 1 for i in range(n + 1)}, True, f"P({n})")


def torus(n: int) -> HodgePolynomial:
    return HodgePolynomial(n, {(p, q): comb(n, p) * comb(n, q)
                               for p in range(n + 1) for q in range(n + 1)}, True, f"torus({n})")


def curve(g: int) -> HodgePolynomial:
    return HodgePolynomial(1, {(0, 0): 1, (1, 0): g, (0, 1): g, (1, 1): 1}, True, f"curve({g})")


def point() -> HodgePolynomial:
    return HodgePolynomial(0, {(0, 0): 1}, True, "point")


def hopf() -> HodgePolynomial:
    """Hopf surface ``(C^2 - 0)/Z``, an elliptic bundle over ``P^1``.

    Provenance: ``h^{1,0} = 0`` is the cited literature value. The rest of the
    diamond follows from the Betti numbers (1, 1, 0, 1, 1) of S^1 x S^3,
    degeneration at E_1 for compact surfaces, and Serre duality. The surface
    does not satisfy the ∂∂̄-lemma.
    """
    return HodgePolynomial(2, {(0, 0): 1, (0, 1): 1, (2, 1): 1, (2, 2): 1}, False, "hopf")


_LEAVES = {"P": projective_space, "torus": torus, "curve": curve}
_NULLARY_LEAVES = {"point": point, "hopf": hopf}


def leaf_names() -> List[str]:
    return ["P(n)", "torus(n)", "curve(g)", "hopf", "point"]


def leaf(name: str, arg: int = None) -> HodgePolynomial:
    """Catalogued diamond by name: ``leaf("P", 2)``, ``leaf("P(2)")`` or ``leaf("hopf")``."""
    m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*(\d+)\s*\))?\s*", name)
    if m and m.group(2) is not None:
        name, arg = m.group(1), int(m.group(2))
    elif m:
        name = m.group(1)
    if name in _NULLARY_LEAVES and arg is None:
        return _NULLARY_LEAVES[name]()
    if name in _LEAVES and arg is not None:
        if arg < 0:
            raise ValueError(f"{name} needs a nonnegative argument")
        return _LEAVES[name](arg)
    raise NotFoundError(name, leaf_names())


# --- atoms ---------------------------------------------------------------

def _one():
    return Matrix([[1]])


def dot(p: int = 0, q: int = 0) -> DoubleComplex:
    """One-dimensional complex at ``(p, q)``; real when ``p == q``."""
    sigma = {(p, q): _one()} if p == q else None
    return DoubleComplex({(p, q): 1}, sigma=sigma)


def square(p: int = 0, q: int = 0) -> DoubleComplex:
    """Acyclic square with corners ``(p, q)`` and ``(p+1, q+1)``.

    The top edge of ``d1`` is negated so the differentials anticommute. A real
    structure exists when ``p == q``.
    """
    dims = {(p, q): 1, (p + 1, q): 1, (p, q + 1): 1, (p + 1, q + 1): 1}
    d1 = {(p, q): _one(), (p, q + 1): Matrix([[-1]])}
    d2 = {(p, q): _one(), (p + 1, q): _one()}
    sigma = None
    if p == q:
        sigma = {(p, p): _one(), (p + 1, p): _one(), (p, p + 1): _one(),
                 (p + 1, p + 1): Matrix([[-1]])}
    return DoubleComplex(dims, d1, d2, sigma)


def zigzag_l(p: int = 0, q: int = 0) -> DoubleComplex:
    """Length-two zigzag ``K^{p,q} → K^{p+1,q}`` with ``d1`` the identity."""
    return DoubleComplex({(p, q): 1, (p + 1, q): 1}, d1={(p, q): _one()})


# --- nilmanifold complexes -------------------------------------------------

def _sort_sign(word: Sequence[int]):
    """Sign and sorted tuple of a wedge word, or ``(0, None)`` on a repeat."""
    if len(set(word)) != len(word):
        return 0, None
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                w[j], w[j + 1] = w[j + 1], w[j]
                sign = -sign
    return sign, tuple(w)


def lie_algebra_complex(n: int, structure: Dict[int, Sequence[Tuple[object, Tuple[int, int]]]],
                        names: Sequence[str] = None) -> DoubleComplex:
    """Bigraded exterior algebra on ``n`` (1,0)-generators and their conjugates.

    Generators are indexed ``0..n-1`` and their conjugates ``n..2n-1``.
    ``structure[i]`` lists ``(coefficient, (a, b))`` terms with
    ``d(ω_i) = Σ c · g_a ∧ g_b``. The differential of a conjugate generator is
    the conjugate expression. ``d`` extends by the graded Leibniz rule and
    splits into ``d1`` (raising p) and ``d2`` (raising q). ``sigma`` is complex
    conjugation of forms.
    """
    names = list(names or [f"ω{i + 1}" for i in range(n)])
    gen_names = names + [f"ω̄{s[1:]}" if s.startswith("ω") else f"{s}̄" for s in names]

    def bar(i):
        return i + n if i < n else i - n

    dgen: Dict[int, Dict[Tuple[int, ...], Scalar]] = {}
    for i in range(2 * n):
        terms = {}
        src = structure.get(i, ()) if i < n else structure.get(bar(i), ())
        for c, (a, b) in src:
            c = Scalar.coerce(c)
            if i >= n:
                c, a, b = c.conjugate(), bar(a), bar(b)
            sign, key = _sort_sign((a, b))
            if sign:
                terms[key] = terms.get(key, Scalar(0)) + c * sign
        dgen[i] = {k: v for k, v in terms.items() if v}

    def bidegree(mono):
        p = sum(1 for g in mono if g < n)
        return p, len(mono) - p

    basis: Dict[Tuple[int, int], List[Tuple[int, ...]]] = {}
    for p in range(n + 1):
        for q in range(n + 1):
            basis[(p, q)] = [I + tuple(j + n for j in J)
                             for I in combinations(range(n), p) for J in combinations(range(n), q)]
    index = {bd: {m: k for k, m in enumerate(ms)} for bd, ms in basis.items()}

    def d(mono):
        out: Dict[Tuple[int, ...], Scalar] = {}
        for j, g in enumerate(mono):
            for pair, c in dgen[g].items():
                sign, key = _sort_sign(mono[:j] + pair + mono[j + 1:])
                if sign:
                    out[key] = out.get(key, Scalar(0)) + c * (sign * (-1) ** j)
        return {k: v for k, v in out.items() if v}

    d1: Dict = {}
    d2: Dict = {}
    for (p, q), monos in basis.items():
        rows1 = [[Scalar(0)] * len(monos) for _ in range(len(basis.get((p + 1, q), [])))]
        rows2 = [[Scalar(0)] * len(monos) for _ in range(len(basis.get((p, q + 1), [])))]
        for col, m in enumerate(monos):
            for key, c in d(m).items():
                bd = bidegree(key)
                if bd == (p + 1, q):
                    rows1[index[bd][key]][col] = c
                elif bd == (p, q + 1):
                    rows2[index[bd][key]][col] = c
                else:
                    raise InternalInconsistencyError(
                        f"structure equations are not integrable: d maps {(p, q)} into {bd}")
        d1[(p, q)] = Matrix._raw(rows1, len(rows1), len(monos))
        d2[(p, q)] = Matrix._raw(rows2, len(rows2), len(monos))

    sigma = {}
    for (p, q), monos in basis.items():
        rows = [[Scalar(0)] * len(monos) for _ in range(len(basis[(q, p)]))]
        for col, m in enumerate(monos):
            hol, anti = m[:p], m[p:]
            # conj(ω_I ∧ ω̄_J) = ω̄_I ∧ ω_J = (-1)^{pq} ω_J ∧ ω̄_I
            image = tuple(bar(g) for g in anti) + tuple(bar(g) for g in hol)
            rows[index[(q, p)][image]][col] = ONE if (p * q) % 2 == 0 else -ONE
        sigma[(p, q)] = Matrix._raw(rows, len(rows), len(monos))

    labels = {bd: ["∧".join(gen_names[g] for g in m) or "1" for m in ms]
              for bd, ms in basis.items()}
    dims = {bd: len(ms) for bd, ms in basis.items()}
    return DoubleComplex(dims, d1, d2, sigma, labels)


def iwasawa() -> DoubleComplex:
    """Iwasawa manifold: ``dω1 = dω2 = 0``, ``dω3 = -ω1∧ω2`` (64-dimensional)."""
    return lie_algebra_complex(3, {2: [(-1, (0, 1))]})


def kodaira_thurston() -> DoubleComplex:
    """Kodaira-Thurston surface: ``dω1 = 0``, ``dω2 = ω1∧ω̄1`` (16-dimensional)."""
    return lie_algebra_complex(2, {1: [(1, (0, 2))]})


_COMPLEXES = {"dot": dot, "square": square, "zigzagL": zigzag_l}
_NULLARY_COMPLEXES = {"iwasawa": iwasawa, "kodaira_thurston": kodaira_thurston}


def complex_names() -> List[str]:
    return ["dot(p,q)", "square(p,q)", "zigzagL(p,q)", "iwasawa", "kodaira_thurston"]


def builtin_complex(name: str, p: int = None, q: int = None) -> DoubleComplex:
    """Catalogued complex: ``builtin_complex("iwasawa")``, ``builtin_complex("dot", 2, 3)``
    or ``builtin_complex("dot(2,3)")``. Atoms default to bidegree (0, 0)."""
    m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))?\s*", name)
    if m:
        name = m.group(1)
        if m.group(2) is not None:
            p, q = int(m.group(2)), int(m.group(3))
    if name in _NULLARY_COMPLEXES and p is None:
        return _NULLARY_COMPLEXES[name]()
    if name in _COMPLEXES:
        return _COMPLEXES[name](p or 0, q or 0)
    raise NotFoundError(name, complex_names())
