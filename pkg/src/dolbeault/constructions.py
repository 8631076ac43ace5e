"""Constructions on double complexes: shifts, sums, tensor products, the
Leray-Hirsch model with real structure, morphisms, E1-isomorphisms, and the
long exact sequence of a short exact sequence of complexes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .double_complex import (Bidegree, DoubleComplex, bijectivity_failures, class_coordinates,
                             cohomology_basis, induced_map)
from .errors import (InternalInconsistencyError, InvalidPairingError, MalformedMorphismError,
                     NotE1IsomorphismError, NotExactError)
from .linalg import Matrix, block_matrix, coordinates_in_span, rank

__all__ = ["shift", "direct_sum", "tensor", "leray_hirsch_model", "Morphism",
           "is_E1_isomorphism", "induced_bc_dims_equal", "LongExactSequence", "ses_to_les"]


def shift(k: DoubleComplex, u: int, v: int) -> DoubleComplex:
    """Move ``K^{p,q}`` to bidegree ``(p+u, q+v)``; sigma survives only when ``u == v``."""
    mv = lambda blocks: {(p + u, q + v): m for (p, q), m in blocks.items()}
    sigma = mv(k.sigma) if k.sigma is not None and u == v else None
    labels = mv(k.labels) if k.labels else None
    return DoubleComplex(mv(k.dims), mv(k.d1), mv(k.d2), sigma, labels)


def _offsets(ks, bd):
    sizes = [c.dim(*bd) for c in ks]
    return sizes


def direct_sum(ks: Sequence[DoubleComplex]) -> DoubleComplex:
    """Blockwise direct sum; bases are concatenated in summand order."""
    ks = list(ks)
    if len(ks) == 1:
        return ks[0]
    support = sorted({bd for c in ks for bd in c.dims})
    dims = {bd: sum(c.dim(*bd) for c in ks) for bd in support}

    def diag(get, step):
        out = {}
        for p, q in support:
            tgt = (p + step[0], q + step[1])
            out[(p, q)] = block_matrix(_offsets(ks, tgt), _offsets(ks, (p, q)),
                                       {(i, i): get(c, p, q) for i, c in enumerate(ks)})
        return out

    d1 = diag(lambda c, p, q: c.D1(p, q), (1, 0))
    d2 = diag(lambda c, p, q: c.D2(p, q), (0, 1))
    sigma = None
    if all(c.has_sigma for c in ks):
        sigma = {(p, q): block_matrix(_offsets(ks, (q, p)), _offsets(ks, (p, q)),
                                      {(i, i): c.S(p, q) for i, c in enumerate(ks)})
                 for p, q in support}
    labels = None
    if any(c.labels for c in ks):
        labels = {bd: [f"{lab}#{i}" for i, c in enumerate(ks) for lab in c.basis_labels(*bd)]
                  for bd in support}
    return DoubleComplex(dims, d1, d2, sigma, labels)


def _tensor_layout(k: DoubleComplex, l: DoubleComplex):
    """Per bidegree of the product, the ordered list of ``(k_bidegree, l_bidegree)`` summands."""
    layout: Dict[Bidegree, List[Tuple[Bidegree, Bidegree]]] = {}
    for a in k.support:
        for b in l.support:
            layout.setdefault((a[0] + b[0], a[1] + b[1]), []).append((a, b))
    return layout


def tensor(k: DoubleComplex, l: DoubleComplex) -> DoubleComplex:
    """Bigraded tensor product with ``d(a⊗b) = da⊗b + (-1)^{p+q} a⊗db`` for
    ``a`` in ``K^{p,q}``, for both differentials. Sigma acts factorwise."""
    layout = _tensor_layout(k, l)
    dims = {bd: sum(k.dim(*a) * l.dim(*b) for a, b in parts) for bd, parts in layout.items()}

    def sizes(bd):
        return [k.dim(*a) * l.dim(*b) for a, b in layout.get(bd, [])]

    def position(bd, a, b):
        return layout[bd].index((a, b))

    def diff(kd, ld, step):
        out = {}
        for bd, parts in layout.items():
            tgt = (bd[0] + step[0], bd[1] + step[1])
            if tgt not in layout:
                continue
            blocks = {}
            for j, (a, b) in enumerate(parts):
                sign = -1 if (a[0] + a[1]) % 2 else 1
                ka = (a[0] + step[0], a[1] + step[1])
                if (ka, b) in layout[tgt]:
                    i = position(tgt, ka, b)
                    blocks[(i, j)] = kd(*a).kron(Matrix.identity(l.dim(*b)))
                lb = (b[0] + step[0], b[1] + step[1])
                if (a, lb) in layout[tgt]:
                    i = position(tgt, a, lb)
                    term = Matrix.identity(k.dim(*a)).kron(ld(*b)).scale(sign)
                    blocks[(i, j)] = blocks[(i, j)] + term if (i, j) in blocks else term
            out[bd] = block_matrix(sizes(tgt), sizes(bd), blocks)
        return out

    d1 = diff(k.D1, l.D1, (1, 0))
    d2 = diff(k.D2, l.D2, (0, 1))
    sigma = None
    if k.has_sigma and l.has_sigma:
        sigma = {}
        for bd, parts in layout.items():
            tgt = (bd[1], bd[0])
            blocks = {}
            for j, (a, b) in enumerate(parts):
                i = position(tgt, (a[1], a[0]), (b[1], b[0]))
                blocks[(i, j)] = k.S(*a).kron(l.S(*b))
            sigma[bd] = block_matrix(sizes(tgt), sizes(bd), blocks)
    labels = None
    if k.labels or l.labels:
        labels = {bd: [f"{x}⊗{y}" for a, b in parts
                       for x in k.basis_labels(*a) for y in l.basis_labels(*b)]
                  for bd, parts in layout.items()}
    return DoubleComplex(dims, d1, d2, sigma, labels)


def leray_hirsch_model(base: DoubleComplex, degrees: Sequence[Tuple[int, int]],
                       pairs: Sequence[Tuple[int, int]] = ()) -> DoubleComplex:
    """``⊕_i base[-u_i, -v_i]`` with the real structure of a Leray-Hirsch family.

    ``pairs`` lists index pairs ``(i, j)`` of mutually conjugate classes, which
    need ``degrees[j] == reversed(degrees[i])``. Every other index is
    self-conjugate and needs ``u == v``. Sigma sends summand ``i`` to summand
    ``j`` (and back) through the base sigma, and fixes self-conjugate summands.
    """
    if not base.has_sigma:
        raise InvalidPairingError("the base complex must carry a real structure")
    degrees = [tuple(d) for d in degrees]
    r = len(degrees)
    partner = {}
    for i, j in pairs:
        if not (0 <= i < r and 0 <= j < r) or i == j or i in partner or j in partner:
            raise InvalidPairingError(f"bad conjugate pair {(i, j)} for {r} classes")
        if degrees[j] != (degrees[i][1], degrees[i][0]):
            raise InvalidPairingError(
                f"class {j} has degree {degrees[j]}, conjugate of {degrees[i]} expected")
        partner[i], partner[j] = j, i
    for i, (u, v) in enumerate(degrees):
        if i not in partner:
            if u != v:
                raise InvalidPairingError(f"self-conjugate class {i} has degree {(u, v)} with u != v")
            partner[i] = i

    pieces = [shift(base.without_sigma(), u, v) for u, v in degrees]
    total = direct_sum(pieces) if r > 1 else pieces[0]
    sigma = {}
    for p, q in total.support:
        blocks = {}
        for i, (u, v) in enumerate(degrees):
            src = (p - u, q - v)
            if base.dim(*src):
                blocks[(partner[i], i)] = base.S(*src)
        sigma[(p, q)] = block_matrix([c.dim(q, p) for c in pieces], [c.dim(p, q) for c in pieces],
                                     blocks)
    out = DoubleComplex(total.dims, total.d1, total.d2, sigma, total.labels)
    out.require_valid()
    return out


class Morphism:
    """Bigraded linear map ``source → target``; ``blocks[(p, q)]`` has shape
    ``target.dim(p, q) × source.dim(p, q)`` and missing blocks are zero.

    Construction checks that the blocks commute with both differentials and
    raises :class:`MalformedMorphismError` otherwise.
    """

    def __init__(self, source: DoubleComplex, target: DoubleComplex, blocks=None,
                 check: bool = True):
        self.source = source
        self.target = target
        self.blocks: Dict[Bidegree, Matrix] = {}
        for bd, m in sorted((blocks or {}).items()):
            shape = (target.dim(*bd), source.dim(*bd))
            if not isinstance(m, Matrix):
                m = Matrix(m, rows=shape[0], cols=shape[1]) if m else Matrix.zeros(*shape)
            if m.shape != shape:
                raise MalformedMorphismError(f"block at {bd} has shape {m.shape}, expected {shape}")
            if not m.is_zero():
                self.blocks[tuple(bd)] = m
        if check:
            bad = self.commutation_failures()
            if bad:
                raise MalformedMorphismError(f"does not commute with the differentials at {bad}")

    @classmethod
    def identity(cls, k: DoubleComplex) -> "Morphism":
        return cls(k, k, {bd: Matrix.identity(n) for bd, n in k.dims.items()}, check=False)

    @classmethod
    def zero(cls, source: DoubleComplex, target: DoubleComplex) -> "Morphism":
        return cls(source, target, {}, check=False)

    def block(self, p: int, q: int) -> Matrix:
        m = self.blocks.get((p, q))
        return m if m is not None else Matrix.zeros(self.target.dim(p, q), self.source.dim(p, q))

    def commutation_failures(self) -> List[Tuple[str, Bidegree]]:
        s, t = self.source, self.target
        out = []
        for p, q in s.support:
            if t.D1(p, q) @ self.block(p, q) != self.block(p + 1, q) @ s.D1(p, q):
                out.append(("d1", (p, q)))
            if t.D2(p, q) @ self.block(p, q) != self.block(p, q + 1) @ s.D2(p, q):
                out.append(("d2", (p, q)))
        return out

    def is_real(self) -> bool:
        """Whether ``sigma_t ∘ f = f ∘ sigma_s`` (both sides conjugate-linear)."""
        s, t = self.source, self.target
        if not (s.has_sigma and t.has_sigma):
            return False
        return all(t.S(p, q) @ self.block(p, q).conj() == self.block(q, p) @ s.S(p, q)
                   for p, q in set(s.support) | set(t.support))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        """Composition ``self ∘ other``."""
        if other.target is not self.source and other.target != self.source:
            raise MalformedMorphismError("composition of non-matching morphisms")
        bds = set(other.source.support) | set(self.target.support)
        return Morphism(other.source, self.target,
                        {bd: self.block(*bd) @ other.block(*bd) for bd in bds}, check=False)

    def induced(self, theory: str, p: int, q: int) -> Matrix:
        return induced_map(self.block(p, q), self.source, self.target, theory, p, q)

    def _degrees(self):
        return sorted(set(self.source.support) | set(self.target.support))


def _induced_iso(f: Morphism, theory: str) -> bool:
    f.source.require_valid()
    f.target.require_valid()
    for p, q in f._degrees():
        if bijectivity_failures(f.induced(theory, p, q)):
            return False
    return True


def is_E1_isomorphism(f: Morphism) -> bool:
    """Whether ``f`` induces an isomorphism on Dolbeault cohomology at every bidegree."""
    if f.commutation_failures():
        raise MalformedMorphismError("does not commute with the differentials")
    return _induced_iso(f, "dolbeault")


def induced_bc_dims_equal(f: Morphism) -> bool:
    """For an E1-isomorphism, whether the induced Bott-Chern map is bijective everywhere.

    An E1-isomorphism always induces a Bott-Chern isomorphism, so a ``False``
    here means that theorem has a counterexample or, more likely, the code has
    a bug.
    """
    if not is_E1_isomorphism(f):
        raise NotE1IsomorphismError("morphism is not an E1-isomorphism")
    return _induced_iso(f, "bott-chern")


# --- long exact sequences ----------------------------------------------------

@dataclass(frozen=True)
class LESTerm:
    space: str          # "A", "B" or "C"
    degree: int
    dim: int

    def __str__(self):
        return f"H^{self.degree}({self.space})"


@dataclass
class LongExactSequence:
    """Terms ``H^q(A) → H^q(B) → H^q(C) → H^{q+1}(A) → ...`` with the matrix
    of each arrow; ``maps[i]`` goes from ``terms[i]`` to ``terms[i+1]``."""

    terms: List[LESTerm]
    maps: List[Matrix]
    direction: str
    fixed: int

    def exactness_defects(self) -> List[int]:
        """Indices of terms where ``rank(incoming) != dim ker(outgoing)``;
        maps beyond the ends are zero."""
        bad = []
        for i, t in enumerate(self.terms):
            r_in = rank(self.maps[i - 1]) if i > 0 else 0
            r_out = rank(self.maps[i]) if i < len(self.maps) else 0
            if r_in != t.dim - r_out:
                bad.append(i)
        return bad

    def is_exact(self) -> bool:
        return not self.exactness_defects()

    def connecting_maps(self) -> List[Tuple[int, Matrix]]:
        return [(self.terms[i].degree, m) for i, m in enumerate(self.maps)
                if self.terms[i].space == "C"]


def _line(k: DoubleComplex, direction: str, fixed: int):
    """One row (``direction='row'``: fixed p, d2) or column (fixed q, d1) of ``k``,
    as a 1-D complex ``{degree: (dim, differential)}`` accessor pair."""
    if direction == "row":
        return (lambda n: (fixed, n)), (lambda n: k.D2(fixed, n)), "dolbeault"
    if direction == "column":
        return (lambda n: (n, fixed)), (lambda n: k.D1(n, fixed)), "conjugate-dolbeault"
    raise ValueError(f"direction must be 'row' or 'column', not {direction!r}")


def check_short_exact(f: Morphism, g: Morphism) -> None:
    """Raise :class:`NotExactError` unless ``0 → A → B → C → 0`` is exact at every bidegree."""
    if f.target != g.source:
        raise MalformedMorphismError("f.target and g.source differ")
    bds = sorted(set(f.source.support) | set(f.target.support) | set(g.target.support))
    for bd in bds:
        fb, gb = f.block(*bd), g.block(*bd)
        if not (gb @ fb).is_zero():
            raise NotExactError(bd, "g∘f != 0")
        rf, rg = rank(fb), rank(gb)
        if rf != fb.cols:
            raise NotExactError(bd, "f is not injective")
        if rg != gb.rows:
            raise NotExactError(bd, "g is not surjective")
        if rf + rg != fb.rows:
            raise NotExactError(bd, "image of f differs from kernel of g")


def ses_to_les(f: Morphism, g: Morphism, fixed: int, direction: str = "row") -> LongExactSequence:
    """Long exact cohomology sequence of a short exact sequence ``A →f B →g C``.

    With ``direction='row'`` the sequence is taken along ``d2`` at first degree
    ``p = fixed``, giving Dolbeault cohomology of the rows. With
    ``'column'`` it is taken along ``d1`` at ``q = fixed``. The connecting map
    lifts a cycle of ``C`` along ``g``, applies the differential, and pulls
    the result back along ``f``.
    """
    check_short_exact(f, g)
    A, B, C = f.source, f.target, g.target
    for c in (A, B, C):
        c.require_valid()
    at, _, theory = _line(A, direction, fixed)
    _, dB, _ = _line(B, direction, fixed)
    axis = 1 if direction == "row" else 0
    degs = [bd[axis] for c in (A, B, C) for bd in c.support if bd[1 - axis] == fixed]
    if not degs:
        return LongExactSequence([], [], direction, fixed)
    lo, hi = min(degs), max(degs)

    terms: List[LESTerm] = []
    maps: List[Matrix] = []
    for n in range(lo, hi + 1):
        bd = at(n)
        nxt = at(n + 1)
        hA = cohomology_basis(A, theory, *bd)[1].cols
        hB = cohomology_basis(B, theory, *bd)[1].cols
        hC = cohomology_basis(C, theory, *bd)[1].cols
        terms += [LESTerm("A", n, hA), LESTerm("B", n, hB), LESTerm("C", n, hC)]
        maps.append(f.induced(theory, *bd))
        maps.append(g.induced(theory, *bd))
        if n < hi:
            maps.append(_connecting(f, g, theory, bd, nxt, dB(n)))
    les = LongExactSequence(terms, maps, direction, fixed)
    if not les.is_exact():
        raise InternalInconsistencyError(
            f"long sequence not exact at terms {[str(terms[i]) for i in les.exactness_defects()]}")
    return les


def _connecting(f: Morphism, g: Morphism, theory: str, bd, nxt, dB: Matrix) -> Matrix:
    A, C = f.source, g.target
    _, reps = cohomology_basis(C, theory, *bd)
    hA_next = cohomology_basis(A, theory, *nxt)[1].cols
    cols = []
    for c in reps.columns():
        b = coordinates_in_span(c, g.block(*bd))
        if b is None:
            raise InternalInconsistencyError(f"cannot lift along g at {bd}")
        a = coordinates_in_span(dB @ b, f.block(*nxt))
        if a is None:
            raise InternalInconsistencyError(f"boundary of lift not in the image of f at {nxt}")
        cls = class_coordinates(A, theory, *nxt, a)
        if cls is None:
            raise InternalInconsistencyError(f"connecting image is not a cycle at {nxt}")
        cols.append(cls)
    return Matrix.from_columns(cols, hA_next)
