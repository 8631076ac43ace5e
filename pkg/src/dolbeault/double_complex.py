"""Bounded double complexes with an optional real structure, and their cohomologies.

A :class:`DoubleComplex` stores one finite-dimensional space per bidegree
``(p, q)`` together with the blocks of two differentials, ``d1`` of bidegree
(1, 0) and ``d2`` of bidegree (0, 1), and optionally a real structure
``sigma``. Bidegrees outside the support are zero spaces, and missing blocks
are zero maps.

``sigma`` is conjugate-linear. It is stored as one matrix per bidegree, and
the vector ``v`` in ``K^{p,q}`` maps to ``sigma[p, q] @ conj(v)`` in
``K^{q,p}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import InternalInconsistencyError, MalformedComplexError, ValidationError
from .linalg import (Matrix, block_matrix, coordinates_in_span, extend_basis,
                     image_basis, kernel_basis, rank, subspace_dims)

Bidegree = Tuple[int, int]

THEORIES = ("dolbeault", "conjugate-dolbeault", "bott-chern", "aeppli", "de-rham-total")


class DoubleComplex:
    """Immutable bounded double complex ``(K, d1, d2, sigma)``.

    ``dims`` maps bidegrees to dimensions (zeros are dropped). ``d1``, ``d2``
    and ``sigma`` map the *source* bidegree to a block; shapes are checked
    against ``dims`` and a mismatch raises :class:`MalformedComplexError`.
    The axioms themselves are checked by :func:`validate`.
    """

    def __init__(self, dims: Mapping[Bidegree, int], d1: Optional[Mapping] = None,
                 d2: Optional[Mapping] = None, sigma: Optional[Mapping] = None,
                 labels: Optional[Mapping[Bidegree, Iterable[str]]] = None):
        self.dims: Dict[Bidegree, int] = {}
        for (p, q), n in sorted(dims.items()):
            if not isinstance(n, int) or n < 0:
                raise MalformedComplexError(f"dimension at {(p, q)} must be a nonnegative int")
            if n:
                self.dims[(int(p), int(q))] = n
        self.d1 = self._blocks(d1 or {}, (1, 0), "d1")
        self.d2 = self._blocks(d2 or {}, (0, 1), "d2")
        if sigma is None:
            self.sigma = None
        else:
            self.sigma = {}
            for (p, q), m in sorted(sigma.items()):
                if not isinstance(m, Matrix):
                    m = Matrix(m, rows=self.dim(q, p), cols=self.dim(p, q)) if m else \
                        Matrix.zeros(self.dim(q, p), self.dim(p, q))
                if m.shape != (self.dim(q, p), self.dim(p, q)):
                    raise MalformedComplexError(
                        f"sigma block at {(p, q)} has shape {m.shape}, "
                        f"expected {(self.dim(q, p), self.dim(p, q))}")
                if m.rows and m.cols:
                    self.sigma[(p, q)] = m
        self.labels: Optional[Dict[Bidegree, Tuple[str, ...]]] = None
        if labels is not None:
            self.labels = {}
            for bd, names in sorted(labels.items()):
                names = tuple(names)
                if len(names) != self.dim(*bd):
                    raise MalformedComplexError(f"{len(names)} labels at {bd} for dimension {self.dim(*bd)}")
                if names:
                    self.labels[tuple(bd)] = names
        self._validation = None
        self._cache: dict = {}

    def _blocks(self, blocks, step, name):
        out = {}
        for (p, q), m in sorted(blocks.items()):
            tgt = (p + step[0], q + step[1])
            shape = (self.dim(*tgt), self.dim(p, q))
            if not isinstance(m, Matrix):
                m = Matrix(m, rows=shape[0], cols=shape[1]) if m else Matrix.zeros(*shape)
            if m.shape != shape:
                raise MalformedComplexError(
                    f"{name} block at {(p, q)} has shape {m.shape}, expected {shape}")
            if not m.is_zero():
                out[(p, q)] = m
        return out

    # --- accessors -------------------------------------------------------

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    @property
    def support(self) -> List[Bidegree]:
        return sorted(self.dims)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def hull(self) -> List[Bidegree]:
        """Bidegrees of the bounding box of the support, in lexicographic order."""
        if not self.dims:
            return []
        ps = [p for p, _ in self.dims]
        qs = [q for _, q in self.dims]
        return [(p, q) for p in range(min(ps), max(ps) + 1) for q in range(min(qs), max(qs) + 1)]

    def D1(self, p: int, q: int) -> Matrix:
        m = self.d1.get((p, q))
        return m if m is not None else Matrix.zeros(self.dim(p + 1, q), self.dim(p, q))

    def D2(self, p: int, q: int) -> Matrix:
        m = self.d2.get((p, q))
        return m if m is not None else Matrix.zeros(self.dim(p, q + 1), self.dim(p, q))

    def S(self, p: int, q: int) -> Matrix:
        if self.sigma is None:
            raise ValueError("complex has no real structure")
        m = self.sigma.get((p, q))
        return m if m is not None else Matrix.zeros(self.dim(q, p), self.dim(p, q))

    @property
    def has_sigma(self) -> bool:
        return self.sigma is not None

    def basis_labels(self, p: int, q: int) -> Tuple[str, ...]:
        if self.labels and (p, q) in self.labels:
            return self.labels[(p, q)]
        return tuple(f"e{p},{q}_{i}" for i in range(self.dim(p, q)))

    def without_sigma(self) -> "DoubleComplex":
        return DoubleComplex(self.dims, self.d1, self.d2, None, self.labels)

    def __eq__(self, other):
        if not isinstance(other, DoubleComplex):
            return NotImplemented
        return (self.dims == other.dims and self.d1 == other.d1 and self.d2 == other.d2
                and self.sigma == other.sigma and self.labels == other.labels)

    def __repr__(self):
        s = ", ".join(f"{bd}:{n}" for bd, n in self.dims.items())
        return f"DoubleComplex({{{s}}}{', sigma' if self.has_sigma else ''})"

    def validation(self) -> "ValidationReport":
        if self._validation is None:
            self._validation = validate(self)
        return self._validation

    def require_valid(self) -> None:
        report = self.validation()
        if not report.ok:
            raise ValidationError(report.violations)


@dataclass(frozen=True)
class Violation:
    bidegree: Bidegree
    axiom: str
    detail: str = ""

    def __str__(self):
        return f"{self.axiom} fails at {self.bidegree}" + (f" ({self.detail})" if self.detail else "")


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "pass" if self.ok else "\n".join(str(v) for v in self.violations)


def validate(k: DoubleComplex) -> ValidationReport:
    """Check ``d1² = d2² = 0``, ``d1 d2 + d2 d1 = 0`` and, with sigma present,
    the real-structure axioms, blockwise over the support."""
    out = []
    for (p, q) in k.support:
        if not (k.D1(p + 1, q) @ k.D1(p, q)).is_zero():
            out.append(Violation((p, q), "d1^2"))
        if not (k.D2(p, q + 1) @ k.D2(p, q)).is_zero():
            out.append(Violation((p, q), "d2^2"))
        if not (k.D1(p, q + 1) @ k.D2(p, q) + k.D2(p + 1, q) @ k.D1(p, q)).is_zero():
            out.append(Violation((p, q), "anticommutation"))
        if k.sigma is None:
            continue
        if k.dim(q, p) != k.dim(p, q):
            out.append(Violation((p, q), "sigma-grading",
                                 f"dim K^{(p, q)}={k.dim(p, q)} but dim K^{(q, p)}={k.dim(q, p)}"))
            continue
        if k.S(q, p) @ k.S(p, q).conj() != Matrix.identity(k.dim(p, q)):
            out.append(Violation((p, q), "sigma-involution"))
        # sigma d1 sigma v = S[q+1,p] conj(D1[q,p] S[p,q]) v
        if k.S(q + 1, p) @ (k.D1(q, p) @ k.S(p, q)).conj() != k.D2(p, q):
            out.append(Violation((p, q), "sigma-d1-sigma=d2"))
    return ValidationReport(out)


@dataclass(frozen=True)
class CohomologyTable:
    """Dimensions of one cohomology theory; keys are ``(p, q)`` or, for
    ``de-rham-total``, the total degree ``k``. Only nonzero entries are stored."""

    theory: str
    dims: Dict

    def __getitem__(self, key) -> int:
        return self.dims.get(key, 0)

    def euler(self) -> int:
        if self.theory == "de-rham-total":
            return sum((-1) ** k * n for k, n in self.dims.items())
        return sum((-1) ** (p + q) * n for (p, q), n in self.dims.items())

    def total(self) -> int:
        return sum(self.dims.values())

    def __eq__(self, other):
        if not isinstance(other, CohomologyTable):
            return NotImplemented
        return self.theory == other.theory and self.dims == other.dims


# --- quotient data -------------------------------------------------------

def _cached(k, key, fn):
    try:
        return k._cache[key]
    except KeyError:
        val = k._cache[key] = fn()
        return val


def cycles_and_boundaries(k: DoubleComplex, theory: str, p: int, q: int) -> Tuple[Matrix, Matrix]:
    """Spanning matrices ``(numerator, denominator)`` in ``K^{p,q}`` for a bigraded theory."""
    def compute():
        if theory == "dolbeault":
            return kernel_basis(k.D2(p, q)), k.D2(p, q - 1)
        if theory == "conjugate-dolbeault":
            return kernel_basis(k.D1(p, q)), k.D1(p - 1, q)
        if theory == "bott-chern":
            return (kernel_basis(k.D1(p, q).vstack(k.D2(p, q))),
                    k.D1(p - 1, q) @ k.D2(p - 1, q - 1))
        if theory == "aeppli":
            return (kernel_basis(k.D1(p, q + 1) @ k.D2(p, q)),
                    k.D1(p - 1, q).hstack(k.D2(p, q - 1)))
        raise ValueError(f"unknown bigraded theory {theory!r}")
    return _cached(k, ("cb", theory, p, q), compute)


def cohomology_basis(k: DoubleComplex, theory: str, p: int, q: int) -> Tuple[Matrix, Matrix]:
    """``(boundary_basis, representatives)`` at ``(p, q)``.

    ``representatives`` are cycle vectors whose classes form a basis of the
    quotient; together with ``boundary_basis`` they form a basis of the cycles.
    """
    def compute():
        num, den = cycles_and_boundaries(k, theory, p, q)
        den_b = image_basis(den)
        _, dn, ds, _ = subspace_dims(den_b, num)
        if ds != dn:
            raise InternalInconsistencyError(f"{theory}: boundaries not inside cycles at {(p, q)}")
        return den_b, extend_basis(den_b, num)
    return _cached(k, ("basis", theory, p, q), compute)


def class_coordinates(k: DoubleComplex, theory: str, p: int, q: int, v) -> Optional[tuple]:
    """Coordinates of the class of cycle ``v`` in the representative basis, or
    ``None`` if ``v`` is not a cycle."""
    den_b, reps = cohomology_basis(k, theory, p, q)
    c = coordinates_in_span(v, den_b.hstack(reps))
    return None if c is None else c[den_b.cols:]


def induced_map(block: Matrix, src: DoubleComplex, tgt: DoubleComplex, theory: str,
                p: int, q: int) -> Matrix:
    """Matrix of the map on ``theory`` cohomology at ``(p, q)`` induced by ``block``.

    Rows index the target representatives and columns the source ones.
    """
    _, reps = cohomology_basis(src, theory, p, q)
    _, treps = cohomology_basis(tgt, theory, p, q)
    cols = []
    for v in reps.columns():
        c = class_coordinates(tgt, theory, p, q, block @ v)
        if c is None:
            raise InternalInconsistencyError(f"image of a {theory} cycle is not a cycle at {(p, q)}")
        cols.append(c)
    return Matrix.from_columns(cols, treps.cols)


# --- cohomology ----------------------------------------------------------

def total_complex(k: DoubleComplex):
    """``{n: (dim Tot^n, D_n)}`` with ``Tot^n = ⊕_{p+q=n} K^{p,q}`` ordered by ascending ``p``
    and ``D_n = d1 + d2 : Tot^n → Tot^{n+1}``."""
    def pieces(n):
        return [bd for bd in k.support if bd[0] + bd[1] == n]
    if not k.dims:
        return {}
    degs = sorted({p + q for p, q in k.dims})
    out = {}
    for n in range(degs[0] - 1, degs[-1] + 1):
        src, tgt = pieces(n), pieces(n + 1)
        blocks = {}
        for j, (p, q) in enumerate(src):
            for i, t in enumerate(tgt):
                if t == (p + 1, q):
                    blocks[(i, j)] = k.D1(p, q)
                elif t == (p, q + 1):
                    blocks[(i, j)] = k.D2(p, q)
        out[n] = (sum(k.dim(*b) for b in src),
                  block_matrix([k.dim(*t) for t in tgt], [k.dim(*s) for s in src], blocks))
    return out


def _table(k: DoubleComplex, theory: str) -> CohomologyTable:
    if theory == "de-rham-total":
        tot = total_complex(k)
        dims = {}
        for n, (dn, dmat) in tot.items():
            prev = tot.get(n - 1)
            h = dn - rank(dmat) - (rank(prev[1]) if prev else 0)
            if h:
                dims[n] = h
        return CohomologyTable(theory, dims)
    dims = {}
    for p, q in k.support:
        h = cohomology_basis(k, theory, p, q)[1].cols
        if h:
            dims[(p, q)] = h
    return CohomologyTable(theory, dims)


def cohomology(k: DoubleComplex, theory: str) -> CohomologyTable:
    """Cohomology table of a valid complex for one of :data:`THEORIES`.

    Aeppli cohomology ``ker d1 d2 / (im d1 + im d2)`` is included as the
    companion of Bott-Chern cohomology.
    """
    if theory not in THEORIES:
        raise ValueError(f"unknown theory {theory!r}; choose from {', '.join(THEORIES)}")
    k.require_valid()
    return _cached(k, ("table", theory), lambda: _table(k, theory))


def natural_map_bc_to_dolbeault(k: DoubleComplex, p: int, q: int) -> Matrix:
    """Matrix of ``H_BC^{p,q} → H_∂̄^{p,q}`` induced by the identity
    (shape ``dim H_∂̄ × dim H_BC``)."""
    k.require_valid()
    _, bc_reps = cohomology_basis(k, "bott-chern", p, q)
    _, dol_reps = cohomology_basis(k, "dolbeault", p, q)
    cols = []
    for v in bc_reps.columns():
        c = class_coordinates(k, "dolbeault", p, q, v)
        if c is None:
            raise InternalInconsistencyError(f"Bott-Chern cycle not d2-closed at {(p, q)}")
        cols.append(c)
    return Matrix.from_columns(cols, dol_reps.cols)


@dataclass(frozen=True)
class DdbarDecision:
    holds: bool
    witness: Optional[Bidegree] = None
    failed: Tuple[str, ...] = ()

    def __bool__(self):
        return self.holds

    def __str__(self):
        if self.holds:
            return "true"
        return f"false (witness {self.witness}: {'/'.join(self.failed)} fails)"


def bijectivity_failures(m: Matrix) -> Tuple[str, ...]:
    r = rank(m)
    out = []
    if r < m.cols:
        out.append("injectivity")
    if r < m.rows:
        out.append("surjectivity")
    return tuple(out)


def check_ddbar(k: DoubleComplex) -> DdbarDecision:
    """Decide the ∂∂̄-lemma for ``k``: the identity-induced map from Bott-Chern
    to Dolbeault cohomology must be bijective at every bidegree of the hull.

    On failure the first offending bidegree in lexicographic order is
    reported together with the failed properties.
    """
    k.require_valid()
    for p, q in k.hull():
        failed = bijectivity_failures(natural_map_bc_to_dolbeault(k, p, q))
        if failed:
            return DdbarDecision(False, (p, q), failed)
    return DdbarDecision(True)
