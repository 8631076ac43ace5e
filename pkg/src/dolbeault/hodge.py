"""Hodge polynomials and the dimension formulas for products, projective
bundles, blow-ups and flag bundles.

A Hodge diamond ``h^{p,q}`` is stored as the polynomial ``Σ h^{p,q} x^p y^q``.
Each diamond also carries a three-valued ∂∂̄-lemma flag: ``True``, ``False``,
or ``None`` for unknown.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (CenterDimensionError, InternalInconsistencyError, InvalidCodimensionError,
                     InvalidInputError, InvalidRankError)

Ddbar = Optional[bool]


def ddbar_and(*flags: Ddbar) -> Ddbar:
    """Three-valued conjunction: any ``False`` wins, then any unknown."""
    if any(f is False for f in flags):
        return False
    if any(f is None for f in flags):
        return None
    return True


def ddbar_text(flag: Ddbar) -> str:
    return "unknown" if flag is None else str(flag).lower()


@dataclass(frozen=True)
class HodgePolynomial:
    n: int
    coeffs: Dict[Tuple[int, int], int]
    ddbar: Ddbar = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        clean = {}
        for (p, q), h in sorted(self.coeffs.items()):
            if h < 0:
                raise InvalidInputError(f"negative Hodge number at {(p, q)}")
            if h:
                if not (0 <= p <= self.n and 0 <= q <= self.n):
                    raise InvalidInputError(f"h^{{{p},{q}}} outside 0..{self.n}")
                clean[(p, q)] = h
        object.__setattr__(self, "coeffs", clean)
        if self.n < 0:
            raise InvalidInputError("negative dimension")

    def __getitem__(self, pq) -> int:
        return self.coeffs.get(tuple(pq), 0)

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.items()), self.ddbar))

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (p, q), h in self.coeffs.items():
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in (("x", p), ("y", q)) if e)
            terms.append(mono if h == 1 and mono else f"{h}*{mono}" if mono else str(h))
        return " + ".join(terms)

    def is_zero(self) -> bool:
        return not self.coeffs

    def total(self) -> int:
        return sum(self.coeffs.values())

    def euler(self) -> int:
        return sum((-1) ** (p + q) * h for (p, q), h in self.coeffs.items())

    def betti(self) -> List[int]:
        """``b_k = Σ_{p+q=k} h^{p,q}`` for ``k = 0..2n``."""
        b = [0] * (2 * self.n + 1)
        for (p, q), h in self.coeffs.items():
            b[p + q] += h
        return b

    def is_hodge_symmetric(self) -> bool:
        return all(self[q, p] == h for (p, q), h in self.coeffs.items())

    def with_name(self, name: str) -> "HodgePolynomial":
        return HodgePolynomial(self.n, self.coeffs, self.ddbar, name)

    def to_json(self) -> dict:
        out = {"n": self.n, "coeffs": [[p, q, h] for (p, q), h in self.coeffs.items()],
               "ddbar": ddbar_text(self.ddbar)}
        if self.ddbar is True:
            out["betti"] = self.betti()
        return out

    def diamond_rows(self) -> List[List[int]]:
        """Rows of the diamond from top (total degree 2n) to bottom, each row
        listed left to right as ``h^{p,q}`` with ``p`` decreasing; zeros are explicit."""
        n = self.n
        rows = []
        for k in range(2 * n, -1, -1):
            rows.append([self[p, k - p] for p in range(min(n, k), max(0, k - n) - 1, -1)])
        return rows

    def render(self) -> str:
        """Centered-triangle picture of the diamond."""
        rows = self.diamond_rows()
        width = max(len(str(h)) for r in rows for h in r)
        cell = width + 2
        span = cell * (self.n + 1)
        lines = []
        for r in rows:
            body = "".join(str(h).center(cell) for h in r)
            lines.append(body.center(span).rstrip())
        return "\n".join(lines)


def _mul(a: Dict, b: Dict) -> Dict:
    out: Counter = Counter()
    for (p, q), h in a.items():
        for (r, s), g in b.items():
            out[(p + r, q + s)] += h * g
    return dict(out)


def _xy_powers(lo: int, hi: int) -> Dict:
    return {(i, i): 1 for i in range(lo, hi + 1)}


def kunneth(hx: HodgePolynomial, hy: HodgePolynomial) -> HodgePolynomial:
    return HodgePolynomial(hx.n + hy.n, _mul(hx.coeffs, hy.coeffs), ddbar_and(hx.ddbar, hy.ddbar),
                           f"{hx.name} x {hy.name}")


def projective_bundle(h: HodgePolynomial, r: int) -> HodgePolynomial:
    """Projectivization of a rank-``r`` bundle: ``h · Σ_{i<r} (xy)^i``."""
    if r < 1:
        raise InvalidRankError(f"projective bundle needs rank >= 1, got {r}")
    return HodgePolynomial(h.n + r - 1, _mul(h.coeffs, _xy_powers(0, r - 1)), h.ddbar,
                           f"P_{r}({h.name})")


def blow_up(hx: HodgePolynomial, hz: HodgePolynomial, r: int) -> HodgePolynomial:
    """Blow-up of ``X`` along a center ``Z`` of codimension ``r``:
    ``hx + hz · Σ_{i=1}^{r-1} (xy)^i``."""
    if r < 2:
        raise InvalidCodimensionError(f"blow-up codimension must be >= 2, got {r}")
    if hz.is_zero():
        raise InvalidInputError("blow-up center has the zero diamond")
    if hz.n != hx.n - r:
        raise CenterDimensionError(
            f"center of dimension {hz.n} cannot have codimension {r} in dimension {hx.n}")
    coeffs = Counter(hx.coeffs)
    coeffs.update(_mul(hz.coeffs, _xy_powers(1, r - 1)))
    return HodgePolynomial(hx.n, dict(coeffs), ddbar_and(hx.ddbar, hz.ddbar),
                           f"Bl_{hz.name}({hx.name})")


# --- Gaussian multinomials ---------------------------------------------------

def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: List[int], b: List[int]) -> List[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, rem = divmod(a[i + len(b) - 1], b[-1])
        if rem:
            raise InternalInconsistencyError("inexact polynomial division")
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise InternalInconsistencyError("inexact polynomial division")
    return q


def _qfactorial(n: int) -> List[int]:
    out = [1]
    for k in range(1, n + 1):
        out = _poly_mul(out, [1] * k)
    return out


def _check_parts(parts: Sequence[int]) -> List[int]:
    parts = list(parts)
    if not parts or any(not isinstance(k, int) or k < 1 for k in parts):
        raise InvalidInputError(f"flag parts must be a nonempty list of positive ints, got {parts}")
    return parts


def flag_dimension(parts: Sequence[int]) -> int:
    parts = _check_parts(parts)
    return sum(parts[i] * parts[j] for i in range(len(parts)) for j in range(i + 1, len(parts)))


def gaussian_multinomial(parts: Sequence[int]) -> List[int]:
    """Coefficients (ascending in ``t``) of ``[n; n_1, ..., n_r]_t = [n]_t! / Π [n_i]_t!``."""
    parts = _check_parts(parts)
    num = _qfactorial(sum(parts))
    den = [1]
    for k in parts:
        den = _poly_mul(den, _qfactorial(k))
    return _poly_divexact(num, den)


def inversion_polynomial(parts: Sequence[int]) -> List[int]:
    """Brute force: ``Σ_w t^{inv(w)}`` over distinct permutations of the
    multiset ``{1^{n_1}, ..., r^{n_r}}``."""
    parts = _check_parts(parts)
    word = [i for i, k in enumerate(parts) for _ in range(k)]
    dim = flag_dimension(parts)
    out = [0] * (dim + 1)
    for w in set(permutations(word)):
        inv = sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])
        out[inv] += 1
    return out


def flag_bundle(h: HodgePolynomial, parts: Sequence[int]) -> HodgePolynomial:
    g = gaussian_multinomial(parts)
    fl = {(i, i): c for i, c in enumerate(g) if c}
    return HodgePolynomial(h.n + flag_dimension(parts), _mul(h.coeffs, fl), h.ddbar,
                           f"Fl{list(parts)}({h.name})")


# --- consequences ------------------------------------------------------------

@dataclass(frozen=True)
class QCompletenessReport:
    r: int
    h_top: int
    not_strongly_complete_for: Tuple[int, ...]

    def __str__(self):
        qs = self.not_strongly_complete_for
        return (f"h^{{{self.r - 1},{self.r - 1}}} = {self.h_top} >= 1: "
                f"not strongly q-complete for {qs[0]} <= q <= {qs[-1]}")


def q_complete_obstruction(h: HodgePolynomial, r: int) -> QCompletenessReport:
    """Obstruction to strong q-completeness for a blow-up along a codimension-``r``
    center, or a projective bundle of rank ``r``.

    Coherent cohomology vanishes in degrees ``>= q`` on a strongly
    q-complete manifold, so ``h^{r-1,r-1} >= 1`` rules out ``1 <= q <= r-1``.
    """
    if r < 2:
        raise InvalidRankError(f"obstruction needs r >= 2, got {r}")
    top = h[r - 1, r - 1]
    if top < 1:
        raise InternalInconsistencyError(f"h^{{{r - 1},{r - 1}}} = {top}; expected >= 1")
    return QCompletenessReport(r, top, tuple(range(1, r)))


@dataclass(frozen=True)
class LHDecision:
    holds: bool
    witness: Optional[Tuple[int, int]] = None
    expected: int = 0
    actual: int = 0

    def __bool__(self):
        return self.holds


def lh_consistency(h_total: HodgePolynomial, h_fiber: HodgePolynomial,
                   h_base: HodgePolynomial) -> LHDecision:
    """Compare a bundle's diamond with ``base · fiber``, the Leray-Hirsch prediction.

    A mismatch shows that no family of global classes restricts to a basis
    of every fiber's cohomology. The first mismatch in lexicographic order is
    reported.
    """
    pred = _mul(h_base.coeffs, h_fiber.coeffs)
    for pq in sorted(set(pred) | set(h_total.coeffs)):
        if pred.get(pq, 0) != h_total[pq]:
            return LHDecision(False, pq, pred.get(pq, 0), h_total[pq])
    return LHDecision(True)
