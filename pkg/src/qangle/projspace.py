"""Lines in complex projective space, the quantum angle, and canonical forms.

A line is a one-dimensional subspace of C^n, represented by a unit vector in
a fixed phase gauge so that equal lines have (numerically) equal
representatives.  The quantum angle between two lines [u], [v] is
``arccos |<u, v>|``; inner products follow the convention
``<u, v> = sum(conj(u_i) * v_i)``.

Besides the metric itself, this module provides the canonical form of a pair
of distinct lines ([v1] = [c e1 + i d e2], [v2] = [c e1 - i d e2]) and of a
collinear triple ([v_j] = [c e1 + lambda_j d e2]), which downstream modules
use to describe alpha-sets in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneratePairError,
    DegenerateTripleError,
    DegenerateVectorError,
    DimensionError,
    NotCollinearError,
    ParameterError,
)

NORM_TOL = 1e-12
GAUGE_TOL = 1e-12
LINE_EQUALITY_TOL = 1e-9
COLLINEARITY_TOL = 1e-9

#: Hard cap on ambient dimension; infinite-dimensional spaces are out of scope.
MAX_DIM = 16


class Angle(float):
    """A quantum angle in radians, clamped to [0, pi/2]."""

    def __new__(cls, radians: float) -> "Angle":
        r = float(radians)
        if r < -1e-12 or r > np.pi / 2 + 1e-12:
            raise ParameterError(f"angle {r} outside [0, pi/2]")
        return super().__new__(cls, min(max(r, 0.0), np.pi / 2))

    @property
    def radians(self) -> float:
        return float(self)


@dataclass(frozen=True, eq=False)
class Line:
    """A point of P(C^n): a unit vector in canonical phase gauge.

    Invariants: the amplitudes have Euclidean norm 1 within 1e-12, and the
    first amplitude of modulus > 1e-12 is real and strictly positive.  Use
    :func:`canonical_line` to build a Line from an arbitrary vector.
    """

    dim: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.dim,):
            raise DimensionError(f"expected {self.dim} amplitudes, got shape {amps.shape}")
        if self.dim < 1 or self.dim > MAX_DIM:
            raise DimensionError(f"dim {self.dim} outside supported range [1, {MAX_DIM}]")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise ParameterError(f"amplitudes not normalized: |v| = {np.linalg.norm(amps)}")
        big = np.abs(amps) > GAUGE_TOL
        k = int(np.argmax(big))
        lead = amps[k]
        if not big[k] or abs(lead.imag) > GAUGE_TOL or lead.real <= 0:
            raise ParameterError("amplitudes violate the canonical phase gauge")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "re": [float(x) for x in self.amplitudes.real],
            "im": [float(x) for x in self.amplitudes.imag],
        }

    @staticmethod
    def from_json(obj: dict) -> "Line":
        amps = np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
        return Line(int(obj["dim"]), amps)


def gauge(vector: np.ndarray) -> np.ndarray:
    """Rotate a vector's global phase so its first non-negligible entry is real positive."""
    v = np.asarray(vector, dtype=complex)
    big = np.abs(v) > GAUGE_TOL
    if not big.any():
        raise DegenerateVectorError("all amplitudes below gauge threshold")
    lead = v[int(np.argmax(big))]
    return v * (lead.conjugate() / abs(lead))


def canonical_line(vector) -> Line:
    """Normalize and phase-gauge a raw complex vector into a Line.

    Raises DegenerateVectorError when the vector norm is below 1e-9.  For any
    unimodular lambda, ``canonical_line(lambda * v)`` equals
    ``canonical_line(v)`` as a line.
    """
    v = np.asarray(vector, dtype=complex).reshape(-1)
    n = np.linalg.norm(v)
    if n <= 1e-9:
        raise DegenerateVectorError(f"vector norm {n} too small")
    return Line(v.shape[0], gauge(v / n))


def inner(u: Line, v: Line) -> complex:
    """Hermitian inner product of the representatives, conjugate-linear in the first slot."""
    if u.dim != v.dim:
        raise DimensionError(f"dims {u.dim} and {v.dim} differ")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def quantum_angle(u: Line, v: Line) -> Angle:
    """Quantum angle arccos|<u, v>| between two lines; symmetric and gauge-invariant.

    Near-identical lines are handled through the orthogonal residual
    (arcsin of its norm), since the arccos form cannot resolve angles below
    the square root of machine epsilon.  The residual is evaluated in a
    fixed argument order, which keeps the result bit-identical under swaps.
    """
    m = abs(inner(u, v))
    if m < 0.999:
        return Angle(np.arccos(m))
    a, b = (
        (u, v)
        if u.amplitudes.tobytes() <= v.amplitudes.tobytes()
        else (v, u)
    )
    z = np.vdot(a.amplitudes, b.amplitudes)
    perp = b.amplitudes - z * a.amplitudes
    return Angle(np.arcsin(min(1.0, float(np.linalg.norm(perp)))))


def lines_equal(u: Line, v: Line, tol: float = LINE_EQUALITY_TOL) -> bool:
    """Lines are equal iff their quantum angle is below ``tol`` (default 1e-9)."""
    return quantum_angle(u, v) < tol


def orthonormal_complement(vectors: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis (rows) of the Hermitian orthogonal complement of the row span.

    Rows h of the result satisfy <v, h> = sum(conj(v_i) h_i) = 0 for every
    input row v.  Deterministic: computed from the right singular vectors.
    """
    mat = np.atleast_2d(np.asarray(vectors, dtype=complex))
    if mat.shape[1] != dim:
        raise DimensionError(f"vectors have length {mat.shape[1]}, expected {dim}")
    _, s, vh = np.linalg.svd(mat.conj(), full_matrices=True)
    rank = int(np.sum(s > 1e-10))
    return vh[rank:].conj()


@dataclass(frozen=True)
class PairCanonicalForm:
    """Orthonormal pair (e1, e2) and weights c >= d > 0 with c^2 + d^2 = 1.

    Encodes two distinct lines as [v1] = [c e1 + i d eh2] and
    [v2] = [c e1 - i d eh2], where eh2 = e2_phase * e2.  Both basis lines are
    stored in canonical gauge, which cannot in general coexist with the exact
    synthesis relation, so the leftover unimodular factor on e2 is kept
    explicitly.
    """

    e1: Line
    e2: Line
    c: float
    d: float
    e2_phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        if abs(inner(self.e1, self.e2)) > 1e-10:
            raise ParameterError("e1, e2 not orthogonal")
        if not (self.c >= self.d > 0):
            raise ParameterError(f"need c >= d > 0, got c={self.c}, d={self.d}")
        if abs(self.c**2 + self.d**2 - 1.0) > NORM_TOL:
            raise ParameterError("c^2 + d^2 != 1")
        if abs(abs(self.e2_phase) - 1.0) > NORM_TOL:
            raise ParameterError("e2_phase must be unimodular")

    @property
    def e2_vector(self) -> np.ndarray:
        """The phase-corrected second basis vector used by the synthesis relation."""
        return self.e2_phase * self.e2.amplitudes

    def synthesize(self) -> tuple[Line, Line]:
        """The two lines [c e1 + i d eh2], [c e1 - i d eh2] encoded by this form."""
        base = self.c * self.e1.amplitudes
        off = 1j * self.d * self.e2_vector
        return canonical_line(base + off), canonical_line(base - off)


@dataclass(frozen=True)
class TripleCanonicalForm:
    """Canonical form of a collinear triple: [v_j] = [c e1 + lambda_j d e2]."""

    e1: Line
    e2: Line
    c: float
    d: float
    lambdas: tuple[complex, complex, complex]

    def __post_init__(self):
        if abs(inner(self.e1, self.e2)) > 1e-10:
            raise ParameterError("e1, e2 not orthogonal")
        if not (self.c >= self.d > 0):
            raise ParameterError(f"need c >= d > 0, got c={self.c}, d={self.d}")
        if abs(self.c**2 + self.d**2 - 1.0) > NORM_TOL:
            raise ParameterError("c^2 + d^2 != 1")
        for lam in self.lambdas:
            if abs(abs(lam) - 1.0) > NORM_TOL:
                raise ParameterError(f"lambda {lam} not unimodular")

    def synthesize(self) -> tuple[Line, Line, Line]:
        base = self.c * self.e1.amplitudes
        return tuple(
            canonical_line(base + lam * self.d * self.e2.amplitudes) for lam in self.lambdas
        )


def canonical_pair_form(v1: Line, v2: Line) -> PairCanonicalForm:
    """Canonical form of two distinct lines.

    Aligns phases so that <v1, v2> >= 0, then splits along the orthogonal
    directions v1 + v2 and v1 - v2.  Orthogonal inputs are allowed and give
    c = d = 1/sqrt(2); coincident inputs raise DegeneratePairError.
    """
    if v1.dim != v2.dim:
        raise DimensionError(f"dims {v1.dim} and {v2.dim} differ")
    if lines_equal(v1, v2):
        raise DegeneratePairError("v1 and v2 coincide as lines")
    a1 = v1.amplitudes
    z = np.vdot(a1, v2.amplitudes)
    a2 = v2.amplitudes * (z.conjugate() / abs(z)) if abs(z) > 0 else v2.amplitudes

    s = a1 + a2
    t = a1 - a2
    c = float(np.linalg.norm(s) / 2.0)
    d = float(np.linalg.norm(t) / 2.0)
    e1v = s / (2.0 * c)
    e2v = t / (2.0j * d)
    # One Gram-Schmidt pass keeps orthogonality tight for nearly coincident pairs.
    e2v = e2v - np.vdot(e1v, e2v) * e1v
    e2v = e2v / np.linalg.norm(e2v)

    e1 = canonical_line(e1v)
    e2 = canonical_line(e2v)
    # Phase making v1 = c e1 + i d (phase * e2) exact after the gauge fixing.
    p = np.vdot(e1.amplitudes, a1)
    q = np.vdot(e2.amplitudes, a1)
    phase = -1j * q * p.conjugate() / (c * d)
    phase /= abs(phase)
    return PairCanonicalForm(e1, e2, c, d, complex(phase))


def is_collinear(v1: Line, v2: Line, v3: Line) -> bool:
    """True iff the three lines span a subspace of dimension at most two.

    Decided by the third singular value of the stacked representatives
    (threshold 1e-9).
    """
    if not (v1.dim == v2.dim == v3.dim):
        raise DimensionError("lines live in different dimensions")
    mat = np.vstack([v1.amplitudes, v2.amplitudes, v3.amplitudes])
    s = np.linalg.svd(mat, compute_uv=False)
    return bool(s[2] < COLLINEARITY_TOL)


def _first_root_bisection(h, lo: float, hi: float, grid: int = 64, tol: float = 1e-12) -> float:
    """Leftmost root of a continuous scalar function on [lo, hi] via grid + bisection."""
    ts = np.linspace(lo, hi, grid + 1)
    vals = np.array([h(t) for t in ts])
    if np.max(np.abs(vals)) < 1e-15:
        return lo
    if abs(vals[0]) < 1e-15:
        return float(ts[0])
    idx = None
    for i in range(grid):
        if abs(vals[i + 1]) < 1e-15:
            return float(ts[i + 1])
        if vals[i] * vals[i + 1] < 0:
            idx = i
            break
    if idx is None:
        raise ParameterError("no sign change found for bisection")
    a, b = float(ts[idx]), float(ts[idx + 1])
    fa = vals[idx]
    while b - a > tol:
        mid = 0.5 * (a + b)
        fm = h(mid)
        if fm == 0.0:
            return mid
        if fa * fm < 0:
            b = mid
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def canonical_triple_form(v1: Line, v2: Line, v3: Line) -> TripleCanonicalForm:
    """Canonical form of three pairwise distinct collinear lines.

    Builds the pair form of (v1, v2), rotates the resulting basis by the
    smallest angle t that equalizes all three overlap moduli (found by
    bisection to 1e-12), and reads off c >= d > 0 together with the three
    unimodular factors.  When c and d tie, the basis produced by the
    construction is kept unchanged.
    """
    if not is_collinear(v1, v2, v3):
        raise NotCollinearError("input lines are not collinear")
    for x, y in ((v1, v2), (v1, v3), (v2, v3)):
        if lines_equal(x, y):
            raise DegenerateTripleError("two of the three lines coincide")

    pair = canonical_pair_form(v1, v2)
    # The phase-corrected basis is what makes |<v1, e(t)>| = |<v2, e(t)>| hold
    # for every rotation angle t.
    f1, f2 = pair.e1.amplitudes, pair.e2_vector

    # v3 lies in span{f1, f2} up to the collinearity tolerance; project it in.
    p3 = np.vdot(f1, v3.amplitudes)
    q3 = np.vdot(f2, v3.amplitudes)
    w3 = p3 * f1 + q3 * f2
    w3 = w3 / np.linalg.norm(w3)
    p3 = np.vdot(f1, w3)
    q3 = np.vdot(f2, w3)

    cf, df = pair.c, pair.d

    def h(t: float) -> float:
        ov = abs(p3.conjugate() * np.cos(t) + q3.conjugate() * np.sin(t)) ** 2
        return float(ov - (cf**2 * np.cos(t) ** 2 + df**2 * np.sin(t) ** 2))

    t = _first_root_bisection(h, 0.0, np.pi / 2, tol=1e-14)
    e1 = canonical_line(np.cos(t) * f1 + np.sin(t) * f2)
    e2 = canonical_line(-np.sin(t) * f1 + np.cos(t) * f2)

    # Expansion against the gauge-fixed basis; the unimodular factors absorb
    # all leftover phases, so [v_j] = [c e1 + lambda_j d e2] holds exactly.
    reps = [v1.amplitudes, v2.amplitudes, w3]
    ps = [np.vdot(e1.amplitudes, r) for r in reps]
    qs = [np.vdot(e2.amplitudes, r) for r in reps]
    c = float(np.mean([abs(p) for p in ps]))
    d = float(np.mean([abs(q) for q in qs]))
    if c < d:
        e1, e2 = e2, e1
        ps, qs = qs, ps
        c, d = d, c
    if d <= 1e-12:
        raise DegenerateTripleError("triple degenerates to a single line")
    lambdas = tuple(
        complex((q / abs(q)) * (p.conjugate() / abs(p))) for p, q in zip(ps, qs)
    )
    return TripleCanonicalForm(e1, e2, c, d, lambdas)
