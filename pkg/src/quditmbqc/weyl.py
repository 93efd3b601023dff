"""Symplectic Weyl/Clifford algebra over Z_d at the label level.

Single-site Weyl operators W_(a,b) = tau^(-ab) Z^a X^b are tracked as label
pairs (a, b) in Z_d^2 with a tau-exponent prefactor.  Vector convention is
(Z-part, X-part) with symplectic form [[0,1],[-1,0]], fixed project-wide.

Conjugation by Clifford control unitaries is computed exactly, including the
label-wraparound phase corrections that appear for even d, so the returned
phase always matches an explicit matrix conjugation.  For odd d these
corrections vanish and the accumulated-phase formula
sum_k [x, C^k v] is used directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import QuditMbqcError
from .phases import omega_exponent, tau_period


def symplectic_product(v: tuple[int, int], w: tuple[int, int], d: int) -> int:
    """[v, w] = v^T sigma w mod d with sigma = [[0,1],[-1,0]]."""
    return (v[0] * w[1] - v[1] * w[0]) % d


def check_symplectic(C, d: int) -> bool:
    """True iff C^T sigma C == sigma mod d (2x2 case: det C == 1)."""
    (a, b), (c, e) = C
    return (a * e - b * c) % d == 1 % d


def reduce_label(a: int, b: int, d: int) -> tuple[int, int, int]:
    """Reduce an integer label mod d; returns (a', b', tau_correction).

    W_(a,b) = tau^corr * W_(a', b').  corr is a multiple of d, hence an
    omega power; it vanishes identically for odd d.
    """
    ar, br = a % d, b % d
    corr = (a * b - ar * br) % tau_period(d)
    return ar, br, corr


def weyl_product(t1: int, v1: tuple[int, int], t2: int, v2: tuple[int, int], d: int) -> tuple[int, tuple[int, int]]:
    """(tau^t1 W_v1)(tau^t2 W_v2) as (tau_exp, label)."""
    cross = v1[0] * v2[1] - v1[1] * v2[0]
    a, b, corr = reduce_label(v1[0] + v2[0], v1[1] + v2[1], d)
    t = (t1 + t2 + cross + corr) % tau_period(d)
    return t, (a, b)


def weyl_power(t: int, v: tuple[int, int], e: int, d: int) -> tuple[int, tuple[int, int]]:
    """(tau^t W_v)^e for e >= 0 as (tau_exp, label)."""
    if e < 0:
        raise ValueError("exponent must be non-negative")
    a, b, corr = reduce_label(e * v[0], e * v[1], d)
    return (e * t + corr) % tau_period(d), (a, b)


@dataclass(frozen=True)
class WeylLabel:
    """A Weyl operator label with tau-power prefactor."""

    d: int
    v: tuple[int, int]
    tau_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "v", (self.v[0] % self.d, self.v[1] % self.d))
        object.__setattr__(self, "tau_exp", self.tau_exp % tau_period(self.d))

    def to_json(self) -> dict:
        return {"v": list(self.v), "tau_exp": self.tau_exp}

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "WeylLabel":
        return cls(d, tuple(obj["v"]), obj.get("tau_exp", 0))


def commutation_phase(v: WeylLabel, w: WeylLabel) -> int:
    """Exponent k with W_v W_w = omega^k W_w W_v."""
    if v.d != w.d:
        raise QuditMbqcError(f"dimension mismatch: {v.d} != {w.d}")
    return symplectic_product(v.v, w.v, v.d)


@dataclass(frozen=True)
class CliffordSpec:
    """Single-site Clifford control V = U W_x up to a tau-power.

    C is the 2x2 symplectic action of the symplectic part U, x the
    displacement, tau_exp a global phase exponent (irrelevant under
    conjugation, kept for serialization fidelity).
    """

    d: int
    C: tuple[tuple[int, int], tuple[int, int]]
    x: tuple[int, int] = (0, 0)
    tau_exp: int = 0
    name: str | None = field(default=None, compare=False)
    u: int | None = field(default=None, compare=False)

    def __post_init__(self):
        d = self.d
        C = tuple(tuple(c % d for c in row) for row in self.C)
        if not check_symplectic(C, d):
            raise QuditMbqcError(f"matrix {C} is not symplectic mod {d}")
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "x", (self.x[0] % d, self.x[1] % d))
        object.__setattr__(self, "tau_exp", self.tau_exp % tau_period(d))

    def apply_C(self, v: tuple[int, int]) -> tuple[int, int]:
        (a, b), (c, e) = self.C
        return ((a * v[0] + b * v[1]) % self.d, (c * v[0] + e * v[1]) % self.d)

    def monomial_factors(self) -> tuple[int, int] | None:
        """Factor C = C_{M_s} C_{S^m} when C is upper triangular.

        Returns (s, m) or None.  Upper-triangular symplectic actions are
        exactly the ones realizable by monomial (generalized-permutation)
        unitaries, which covers every control used in this package.
        """
        (p, q), (c, s) = self.C
        if c != 0:
            return None
        if math.gcd(s, self.d) != 1:
            return None
        return s, (s * q) % self.d

    def to_json(self) -> dict:
        if self.name == "S":
            return {"named": "S"}
        if self.name == "Mu":
            return {"named": "Mu", "u": self.u}
        return {"C": [list(r) for r in self.C], "x": list(self.x), "tau_exp": self.tau_exp}

    @classmethod
    def from_json(cls, d: int, obj: dict) -> "CliffordSpec":
        if "named" in obj:
            if obj["named"] == "S":
                return named_clifford(d, "S")
            if obj["named"] == "Mu":
                return named_clifford(d, "Mu", u=obj["u"])
            raise QuditMbqcError(f"unknown named control {obj['named']!r}")
        return cls(d, tuple(tuple(r) for r in obj["C"]), tuple(obj.get("x", (0, 0))),
                   obj.get("tau_exp", 0))


def named_clifford(d: int, name: str, u: int | None = None,
                   x: tuple[int, int] | None = None) -> CliffordSpec:
    """Construct S, M_u, or a pure Weyl displacement.

    S acts on labels as [[1,1],[0,1]] (X goes to ZX up to phase); M_u as
    diag(u^-1, u); a displacement has identity symplectic part.
    """
    if name == "S":
        return CliffordSpec(d, ((1, 1), (0, 1)), name="S")
    if name == "Mu":
        if u is None or math.gcd(u % d, d) != 1:
            raise QuditMbqcError(f"u={u} is not a unit mod {d}")
        uinv = pow(u % d, -1, d)
        return CliffordSpec(d, ((uinv, 0), (0, u % d)), name="Mu", u=u % d)
    if name == "weyl-displacement":
        if x is None:
            raise QuditMbqcError("displacement needs x")
        return CliffordSpec(d, ((1, 0), (0, 1)), x=x)
    raise QuditMbqcError(f"unknown Clifford name {name!r}")


def conjugate_weyl(spec: CliffordSpec, v: tuple[int, int], f: int) -> tuple[int, tuple[int, int]]:
    """Exact conjugation V^f W_v V^-f = omega^phase W_label.

    The phase is state-independent and always an omega power.  Requires a
    monomial-class (upper-triangular) symplectic part for even d; for odd d
    any symplectic matrix is accepted via the accumulated-product formula.
    """
    if f < 0:
        raise ValueError("f must be non-negative")
    d = spec.d
    factors = spec.monomial_factors()
    if factors is not None:
        s, m = factors
        sinv = pow(s, -1, d)
        period = tau_period(d)
        phase = 0
        a, b = v[0] % d, v[1] % d
        for _ in range(f):
            phase = (phase + symplectic_product(spec.x, (a, b), d)) % d
            a2, b2, corr = reduce_label(a + m * b, b, d)
            phase = (phase + omega_exponent(corr, d)) % d
            A, B = (sinv * a2) % d, (s * b2) % d
            corr2 = (a2 * b2 - A * B) % period
            phase = (phase + omega_exponent(corr2, d)) % d
            a, b = A, B
        return phase, (a, b)
    if d % 2 == 1:
        phase = 0
        w = (v[0] % d, v[1] % d)
        for _ in range(f):
            phase = (phase + symplectic_product(spec.x, w, d)) % d
            w = spec.apply_C(w)
        return phase, w
    raise QuditMbqcError(
        "even-d conjugation needs an upper-triangular (monomial) symplectic part"
    )
