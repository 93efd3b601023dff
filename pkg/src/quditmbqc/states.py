"""Exact N-qudit state simulation.

Two backends: a sparse superposition-of-basis-terms representation whose
amplitudes are a common positive normalization times a tau-power (exact,
covers every resource state used here), and a dense complex backend used as
a tolerance-based cross-check oracle.

States are immutable; all operations return new states.  Measurement takes
an explicit seed or Random instance, so runs are reproducible and safe to
parallelize across inputs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InconsistencyError, QuditMbqcError, SizeGuardError, SparseFormError
from .phases import PhaseSum, omega_exponent, tau_period, tau_value
from .weyl import CliffordSpec

DENSE_GUARD = 10**6  # maximum d**N amplitudes for the dense backend


@dataclass(frozen=True)
class MonomialOp:
    """A d x d generalized-permutation operator with tau-power entries.

    op|z> = tau^phases[z] |perm[z]>.  Closed under products and powers, so
    every Weyl operator and every control unitary used here stays exact.
    """

    d: int
    perm: tuple[int, ...]
    phases: tuple[int, ...]

    @classmethod
    def identity(cls, d: int) -> "MonomialOp":
        return cls(d, tuple(range(d)), (0,) * d)

    @classmethod
    def from_weyl(cls, d: int, v: tuple[int, int], tau_exp: int = 0) -> "MonomialOp":
        # the label is read by its canonical representative; callers tracking
        # wraparound phases must reduce_label first
        a, b = v[0] % d, v[1] % d
        period = tau_period(d)
        perm = tuple((z + b) % d for z in range(d))
        phases = tuple((tau_exp + a * b + 2 * a * z) % period for z in range(d))
        return cls(d, perm, phases)

    def compose(self, other: "MonomialOp") -> "MonomialOp":
        """self applied after other (matrix product self @ other)."""
        period = tau_period(self.d)
        perm = tuple(self.perm[other.perm[z]] for z in range(self.d))
        phases = tuple(
            (other.phases[z] + self.phases[other.perm[z]]) % period for z in range(self.d)
        )
        return MonomialOp(self.d, perm, phases)

    def power(self, e: int) -> "MonomialOp":
        out = MonomialOp.identity(self.d)
        for _ in range(e):
            out = out.compose(self)
        return out

    def scaled(self, tau_exp: int) -> "MonomialOp":
        period = tau_period(self.d)
        return MonomialOp(self.d, self.perm, tuple((p + tau_exp) % period for p in self.phases))

    def has_omega_spectrum(self) -> bool:
        return self.power(self.d) == MonomialOp.identity(self.d)

    def to_dense(self) -> np.ndarray:
        tau = tau_value(self.d)
        out = np.zeros((self.d, self.d), dtype=complex)
        for z in range(self.d):
            out[self.perm[z], z] = tau ** self.phases[z]
        return out


def clifford_unitary(spec: CliffordSpec) -> MonomialOp:
    """Exact monomial materialization of a Clifford control V = U W_x.

    Only monomial-class (upper-triangular symplectic) controls are
    materializable; that covers S, M_u, displacements and their products.
    """
    d = spec.d
    factors = spec.monomial_factors()
    if factors is None:
        raise QuditMbqcError("control is not in the monomial class")
    s, m = factors
    period = tau_period(d)
    s_gate = MonomialOp(d, tuple(range(d)), tuple((z * z) % period for z in range(d)))
    m_gate = MonomialOp(d, tuple((s * z) % d for z in range(d)), (0,) * d)
    u_gate = m_gate.compose(s_gate.power(m)) if m else m_gate
    w_gate = MonomialOp.from_weyl(d, spec.x)
    return u_gate.compose(w_gate).scaled(spec.tau_exp)


class GlobalObservable:
    """Tensor product of per-site monomial measurements.

    Each site operator must have an omega-power spectrum (site_op**d is the
    identity), so measurement outcomes live in Z_d.
    """

    def __init__(self, d: int, sites: list[MonomialOp]):
        self.d = d
        self.sites = tuple(sites)
        for k, op in enumerate(self.sites):
            if op.d != d:
                raise QuditMbqcError(f"site {k} has dimension {op.d}, expected {d}")
            if not op.has_omega_spectrum():
                raise QuditMbqcError(f"site {k} operator spectrum is not omega powers")

    @classmethod
    def from_site_labels(cls, d: int, labels: list[tuple[int, tuple[int, int]]]) -> "GlobalObservable":
        """Build from per-site (tau_exp, weyl-label) pairs."""
        return cls(d, [MonomialOp.from_weyl(d, v, t) for t, v in labels])

    @property
    def N(self) -> int:
        return len(self.sites)


@dataclass(frozen=True)
class SparseState:
    """Uniform-amplitude state sum(tau^t_i |ket_i>)/sqrt(#terms).

    Kets are pairwise distinct and sorted.  The form is closed under every
    monomial observable, and under projective measurement up to one global
    phase per branch, which measurement drops as unobservable.
    """

    d: int
    N: int
    terms: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        period = tau_period(self.d)
        seen = [(t % period, tuple(k)) for t, k in self.terms]
        seen.sort(key=lambda item: item[1])
        kets = [k for _, k in seen]
        if len(set(kets)) != len(kets):
            raise QuditMbqcError("sparse terms must have pairwise distinct kets")
        for k in kets:
            if len(k) != self.N or any(not 0 <= z < self.d for z in k):
                raise QuditMbqcError(f"ket {k} out of range for d={self.d}, N={self.N}")
        object.__setattr__(self, "terms", tuple(seen))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "N": self.N,
            "terms": [{"tau_exp": t, "ket": list(k)} for t, k in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SparseState":
        return cls(obj["d"], obj["N"],
                   tuple((t["tau_exp"], tuple(t["ket"])) for t in obj["terms"]))

    def to_dense(self) -> np.ndarray:
        if self.d**self.N > DENSE_GUARD:
            raise SizeGuardError(f"dense state guard exceeded: {self.d}**{self.N}")
        tau = tau_value(self.d)
        vec = np.zeros(self.d**self.N, dtype=complex)
        for t, ket in self.terms:
            idx = 0
            for z in ket:
                idx = idx * self.d + z
            vec[idx] = tau**t
        return vec / np.sqrt(len(self.terms))


def basis_state(d: int, ket: tuple[int, ...]) -> SparseState:
    return SparseState(d, len(ket), ((0, tuple(ket)),))


def make_ghz(d: int, N: int, phases: list[int] | None = None,
             anders_browne: bool = False) -> SparseState:
    """Generalized GHZ state sum_z |z>^N / sqrt(d).

    With anders_browne=True (d=2, N=3 only) returns the signed state
    (|001> - |110>)/sqrt(2) used by the three-qubit NAND computation.
    Optional phases gives per-z tau exponents.
    """
    if anders_browne:
        if (d, N) != (2, 3):
            raise QuditMbqcError("the signed GHZ variant is the d=2, N=3 state")
        return SparseState(2, 3, ((0, (0, 0, 1)), (2, (1, 1, 0))))
    if phases is None:
        phases = [0] * d
    return SparseState(d, N, tuple((phases[z], (z,) * N) for z in range(d)))


def make_example2_state(d: int) -> SparseState:
    """The 2d-qudit state sum_z |z>^2 |z+1>^2 ... |z+d-1>^2 / sqrt(d)."""
    if d < 3 or d % 2 == 0:
        raise QuditMbqcError("this resource state needs odd d >= 3")
    terms = []
    for z in range(d):
        ket = tuple((z + t) % d for t in range(d) for _ in range(2))
        terms.append((0, ket))
    return SparseState(d, 2 * d, tuple(terms))


def apply_observable(M: GlobalObservable, psi: SparseState) -> SparseState:
    """Exact application; monomial sites keep term count and distinctness."""
    if M.N != psi.N or M.d != psi.d:
        raise QuditMbqcError("observable and state shapes differ")
    period = tau_period(psi.d)
    new_terms = []
    for t, ket in psi.terms:
        phase = t
        new_ket = []
        for z, op in zip(ket, M.sites):
            phase += op.phases[z]
            new_ket.append(op.perm[z])
        new_terms.append((phase % period, tuple(new_ket)))
    out = SparseState(psi.d, psi.N, tuple(new_terms))
    assert len(out.terms) == len(psi.terms)
    return out


def eigenphase_of(M: GlobalObservable, psi: SparseState) -> int | None:
    """o with M|psi> = omega^o |psi>, or None when psi is not an eigenstate.

    Raises PhaseDomainError when the eigenvalue is a tau-power that is not
    an omega-power (possible for even d only).
    """
    period = tau_period(psi.d)
    phi = apply_observable(M, psi)
    diffs = set()
    for (t1, k1), (t2, k2) in zip(psi.terms, phi.terms):
        if k1 != k2:
            return None
        diffs.add((t2 - t1) % period)
        if len(diffs) > 1:
            return None
    return omega_exponent(diffs.pop(), psi.d)


def dense_apply(M: GlobalObservable, vec: np.ndarray) -> np.ndarray:
    d, N = M.d, M.N
    tensor = vec.reshape((d,) * N)
    for site, op in enumerate(M.sites):
        tensor = np.moveaxis(np.tensordot(op.to_dense(), tensor, axes=([1], [site])), 0, site)
    return tensor.reshape(-1)


def dense_oracle(M: GlobalObservable, psi: SparseState, tolerance: float = 1e-9) -> int | None:
    """Brute-force eigenphase via dense complex arithmetic.

    Residual <= tolerance counts as an eigenstate and the phase is snapped
    to the nearest d-th root of unity; residuals between the tolerance and
    1e-6 raise an inconsistency alarm instead of silently rounding.
    """
    if psi.d**psi.N > DENSE_GUARD:
        raise SizeGuardError(f"dense guard exceeded: {psi.d}**{psi.N}")
    vec = psi.to_dense()
    out = dense_apply(M, vec)
    lam = np.vdot(vec, out)
    residual = np.max(np.abs(out - lam * vec))
    if residual > 1e-6:
        return None
    if residual > tolerance:
        raise InconsistencyError(f"ambiguous eigenstate residual {residual:.3e}")
    k = int(round(psi.d * np.angle(lam) / (2 * np.pi))) % psi.d
    snap = abs(lam - np.exp(2j * np.pi * k / psi.d))
    if snap > 1e-6:
        raise InconsistencyError(f"eigenvalue {lam} is {snap:.3e} from any d-th root of unity")
    return k


def measurement_distribution(psi: SparseState, site: int,
                             op: MonomialOp) -> list[tuple[int, Fraction, SparseState]]:
    """All (outcome, probability, post-state) branches with prob > 0.

    Projector amplitudes are accumulated as exact cyclotomic-integer phase
    sums, so probabilities are exact rationals and always sum to 1.  Each
    branch must stay a tau-power superposition up to one common unit (the
    physically irrelevant global phase, which is dropped); otherwise
    SparseFormError is raised.
    """
    d = psi.d
    if not op.has_omega_spectrum():
        raise QuditMbqcError("site operator spectrum is not omega powers")
    period = tau_period(d)
    powers = [MonomialOp.identity(d)]
    for _ in range(d - 1):
        powers.append(powers[-1].compose(op))
    K = len(psi.terms)
    out = []
    total = Fraction(0)
    for m in range(d):
        amps: dict[tuple[int, ...], PhaseSum] = {}
        for t, ket in psi.terms:
            z = ket[site]
            for j in range(d):
                new_ket = ket[:site] + (powers[j].perm[z],) + ket[site + 1:]
                amps.setdefault(new_ket, PhaseSum(d)).add_tau_power(
                    t + powers[j].phases[z] - 2 * m * j
                )
        survivors = [(ket, amps[ket]) for ket in sorted(amps) if not amps[ket].is_zero()]
        if not survivors:
            continue
        base = survivors[0][1]
        norm_sq = base.mul(base.conjugate()).as_rational_integer()
        if norm_sq is None or norm_sq <= 0:
            raise SparseFormError(
                "projection produced an amplitude with non-integral norm; "
                "state left the sparse form"
            )
        entries = []
        for ket, v in survivors:
            r = v.tau_ratio_to(base)
            if r is None:
                raise SparseFormError(
                    "projection produced non-uniform amplitudes; state left the sparse form"
                )
            entries.append((r % period, ket))
        prob = Fraction(len(entries) * norm_sq, d * d * K)
        total += prob
        out.append((m, prob, SparseState(d, psi.N, tuple(entries))))
    if total != 1:
        raise SparseFormError(f"branch probabilities sum to {total}, not 1")
    return out


def measure_local(psi: SparseState, site: int, op: MonomialOp,
                  rng: random.Random | int) -> tuple[int, SparseState]:
    """Projective measurement of a monomial site operator.

    Samples a branch of measurement_distribution with exact integer
    weights; deterministic under a fixed seed, and zero-probability
    outcomes are never returned.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    branches = measurement_distribution(psi, site, op)
    den = 1
    for _, prob, _ in branches:
        den = den * prob.denominator // math.gcd(den, prob.denominator)
    draw = rng.randrange(den)
    acc = 0
    for m, prob, post in branches:
        acc += prob.numerator * (den // prob.denominator)
        if draw < acc:
            return m, post
    raise AssertionError("sampling fell through")  # unreachable
