"""Execution model for measurement-based computation with Z_d-linear control.

A plan fixes the dimension d, n classical inputs, N parties (each a fiducial
Weyl observable plus a Clifford control), the setting matrix Q, the temporal
matrix T (strictly lower triangular; zero means temporally flat), an optional
setting offset q0, and the linear post-processing row z with constant s0.

Settings follow q = T*m + Q*i + q0 mod d and the output is o = z*m + s0.
Plans are immutable after load; runs are pure given a seed, so enumeration
over inputs can be parallelized freely.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PlanFormatError, QuditMbqcError
from .fields import MultiPoly, interpolate, is_prime, make_field
from .phases import tau_exponent_of_omega, tau_period
from .states import (
    GlobalObservable,
    MonomialOp,
    SparseState,
    eigenphase_of,
    measure_local,
    measurement_distribution,
)
from .weyl import CliffordSpec, WeylLabel, conjugate_weyl, weyl_power

EXACT_BRANCH_BUDGET = 20000  # leaves before falling back to sampling


class TableResource:
    """Abstract correlated resource: settings vector -> outcome distribution.

    Distributions are lists of (outcome-vector, probability) with exact
    rational weights summing to 1.  No-signalling is not enforced.
    """

    def __init__(self, N: int, behavior: dict[tuple[int, ...], list[tuple[tuple[int, ...], Fraction]]]):
        self.N = N
        self.behavior = {}
        for q, dist in behavior.items():
            total = sum(p for _, p in dist)
            if total != 1:
                raise QuditMbqcError(f"distribution for settings {q} sums to {total}")
            self.behavior[tuple(q)] = [(tuple(m), Fraction(p)) for m, p in dist]

    @classmethod
    def deterministic(cls, N: int, mapping: dict[tuple[int, ...], tuple[int, ...]]) -> "TableResource":
        return cls(N, {q: [(m, Fraction(1))] for q, m in mapping.items()})

    def is_point(self) -> bool:
        return all(len(dist) == 1 for dist in self.behavior.values())

    def distribution(self, q: tuple[int, ...]) -> list[tuple[tuple[int, ...], Fraction]]:
        if q not in self.behavior:
            raise QuditMbqcError(f"table resource has no entry for settings {q}")
        return self.behavior[q]

    def to_json(self) -> dict:
        return {
            "kind": "table",
            "N": self.N,
            "entries": [
                {
                    "q": list(q),
                    "dist": [
                        {"m": list(m), "num": p.numerator, "den": p.denominator}
                        for m, p in dist
                    ],
                }
                for q, dist in sorted(self.behavior.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TableResource":
        behavior = {}
        for entry in obj["entries"]:
            behavior[tuple(entry["q"])] = [
                (tuple(rec["m"]), Fraction(rec["num"], rec["den"])) for rec in entry["dist"]
            ]
        return cls(obj["N"], behavior)

    def __eq__(self, other):
        return isinstance(other, TableResource) and self.behavior == other.behavior

    def __hash__(self):
        return hash(tuple(sorted((q, tuple(d)) for q, d in self.behavior.items())))


@dataclass(frozen=True)
class RunTrace:
    """One execution: input, settings, outcomes, and the linear output."""

    input: tuple[int, ...]
    settings: tuple[int, ...]
    outcomes: tuple[int, ...]
    output: int


class MbqcPlan:
    """Immutable description of one computation instance."""

    def __init__(self, d, n, N, resource, parties, Q, T, z, s0, q0=None):
        self.d = d
        self.n = n
        self.N = N
        self.resource = resource
        self.parties = tuple((fid, ctrl) for fid, ctrl in parties)
        self.Q = tuple(tuple(v % d for v in row) for row in Q)
        self.T = tuple(tuple(v % d for v in row) for row in T)
        self.z = tuple(v % d for v in z)
        self.s0 = s0 % d
        self.q0 = tuple((v % d for v in q0)) if q0 is not None else (0,) * N
        self._validate()

    def _validate(self):
        if isinstance(self.resource, SparseState):
            if self.resource.d != self.d or self.resource.N != self.N:
                raise QuditMbqcError("resource state shape does not match the plan")
        elif isinstance(self.resource, TableResource):
            if self.resource.N != self.N:
                raise QuditMbqcError("table resource party count does not match")
        else:
            raise QuditMbqcError(f"unsupported resource {type(self.resource).__name__}")
        if len(self.parties) != self.N:
            raise QuditMbqcError(f"expected {self.N} parties, got {len(self.parties)}")
        for fid, ctrl in self.parties:
            if fid.d != self.d or ctrl.d != self.d:
                raise QuditMbqcError("party dimension does not match the plan")
        if len(self.Q) != self.N or any(len(r) != self.n for r in self.Q):
            raise QuditMbqcError(f"Q must be {self.N}x{self.n}")
        if len(self.T) != self.N or any(len(r) != self.N for r in self.T):
            raise QuditMbqcError(f"T must be {self.N}x{self.N}")
        for k, row in enumerate(self.T):
            if any(row[j] != 0 for j in range(k, self.N)):
                raise QuditMbqcError("T must be strictly lower triangular")
        if len(self.z) != self.N or len(self.q0) != self.N:
            raise QuditMbqcError("z and q0 must have one entry per party")

    @property
    def temporally_flat(self) -> bool:
        return all(v == 0 for row in self.T for v in row)

    def inputs(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.d), repeat=self.n))

    def setting(self, k: int, i: tuple[int, ...], outcomes: tuple[int, ...]) -> int:
        acc = self.q0[k]
        acc += sum(self.Q[k][j] * i[j] for j in range(self.n))
        acc += sum(self.T[k][j] * outcomes[j] for j in range(min(k, len(outcomes))))
        return acc % self.d

    def site_observable(self, k: int, q_k: int) -> MonomialOp:
        """M_k(q_k) = U_k^{q_k} M_k(0) U_k^{-q_k}, exact monomial form."""
        fid, ctrl = self.parties[k]
        phase, label = conjugate_weyl(ctrl, fid.v, q_k)
        tau = (fid.tau_exp + tau_exponent_of_omega(phase, self.d)) % tau_period(self.d)
        return MonomialOp.from_weyl(self.d, label, tau)

    def output_of(self, outcomes: tuple[int, ...]) -> int:
        return (sum(zk * mk for zk, mk in zip(self.z, outcomes)) + self.s0) % self.d

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        obj = {
            "d": self.d,
            "n": self.n,
            "N": self.N,
            "resource": self.resource.to_json(),
            "parties": [
                {"fiducial": fid.to_json(), "control": ctrl.to_json()}
                for fid, ctrl in self.parties
            ],
            "Q": [list(r) for r in self.Q],
            "T": [list(r) for r in self.T],
            "z": list(self.z),
            "s0": self.s0,
        }
        if any(self.q0):
            obj["q0"] = list(self.q0)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "MbqcPlan":
        try:
            d = obj["d"]
            res = obj["resource"]
            if res.get("kind") == "table":
                resource = TableResource.from_json(res)
            else:
                resource = SparseState.from_json(res)
            parties = [
                (WeylLabel.from_json(d, p["fiducial"]), CliffordSpec.from_json(d, p["control"]))
                for p in obj["parties"]
            ]
            return cls(d, obj["n"], obj["N"], resource, parties,
                       obj["Q"], obj["T"], obj["z"], obj["s0"], obj.get("q0"))
        except (KeyError, TypeError, IndexError) as exc:
            raise PlanFormatError(f"malformed plan: missing or bad field {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":")) + "\n"

    @classmethod
    def loads(cls, text: str) -> "MbqcPlan":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise PlanFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise PlanFormatError("plan file must contain a JSON object")
        return cls.from_json(obj)

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path) -> "MbqcPlan":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read())

    def __eq__(self, other):
        return isinstance(other, MbqcPlan) and self.to_json() == other.to_json()


def simulation_support_bound(plan: MbqcPlan) -> int:
    """Worst-case sparse-term count across a full measurement sequence.

    Each site measurement can grow the support by at most the orbit length
    of its observable's shift part (1 for diagonal observables); the worst
    setting is taken per site.  Sequential simulation is affordable iff
    this bound is small; analytic extraction never depends on it.
    """
    if isinstance(plan.resource, TableResource):
        return 1
    d = plan.d
    bound = len(plan.resource.terms)
    for k in range(plan.N):
        worst = 1
        for q in range(d):
            b = plan.site_observable(k, q).perm[0] % d  # image of |0>: shift amount
            worst = max(worst, d // math.gcd(b, d) if b else 1)
        bound *= worst
        if bound > 10**9:
            break
    return bound


def run(plan: MbqcPlan, i, seed=None) -> RunTrace:
    """Execute one seeded run, measuring parties in index order."""
    i = tuple(v % plan.d for v in i)
    if len(i) != plan.n:
        raise QuditMbqcError(f"input needs {plan.n} symbols, got {len(i)}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    outcomes: list[int] = []
    settings: list[int] = []
    if isinstance(plan.resource, TableResource):
        if not plan.temporally_flat:
            raise QuditMbqcError("table resources support temporally flat plans only")
        q = tuple(plan.setting(k, i, ()) for k in range(plan.N))
        dist = plan.resource.distribution(q)
        m = _sample(dist, rng)
        settings, outcomes = list(q), list(m)
    else:
        psi = plan.resource
        for k in range(plan.N):
            q_k = plan.setting(k, i, tuple(outcomes))
            settings.append(q_k)
            op = plan.site_observable(k, q_k)
            m_k, psi = measure_local(psi, k, op, rng)
            outcomes.append(m_k)
    return RunTrace(i, tuple(settings), tuple(outcomes), plan.output_of(tuple(outcomes)))


def _sample(dist, rng: random.Random):
    den = 1
    for _, p in dist:
        den = den * p.denominator // math.gcd(den, p.denominator)
    draw = rng.randrange(den)
    acc = 0
    for m, p in dist:
        acc += p.numerator * (den // p.denominator)
        if draw < acc:
            return m
    raise AssertionError("sampling fell through")


def weighted_observable(plan: MbqcPlan, i) -> GlobalObservable:
    """Tensor product of M_k(q_k)**z_k; its eigenphase is z*m (mod d)."""
    d = plan.d
    sites = []
    for k in range(plan.N):
        q_k = plan.setting(k, i, ())
        fid, ctrl = plan.parties[k]
        phase, label = conjugate_weyl(ctrl, fid.v, q_k)
        tau = (fid.tau_exp + tau_exponent_of_omega(phase, d)) % tau_period(d)
        tau_p, label_p = weyl_power(tau, label, plan.z[k], d)
        sites.append(MonomialOp.from_weyl(d, label_p, tau_p))
    return GlobalObservable(d, sites)


def extract_output_function(plan: MbqcPlan) -> tuple[dict, MultiPoly | None]:
    """Analytic output table over all d^n inputs, plus its interpolation
    when d is prime.

    Requires a temporally flat, deterministic plan; the resource must be an
    eigenstate of every weighted global observable.
    """
    if not plan.temporally_flat:
        raise QuditMbqcError("analytic extraction needs a temporally flat plan")
    table: dict[tuple[int, ...], int] = {}
    for i in plan.inputs():
        if isinstance(plan.resource, TableResource):
            dist = _table_output_distribution(plan, i)
            if len(dist) != 1:
                raise QuditMbqcError(
                    "plan is not deterministic; use empirical_success instead"
                )
            table[i] = next(iter(dist))
        else:
            o = eigenphase_of(weighted_observable(plan, i), plan.resource)
            if o is None:
                raise QuditMbqcError(
                    "plan is not deterministic; use empirical_success instead"
                )
            table[i] = (o + plan.s0) % plan.d
    poly = None
    if is_prime(plan.d):
        poly = interpolate(make_field(plan.d), table)
    return table, poly


def _table_output_distribution(plan: MbqcPlan, i) -> dict[int, Fraction]:
    q = tuple(plan.setting(k, i, ()) for k in range(plan.N))
    out: dict[int, Fraction] = {}
    for m, p in plan.resource.distribution(q):
        o = plan.output_of(m)
        out[o] = out.get(o, Fraction(0)) + p
    return {o: p for o, p in out.items() if p}


def output_distribution(plan: MbqcPlan, i, budget: int = EXACT_BRANCH_BUDGET) -> dict[int, Fraction]:
    """Exact distribution of the output for one input, if affordable.

    Walks the adaptive measurement tree with exact branch probabilities.
    Raises QuditMbqcError when the branch budget is exhausted.
    """
    i = tuple(v % plan.d for v in i)
    if isinstance(plan.resource, TableResource):
        if not plan.temporally_flat:
            raise QuditMbqcError("table resources support temporally flat plans only")
        return _table_output_distribution(plan, i)
    counter = [0]
    out: dict[int, Fraction] = {}

    def walk(k, psi, outcomes, prob):
        counter[0] += 1
        if counter[0] > budget:
            raise QuditMbqcError("branch budget exhausted; use sampled estimates")
        if k == plan.N:
            o = plan.output_of(tuple(outcomes))
            out[o] = out.get(o, Fraction(0)) + prob
            return
        q_k = plan.setting(k, i, tuple(outcomes))
        op = plan.site_observable(k, q_k)
        for m_k, p, post in measurement_distribution(psi, k, op):
            walk(k + 1, post, outcomes + [m_k], prob * p)

    walk(0, plan.resource, [], Fraction(1))
    return out


def is_deterministic(plan: MbqcPlan, seeds=None) -> bool:
    """Whether the output is input-determined, independent of outcomes.

    Flat quantum plans are checked analytically (the weighted global
    observable must stabilize the resource up to an omega power for every
    input).  Table resources are checked exactly; temporally ordered
    quantum plans fall back to seeded sampling.
    """
    if isinstance(plan.resource, TableResource):
        return all(len(_table_output_distribution(plan, i)) == 1 for i in plan.inputs())
    if plan.temporally_flat:
        return all(
            eigenphase_of(weighted_observable(plan, i), plan.resource) is not None
            for i in plan.inputs()
        )
    seeds = seeds if seeds is not None else range(8)
    for i in plan.inputs():
        outputs = {run(plan, i, seed).output for seed in seeds}
        if len(outputs) > 1:
            return False
    return True


def temporal_graph(plan: MbqcPlan) -> dict[int, list[int]]:
    """Dependency DAG: edge j -> k whenever party k's setting reads m_j."""
    adj: dict[int, list[int]] = {k: [] for k in range(plan.N)}
    for k in range(plan.N):
        for j in range(plan.N):
            if plan.T[k][j] != 0:
                adj[j].append(k)
    return adj


def longest_path(adj: dict[int, list[int]]) -> int:
    """Longest directed path, counted in vertices; 1 for an edgeless graph."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in adj}
    depth: dict[int, int] = {}

    def visit(v):
        if color[v] == GRAY:
            raise QuditMbqcError("temporal graph has a cycle")
        if color[v] == BLACK:
            return depth[v]
        color[v] = GRAY
        best = 1
        for w in adj[v]:
            best = max(best, 1 + visit(w))
        color[v] = BLACK
        depth[v] = best
        return best

    return max((visit(v) for v in adj), default=1)


def empirical_success(plan: MbqcPlan, target: dict, trials: int = 1000,
                      seed=0) -> tuple[Fraction, Fraction]:
    """(worst-case, average) probability of matching the target table.

    Deterministic flat plans are scored analytically; otherwise the exact
    per-input output distribution is used when affordable, with seeded
    Monte-Carlo sampling as the fallback.  Plans whose measurement
    sequences are too entangled for either path raise rather than grind.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    per_input: list[Fraction] = []
    rng = random.Random(seed)
    heavy = (isinstance(plan.resource, SparseState)
             and simulation_support_bound(plan) > EXACT_BRANCH_BUDGET)
    if heavy:
        if not (plan.temporally_flat and is_deterministic(plan)):
            raise QuditMbqcError(
                "measurement support too large for sampling; no exact path applies"
            )
        table, _ = extract_output_function(plan)
        per_input = [
            Fraction(1 if table[i] == target[i] % plan.d else 0)
            for i in plan.inputs()
        ]
    else:
        for i in plan.inputs():
            want = target[tuple(i)] % plan.d
            try:
                dist = output_distribution(plan, i)
                per_input.append(dist.get(want, Fraction(0)))
            except QuditMbqcError:
                hits = sum(1 for _ in range(trials) if run(plan, i, rng).output == want)
                per_input.append(Fraction(hits, trials))
    p_min = min(per_input)
    p_avg = sum(per_input, Fraction(0)) / len(per_input)
    return p_min, p_avg
