"""Contextuality and non-locality analysis.

Degree witnesses (an output monomial of combined degree >= d certifies
strong non-locality for field-sized alphabets), brute-force search for
local value assignments, the temporal-ordering degree bound, and the
probabilistic distance/threshold arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .engine import MbqcPlan, extract_output_function, longest_path, temporal_graph
from .errors import QuditMbqcError, SizeGuardError, UnsupportedWitnessError
from .fields import (
    MultiPoly,
    combined_degree,
    interpolate,
    is_polynomial_over_ring,
    is_prime,
    make_field,
    subspace_monomials,
)

STRONGLY_NONLOCAL = "strongly-nonlocal"
NCVA_FOUND = "ncva-found"
INCONCLUSIVE = "inconclusive"

NCVA_GUARD = 10_000  # bound on N * d**d
NCVA_NODE_BUDGET = 10**7
NU_GUARD = 10**5  # bound on the number of candidate polynomials


@dataclass(frozen=True)
class Witness:
    """Analysis verdict with its certificate.

    assignment: per-party outcome tables (one length-d tuple per party)
    when the verdict is ncva-found; monomial: the offending exponent tuple
    for a degree-based proof; searched: size of the exhausted assignment
    space for a search-based proof.
    """

    verdict: str
    assignment: tuple[tuple[int, ...], ...] | None = None
    monomial: tuple[int, ...] | None = None
    searched: int | None = None
    detail: str = ""

    def to_text(self) -> str:
        lines = [f"verdict: {self.verdict}"]
        if self.monomial is not None:
            mono = "*".join(
                f"x{j + 1}" + (f"^{a}" if a > 1 else "")
                for j, a in enumerate(self.monomial) if a
            )
            lines.append(f"certificate: monomial {mono} with combined degree {sum(self.monomial)}")
        if self.assignment is not None:
            for k, table in enumerate(self.assignment):
                lines.append(f"assignment party {k + 1}: {list(table)}")
        if self.searched is not None:
            lines.append(f"searched: {self.searched} assignments")
        if self.detail:
            lines.append(f"note: {self.detail}")
        return "\n".join(lines)


def degree_witness(o: MultiPoly) -> Witness:
    """Strong non-locality from the combined degree of the output polynomial.

    A monomial with exponent sum >= d proves strong non-locality; degree
    <= d-1 is inconclusive (it does not prove a local model exists).
    """
    d = o.modulus.d
    offenders = sorted(e for e in o.coeffs if sum(e) >= d)
    if offenders:
        return Witness(STRONGLY_NONLOCAL, monomial=offenders[-1],
                       detail=f"combined degree {combined_degree(o)} >= d = {d}")
    return Witness(INCONCLUSIVE,
                   detail=f"combined degree {combined_degree(o)} <= {d - 1}")


def degree_witness_for_table(table: dict, d: int) -> Witness:
    """Degree witness for a raw output table.

    Prime d interpolates directly.  Composite d is handled when the table
    is polynomial over Z_d (the degree argument still applies there);
    non-polynomial composite tables have no degree witness.
    """
    if is_prime(d):
        return degree_witness(interpolate(make_field(d), table))
    poly = is_polynomial_over_ring(table, d)
    if poly is None:
        raise UnsupportedWitnessError(
            f"table is not polynomial over Z_{d}; degree witness does not apply"
        )
    return degree_witness(poly)


def ncva_search(plan: MbqcPlan, target: dict | None = None) -> Witness:
    """Exhaustive search for local value assignments reproducing the output.

    Depth-first over per-party outcome tables with early constraint
    checking; deterministic order (parties ascending, settings ascending,
    outcomes ascending), so certificates are stable across runs.
    """
    if not plan.temporally_flat:
        raise QuditMbqcError("assignment search applies to temporally flat plans")
    if target is None:
        target, _ = extract_output_function(plan)
    return ncva_search_raw(plan.d, plan.n, plan.N, plan.Q, plan.z, plan.s0,
                           target, q0=plan.q0)


def ncva_search_raw(d: int, n: int, N: int, Q, z, s0: int, table: dict,
                    q0=None) -> Witness:
    """Search over assignments s_k: settings -> outcomes with
    sum_k z_k s_k(q_k(i)) + s0 = o(i) for every input i."""
    if N * d**d > NCVA_GUARD:
        raise SizeGuardError(f"assignment search guard exceeded: N*d^d = {N * d**d}")
    q0 = tuple(q0) if q0 is not None else (0,) * N
    z = tuple(v % d for v in z)
    inputs = list(itertools.product(range(d), repeat=n))
    settings_of = {
        i: tuple((sum(Q[k][j] * i[j] for j in range(n)) + q0[k]) % d for k in range(N))
        for i in inputs
    }
    # cells that actually enter a constraint, in deterministic order
    cells: list[tuple[int, int]] = []
    for k in range(N):
        if z[k] == 0:
            continue
        reachable = sorted({settings_of[i][k] for i in inputs})
        cells.extend((k, q) for q in reachable)
    cell_index = {cell: idx for idx, cell in enumerate(cells)}
    constraints = []  # (cell indices, required sum)
    for i in inputs:
        idxs = tuple(
            cell_index[(k, settings_of[i][k])] for k in range(N) if z[k] != 0
        )
        constraints.append((idxs, (table[i] - s0) % d))
    by_last_cell: dict[int, list[int]] = {}
    for ci, (idxs, _) in enumerate(constraints):
        last = max(idxs, default=-1)
        by_last_cell.setdefault(last, []).append(ci)

    values = [0] * len(cells)
    nodes = [0]
    zs = [z[k] for k, _ in cells]

    def consistent_at(cell: int) -> bool:
        for ci in by_last_cell.get(cell, []):
            idxs, want = constraints[ci]
            total = sum(zs[j] * values[j] for j in idxs) % d
            if total != want:
                return False
        return True

    def dfs(pos: int) -> bool:
        nodes[0] += 1
        if nodes[0] > NCVA_NODE_BUDGET:
            raise SizeGuardError("assignment search node budget exhausted")
        if pos == len(cells):
            return True
        for v in range(d):
            values[pos] = v
            if consistent_at(pos) and dfs(pos + 1):
                return True
        values[pos] = 0
        return False

    space = d ** len(cells)
    # constraints with no cells (all z weights zero) must hold outright
    for idxs, want in constraints:
        if not idxs and want != 0:
            return Witness(STRONGLY_NONLOCAL, searched=space,
                           detail="constant output cannot match the table")
    if dfs(0):
        assignment = []
        for k in range(N):
            tablek = [0] * d
            for q in range(d):
                if (k, q) in cell_index:
                    tablek[q] = values[cell_index[(k, q)]]
            assignment.append(tuple(tablek))
        return Witness(NCVA_FOUND, assignment=tuple(assignment), searched=space)
    return Witness(STRONGLY_NONLOCAL, searched=space,
                   detail="exhausted every local assignment")


def temporal_degree_bound(plan: MbqcPlan) -> int:
    """(d-1) ** |l| with |l| the longest temporal path in vertices.

    Output degree beyond this bound certifies strong contextuality even
    for temporally ordered plans; flat plans give the base bound d-1.
    """
    return (plan.d - 1) ** longest_path(temporal_graph(plan))


def delta_distance(q: int, d: int) -> int:
    """Distance of q from 0 on the cycle Z_d (odd d): min(q, d-q)."""
    if d % 2 == 0:
        raise QuditMbqcError("the cycle distance is defined for odd d")
    q %= d
    return min(q, d - q)


def nu_distance(table: dict, d: int, n: int) -> tuple[int, MultiPoly]:
    """Exact minimal cycle-distance from a table to the degree-(d-1) class.

    Enumerates every polynomial with combined degree <= d-1 and returns
    (minimal summed distance, lexicographically first minimizer).  Guarded;
    never heuristic.
    """
    if d % 2 == 0:
        raise QuditMbqcError("distance minimization is defined for odd d")
    field = make_field(d)
    mons = subspace_monomials(field, n, d - 1)
    if d ** len(mons) > NU_GUARD:
        raise SizeGuardError(f"candidate class too large: {d}^{len(mons)}")
    points = sorted(table)
    values = [table[x] % d for x in points]
    # monomial evaluations per point, in the fixed monomial order
    rows = [
        [_eval_monomial(x, e, d) for e in mons]
        for x in points
    ]
    best = None
    best_coeffs = None
    for coeffs in itertools.product(range(d), repeat=len(mons)):
        dist = 0
        for row, want in zip(rows, values):
            val = sum(c * rv for c, rv in zip(coeffs, row)) % d
            diff = (want - val) % d
            dist += min(diff, d - diff)
            if best is not None and dist >= best:
                break
        if best is None or dist < best:
            best = dist
            best_coeffs = coeffs
            if best == 0:
                break
    poly = MultiPoly(field, n, dict(zip(mons, best_coeffs)))
    return best, poly


def _eval_monomial(x: tuple, exps: tuple, d: int) -> int:
    out = 1
    for xi, a in zip(x, exps):
        out = (out * pow(xi, a, d)) % d
    return out


@dataclass(frozen=True)
class ThresholdReport:
    """Arithmetic of the probabilistic non-locality thresholds."""

    p_worst: Fraction
    p_avg: Fraction
    nu: int
    d: int
    n: int
    threshold: Fraction
    exceeded: bool
    ncf_bound: Fraction | None

    def to_text(self) -> str:
        lines = [
            f"worst-case success: {self.p_worst}",
            f"average success: {self.p_avg}",
            f"nu: {self.nu}",
            f"threshold: > {self.threshold}",
            "strong non-locality: " + ("yes" if self.exceeded else "not established"),
        ]
        if self.ncf_bound is None:
            lines.append("non-contextual fraction bound: undefined (nu = 0)")
        else:
            lines.append(f"non-contextual fraction bound: <= {self.ncf_bound}")
        return "\n".join(lines)


def threshold_check(p_worst, p_avg, nu: int, d: int, n: int) -> ThresholdReport:
    """Evaluate the worst-case threshold and the failure-rate bound.

    Strong non-locality is flagged when p_worst strictly exceeds
    1 - 2*nu / ((d-1) * d^n).  When nu > 0, the average failure rate bounds
    the non-contextual fraction by (1 - p_avg) / nu.
    """
    if nu < 0:
        raise ValueError("nu must be >= 0")
    p_worst = Fraction(p_worst)
    p_avg = Fraction(p_avg)
    for p in (p_worst, p_avg):
        if not 0 <= p <= 1:
            raise ValueError(f"probability {p} outside [0, 1]")
    threshold = 1 - Fraction(2 * nu, (d - 1) * d**n)
    exceeded = p_worst > threshold
    ncf_bound = (1 - p_avg) / nu if nu > 0 else None
    return ThresholdReport(p_worst, p_avg, nu, d, n, threshold, exceeded, ncf_bound)
