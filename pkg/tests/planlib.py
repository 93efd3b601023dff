"""Hand-built plans shared across test modules."""

from quditmbqc.engine import MbqcPlan
from quditmbqc.states import basis_state, make_example2_state, make_ghz
from quditmbqc.weyl import CliffordSpec, WeylLabel, named_clifford


def nand_plan():
    d = 2
    control = CliffordSpec(d, ((1, 1), (0, 1)), (0, 1))
    fid = WeylLabel(d, (0, 1))
    return MbqcPlan(
        d=2, n=2, N=3,
        resource=make_ghz(2, 3, anders_browne=True),
        parties=[(fid, control)] * 3,
        Q=[[1, 0], [0, 1], [1, 1]],
        T=[[0] * 3] * 3,
        z=[1, 1, 1], s0=0,
    )


def quadratic_plan(d):
    fid = WeylLabel(d, (0, 1))
    s_gate = named_clifford(d, "S")
    first = CliffordSpec(d, ((1, 1), (0, 1)), (0, d - 1))
    parties = [(fid, first)] + [(fid, s_gate)] * (2 * d - 1)
    return MbqcPlan(
        d=d, n=1, N=2 * d,
        resource=make_example2_state(d),
        parties=parties,
        Q=[[1]] * (2 * d),
        T=[[0] * (2 * d)] * (2 * d),
        z=[1] * (2 * d), s0=0,
    )


def exponential_plan(d, u, coeff=1):
    fid = WeylLabel(d, (1, 0))
    return MbqcPlan(
        d=d, n=1, N=1,
        resource=basis_state(d, (1,)),
        parties=[(fid, named_clifford(d, "Mu", u=u))],
        Q=[[coeff]],
        T=[[0]],
        z=[1], s0=0,
    )
