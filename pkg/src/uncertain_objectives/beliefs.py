"""Pairwise belief matrices and distributions over total orders.

A belief matrix Z stores, for every ordered world pair (a, b), the
probability that a is better than b given the available evidence; the
diagonal is pinned at 1/2 and Z(a,b) + Z(b,a) = 1 (exact equality is seen
as probability zero, so ties carry no mass).  Such a matrix is *coherent*
when some probability distribution over strict total orders has exactly
these pairwise marginals, i.e. when Z lies in the linear ordering polytope.

Two checkers are provided.  ``check_path_coherence`` applies the chained
necessary condition along every simple path: the span probability must lie
within [1 - sum(1 - z_i), sum(z_i)].  ``exact_feasibility`` decides polytope
membership exactly at small n by solving an LP with one variable per total
order.  ``minimax_cycle_bound`` minimizes, over all distributions, the worst
violation probability among the constraints of an n-step cycle; the optimum
is exactly 1/n, achieved by the uniform mixture of cyclic rotations.

Default arithmetic is exact rationals.  Matrices and distributions may also
carry floats ("float mode") for larger randomized work, with a 1e-9
tolerance on their validation and kernel-backed scans; the LP-based
operations require exact inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import DimensionCapError
from .rationals import as_rational
from .simplex import solve_lp

FLOAT_TOL = 1e-9
DEFAULT_DIMENSION_CAP = 7

HALF = Fraction(1, 2)
ONE = Fraction(1)
ZERO = Fraction(0)


def _coerce_prob(value):
    """Fractions/ints/strings stay exact; floats mark the float path."""
    if isinstance(value, float):
        return value
    return as_rational(value)


def _check_unit(value, where: str):
    if isinstance(value, float):
        if not -FLOAT_TOL <= value <= 1 + FLOAT_TOL:
            raise ValueError(f"{where} outside [0, 1]: {value!r}")
    elif not ZERO <= value <= ONE:
        raise ValueError(f"{where} outside [0, 1]: {value!r}")


@dataclass(frozen=True)
class BeliefMatrix:
    """Pairwise comparison probabilities Z over an ordered world list."""

    worlds: tuple[str, ...]
    z: tuple[tuple, ...]
    evidence_tag: str = ""

    def __init__(self, worlds, z, evidence_tag: str = ""):
        worlds = tuple(worlds)
        if len(set(worlds)) != len(worlds):
            raise ValueError("duplicate world ids")
        n = len(worlds)
        grid = tuple(tuple(_coerce_prob(v) for v in row) for row in z)
        if len(grid) != n or any(len(row) != n for row in grid):
            raise ValueError("z must be an n x n grid")
        exact = all(isinstance(v, Fraction) for row in grid for v in row)
        for i in range(n):
            for j in range(n):
                _check_unit(grid[i][j], f"z[{i}][{j}]")
        for i in range(n):
            d = grid[i][i]
            if exact:
                if d != HALF:
                    raise ValueError(f"diagonal z[{i}][{i}] must be 1/2, got {d}")
            elif abs(float(d) - 0.5) > FLOAT_TOL:
                raise ValueError(f"diagonal z[{i}][{i}] must be 1/2, got {d}")
        for i in range(n):
            for j in range(i + 1, n):
                s = grid[i][j] + grid[j][i]
                if exact:
                    if s != ONE:
                        raise ValueError(
                            f"complement symmetry fails at ({worlds[i]}, {worlds[j]}): "
                            f"{grid[i][j]} + {grid[j][i]} != 1"
                        )
                elif abs(float(s) - 1.0) > FLOAT_TOL:
                    raise ValueError(
                        f"complement symmetry fails at ({worlds[i]}, {worlds[j]})"
                    )
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "z", grid)
        object.__setattr__(self, "evidence_tag", evidence_tag)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for row in self.z for v in row)

    def index(self, world_id: str) -> int:
        return self.worlds.index(world_id)

    def prob(self, a: str, b: str):
        """P(a is better than b)."""
        return self.z[self.index(a)][self.index(b)]

    def as_float_array(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.z], dtype=np.float64)

    def exactified(self, max_denominator: int = 10**9) -> "BeliefMatrix":
        """Rational approximation of a float-mode matrix (lossy bridge).

        Upper-triangle entries are rounded to at most ``max_denominator``;
        the lower triangle is rebuilt as the exact complement.
        """
        n = len(self.worlds)
        grid = [[HALF] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = self.z[i][j]
                v = v if isinstance(v, Fraction) else Fraction(v).limit_denominator(max_denominator)
                grid[i][j] = v
                grid[j][i] = ONE - v
        return BeliefMatrix(self.worlds, grid, self.evidence_tag)


@dataclass(frozen=True)
class OrderDistribution:
    """Explicit distribution over strict total orders.

    Each order lists world ids best-first; probabilities are nonnegative and
    sum to one (exactly in rational mode, within 1e-9 in float mode).
    """

    orders: tuple[tuple[str, ...], ...]
    probs: tuple

    def __init__(self, orders, probs):
        orders = tuple(tuple(o) for o in orders)
        probs = tuple(_coerce_prob(p) for p in probs)
        if len(orders) != len(probs):
            raise ValueError("orders and probabilities differ in length")
        if not orders:
            raise ValueError("a distribution needs at least one order")
        base = frozenset(orders[0])
        if len(base) != len(orders[0]):
            raise ValueError("orders must not repeat worlds")
        for o in orders:
            if frozenset(o) != base or len(o) != len(orders[0]):
                raise ValueError("all orders must rank the same world set")
        exact = all(isinstance(p, Fraction) for p in probs)
        for p in probs:
            _check_unit(p, "probability")
        total = sum(probs)
        if exact:
            if total != ONE:
                raise ValueError(f"probabilities sum to {total}, expected 1")
        elif abs(float(total) - 1.0) > FLOAT_TOL:
            raise ValueError(f"probabilities sum to {total}, expected 1")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "probs", probs)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)

    @property
    def worlds(self) -> tuple[str, ...]:
        return tuple(sorted(self.orders[0]))

    def support(self):
        return [(o, p) for o, p in zip(self.orders, self.probs) if p > 0]

    def to_json(self) -> dict:
        from .rationals import format_rational

        return {
            "orders": [list(o) for o in self.orders],
            "p": [
                format_rational(p) if isinstance(p, Fraction) else p
                for p in self.probs
            ],
        }


@dataclass(frozen=True)
class CycleSpec:
    """Cyclic constraints over x_1..x_n: constraint i demands that x_i is
    almost surely better than x_{i+1 mod n}."""

    worlds: tuple[str, ...]

    def __init__(self, worlds):
        worlds = tuple(worlds)
        if len(worlds) < 3:
            raise ValueError("a cycle needs at least 3 worlds")
        if len(set(worlds)) != len(worlds):
            raise ValueError("cycle worlds must be distinct")
        object.__setattr__(self, "worlds", worlds)

    @property
    def n(self) -> int:
        return len(self.worlds)

    def constraint_pairs(self) -> list[tuple[str, str]]:
        """(required-better, required-worse) per constraint, in order."""
        n = len(self.worlds)
        return [(self.worlds[i], self.worlds[(i + 1) % n]) for i in range(n)]


def matrix_from_distribution(
    d: OrderDistribution, worlds=None, evidence_tag: str = ""
) -> BeliefMatrix:
    """Pairwise marginals of a distribution: Z(a,b) = P(a ranked above b)."""
    worlds = tuple(worlds) if worlds is not None else d.worlds
    if set(worlds) != set(d.orders[0]):
        raise ValueError("world list does not match the distribution's worlds")
    n = len(worlds)
    idx = {w: i for i, w in enumerate(worlds)}
    if d.is_exact:
        grid = [[HALF if i == j else ZERO for j in range(n)] for i in range(n)]
        for order, p in zip(d.orders, d.probs):
            if p == 0:
                continue
            ranks = [idx[w] for w in order]
            for a_pos in range(n):
                for b_pos in range(a_pos + 1, n):
                    grid[ranks[a_pos]][ranks[b_pos]] += p
        return BeliefMatrix(worlds, grid, evidence_tag)
    order_idx = np.array(
        [[idx[w] for w in order] for order in d.orders], dtype=np.int64
    )
    probs = np.array([float(p) for p in d.probs], dtype=np.float64)
    z = _kernels.pairwise_matrix(order_idx, probs, n)
    np.fill_diagonal(z, 0.5)
    return BeliefMatrix(worlds, z.tolist(), evidence_tag)


def path_bounds(chain) -> tuple:
    """Bounds the span probability implied by a chain of step probabilities.

    For steps z_1..z_{k-1} along a path, the first-to-last comparison must
    lie in [max(0, 1 - sum(1 - z_i)), min(1, sum(z_i))].
    """
    chain = [_coerce_prob(z) for z in chain]
    if not chain:
        raise ValueError("path_bounds needs at least one step")
    for z in chain:
        _check_unit(z, "chain entry")
    total = sum(chain)
    one = ONE if all(isinstance(z, Fraction) for z in chain) else 1.0
    zero = ZERO if isinstance(one, Fraction) else 0.0
    upper = min(one, total)
    lower = max(zero, one - sum(one - z for z in chain))
    return lower, upper


@dataclass(frozen=True)
class PathViolation:
    path: tuple[str, ...]
    span: object
    lower: object
    upper: object
    slack: object

    def to_json(self) -> dict:
        from .rationals import format_rational

        def fmt(v):
            return format_rational(v) if isinstance(v, Fraction) else v

        return {
            "path": list(self.path),
            "span": fmt(self.span),
            "lower": fmt(self.lower),
            "upper": fmt(self.upper),
            "slack": fmt(self.slack),
        }


def check_path_coherence(m: BeliefMatrix, max_path_len: int | None = None) -> list[PathViolation]:
    """Report every simple path whose span probability breaks its chained bound.

    Paths of up to ``max_path_len`` worlds (default: all of them) are scanned;
    two-world paths cannot violate and are skipped.  An empty list on every
    matrix derived from an actual order distribution is a theorem, so a
    non-empty result certifies that no distribution realizes the matrix.
    """
    n = len(m.worlds)
    limit = n if max_path_len is None else min(max_path_len, n)
    violations: list[PathViolation] = []
    if limit < 3:
        return violations
    if m.is_exact:
        for k in range(3, limit + 1):
            for path in itertools.permutations(range(n), k):
                chain = [m.z[path[s]][path[s + 1]] for s in range(k - 1)]
                lower, upper = path_bounds(chain)
                span = m.z[path[0]][path[-1]]
                if span < lower or span > upper:
                    violations.append(
                        PathViolation(
                            tuple(m.worlds[i] for i in path),
                            span,
                            lower,
                            upper,
                            max(lower - span, span - upper),
                        )
                    )
        return violations
    z = m.as_float_array()
    for k in range(3, limit + 1):
        paths = np.array(list(itertools.permutations(range(n), k)), dtype=np.int64)
        slacks = _kernels.path_slacks(z, paths)
        for row, slack in zip(paths, slacks):
            if slack > FLOAT_TOL:
                chain = [z[row[s], row[s + 1]] for s in range(k - 1)]
                lower, upper = path_bounds(chain)
                violations.append(
                    PathViolation(
                        tuple(m.worlds[i] for i in row),
                        z[row[0], row[-1]],
                        lower,
                        upper,
                        float(slack),
                    )
                )
    return violations


# ---------------------------------------------------------------------------
# Exact polytope feasibility and the minimax bound
# ---------------------------------------------------------------------------

def _all_orders(n: int) -> list[tuple[int, ...]]:
    """Every strict total order as a best-first index tuple, lexicographic."""
    return list(itertools.permutations(range(n)))


def _ranks_above(order: tuple[int, ...]) -> list[list[bool]]:
    n = len(order)
    pos = [0] * n
    for r, w in enumerate(order):
        pos[w] = r
    return [[pos[a] < pos[b] for b in range(n)] for a in range(n)]


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    distribution: OrderDistribution | None
    certificate: dict | None
    note: str

    def __bool__(self) -> bool:
        return self.feasible


def exact_feasibility(
    m: BeliefMatrix, cap: int = DEFAULT_DIMENSION_CAP
) -> FeasibilityResult:
    """Decide whether some order distribution realizes the matrix exactly.

    Solves the linear-ordering-polytope membership LP with one variable per
    total order: for every pair a != b the mass of orders ranking a above b
    must equal Z(a, b).  Feasible results carry one realizing distribution
    (generically not unique); infeasible results carry Farkas multipliers
    over the constraint rows certifying that no distribution exists.
    """
    n = len(m.worlds)
    if n > cap:
        raise DimensionCapError(n, cap)
    if not m.is_exact:
        raise ValueError(
            "exact_feasibility needs an exact matrix; use exactified() first"
        )
    orders = _all_orders(n)
    labels: list[str] = []
    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    above = [_ranks_above(o) for o in orders]
    for i in range(n):
        for j in range(i + 1, n):
            labels.append(f"above({m.worlds[i]},{m.worlds[j]})")
            a_eq.append([ONE if ab[i][j] else ZERO for ab in above])
            b_eq.append(m.z[i][j])
    labels.append("total")
    a_eq.append([ONE] * len(orders))
    b_eq.append(ONE)
    res = solve_lp(c=[ZERO] * len(orders), a_eq=a_eq, b_eq=b_eq)
    if res.status == "infeasible":
        cert = {
            label: y for label, y in zip(labels, res.certificate) if y != 0
        }
        return FeasibilityResult(
            feasible=False,
            distribution=None,
            certificate=cert,
            note="Farkas multipliers over pairwise-marginal rows",
        )
    support = [
        (orders[k], x) for k, x in enumerate(res.x) if x > 0
    ]
    dist = OrderDistribution(
        orders=[tuple(m.worlds[i] for i in o) for o, _ in support],
        probs=[p for _, p in support],
    )
    return FeasibilityResult(
        feasible=True,
        distribution=dist,
        certificate=None,
        note="witness distribution is one of possibly many realizing the matrix",
    )


@dataclass(frozen=True)
class MinimaxBound:
    bound: Fraction
    witness: OrderDistribution
    spec: CycleSpec


def violation_probabilities(d: OrderDistribution, spec: CycleSpec) -> list:
    """Per-constraint violation mass: P(order ranks x_{i+1} above x_i)."""
    out = []
    for better, worse in spec.constraint_pairs():
        mass = sum(
            (p for o, p in zip(d.orders, d.probs) if o.index(worse) < o.index(better)),
            ZERO if d.is_exact else 0.0,
        )
        out.append(mass)
    return out


def minimax_cycle_bound(
    spec: CycleSpec, cap: int = DEFAULT_DIMENSION_CAP
) -> MinimaxBound:
    """The smallest achievable worst-case constraint-violation probability.

    min over distributions p of max_i P_p(violate C_i), solved exactly as an
    LP over all n! orders with an auxiliary level variable.  The optimum for
    an n-cycle is exactly 1/n.
    """
    n = spec.n
    if n > cap:
        raise DimensionCapError(n, cap)
    orders = _all_orders(n)
    idx = {w: i for i, w in enumerate(spec.worlds)}
    n_orders = len(orders)
    # Variables: p_0..p_{m-1}, then t.
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for better, worse in spec.constraint_pairs():
        bi, wi = idx[better], idx[worse]
        row = []
        for o in orders:
            row.append(ONE if o.index(wi) < o.index(bi) else ZERO)
        row.append(-ONE)
        a_ub.append(row)
        b_ub.append(ZERO)
    a_eq = [[ONE] * n_orders + [ZERO]]
    b_eq = [ONE]
    c = [ZERO] * n_orders + [ONE]
    res = solve_lp(c=c, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    if res.status != "optimal":
        raise RuntimeError(f"minimax LP unexpectedly {res.status}")
    support = [(orders[k], x) for k, x in enumerate(res.x[:n_orders]) if x > 0]
    witness = OrderDistribution(
        orders=[tuple(spec.worlds[i] for i in o) for o, _ in support],
        probs=[p for _, p in support],
    )
    return MinimaxBound(bound=res.objective, witness=witness, spec=spec)


def rotation_mixture(spec_or_n) -> OrderDistribution:
    """Uniform mixture of the n cyclic rotations of the chain x_1 > ... > x_n.

    Rotation r ranks x_r best and x_{r-1} worst.  Each cycle constraint is
    violated by exactly one rotation, so every violation probability is 1/n
    and every cycle-edge belief Z(x_i, x_{i+1}) equals (n-1)/n.
    """
    if isinstance(spec_or_n, CycleSpec):
        worlds = spec_or_n.worlds
    else:
        n = int(spec_or_n)
        if n < 3:
            raise ValueError("rotation mixture needs n >= 3")
        worlds = tuple(f"x{i+1}" for i in range(n))
    n = len(worlds)
    orders = [
        tuple(worlds[(r + t) % n] for t in range(n)) for r in range(n)
    ]
    share = Fraction(1, n)
    return OrderDistribution(orders=orders, probs=[share] * n)
