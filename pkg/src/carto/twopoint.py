"""Two-point functions, computed from the mobile recurrences and from the
closed forms, plus the continued-fraction cross-check and asymptotics.

Conventions: ``T_i`` (and ``U_i``) are indexed by the root label ``i >= 1``
with ``T_j = U_j = 0`` for ``j <= 0``.  One-parameter families give
:class:`Series` in ``t``; two-parameter families give :class:`Series2` in
``t`` with polynomial coefficients in ``z``.  ``S_i`` lives on the half grid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .series import Series, Series2, invert_2param, log_series, newton_solve

__all__ = [
    "FAMILIES",
    "Family",
    "TwoPointTable",
    "TwoPointError",
    "solve_recurrence",
    "closed_form",
    "assemble_observables",
    "admissible_types",
    "tree_series",
    "continued_fraction_RS",
    "three_step_counts",
    "asymptotic_constants",
    "estimate_asymptotics",
    "cpq_identity_check",
    "verify_ansatz",
    "two_param_yalpha",
]


class TwoPointError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    tag: str
    # unknown -> (constant term, monomials); a monomial is (coefficient, factors)
    # and a factor is (unknown, label offset)
    equations: dict
    reach: int
    two_param: bool
    observables: tuple
    grid_den: int = 1

    @property
    def unknowns(self) -> tuple:
        return tuple(self.equations)


def _times_t(root, terms):
    return tuple((c, (root,) + f) for c, f in terms)


_T0 = ("T", 0)
_GEN = {"T": (1, _times_t(_T0, [(1, (("T", -1),)), (1, (("T", 0),)), (1, (("T", 1),))]))}
_BIP = {"T": (1, _times_t(_T0, [(1, (("T", -1),)), (1, (("T", 1),))]))}
_H3_TERMS = [
    (1, (("T", -2), ("T", -1))), (1, (("T", -1), ("T", -1))), (2, (("T", -1), ("T", 0))),
    (1, (("T", 0), ("T", 0))), (1, (("T", -1), ("T", 1))), (2, (("T", 0), ("T", 1))),
    (1, (("T", 1), ("T", 1))), (1, (("T", 1), ("T", 2))),
]
_H3 = {"T": (1, _times_t(_T0, _H3_TERMS))}
_C3 = {"T": (1, _times_t(_T0, [(1, (("T", -2), ("T", -1))), (1, (("T", -1), ("T", 1))),
                                (1, (("T", 1), ("T", 2)))]))}
_GEN2 = {
    "T": ("z", ((1, (("T", 0), ("U", -1))), (1, (("T", 0), ("T", 0))), (1, (("U", 0), ("T", 1))))),
    "U": (1, ((1, (("U", 0), ("U", -1))), (1, (("U", 0), ("T", 0))), (1, (("U", 0), ("T", 1))))),
}
_BIP2 = {
    "T": ("z", ((1, (("T", 0), ("U", -1))), (1, (("U", 0), ("T", 1))))),
    "U": (1, ((1, (("U", 0), ("U", -1))), (1, (("U", 0), ("T", 1))))),
}

FAMILIES = {
    "GeneralMap": Family("GeneralMap", _GEN, 1, False, ("T", "R", "S", "V")),
    "BipartiteMap": Family("BipartiteMap", _BIP, 1, False, ("T", "R", "V")),
    "GeneralHypermap": Family("GeneralHypermap", _BIP, 1, False, ("T", "calR")),
    "ThreeHypermap": Family("ThreeHypermap", _H3, 2, False, ("T", "R", "V", "R3"), 2),
    "ThreeConstellation": Family("ThreeConstellation", _C3, 2, False, ("T", "R", "V", "R3"), 2),
    "GeneralMap2Par": Family("GeneralMap2Par", _GEN2, 1, True, ("T", "U", "R", "S")),
    "BipartiteMap2Par": Family("BipartiteMap2Par", _BIP2, 1, True, ("T", "U", "R")),
    "GeneralHypermap2Par": Family("GeneralHypermap2Par", _BIP2, 1, True, ("T", "U", "calR")),
}

ALIASES = {
    "general": "GeneralMap",
    "bipartite": "BipartiteMap",
    "hypermap": "GeneralHypermap",
    "3-hypermap": "ThreeHypermap",
    "3-constellation": "ThreeConstellation",
    "general2": "GeneralMap2Par",
    "bipartite2": "BipartiteMap2Par",
    "hypermap2": "GeneralHypermap2Par",
}


def family(tag) -> Family:
    if isinstance(tag, Family):
        return tag
    tag = ALIASES.get(tag, tag)
    if tag not in FAMILIES:
        raise TwoPointError(f"unknown family {tag!r}")
    return FAMILIES[tag]


@dataclass
class TwoPointTable:
    family: str
    i_max: int
    order: int
    provenance: str
    series: dict = field(default_factory=dict)

    def __getitem__(self, key):
        name, i = key
        return self.series[name][i]

    def get(self, name, i):
        return self.series[name][i]

    def names(self):
        return sorted(self.series)

    def to_json(self) -> dict:
        out = {}
        for name in sorted(self.series):
            out[name] = {",".join(map(str, k)) if isinstance(k, tuple) else str(k): s.to_json()
                         for k, s in sorted(self.series[name].items())}
        return {"family": self.family, "i_max": self.i_max, "order": self.order,
                "provenance": self.provenance, "series": out}


# ---------------------------------------------------------------------------
# recurrences, solved order by order


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, x in enumerate(b):
        out[k] += x
    return out


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _window(fam: Family, i_max: int, order: int) -> int:
    return i_max + fam.reach * (order + 1) + 2


def solve_recurrence(tag, i_max: int, order: int, window: int | None = None) -> TwoPointTable:
    """``T_i`` (and ``U_i``) for ``1 <= i <= i_max + reach + 1`` to ``t^order``.

    Coefficient ``n`` of each unknown is the coefficient ``n-1`` of its
    polynomial right-hand side, which only involves known coefficients, so
    one pass per order suffices.  Labels beyond the window reuse the last
    site (their low coefficients have stabilised).
    """
    fam = family(tag)
    if i_max < 1 or order < 0:
        raise TwoPointError("need i_max >= 1 and order >= 0")
    W = window if window is not None else _window(fam, i_max, order)
    if W < i_max + fam.reach + 2:
        raise TwoPointError("window too small")
    two = fam.two_param
    zero = [] if two else 0
    add = _padd if two else (lambda a, b: a + b)
    mul = _pmul if two else (lambda a, b: a * b)

    def const(c):
        if c == "z":
            return [0, 1]
        return [c] if two else c

    def scale(c, a):
        return [c * x for x in a] if two else c * a

    names = fam.unknowns
    coef = {(x, j): [const(fam.equations[x][0])] for x in names for j in range(1, W + 1)}
    # prefix products per (unknown, site, monomial)
    prefix = {}
    sites = [(x, i, m) for x in names for i in range(1, W + 1)
             for m in range(len(fam.equations[x][1]))]

    def series_of(key):
        name, j = key
        if j <= 0:
            return None
        return coef[(name, min(j, W))]

    for n in range(1, order + 1):
        k = n - 1
        new = {}
        for x, i, m in sites:
            c, factors = fam.equations[x][1][m]
            srcs = [series_of((f, i + d)) for f, d in factors]
            if any(s is None for s in srcs):
                continue
            pp = prefix.setdefault((x, i, m), [[] for _ in factors])
            pp[0].append(srcs[0][k])
            for r in range(1, len(factors)):
                prev, s = pp[r - 1], srcs[r]
                acc = zero
                for a in range(k + 1):
                    pa = prev[a]
                    sb = s[k - a]
                    if pa and sb:
                        acc = add(acc, mul(pa, sb))
                pp[r].append(acc)
            term = scale(c, pp[-1][k])
            key = (x, i)
            new[key] = add(new.get(key, zero), term)
        for x in names:
            for i in range(1, W + 1):
                coef[(x, i)].append(new.get((x, i), zero))
    keep = i_max + fam.reach + 1
    table = TwoPointTable(fam.tag, i_max, order, "recurrence")
    for x in names:
        table.series[x] = {0: _zero(fam, order)}
        for i in range(1, keep + 1):
            cs = coef[(x, i)]
            table.series[x][i] = Series2([tuple(p) for p in cs], order) if two else \
                Series(cs, 0, order)
        for j in range(-2, 0):
            table.series[x][j] = _zero(fam, order)
    return assemble_observables(fam, table)


def _zero(fam: Family, order: int):
    return Series2([], order) if fam.two_param else Series.zero(order)


def _one(fam: Family, order: int):
    return Series2.const((1,), order) if fam.two_param else Series.one(order)


def _t(fam: Family, order: int):
    return Series2.t(order) if fam.two_param else Series.t(order)


# ---------------------------------------------------------------------------
# observables


_H3_TYPES = ((0, -1, -2), (0, -1, -1), (0, -1, 0), (0, -1, 1), (0, 0, -1), (0, 0, 0),
             (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 2, 1))
_C3_TYPES = ((0, -1, -2), (0, -1, 1), (0, 2, 1))


def admissible_types(tag) -> tuple:
    """Relative root-face ccw-types ``(0, a, b)`` (read from the root endpoint)."""
    fam = family(tag)
    if fam.tag == "ThreeHypermap":
        return _H3_TYPES
    if fam.tag == "ThreeConstellation":
        return _C3_TYPES
    raise TwoPointError(f"{fam.tag} has no triple-index observables")


def _is_admissible(fam: Family, key) -> bool:
    i1, i2, i3 = key
    rel = (0, i2 - i1, i3 - i1)
    return rel in admissible_types(fam) and min(key) >= 0


def assemble_observables(tag, table: TwoPointTable) -> TwoPointTable:
    """Add R_i, S_i, V_i, calR_i, R_{i1,i2,i3} built from T_i (and U_i)."""
    fam = family(tag)
    T = table.series["T"]
    U = table.series.get("U", T)
    N = table.order
    t = _t(fam, N)
    one = _one(fam, N)
    top = max(k for k in T if isinstance(k, int))
    obs = table.series
    if "R" in fam.observables and "R" not in obs:
        R = {}
        for i in range(1, top):
            if fam.tag in ("ThreeHypermap", "ThreeConstellation"):
                if i + 2 > top:
                    continue
                if fam.tag == "ThreeHypermap":
                    inner = T[i - 1] + T[i] + T[i + 1] + T[i + 2]
                else:
                    inner = T[i - 1] + T[i + 2]
                R[i] = one + t * T[i] * T[i + 1] * inner
            elif fam.two_param:
                R[i] = one + t * U[i] * T[i + 1]
            else:
                R[i] = one + t * T[i] * T[i + 1]
        obs["R"] = R
    if "S" in fam.observables and "S" not in obs:
        S = {}
        for i in range(0, top):
            if fam.two_param:
                S[i] = _sqrt_t_times2(T[i + 1])
            else:
                S[i] = Series.sqrt_t(2 * N + 1) * T[i + 1].regrid(2)
        obs["S"] = S
    if "V" in fam.observables and "V" not in obs:
        obs["V"] = _v_from_mobiles(fam, T, t, one, top)
    if "calR" in fam.observables and "calR" not in obs:
        obs["calR"] = {i: one + t * t * U[i] * U[i + 1] * T[i + 2] for i in range(1, top - 1)}
    if "R3" in fam.observables and "R3" not in obs:
        R3 = {}
        for j in range(0, top):
            for rel in admissible_types(fam):
                key = (j, j + rel[1], j + rel[2])
                if min(key) < 0 or max(key) + 1 > top:
                    continue
                R3[key] = t * T[key[0] + 1] * T[key[1] + 1] * T[key[2] + 1]
        obs["R3"] = R3
    return table


def _sqrt_t_times2(x: Series2):
    """Two-parameter ``S_i`` is stored as the integer-grid cofactor of sqrt(t)."""
    return x


def _v_from_mobiles(fam: Family, T, t, one, top):
    """V_i as the log of the ratio of the two geometric sums over black vertices."""
    V = {}
    for i in range(1, top - 1):
        if fam.tag == "GeneralMap":
            a = T[i - 1] + T[i]
            b = a + T[i + 1]
        elif fam.tag == "BipartiteMap":
            a = T[i - 1]
            b = a + T[i + 1]
        elif fam.tag == "ThreeHypermap":
            if i + 2 > top:
                continue
            a = T[i - 2] * T[i - 1] + T[i - 1] * T[i - 1] + 2 * T[i - 1] * T[i] + T[i] * T[i] + \
                T[i] * T[i + 1]
            b = a + T[i - 1] * T[i + 1] + T[i] * T[i + 1] + T[i + 1] * T[i + 1] + T[i + 1] * T[i + 2]
        elif fam.tag == "ThreeConstellation":
            if i + 2 > top:
                continue
            a = T[i - 2] * T[i - 1]
            b = a + T[i - 1] * T[i + 1] + T[i + 1] * T[i + 2]
        else:
            continue
        V[i] = log_series(one - t * a) - log_series(one - t * b)
    return V


# ---------------------------------------------------------------------------
# closed forms


def tree_series(tag, order: int, z=None):
    """Constant solutions (T, U) of the equations at a fixed rational ``z``
    (or the one-parameter T, with U = T)."""
    fam = family(tag)
    t = Series.t(order)
    if not fam.two_param:
        if fam.tag == "GeneralMap":
            T = newton_solve([1, -1, 3 * t], Series.one(order))
        elif fam.tag in ("BipartiteMap", "GeneralHypermap"):
            T = newton_solve([1, -1, 2 * t], Series.one(order))
        elif fam.tag == "ThreeHypermap":
            T = newton_solve([1, -1, 0, 10 * t], Series.one(order))
        else:
            T = newton_solve([1, -1, 0, 3 * t], Series.one(order))
        return T, T
    z = Fraction(1 if z is None else z)
    T = Series([z], 0, order)
    U = Series.one(order)
    for _ in range(order + 1):
        if fam.tag == "GeneralMap2Par":
            T, U = z + t * (T * T + 2 * T * U), 1 + t * (2 * T * U + U * U)
        else:
            T, U = z + 2 * t * T * U, 1 + t * U * (T + U)
    return T, U


def _ratio(y, a, b, c, d, one):
    """(1-y^a)(1-y^b)/((1-y^c)(1-y^d)) for a power series y with y(0)=0."""
    return (one - y ** a) * (one - y ** b) / ((one - y ** c) * (one - y ** d))


def _closed_one_param(fam: Family, i_max: int, N: int) -> TwoPointTable:
    t = Series.t(N)
    one = Series.one(N)
    T, _ = tree_series(fam, N)
    table = TwoPointTable(fam.tag, i_max, N, "closed_form")
    top = i_max + fam.reach + 1
    tT2 = t * T * T
    if fam.tag == "GeneralMap":
        y = newton_solve([tT2, tT2 - 1, tT2], Series.zero(N))
        Ts = {i: T * _ratio(y, i, i + 3, i + 1, i + 2, one) for i in range(1, top + 1)}
        R = one + tT2
        table.series["R"] = {i: R * _ratio(y, i + 1, i + 3, i + 2, i + 2, one) for i in range(1, top)}
        half = Series.sqrt_t(2 * N + 1)
        table.series["S"] = {i: half * (T * _ratio(y, i + 1, i + 4, i + 2, i + 3, one)).regrid(2)
                             for i in range(0, top)}
        table.series["V"] = {i: log_series(table.series["R"][i]) for i in range(1, top - 1)}
    else:
        y = newton_solve([tT2, -1, tT2], Series.zero(N))
        Ts = {i: T * _ratio(y, i, i + 4, i + 1, i + 3, one) for i in range(1, top + 1)}
        if fam.tag == "BipartiteMap":
            R = one + tT2
            table.series["R"] = {i: R * _ratio(y, i + 1, i + 4, i + 2, i + 3, one)
                                 for i in range(1, top)}
            table.series["V"] = {i: log_series(table.series["R"][i]) for i in range(1, top - 1)}
        else:
            calR = one + t * t * T * T * T
            table.series["calR"] = {i: calR * _ratio(y, i + 2, i + 4, i + 3, i + 3, one)
                                    for i in range(1, top - 1)}
    table.series["y"] = {0: y}
    Ts[0] = Series.zero(N)
    Ts[-1] = Series.zero(N)
    Ts[-2] = Series.zero(N)
    table.series["T"] = Ts
    return assemble_observables(fam, table)


def characteristic_roots(tag, order: int):
    """y1 (and y2 = y1(-u)) as half-grid series, for the 3-families.

    With y = u w, the characteristic equation t T^3 q(y) = y^2 becomes
    T^3 q(u w) = w^2, solved by Newton from w = 1.
    """
    fam = family(tag)
    P = 2 * order + 1
    u = Series.sqrt_t(P)
    T, _ = tree_series(fam, order)
    T3 = (T * T * T).regrid(2).truncate(P) if (T * T * T).regrid(2).prec > P else (T * T * T).regrid(2)
    q = (1, 6, 6, 6, 1) if fam.tag == "ThreeHypermap" else (1, 2, 0, 2, 1)
    cs = [T3 * q[k] * u ** k if k else T3 * q[0] for k in range(5)]
    cs[2] = cs[2] - 1
    w = newton_solve(cs, Series.one(P, 2))
    y1 = u * w
    return y1, y1.substitute_neg_sqrt(), T


def _v_sequence(fam: Family, y1, y2, upto: int):
    one = Series.one(y1.prec, 2)
    if fam.tag == "ThreeHypermap":
        c = one - y1 * y2
        d = y1 - y2
        out = {}
        for i in range(0, upto + 1):
            out[i] = one - c * (y1 ** (i + 1) - y2 ** (i + 1)) / d - (y1 * y2) ** (i + 1)
        return out
    p1 = y1 + y1 ** 2 + y1 ** 3
    p2 = y2 + y2 ** 2 + y2 ** 3
    dp = p1 - p2
    a1 = (p1 - y1 ** 4 * p2) / dp
    a2 = (p2 - y2 ** 4 * p1) / (-dp)
    a12 = (y2 ** 4 * p1 - y1 ** 4 * p2) / dp
    out = {}
    for i in range(0, upto + 1):
        out[i] = one - a1 * y1 ** i - a2 * y2 ** i + a12 * (y1 * y2) ** i
    return out


def _closed_three(fam: Family, i_max: int, N: int) -> TwoPointTable:
    work = N + 6
    y1, y2, T = characteristic_roots(fam, work)
    top = i_max + fam.reach + 1
    shift = 3 if fam.tag == "ThreeHypermap" else 5
    v = _v_sequence(fam, y1, y2, top + shift + 1)
    Th = T.regrid(2)
    t = Series.t(N)
    table = TwoPointTable(fam.tag, i_max, N, "closed_form")
    Ts = {}
    for i in range(1, top + 1):
        if fam.tag == "ThreeHypermap":
            x = Th * v[i] * v[i + 3] / (v[i + 1] * v[i + 2])
        else:
            x = Th * v[i] * v[i + 5] / (v[i + 1] * v[i + 4])
        Ts[i] = x.on_integer_grid().truncate(N)
    for j in (0, -1, -2):
        Ts[j] = Series.zero(N)
    TN = T.truncate(N)
    R = {}
    for i in range(1, top - 1):
        if fam.tag == "ThreeHypermap":
            x = (1 + 4 * t * TN ** 3).regrid(2) * v[i + 1] * v[i + 3] / (v[i + 2] * v[i + 2])
        else:
            x = (1 + 2 * t * TN ** 3).regrid(2) * v[i + 1] * v[i + 5] / (v[i + 2] * v[i + 4])
        R[i] = x.on_integer_grid().truncate(N)
    table.series["T"] = Ts
    table.series["R"] = R
    table.series["V"] = {i: log_series(R[i]) for i in R}
    table.series["y"] = {1: y1, 2: y2}
    table.series["v"] = v
    return assemble_observables(fam, table)


def two_param_yalpha(tag, order: int):
    """(y, alpha) as two-parameter series by inverting the parametrization."""
    fam = family(tag)
    if fam.tag == "GeneralMap2Par":
        def t_unit(y, a):
            one = Series2.const((1,), y.prec)
            D = one + y + a * y - 6 * a * y ** 2 + a * y ** 3 + a * a * y ** 3 + a * a * y ** 4
            return (one - a * y) ** 3 * (one - a * y ** 3) / (D * D)

        def z_unit(y, a):
            one = Series2.const((1,), y.prec)
            return (one - y) ** 3 * (one - a * a * y ** 3) / ((one - a * y) ** 3 * (one - a * y ** 3))
    else:
        def t_unit(y, a):
            one = Series2.const((1,), y.prec)
            return (one - a * y) ** 2 * (one - a * y ** 4) / ((one + y) ** 2 * (one - a * y ** 2) ** 3)

        def z_unit(y, a):
            one = Series2.const((1,), y.prec)
            return (one - y) ** 2 * (one - y * y) * (one + a * y * y) / \
                ((one - a * y) ** 2 * (one - a * y ** 4))
    return invert_2param(t_unit, z_unit, order)


def _closed_two_param(fam: Family, i_max: int, N: int) -> TwoPointTable:
    y, a = two_param_yalpha(fam, N)
    one = Series2.const((1,), N)
    t = Series2.t(N)
    z = Series2.z(N)
    if fam.tag == "GeneralMap2Par":
        kappa = a * a * y * (one - y) ** 4 / ((one - a * y) ** 3 * (one - a * y ** 3))
        kappa_rho = a * y * (one - y) ** 2 / ((one - a * y) * (one - a * y ** 3))
        T = z + kappa + 2 * kappa_rho
        U = one
        for _ in range(N + 1):
            U = one + t * U * (2 * T + U)
    else:
        den = (one - a * y) ** 2 * (one - a * y ** 4)
        T = a * (one - y * y) ** 2 * (one - a * y * y) / den
        U = (one + y) * (one - a * y * y) ** 2 / ((one - a * y) * (one - a * y ** 4))
    top = i_max + fam.reach + 1
    Ts, Us = {}, {}
    for i in range(1, top + 1):
        yi = lambda k: y ** (i + k)
        if fam.tag == "GeneralMap2Par":
            Ts[i] = T * (one - yi(0)) * (one - a * a * yi(3)) / ((one - a * yi(1)) * (one - a * yi(2)))
            Us[i] = U * (one - yi(0)) * (one - a * yi(3)) / ((one - yi(1)) * (one - a * yi(2)))
        else:
            Ts[i] = T * (one - yi(0)) * (one - a * a * yi(4)) / ((one - a * yi(1)) * (one - a * yi(3)))
            Us[i] = U * (one - yi(0)) * (one - a * yi(4)) / ((one - yi(1)) * (one - a * yi(3)))
    for j in (0, -1, -2):
        Ts[j] = Series2([], N)
        Us[j] = Series2([], N)
    table = TwoPointTable(fam.tag, i_max, N, "closed_form")
    table.series["T"] = Ts
    table.series["U"] = Us
    table.series["y"] = {0: y}
    table.series["alpha"] = {0: a}
    table.series["tree"] = {0: T, 1: U}
    ay = lambda k: one - a * y ** k
    if fam.tag == "GeneralMap2Par":
        R = ay(2) ** 2 / (ay(1) * ay(3))
        table.series["R"] = {i: R * ay(i + 1) * ay(i + 3) / (ay(i + 2) * ay(i + 2))
                             for i in range(1, top)}
    elif fam.tag == "BipartiteMap2Par":
        R = ay(2) * ay(3) / (ay(1) * ay(4))
        table.series["R"] = {i: R * ay(i + 1) * ay(i + 4) / (ay(i + 2) * ay(i + 3))
                             for i in range(1, top)}
    else:
        calR = one + t * t * U * U * T
        table.series["calR"] = {i: calR * ay(i + 2) * ay(i + 4) / (ay(i + 3) * ay(i + 3))
                                for i in range(1, top - 1)}
    return assemble_observables(fam, table)


def closed_form(tag, i_max: int, order: int) -> TwoPointTable:
    fam = family(tag)
    if i_max < 1 or order < 0:
        raise TwoPointError("need i_max >= 1 and order >= 0")
    if fam.two_param:
        return _closed_two_param(fam, i_max, order)
    if fam.tag in ("ThreeHypermap", "ThreeConstellation"):
        return _closed_three(fam, i_max, order)
    return _closed_one_param(fam, i_max, order)


def verify_ansatz(tag, i_max: int, order: int) -> dict:
    """Residuals of the defining equations at the closed forms (all must vanish)."""
    fam = family(tag)
    if not fam.two_param:
        raise TwoPointError("the ansatz check concerns the two-parameter families")
    tab = closed_form(fam, i_max, order)
    T, U = tab.series["T"], tab.series["U"]
    one = Series2.const((1,), order)
    t, z = Series2.t(order), Series2.z(order)
    y, a = tab.series["y"][0], tab.series["alpha"][0]
    T0, U0 = tab.series["tree"][0], tab.series["tree"][1]
    res = {}
    for i in range(1, i_max + 1):
        if fam.tag == "GeneralMap2Par":
            rt = T[i] - (z + t * (T[i] * U[i - 1] + T[i] * T[i] + U[i] * T[i + 1]))
            ru = U[i] - (one + t * (U[i] * U[i - 1] + U[i] * T[i] + U[i] * T[i + 1]))
        else:
            rt = T[i] - (z + t * (T[i] * U[i - 1] + U[i] * T[i + 1]))
            ru = U[i] - (one + t * (U[i] * U[i - 1] + U[i] * T[i + 1]))
        res[f"T_{i}"] = rt
        res[f"U_{i}"] = ru
    if fam.tag == "GeneralMap2Par":
        res["tree_T"] = T0 - (z + t * (T0 * T0 + 2 * T0 * U0))
        res["tree_U"] = U0 - (one + t * (2 * T0 * U0 + U0 * U0))
        res["U/T"] = U0 * a * (one - y) ** 2 - T0 * (one - a * y) ** 2
        res["tT^2"] = t * T0 * T0 * (one - a * y) ** 3 * (one - a * y ** 3) - \
            a * a * y * (one - y) ** 4
    else:
        res["tree_T"] = T0 - (z + 2 * t * T0 * U0)
        res["tree_U"] = U0 - (one + t * U0 * (T0 + U0))
    zero = Series2([], order)
    return {"ok": all(r == zero for r in res.values()),
            "nonzero": sorted(k for k, r in res.items() if r != zero)}


# ---------------------------------------------------------------------------
# continued fraction


def three_step_counts(kmax: int) -> list[list[int]]:
    """``M[k][j]``: three-step paths from height 0 to height 0 in k steps
    with j up-steps (hence j down-steps), by dynamic programming over heights."""
    out = []
    # cur[h][j]: paths of the current length ending at height h with j ups
    cur = {0: {0: 1}}
    for k in range(kmax + 1):
        out.append([cur.get(0, {}).get(j, 0) for j in range(k // 2 + 1)])
        nxt: dict = {}
        for h, row in cur.items():
            for j, c in row.items():
                for dh, dj in ((1, 1), (0, 0), (-1, 0)):
                    g = h + dh
                    if abs(g) > kmax - k:
                        continue
                    cell = nxt.setdefault(g, {})
                    cell[j + dj] = cell.get(j + dj, 0) + c
        cur = nxt
    return out


def continued_fraction_RS(tag="GeneralMap", order: int = 10, z=None):
    """Solve S = z sum t^(k/2) P(k-1,R,S), R = 1 + (z/2) sum t^(k/2) P(k,R,S) - S^2/2.

    ``P(k,R,S)`` sums over three-step paths of length k returning to height
    0 (no positivity constraint), with weight S per level step and sqrt(R)
    per up or down step.  Returns ``(R, S)`` as half-grid series
    exact to ``t^order``.
    """
    fam = family(tag)
    if fam.tag not in ("GeneralMap", "GeneralMap2Par"):
        raise TwoPointError("continued fraction relations are for general maps")
    zz = Fraction(1 if z is None else z)
    P = 2 * order
    kmax = P + 2
    M = three_step_counts(kmax)
    u = Series.sqrt_t(P)
    one = Series.one(P, 2)
    R = one
    S = Series.zero(P, 2)
    for _ in range(P + 3):
        X = u * S
        Y = u * u * R
        xp = [one]
        for _m in range(kmax):
            xp.append(xp[-1] * X)
        # sum_k u^k P(k) = sum_j Y^j sum_m M[m+2j][j] X^m
        def path_sum(offset):
            # sum_{k>=1} u^(k) P(k - offset)
            total = Series.zero(P, 2)
            ypow = one
            for j in range(0, kmax // 2 + 1):
                inner = Series.zero(P, 2)
                for m in range(0, kmax - 2 * j + 1):
                    k = m + 2 * j
                    if k + offset < 1 or k > kmax:
                        continue
                    c = M[k][j]
                    if c:
                        inner = inner + xp[m] * c
                if not inner.is_zero():
                    total = total + ypow * inner
                ypow = ypow * Y
                if ypow.is_zero():
                    break
            return total
        s_new = zz * u * path_sum(1)   # k' = k - 1 >= 0 -> t^(k/2) = u * u^(k')
        r_new = one + (zz / 2) * path_sum(0) - S * S / 2
        if s_new == S and r_new == R:
            break
        R, S = r_new, s_new
    return R.truncate(P), S.truncate(P)


# ---------------------------------------------------------------------------
# asymptotics


def _pf(*xs):
    return [Fraction(x) for x in xs]


def asymptotic_constants(tag, i: int) -> dict:
    """Exact large-map averages: edges of each type around distance ``i``
    and vertices at distance ``i`` (keys ``e_prev``, ``e_same``, ``e_next``, ``v``)."""
    fam = family(tag)
    i = Fraction(i)
    out = {}
    if fam.tag == "GeneralMap":
        if i >= 1:
            out["e_prev"] = i * (i + 3) * (2 * i + 3) * (5 * i ** 4 + 30 * i ** 3 + 67 * i ** 2 + 66 * i + 28) \
                / (35 * (i + 1) ** 2 * (i + 2) ** 2)
            out["v"] = Fraction(3, 280) * (2 * i + 3) * (10 * i ** 2 + 30 * i + 9)
        out["e_same"] = 2 * (5 * i ** 8 + 80 * i ** 7 + 537 * i ** 6 + 1964 * i ** 5 + 4251 * i ** 4
                             + 5528 * i ** 3 + 4175 * i ** 2 + 1660 * i + 280) \
            / (35 * (i + 1) ** 2 * (i + 2) * (i + 3) ** 2)
        out["e_next"] = (i + 1) * (i + 4) * (2 * i + 5) * (5 * i ** 4 + 50 * i ** 3 + 187 * i ** 2 + 310 * i + 196) \
            / (35 * (i + 2) ** 2 * (i + 3) ** 2)
    elif fam.tag == "BipartiteMap":
        if i >= 1:
            out["e_prev"] = 2 * i * (i + 4) * (10 * i ** 4 + 80 * i ** 3 + 233 * i ** 2 + 292 * i + 141) \
                / (105 * (i + 1) * (i + 2) * (i + 3))
            out["v"] = Fraction(4, 315) * (i + 2) * (10 * i ** 2 + 40 * i + 13)
        out["e_next"] = 2 * (i + 1) * (i + 5) * (10 * i ** 4 + 120 * i ** 3 + 533 * i ** 2 + 1038 * i + 756) \
            / (105 * (i + 2) * (i + 3) * (i + 4))
    else:
        raise TwoPointError("exact asymptotic constants are tabulated for GeneralMap and BipartiteMap")
    return out


T_CRITICAL = {"GeneralMap": Fraction(1, 12), "BipartiteMap": Fraction(1, 8)}


def _singular_coeffs(tc: Fraction, n_max: int) -> list[Fraction]:
    """Coefficients of (1 - t/tc)^(3/2)."""
    out = [Fraction(1)]
    a = Fraction(3, 2)
    for n in range(1, n_max + 1):
        out.append(out[-1] * (a - n + 1) / n * (-1) / tc)
    return out


def richardson(seq: list, order: int) -> Fraction:
    """Extrapolate ``seq[n] = L + a/n + b/n^2 + ...`` from its last ``order+1`` terms."""
    n = len(seq) - 1 - order
    if n < 1:
        raise TwoPointError("sequence too short for the extrapolation order")
    total = Fraction(0)
    for j in range(order + 1):
        sign = -1 if (order + j) % 2 else 1
        total += sign * Fraction((n + j) ** order) * seq[n + j] / (_fact(j) * _fact(order - j))
    return total


def _fact(k):
    out = 1
    for x in range(2, k + 1):
        out *= x
    return out


def estimate_asymptotics(tag, i: int, n_max: int = 400, ext_order: int = 6) -> float:
    """Estimate the large-map average number of edges of type (i-1, i).

    The coefficients of R_i - R_{i-1} divided by those of (1 - t/t_c)^(3/2)
    tend to delta_i - delta_{i-1}; Richardson extrapolation in 1/n gives the
    limit and the average is 3/2 of it.
    """
    fam = family(tag)
    if fam.tag not in T_CRITICAL:
        raise TwoPointError("estimator available for GeneralMap and BipartiteMap")
    if n_max < 50:
        raise TwoPointError("n_max below 50 makes the extrapolation unreliable")
    tab = _closed_one_param(fam, max(i, 1), n_max)
    R = tab.series["R"]
    hi = R[i]
    lo = R[i - 1] if i >= 2 else Series.one(n_max)
    diff = hi - lo
    sing = _singular_coeffs(T_CRITICAL[fam.tag], n_max)
    seq = [diff[n] / sing[n] for n in range(n_max + 1)]
    return float(Fraction(3, 2) * richardson(seq, ext_order))


# ---------------------------------------------------------------------------
# the cross-ratio identity for regular constellations


def cpq_identity_check(p: int, t_sample, digits: int = 50, tol: float = 1e-30) -> dict:
    """Compare the cross-ratios built from p^(p), q^(p) and p^(p+1), q^(p+1)
    at all pairs of in-disk roots of H(y) = 1/(t T^p)."""
    if not 2 <= p <= 6:
        raise TwoPointError("p must lie in 2..6")
    t_sample = Fraction(t_sample)
    tc = Fraction((p - 1) ** (p - 1), p ** (p + 1))
    if not 0 < t_sample < tc:
        raise TwoPointError(f"t must lie in (0, {tc})")
    with mpmath.workdps(digits + 20):
        t = mpmath.mpf(t_sample.numerator) / t_sample.denominator
        T = mpmath.findroot(lambda x: 1 + p * t * x ** p - x, 1)
        c = 1 / (t * T ** p)
        # y^(p-1) (H(y) - c), coefficients from y^(2p-2) down to y^0
        coeffs = [0] * (2 * p - 1)
        for k in range(1, p):
            coeffs[(p - 1) - k] += p - k        # y^{p-1+k}
            coeffs[(p - 1) + k] += p - k        # y^{p-1-k}
        coeffs[p - 1] -= c
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * digits) if p > 1 else []
        inside = [r for r in roots if abs(r) < 1]
        if len(inside) != p - 1:
            raise TwoPointError("could not isolate p-1 roots inside the unit disk")

        def pq(y, r):
            return sum(y ** k for k in range(1, r)), sum(y ** (-k) for k in range(1, r))

        def cross(y1, y2, r):
            p1, q1 = pq(y1, r)
            p2, q2 = pq(y2, r)
            return (p1 - p2) * (q1 - q2) / ((p1 - q2) * (q1 - p2))

        def H(y):
            return sum((p - k) * (y ** k + y ** (-k)) for k in range(1, p))

        def reduction(yk, yl):
            pk, _ = pq(yk, p)
            pl, _ = pq(yl, p)
            Pk, _ = pq(yk, p + 1)
            Pl, _ = pq(yl, p + 1)
            first = (yl ** p * pk - pl) * (Pk - Pl) - (yl ** (p + 1) * Pk - Pl) * (pk - pl)
            second = (yk * yl) ** p * (1 - yl) * (H(yk) - H(yl))
            return first, second

        def a_form(yk, yl, r):
            pk, _ = pq(yk, r)
            pl, _ = pq(yl, r)
            return (yl ** r * pk - pl) / (pk - pl)

        worst = mpmath.mpf(0)
        worst_red = mpmath.mpf(0)
        pairs = 0
        for ya in inside:
            for yb in inside:
                if ya is yb:
                    continue
                pairs += 1
                c = cross(ya, yb, p)
                akl, alk = a_form(ya, yb, p), a_form(yb, ya, p)
                worst = max(worst, abs(c - cross(ya, yb, p + 1)), abs(c - (akl + alk - 1) / (akl * alk)))
                f, s = reduction(ya, yb)
                worst_red = max(worst_red, abs(f), abs(s))
        # the reduction is an algebraic identity: check it away from the roots too
        ident = mpmath.mpf(0)
        for ya, yb in ((mpmath.mpf(1) / 3, mpmath.mpf(2) / 7), (mpmath.mpc(0.2, 0.3), mpmath.mpc(-0.4, 0.1))):
            f, s = reduction(ya, yb)
            ident = max(ident, abs(f - s))
        return {
            "p": p,
            "t": str(t_sample),
            "pairs": pairs,
            "max_cross_diff": float(worst),
            "max_reduction": float(worst_red),
            "identity_residual": float(ident),
            "ok": worst < tol and worst_red < tol and ident < tol,
        }
