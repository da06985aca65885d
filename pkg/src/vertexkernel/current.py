"""The loop Lie algebra attached to a presentation.

Basis symbols are modes a(n): a generator name with an integer mode index,
subject to the normalization (D a)(n) = -n a(n-1).  Torsion generators
therefore keep only their (-1) mode, and free generators absorb D-powers
into a falling-factorial shift.  The bracket is

    [a(m), b(n)] = sum_{j >= 0} binom(m, j) (a_j b)(m + n - j),

finite because the product table is.
"""

from typing import NamedTuple

from .lincomb import LinComb, binom, falling
from .report import ValidationReport

__all__ = ["Mode", "mode_weight", "mode_normalize", "bracket", "bracket_combo",
           "check_lie_axioms"]


class Mode(NamedTuple):
    gen: str
    n: int

    def __str__(self):
        return f"{self.gen}({self.n})"


def mode_weight(pres, mode):
    return pres.weight_of(mode.gen) - mode.n - 1


def _gen_mode(pres, name, n, coeff, out):
    if pres.is_torsion(name):
        if n == -1:
            out.add_into(LinComb.single(Mode(name, -1), coeff))
        return
    out.add_into(LinComb.single(Mode(name, n), coeff))


def mode_normalize(pres, elt, n):
    """The mode elt(n) of an element, as a combination of generator modes.

    (D^d g)(n) = (-1)^d n(n-1)...(n-d+1) g(n-d); torsion modes survive only
    at index -1.
    """
    out = LinComb()
    for (g, d), c in elt.items():
        f = falling(n, d)
        if f:
            _gen_mode(pres, g, n - d, c * ((-1) ** d * f), out)
    return out


def bracket(pres, a, b):
    """[a, b] for single modes, a combination of normalized modes."""
    out = LinComb()
    if pres.is_torsion(a.gen) or pres.is_torsion(b.gen):
        return out
    for j in range(0, pres.weight_of(a.gen) + pres.weight_of(b.gen)):
        tab = pres.table(a.gen, b.gen, j)
        if not tab:
            continue
        c = binom(a.n, j)
        if c:
            out.add_into(mode_normalize(pres, tab, a.n + b.n - j), c)
    return out


def bracket_combo(pres, x, y):
    """Bilinear extension of the bracket to mode combinations."""
    out = LinComb()
    for ma, ca in x.items():
        for mb, cb in y.items():
            out.add_into(bracket(pres, ma, mb), ca * cb)
    return out


def _mode_menu(pres, window):
    menu = []
    for g in pres.generators:
        if g.torsion:
            menu.append(Mode(g.name, -1))
        else:
            menu.extend(Mode(g.name, n) for n in range(-window, window + 1))
    return menu


def check_lie_axioms(pres, window=3):
    """Antisymmetry and Jacobi for all generator modes with |n| <= window."""
    rep = ValidationReport(subject="current-algebra")
    menu = _mode_menu(pres, window)

    fails = []
    for a in menu:
        for b in menu:
            lhs = bracket(pres, a, b)
            rhs = bracket(pres, b, a)
            if lhs != (-1) * rhs:
                fails.append(f"[{a},{b}] + [{b},{a}] != 0")
    rep.record("bracket-antisymmetry", fails, len(menu) ** 2)

    fails = []
    for a in menu:
        for b in menu:
            ab = bracket(pres, a, b)
            for c in menu:
                lhs = bracket_combo(pres, ab, LinComb.single(c))
                rhs = bracket_combo(pres, LinComb.single(a), bracket(pres, b, c))
                rhs.add_into(bracket_combo(pres, LinComb.single(b), bracket(pres, a, c)), -1)
                if lhs != rhs:
                    fails.append(f"Jacobi fails at [[{a},{b}],{c}]")
    rep.record("bracket-jacobi", fails, len(menu) ** 3)
    return rep
