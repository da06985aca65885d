"""Derived constructions over vacuum modules.

Three layers, each with exhaustive bounded checkers:

  * the half exponential E^-(a,x) = exp(sum_{n>=1} a(-n)/n x^n) for a central
    element a, computed by the derivative recurrence k T_k = sum a(-n) T_{k-n};
  * the twisted tensor algebra V (x)_phi C[L] over a free abelian (semi)group
    L, whose modes are (v(x)e^a)_m (w(x)e^b) =
    sum_k E_k(phi(a)) (v_{m+k} w) (x) e^{a+b};
  * the free differential bialgebra B_L on rank(L) current lines, where
    del h_i(-n) = n h_i(-n-1), del e^alpha = abar(-1) e^alpha, generators are
    primitive and the e^alpha group-like; its Borcherds modes
    a_{-k-1} b = (1/k!) (del^k a) b agree with the (x)_phi modes on the
    abelian vacuum module under the identity key identification.

Morphism builders (extend from C[L]+current-line targets, or induce from a
generator embedding) verify the defining equations on bounded bases and
refuse inconsistent data with a witness.
"""

from fractions import Fraction
from itertools import product as iproduct

from .coalgebra import (coassociativity_defect, cocommutativity_defect,
                        counit_law_defects, d_coderivation_defect,
                        group_like_scan, is_group_like, primitive_defect)
from .current import Mode, mode_normalize
from .enveloping import VacuumModule, jacobi_defect_on, skew_defect_on
from .errors import InputError, MorphismError, UnsupportedError
from .linalg import kernel_coefficients
from .lincomb import LinComb, binom, inv_factorial
from .report import ValidationReport
from .serialize import format_alpha, format_diff_key
from .vla import abelian

_ZERO = LinComb()


def _mode_range(window):
    """Accept either a symmetric bound or an explicit (lo, hi) pair."""
    if isinstance(window, tuple):
        lo, hi = window
        return range(lo, hi + 1)
    return range(-window, window + 1)


# -- semigroups and central maps ------------------------------------------------------


class SemigroupL:
    """Free abelian (semi)group of finite rank: Z^r if group, else N^r."""

    def __init__(self, rank, group=True):
        if rank < 1:
            raise InputError(f"semigroup rank must be >= 1, got {rank}")
        self.rank = rank
        self.group = bool(group)

    def zero(self):
        return (0,) * self.rank

    def element(self, alpha):
        alpha = tuple(int(a) for a in alpha)
        if len(alpha) != self.rank:
            raise InputError(f"element {alpha} has wrong rank, expected {self.rank}")
        if not self.group and any(a < 0 for a in alpha):
            raise InputError(f"element {alpha} not in N^{self.rank}")
        return alpha

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        if not self.group and any(a):
            raise InputError(f"{a} has no inverse in N^{self.rank}")
        return tuple(-x for x in a)

    def window(self, bound):
        """All elements with every component in [-bound, bound] (or [0, bound])."""
        lo = -bound if self.group else 0
        return sorted(iproduct(range(lo, bound + 1), repeat=self.rank))


class PhiMap:
    """Additive map from the semigroup directions into elements of C.

    Each direction gets one weight-homogeneous element; phi(alpha) is the
    integer linear combination.  Mixed-weight targets are refused because the
    tensor algebra's truncation bookkeeping leans on the grading.
    """

    def __init__(self, pres, targets):
        self.pres = pres
        self.targets = list(targets)
        for t in self.targets:
            if t:
                try:
                    pres.element_weight(t)
                except InputError:
                    raise UnsupportedError(
                        "phi targets must be weight-homogeneous") from None

    @property
    def rank(self):
        return len(self.targets)

    def of(self, alpha):
        out = LinComb()
        for a, t in zip(alpha, self.targets):
            if a:
                out.add_into(t, a)
        return out


def check_phi_central(pres, phi):
    """phi(alpha)_n b = 0 for every n >= 0 and every generator b.

    The checked window n < wt(phi) + wt(b) + 1 certifies all n, because
    weight-homogeneous products truncate there."""
    rep = ValidationReport(subject="phi-centrality")
    fails, total = [], 0
    for i, t in enumerate(phi.targets):
        wt = pres.element_weight(t) if t else 0
        for g in pres.generators:
            b = pres.element(g.name)
            for n in range(0, wt + g.weight + 1):
                total += 1
                p = pres.nth_product(t, n, b)
                if p:
                    fails.append(f"phi(e_{i + 1})_{n} {g.name}"
                                 f" = {pres.format_element(p)} != 0")
    rep.record("phi-centrality", fails, total)
    return rep


# -- the half exponential E^-(a, x) ---------------------------------------------------


def eminus_apply(vm, a, v, order):
    """x-coefficients 0..order of E^-(a,x) v, for a central element a of C.

    The modes of a commute, so exp is evaluated through its derivative:
    k T_k = sum_{n=1..k} a(-n) T_{k-n}, T_0 = v.
    """
    out = [v]
    combos = [mode_normalize(vm.pres, a, -n) for n in range(1, order + 1)]
    for k in range(1, order + 1):
        acc = LinComb()
        for n in range(1, k + 1):
            acc.add_into(vm.combo_apply(combos[n - 1], out[k - n]))
        out.append(Fraction(1, k) * acc)
    return out


def eminus_conjugation_defect(vm, a, w, K, n, v):
    """Coefficient defect of Y(E^-(a,x0)w, x2) = E^-(a,x2+x0)E^-(-a,x2)Y(w,x2).

    Compares the x0^K x2^{-n-1} coefficients applied to v; the binomial
    expansion of (x2+x0)^k makes the right side
    sum_{c,l} binom(K+c,K) E_{K+c}(a) E_l(-a) (w_{n+c+l} v).
    """
    lhs = vm.state_mode(eminus_apply(vm, a, w, K)[K], n, v)
    bound = vm.state_weight(w) + vm.state_weight(v) - 1
    neg_a = -a
    rhs = LinComb()
    for c in range(0, max(bound - n, -1) + 1):
        for l in range(0, bound - n - c + 1):
            s0 = vm.state_mode(w, n + c + l, v)
            if not s0:
                continue
            s1 = eminus_apply(vm, neg_a, s0, l)[l]
            if not s1:
                continue
            rhs.add_into(eminus_apply(vm, a, s1, K + c)[K + c], binom(K + c, K))
    return lhs - rhs


def check_eminus_conjugation(vm, a, max_weight=2, order=3, window=3, torsion_bound=0):
    """The conjugation identity over all basis w, v up to max_weight,
    x0-orders K <= order and x2-modes n in the window."""
    rep = ValidationReport(subject="eminus")
    states = vm._graded_basis_states(max_weight, torsion_bound)
    fails, total = [], 0
    for w in states:
        for v in states:
            for K in range(0, order + 1):
                for n in _mode_range(window):
                    total += 1
                    if eminus_conjugation_defect(vm, a, w, K, n, v):
                        fails.append(
                            f"conjugation fails at w={vm.format_state(w)},"
                            f" v={vm.format_state(v)}, K={K}, n={n}")
    rep.record("eminus-conjugation", fails, total)
    return rep


# -- the twisted tensor algebra V (x)_phi C[L] ---------------------------------------


class TensorPhiAlgebra:
    """V (x)_phi C[L] on keys (PBW word, alpha).

    Construction is blocked unless phi's centrality certificate passes."""

    def __init__(self, vm, semigroup, phi):
        if phi.rank != semigroup.rank:
            raise InputError("phi rank does not match the semigroup rank")
        if phi.pres is not vm.pres:
            raise InputError("phi targets live in a different presentation")
        rep = check_phi_central(vm.pres, phi)
        if not rep.passed:
            raise InputError(f"phi is not central: {rep.failures()[0].witness}")
        self.vm = vm
        self.semigroup = semigroup
        self.phi = phi
        self._kmode = {}

    # states ------------------------------------------------------------------

    def vacuum(self):
        return LinComb.single(((), self.semigroup.zero()))

    def group_like(self, alpha):
        return LinComb.single(((), self.semigroup.element(alpha)))

    def embed(self, state, alpha=None):
        """Tag a vacuum-module state with e^alpha (default e^0)."""
        a = self.semigroup.zero() if alpha is None else self.semigroup.element(alpha)
        return state.map_keys(lambda w: (w, a))

    def key_state(self, key):
        return LinComb.single(key)

    def state_weight(self, state):
        return max((self.vm.word_weight(w) for (w, _) in state.keys()), default=-1)

    def basis_keys(self, weight, torsion_bound=0, alpha_bound=0):
        return sorted((w, al) for al in self.semigroup.window(alpha_bound)
                      for w in self.vm.basis_words(weight, torsion_bound))

    # structure maps ------------------------------------------------------------

    def _key_mode(self, vw, al, m, ww, be):
        key = (vw, al, m, ww, be)
        out = self._kmode.get(key)
        if out is not None:
            return out
        gamma = self.semigroup.add(al, be)
        a = self.phi.of(al)
        out = LinComb()
        vstate = LinComb.single(vw)
        wstate = LinComb.single(ww)
        for k in range(0, self.vm.word_weight(vw) + self.vm.word_weight(ww) - m):
            s = self.vm.state_mode(vstate, m + k, wstate)
            if s:
                out.add_into(eminus_apply(self.vm, a, s, k)[k].map_keys(
                    lambda w2: (w2, gamma)))
        self._kmode[key] = out
        return out

    def state_mode(self, u, m, w):
        out = LinComb()
        for (vw, al), cu in u.items():
            for (ww, be), cw in w.items():
                out.add_into(self._key_mode(vw, al, m, ww, be), cu * cw)
        return out

    def product(self, u, w):
        """The (-1)-mode; an honest product when the algebra is commutative."""
        return self.state_mode(u, -1, w)

    def D(self, state, power=1):
        """Translation: D(v (x) e^a) = (Dv + phi(a)(-1) v) (x) e^a."""
        for _ in range(power):
            out = LinComb()
            for (w, al), c in state.items():
                s = LinComb.single(w)
                d = self.vm.D(s) + self.vm.combo_apply(
                    mode_normalize(self.vm.pres, self.phi.of(al), -1), s)
                out.add_into(d.map_keys(lambda w2: (w2, al)), c)
            state = out
        return state

    def delta(self, state):
        """e^alpha is group-like: both legs of the word splitting keep the tag."""
        out = LinComb()
        for (w, al), c in state.items():
            for (w1, w2), c2 in self.vm.delta_word(w).items():
                out.add_into(LinComb.single(((w1, al), (w2, al))), c * c2)
        return out

    def eps(self, state):
        tot = Fraction(0)
        for (w, _), c in state.items():
            if not w:
                tot += c
        return tot

    # rendering -----------------------------------------------------------------

    def format_key(self, key):
        w, al = key
        return f"{self.vm.format_word(w)}⊗e^{{{format_alpha(al)}}}"

    def format_state(self, state):
        return state.format(self.format_key)


def check_tensor_phi_axioms(tp, max_weight=2, window=2, alpha_bound=1,
                            torsion_bound=0):
    """Vacuum/creation exactly, plus skew-symmetry and Jacobi coefficients
    over bounded tensor states."""
    rep = ValidationReport(subject="tensor-phi")
    keys = [k for d in range(max_weight + 1)
            for k in tp.basis_keys(d, torsion_bound, alpha_bound)]
    states = [tp.key_state(k) for k in keys]
    vac = tp.vacuum()
    vfails, total_v = [], 0
    for s in states:
        total_v += 1
        if tp.state_mode(s, -1, vac) != s:
            vfails.append(f"u(-1)|0> != u at {tp.format_state(s)}")
        for n in range(0, window + 2):
            total_v += 1
            if tp.state_mode(s, n, vac):
                vfails.append(f"u({n})|0> != 0 at {tp.format_state(s)}")
        for n in _mode_range(window):
            total_v += 1
            want = s if n == -1 else _ZERO
            if tp.state_mode(vac, n, s) != want:
                vfails.append(f"|0>({n})u wrong at {tp.format_state(s)}")
    rep.record("tensor-phi-vacuum-creation", vfails, total_v)

    sfails, total_s = [], 0
    for u in states:
        for v in states:
            for n in _mode_range(window):
                total_s += 1
                if skew_defect_on(tp, u, n, v):
                    sfails.append(f"skew fails at ({tp.format_state(u)})_{n}"
                                  f"({tp.format_state(v)})")
    rep.record("tensor-phi-skew-symmetry", sfails, total_s)

    jfails, total_j = [], 0
    rng = _mode_range(window)
    for u in states:
        for v in states:
            for w in states:
                for p in rng:
                    for q in rng:
                        for r in rng:
                            total_j += 1
                            if jacobi_defect_on(tp, u, v, w, p, q, r):
                                jfails.append(
                                    f"Jacobi ({p},{q},{r}) fails at"
                                    f" u={tp.format_state(u)},"
                                    f" v={tp.format_state(v)},"
                                    f" w={tp.format_state(w)}")
    rep.record("tensor-phi-jacobi", jfails, total_j)
    return rep


def check_group_like_semigroup(tp, alpha_bound=3, window=4):
    """g_n h = 0 for n >= 0, g_{-1}h = e^{a+b} is group-like, and the product
    is associative and commutative; nonneg modes of group-likes commute with
    everything sampled."""
    rep = ValidationReport(subject="tensor-phi-group-likes")
    alphas = tp.semigroup.window(alpha_bound)
    glike = {al: tp.group_like(al) for al in alphas}
    nonneg, prod, law = [], [], []
    t_nonneg = t_prod = t_law = 0
    for al in alphas:
        g = glike[al]
        for be in alphas:
            h = glike[be]
            for n in range(0, window + 1):
                t_nonneg += 1
                if tp.state_mode(g, n, h):
                    nonneg.append(f"e^{al}({n})e^{be} != 0")
            gh = tp.state_mode(g, -1, h)
            t_prod += 1
            if not is_group_like(tp, gh):
                prod.append(f"e^{al}·e^{be} not group-like")
            t_law += 1
            if gh != glike.get(tp.semigroup.add(al, be),
                               tp.group_like(tp.semigroup.add(al, be))):
                law.append(f"e^{al}·e^{be} != e^{tp.semigroup.add(al, be)}")
    rep.record("group-like-nonneg-modes", nonneg, t_nonneg)
    rep.record("group-like-product", prod, t_prod)
    rep.record("group-like-semigroup-law", law, t_law)

    assoc, comm = [], []
    t_ac = 0
    for al in alphas:
        for be in alphas:
            for ga in alphas:
                t_ac += 1
                g, h, k = glike[al], glike[be], glike[ga]
                left = tp.state_mode(tp.state_mode(g, -1, h), -1, k)
                right = tp.state_mode(g, -1, tp.state_mode(h, -1, k))
                if left != right:
                    assoc.append(f"associativity fails at {al},{be},{ga}")
            if tp.state_mode(g, -1, glike[be]) != tp.state_mode(glike[be], -1, g):
                comm.append(f"commutativity fails at {al},{be}")
    rep.record("group-like-associativity", assoc, t_ac)
    rep.record("group-like-commutativity", comm, len(alphas) ** 2)

    mfails, t_m = [], 0
    samples = [tp.key_state(k) for k in tp.basis_keys(1, 0, 1)][:4]
    for al in alphas:
        g = glike[al]
        for be in alphas:
            h = glike[be]
            for m in range(-2, 3):
                for n in range(-2, 3):
                    for s in samples:
                        t_m += 1
                        d = tp.state_mode(g, m, tp.state_mode(h, n, s))
                        d = d - tp.state_mode(h, n, tp.state_mode(g, m, s))
                        if d:
                            mfails.append(f"[e^{al}({m}), e^{be}({n})] != 0")
    rep.record("group-like-mode-commutation", mfails, t_m)
    return rep


def tensor_phi_primitives(tp, weight, torsion_bound=0, alpha_bound=1):
    """Basis of the primitive part of the bounded (weight, alpha) piece."""
    keys = tp.basis_keys(weight, torsion_bound, alpha_bound)
    states = [tp.key_state(k) for k in keys]
    defects = [primitive_defect(tp, s) for s in states]
    basis = []
    for coeffs in kernel_coefficients(defects):
        v = LinComb()
        for s, c in zip(states, coeffs):
            v.add_into(s, c)
        basis.append(v)
    return basis


def component_of(key):
    """The group-like tag alpha of a tensor or differential basis key."""
    return key[1]


def check_component_structure(tp, max_weight=2, alpha_bound=2, window=3,
                              torsion_bound=0):
    """The alpha tags behave as a decomposition: Delta stays within a
    component, modes of the e^0 part preserve it, and e^gamma shifts it."""
    rep = ValidationReport(subject="components")
    keys = [k for d in range(max_weight + 1)
            for k in tp.basis_keys(d, torsion_bound, alpha_bound)]
    dfails, modfails, shfails = [], [], []
    t_d = t_mod = t_sh = 0
    zero_keys = [k for k in keys if k[1] == tp.semigroup.zero()]
    for k in keys:
        al = component_of(k)
        t_d += 1
        d = tp.delta(tp.key_state(k))
        if any(component_of(k1) != al or component_of(k2) != al
               for (k1, k2) in d.keys()):
            dfails.append(f"Delta leaves component {al}")
        for z in zero_keys:
            for n in _mode_range(window):
                got = tp.state_mode(tp.key_state(z), n, tp.key_state(k))
                t_mod += 1
                if any(component_of(k2) != al for k2 in got.keys()):
                    modfails.append(f"V_0 mode moved component {al}")
        for ga in tp.semigroup.window(1):
            t_sh += 1
            got = tp.state_mode(tp.group_like(ga), -1, tp.key_state(k))
            want = tp.semigroup.add(ga, al)
            if any(component_of(k2) != want for k2 in got.keys()):
                shfails.append(f"e^{ga} did not shift {al} to {want}")
    rep.record("component-delta", dfails, t_d)
    rep.record("component-module", modfails, t_mod)
    rep.record("component-shift", shfails, t_sh)
    return rep


# -- the differential bialgebra B_L ---------------------------------------------------


def borcherds_mode(algebra, a, n, b):
    """a_n b on a commutative differential algebra: zero for n >= 0 and
    (1/k!) (del^k a) b for n = -k-1."""
    if n >= 0:
        return LinComb()
    k = -n - 1
    return inv_factorial(k) * algebra.product(algebra.D(a, k), b)


class BL:
    """B_L = S(h^-) (x) C[L] on keys (word, alpha), word a sorted tuple of
    modes h_i(-n), n >= 1.

    del h_i(-n) = n h_i(-n-1) and del e^alpha = abar(-1) e^alpha, extended as
    a derivation; h_i(-n) primitive, e^alpha group-like.  Keys coincide with
    the abelian vacuum module's tensor keys, which makes the comparison with
    V (x)_phi C[L] literal."""

    def __init__(self, semigroup):
        self.semigroup = semigroup
        self.pres = abelian(semigroup.rank)
        self.vm = VacuumModule(self.pres)
        self.names = [g.name for g in self.pres.generators]

    def one(self):
        return LinComb.single(((), self.semigroup.zero()))

    vacuum = one

    def group_like(self, alpha):
        return LinComb.single(((), self.semigroup.element(alpha)))

    def monomial(self, modes, alpha=None):
        """A basis element from (name, -n) pairs and an optional tag."""
        al = self.semigroup.zero() if alpha is None else self.semigroup.element(alpha)
        word = []
        for g, n in modes:
            if n >= 0:
                raise InputError(f"{g}({n}): current-line modes must be negative")
            word.append(Mode(g, n))
        word.sort(key=self.vm.sort_key)
        return LinComb.single((tuple(word), al))

    def bar_state(self, alpha):
        """abar(-1) = sum_i alpha_i h_i(-1), tagged e^0."""
        out = LinComb()
        zero = self.semigroup.zero()
        for i, a in enumerate(alpha):
            if a:
                out.add_into(LinComb.single(((Mode(self.names[i], -1),), zero)), a)
        return out

    def key_state(self, key):
        return LinComb.single(key)

    def state_weight(self, state):
        return max((self.vm.word_weight(w) for (w, _) in state.keys()), default=-1)

    def basis_keys(self, weight, alpha_bound=0):
        return sorted((w, al) for al in self.semigroup.window(alpha_bound)
                      for w in self.vm.basis_words(weight))

    def product(self, u, v):
        out = LinComb()
        for (w1, a), c1 in u.items():
            for (w2, b), c2 in v.items():
                w = tuple(sorted(w1 + w2, key=self.vm.sort_key))
                out.add_into(LinComb.single((w, self.semigroup.add(a, b))), c1 * c2)
        return out

    def D(self, state, power=1):
        """The derivation del."""
        for _ in range(power):
            out = LinComb()
            for (w, al), c in state.items():
                for i, m in enumerate(w):
                    bumped = w[:i] + (Mode(m.gen, m.n - 1),) + w[i + 1:]
                    bumped = tuple(sorted(bumped, key=self.vm.sort_key))
                    out.add_into(LinComb.single((bumped, al)), -m.n * c)
                for j, a in enumerate(al):
                    if a:
                        w2 = tuple(sorted(w + (Mode(self.names[j], -1),),
                                          key=self.vm.sort_key))
                        out.add_into(LinComb.single((w2, al)), a * c)
            state = out
        return state

    def state_mode(self, u, n, v):
        return borcherds_mode(self, u, n, v)

    def delta(self, state):
        out = LinComb()
        for (w, al), c in state.items():
            for (w1, w2), c2 in self.vm.delta_word(w).items():
                out.add_into(LinComb.single(((w1, al), (w2, al))), c * c2)
        return out

    def eps(self, state):
        tot = Fraction(0)
        for (w, _), c in state.items():
            if not w:
                tot += c
        return tot

    def format_key(self, key):
        return format_diff_key(key)

    def format_state(self, state):
        return state.format(self.format_key)


def bl_build(semigroup):
    """The B_L structure for a free abelian (semi)group."""
    return BL(semigroup)


def bl_phi(bl, g):
    """phi(g) = g^{-1} · del(g) for a monomial group-like g = e^alpha."""
    items = list(g.items())
    if len(items) != 1 or items[0][0][0] != () or items[0][1] != 1:
        raise InputError("bl_phi expects a monomial group-like e^alpha")
    alpha = items[0][0][1]
    inv = LinComb.single(((), bl.semigroup.neg(alpha)))
    return bl.product(inv, bl.D(g))


def check_bl_bialgebra(bl, max_weight=3, alpha_bound=2):
    """Differential-bialgebra axioms on the bounded basis: Delta and eps are
    algebra morphisms, coalgebra axioms hold, del is a coderivation killed by
    eps, and phi(g) = g^{-1} del g is additive over the window."""
    rep = ValidationReport(subject="bl")
    keys = [k for d in range(max_weight + 1) for k in bl.basis_keys(d, alpha_bound)]
    states = [bl.key_state(k) for k in keys]
    coassoc, counit, cocomm, codev, epsd = [], [], [], [], []
    for i, s in enumerate(states):
        name = bl.format_key(keys[i])
        if coassociativity_defect(bl, s):
            coassoc.append(f"coassociativity fails at {name}")
        dl, dr = counit_law_defects(bl, s)
        if dl or dr:
            counit.append(f"counit law fails at {name}")
        if cocommutativity_defect(bl, s):
            cocomm.append(f"cocommutativity fails at {name}")
        if d_coderivation_defect(bl, s):
            codev.append(f"Delta(del u) != (del(x)1 + 1(x)del)Delta(u) at {name}")
        if bl.eps(bl.D(s)):
            epsd.append(f"eps(del u) != 0 at {name}")
    rep.record("coassociativity", coassoc, len(states))
    rep.record("counit-law", counit, len(states))
    rep.record("cocommutativity", cocomm, len(states))
    rep.record("d-coderivation", codev, len(states))
    rep.record("counit-kills-d", epsd, len(states))

    mults, emults = [], 0
    dmul, emul, leib = [], [], []
    for u in states:
        for v in states:
            if bl.state_weight(u) + bl.state_weight(v) > max_weight:
                continue
            emults += 1
            uv = bl.product(u, v)
            if bl.delta(uv) != _tensor_product_through(bl, bl.delta(u), bl.delta(v)):
                dmul.append("Delta not multiplicative")
            if bl.eps(uv) != bl.eps(u) * bl.eps(v):
                emul.append("eps not multiplicative")
            if bl.D(uv) != bl.product(bl.D(u), v) + bl.product(u, bl.D(v)):
                leib.append("del not a derivation")
    rep.record("delta-multiplicative", dmul, emults)
    rep.record("counit-multiplicative", emul, emults)
    rep.record("d-derivation", leib, emults)

    addfails, t_add = [], 0
    if bl.semigroup.group:
        window = bl.semigroup.window(alpha_bound)
        for al in window:
            for be in window:
                t_add += 1
                lhs = bl_phi(bl, bl.group_like(bl.semigroup.add(al, be)))
                rhs = bl_phi(bl, bl.group_like(al)) + bl_phi(bl, bl.group_like(be))
                if lhs != rhs:
                    addfails.append(f"phi(e^{al}·e^{be}) != phi(e^{al}) + phi(e^{be})")
        rep.record("bl-phi-additivity", addfails, t_add)
    return rep


def _tensor_product_through(alg, s, t):
    """(a (x) b)(c (x) d) = ac (x) bd, componentwise through alg.product."""
    out = LinComb()
    for (a, b), c1 in s.items():
        for (e, g), c2 in t.items():
            left = alg.product(LinComb.single(a), LinComb.single(e))
            right = alg.product(LinComb.single(b), LinComb.single(g))
            out.add_into(left.tensor(right), c1 * c2)
    return out


def check_bl_equals_tensor_phi(semigroup, max_weight=3, alpha_bound=2, window=4):
    """Borcherds modes on B_L match the (x)_phi modes on the abelian vacuum
    module with phi(e_i) = h_i, key for key, along with D, Delta and eps."""
    bl = BL(semigroup)
    phi = PhiMap(bl.pres, [bl.pres.element(nm) for nm in bl.names])
    tp = TensorPhiAlgebra(bl.vm, semigroup, phi)
    rep = ValidationReport(subject="bl-vs-tensor-phi")
    keys = [k for d in range(max_weight + 1) for k in bl.basis_keys(d, alpha_bound)]
    states = [bl.key_state(k) for k in keys]
    mfails, t_m = [], 0
    for u in states:
        for v in states:
            for n in _mode_range(window):
                t_m += 1
                if bl.state_mode(u, n, v) != tp.state_mode(u, n, v):
                    mfails.append(
                        f"modes differ at ({bl.format_state(u)})_{n}"
                        f"({bl.format_state(v)})")
    rep.record("bl-equals-tensor-phi-modes", mfails, t_m)
    dfails, ofails = [], []
    for i, s in enumerate(states):
        if bl.D(s) != tp.D(s):
            dfails.append(f"derivations differ at {bl.format_key(keys[i])}")
        if bl.delta(s) != tp.delta(s) or bl.eps(s) != tp.eps(s):
            ofails.append(f"coalgebra maps differ at {bl.format_key(keys[i])}")
    rep.record("bl-equals-tensor-phi-d", dfails, len(states))
    rep.record("bl-equals-tensor-phi-coalgebra", ofails, len(states))
    return rep


# -- morphisms ------------------------------------------------------------------------


def _unit_of(obj):
    one = getattr(obj, "one", None)
    return one() if one is not None else obj.vacuum()


def extend_universal_morphism(bl, target, psi, phi_b, max_weight=3, alpha_bound=2):
    """The differential-bialgebra morphism f on B_L with f(e^alpha) = psi(alpha)
    and f(h_i(-1)) = phi_b(i).

    Refuses (MorphismError) unless psi lands in group-likes, is multiplicative
    on the window, and satisfies del psi(e^alpha) = phi_b(abar) psi(e^alpha);
    the returned report then verifies f against product, del, Delta and eps on
    the bounded basis."""
    window = bl.semigroup.window(alpha_bound)
    psi_img = {al: psi(al) for al in window}
    unit_t = _unit_of(target)

    zero = bl.semigroup.zero()
    if psi_img.get(zero, psi(zero)) != unit_t:
        raise MorphismError("psi(e^0) is not the unit", witness=str(zero))
    for al in window:
        p = psi_img[al]
        if target.delta(p) != p.tensor(p) or target.eps(p) != 1:
            raise MorphismError(f"psi(e^{al}) is not group-like", witness=str(al))
        bar = LinComb()
        for i, a in enumerate(al):
            if a:
                bar.add_into(phi_b(i), a)
        if target.D(p) != target.product(bar, p):
            raise MorphismError(
                f"del psi(e^{al}) != phi_B(abar) psi(e^{al})", witness=str(al))
    for al in window:
        for be in window:
            ga = bl.semigroup.add(al, be)
            if all(abs(x) <= alpha_bound for x in ga):
                if target.product(psi_img[al], psi_img[be]) != psi_img[ga]:
                    raise MorphismError("psi is not multiplicative",
                                        witness=f"{al},{be}")

    gen_img = {}

    def line_image(gen, n):
        # h_i(-n) = del^{n-1} h_i(-1) / (n-1)!
        img = gen_img.get((gen, n))
        if img is None:
            i = bl.names.index(gen)
            img = inv_factorial(n - 1) * target.D(phi_b(i), n - 1)
            gen_img[(gen, n)] = img
        return img

    def f(state):
        out = LinComb()
        for (w, al), c in state.items():
            img = psi_img.get(al)
            if img is None:
                img = psi(al)
                psi_img[al] = img
            for m in w:
                img = target.product(line_image(m.gen, -m.n), img)
            out.add_into(img, c)
        return out

    rep = ValidationReport(subject="universal-morphism")
    keys = [k for d in range(max_weight + 1) for k in bl.basis_keys(d, alpha_bound)]
    states = [bl.key_state(k) for k in keys]
    images = [f(s) for s in states]
    palg, pd, pdelta, peps = [], [], [], []
    t_alg = 0
    for i, u in enumerate(states):
        for j, v in enumerate(states):
            if bl.state_weight(u) + bl.state_weight(v) > max_weight:
                continue
            t_alg += 1
            if f(bl.product(u, v)) != target.product(images[i], images[j]):
                palg.append(f"f not multiplicative at {bl.format_key(keys[i])},"
                            f" {bl.format_key(keys[j])}")
    for i, s in enumerate(states):
        name = bl.format_key(keys[i])
        if f(bl.D(s)) != target.D(images[i]):
            pd.append(f"f does not intertwine del at {name}")
        want = LinComb()
        for (k1, k2), c in bl.delta(s).items():
            want.add_into(f(LinComb.single(k1)).tensor(f(LinComb.single(k2))), c)
        if target.delta(images[i]) != want:
            pdelta.append(f"f does not intertwine Delta at {name}")
        if target.eps(images[i]) != bl.eps(s):
            peps.append(f"f does not intertwine eps at {name}")
    rep.record("morphism-algebra", palg, t_alg)
    rep.record("morphism-d", pd, len(states))
    rep.record("morphism-delta", pdelta, len(states))
    rep.record("morphism-counit", peps, len(states))
    return f, rep


def induced_vertex_morphism(pres, embedding, target, max_weight=3, window=4,
                            torsion_bound=1):
    """The vertex-algebra morphism V_C -> target sending a(-1)|0> to the
    embedded generator images.

    The embedding must match all nonnegative products of the presentation
    (checked through both truncation bounds; failure raises MorphismError).
    The report then samples Psi(u_n v) = Psi(u)_n Psi(v), Delta Psi =
    (Psi x Psi) Delta and eps Psi = eps on the bounded basis."""
    vm = VacuumModule(pres)
    unit_t = _unit_of(target)
    img = {}
    for g in pres.generators:
        if g.name not in embedding:
            raise MorphismError(f"no image for generator {g.name}",
                                witness=g.name)
        img[g.name] = embedding[g.name]

    def elt_image(elt):
        """A C element sum c·D^d g mapped through D_target and the embedding."""
        out = LinComb()
        for (gname, d), c in elt.items():
            out.add_into(target.D(img[gname], d) if d else img[gname], c)
        return out

    for a in pres.generators:
        for b in pres.generators:
            bound = max(a.weight + b.weight,
                        target.state_weight(img[a.name])
                        + target.state_weight(img[b.name]))
            for n in range(0, bound + 1):
                want = elt_image(pres.table(a.name, b.name, n))
                got = target.state_mode(img[a.name], n, img[b.name])
                if got != want:
                    raise MorphismError(
                        f"embedding breaks {a.name}_{n} {b.name}",
                        witness=f"{a.name}_{n}{b.name}")
        if a.torsion and target.D(img[a.name]):
            raise MorphismError(f"image of torsion {a.name} is not D-constant",
                                witness=a.name)

    def psi(state):
        out = LinComb()
        for w, c in state.items():
            cur = unit_t
            for m in reversed(w):
                cur = target.state_mode(img[m.gen], m.n, cur)
            out.add_into(cur, c)
        return out

    rep = ValidationReport(subject="induced-morphism")
    states = vm._graded_basis_states(max_weight, torsion_bound)
    images = [psi(s) for s in states]
    mfails, t_m = [], 0
    for i, u in enumerate(states):
        for j, v in enumerate(states):
            for n in _mode_range(window):
                t_m += 1
                if psi(vm.state_mode(u, n, v)) != target.state_mode(
                        images[i], n, images[j]):
                    mfails.append(f"Psi(u({n})v) != Psi(u)({n})Psi(v) at"
                                  f" u={vm.format_state(u)}, v={vm.format_state(v)}")
    rep.record("morphism-modes", mfails, t_m)
    dfails, efails = [], []
    for i, s in enumerate(states):
        want = LinComb()
        for (w1, w2), c in vm.delta(s).items():
            want.add_into(psi(LinComb.single(w1)).tensor(psi(LinComb.single(w2))), c)
        if target.delta(images[i]) != want:
            dfails.append(f"Delta Psi != (Psi x Psi) Delta at {vm.format_state(s)}")
        if target.eps(images[i]) != vm.eps(s):
            efails.append(f"eps Psi != eps at {vm.format_state(s)}")
    rep.record("morphism-delta", dfails, len(states))
    rep.record("morphism-counit", efails, len(states))
    return psi, rep


def tensor_phi_group_like_scan(tp, alphas):
    """Brute-force group-like scan over the span of {e^alpha : alpha in alphas}."""
    return group_like_scan(tp, [tp.group_like(al) for al in alphas])
