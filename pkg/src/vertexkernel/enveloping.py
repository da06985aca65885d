"""Vacuum modules over a presentation: the universal enveloping vertex algebra.

States are exact linear combinations of PBW words: tuples of negative modes
g(n), n <= -1, sorted by |n| descending, ties by generator index, torsion
modes last, acting on the vacuum |0>.  Straightening rewrites an arbitrary
word into this basis using the current-algebra bracket (which stays inside
negative modes).  Vertex operator modes of arbitrary states are computed by
the iterate recursion

    (a(m)w)_n = sum_i (-1)^i binom(m,i) [ a(m-i) (w_{n+i} v)
                                          - (-1)^m  w_{m+n-i} (a(i) v) ],

whose i-sums terminate by the weight grading (every PBW word has weight
>= 0, so u_n v = 0 once n > wt u + wt v - 1).  All recursions are memoized
per module instance; cached states are shared and must not be mutated.
"""

from .current import Mode, bracket, mode_normalize, mode_weight
from .errors import InputError, UnsupportedError
from .lincomb import LinComb, binom, inv_factorial, sign_pow
from .report import ValidationReport

__all__ = ["VacuumModule", "skew_defect_on", "commutator_defect_on", "jacobi_defect_on"]

_ZERO = LinComb()


class VacuumModule:
    def __init__(self, presentation):
        self.pres = presentation
        self._sort_key = {}
        self._wword = {}
        self._bracket = {}
        self._straight = {}
        self._apply = {}
        self._smode = {}
        self._dword = {}
        self._delta = {}

    # -- basic structure ------------------------------------------------------

    def vacuum(self):
        return LinComb.single(())

    def word_state(self, word):
        return LinComb.single(tuple(word))

    def embed(self, elt):
        """C -> V_C, an element to its state a(-1)|0>."""
        return mode_normalize(self.pres, elt, -1).map_keys(lambda m: (m,))

    def sort_key(self, mode):
        k = self._sort_key.get(mode)
        if k is None:
            k = (mode.n, self.pres.is_torsion(mode.gen), self.pres.gen_index(mode.gen))
            self._sort_key[mode] = k
        return k

    def word_weight(self, word):
        w = self._wword.get(word)
        if w is None:
            w = sum(mode_weight(self.pres, m) for m in word)
            self._wword[word] = w
        return w

    def state_weight(self, state):
        """Max weight over the words of a state; -1 for the zero state."""
        return max((self.word_weight(w) for w, _ in state.items()), default=-1)

    def bracket(self, a, b):
        key = (a, b)
        out = self._bracket.get(key)
        if out is None:
            out = bracket(self.pres, a, b)
            self._bracket[key] = out
        return out

    # -- straightening --------------------------------------------------------

    def straighten(self, word):
        """Rewrite a word of negative modes into the PBW basis."""
        word = tuple(word)
        out = self._straight.get(word)
        if out is not None:
            return out
        pos = -1
        for i in range(len(word) - 1):
            if self.sort_key(word[i]) > self.sort_key(word[i + 1]):
                pos = i
                break
        if pos < 0:
            out = LinComb.single(word)
        else:
            a, b = word[pos], word[pos + 1]
            out = LinComb()
            out.add_into(self.straighten(word[:pos] + (b, a) + word[pos + 2:]))
            for m, c in self.bracket(a, b).items():
                out.add_into(self.straighten(word[:pos] + (m,) + word[pos + 2:]), c)
        self._straight[word] = out
        return out

    def _prepend(self, mode, state):
        out = LinComb()
        for w, c in state.items():
            out.add_into(self.straighten((mode,) + w), c)
        return out

    # -- mode action ----------------------------------------------------------

    def _apply_word(self, mode, word):
        """mode acting on a basis word; mode may have either sign."""
        if self.pres.is_torsion(mode.gen) and mode.n != -1:
            return _ZERO
        key = (mode, word)
        out = self._apply.get(key)
        if out is not None:
            return out
        if mode.n <= -1:
            out = self.straighten((mode,) + word)
        elif not word:
            out = _ZERO
        else:
            head, rest = word[0], word[1:]
            out = self._prepend(head, self._apply_word(mode, rest))
            for m, c in self.bracket(mode, head).items():
                out.add_into(self._apply_word(m, rest), c)
        self._apply[key] = out
        return out

    def mode_apply(self, gen, n, state):
        """The current-algebra action g(n) on a state."""
        mode = Mode(gen, n)
        out = LinComb()
        for w, c in state.items():
            out.add_into(self._apply_word(mode, w), c)
        return out

    def combo_apply(self, combo, state):
        """A mode combination (LinComb over Mode) acting on a state."""
        out = LinComb()
        for m, cm in combo.items():
            for w, cw in state.items():
                out.add_into(self._apply_word(m, w), cm * cw)
        return out

    # -- translation operator ------------------------------------------------

    def _d_word(self, word):
        out = self._dword.get(word)
        if out is None:
            out = LinComb()
            for i, m in enumerate(word):
                if self.pres.is_torsion(m.gen):
                    continue  # [D, c(-1)] = 0
                shifted = word[:i] + (Mode(m.gen, m.n - 1),) + word[i + 1:]
                out.add_into(self.straighten(shifted), -m.n)
            self._dword[word] = out
        return out

    def D(self, state, power=1):
        out = state
        for _ in range(power):
            nxt = LinComb()
            for w, c in out.items():
                nxt.add_into(self._d_word(w), c)
            out = nxt
        return out

    # -- vertex operator modes -------------------------------------------------

    def _state_mode_word(self, uw, n, vw):
        if not uw:
            return LinComb.single(vw) if n == -1 else _ZERO
        wu, wv = self.word_weight(uw), self.word_weight(vw)
        if n > wu + wv - 1:
            return _ZERO
        key = (uw, n, vw)
        out = self._smode.get(key)
        if out is not None:
            return out
        head, rest = uw[0], uw[1:]
        g, m = head.gen, head.n
        out = LinComb()
        for i in range(0, self.word_weight(rest) + wv - n):
            inner = self._state_mode_word(rest, n + i, vw)
            if inner:
                c = sign_pow(i) * binom(m, i)
                for w2, c2 in inner.items():
                    out.add_into(self._apply_word(Mode(g, m - i), w2), c * c2)
        s2 = -sign_pow(m)
        for i in range(0, self.pres.weight_of(g) + wv):
            gv = self._apply_word(Mode(g, i), vw)
            if gv:
                c = s2 * sign_pow(i) * binom(m, i)
                for w2, c2 in gv.items():
                    out.add_into(self._state_mode_word(rest, m + n - i, w2), c * c2)
        self._smode[key] = out
        return out

    def state_mode(self, u, n, v):
        """u_n v for states u, v and any integer n."""
        out = LinComb()
        for uw, cu in u.items():
            for vw, cv in v.items():
                out.add_into(self._state_mode_word(uw, n, vw), cu * cv)
        return out

    # -- coproduct and counit ----------------------------------------------------

    def delta_word(self, word):
        """Coproduct of a PBW word: every mode is primitive, so Delta splits
        the word over position subsets; equal modes contribute binomials.
        Subwords of a sorted word are sorted, no straightening occurs."""
        out = self._delta.get(word)
        if out is not None:
            return out
        out = LinComb.single(((), ()))
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            run, count = word[i], j - i
            nxt = LinComb()
            for (w1, w2), c in out.items():
                for a in range(count + 1):
                    key = (w1 + (run,) * a, w2 + (run,) * (count - a))
                    nxt.add_into(LinComb.single(key, c * binom(count, a)))
            out = nxt
            i = j
        self._delta[word] = out
        return out

    def delta(self, state):
        out = LinComb()
        for w, c in state.items():
            out.add_into(self.delta_word(w), c)
        return out

    def eps(self, state):
        return state.get(())

    # -- graded basis -----------------------------------------------------------

    def _mode_menu(self, weight):
        menu = []
        for g in self.pres.generators:
            if g.torsion:
                menu.append((Mode(g.name, -1), g.weight))
            else:
                if g.weight == 0:
                    raise UnsupportedError(
                        f"free generator {g.name} has weight 0: graded pieces are "
                        "infinite-dimensional, basis enumeration unsupported")
                for w in range(g.weight, weight + 1):
                    menu.append((Mode(g.name, -(w - g.weight + 1)), w))
        menu.sort(key=lambda t: self.sort_key(t[0]))
        return menu

    def basis_words(self, weight, torsion_bound=0):
        """All PBW words of the given weight with <= torsion_bound torsion factors."""
        if weight < 0:
            return []
        menu = self._mode_menu(weight)
        out = []

        def rec(idx, left, quota, acc):
            if idx == len(menu):
                if left == 0:
                    out.append(tuple(acc))
                return
            mode, w = menu[idx]
            torsion = self.pres.is_torsion(mode.gen)
            if w == 0:
                mmax = quota
            else:
                mmax = left // w
                if torsion:
                    mmax = min(mmax, quota)
            for mult in range(0, mmax + 1):
                rec(idx + 1, left - mult * w,
                    quota - mult if torsion else quota, acc + [mode] * mult)

        rec(0, weight, torsion_bound, [])
        return sorted(out)

    def graded_dimension(self, weight, torsion_bound=0):
        return len(self.basis_words(weight, torsion_bound))

    # -- identity checks ---------------------------------------------------------

    def skew_defect(self, u, n, v):
        return skew_defect_on(self, u, n, v)

    def commutator_defect(self, u, m, v, n, w):
        return commutator_defect_on(self, u, m, v, n, w)

    def jacobi_defect(self, u, v, w, p, q, r):
        return jacobi_defect_on(self, u, v, w, p, q, r)

    # -- windowed sweeps -----------------------------------------------------------

    def _graded_basis_states(self, max_weight, torsion_bound):
        out = []
        for d in range(0, max_weight + 1):
            out.extend(self.word_state(w) for w in self.basis_words(d, torsion_bound))
        return out

    def check_vacuum_creation(self, max_weight=4, torsion_bound=1, window=4):
        rep = ValidationReport(subject="vacuum-module")
        vac = self.vacuum()
        states = self._graded_basis_states(max_weight, torsion_bound)
        fails, total = [], 0
        for s in states:
            total += 1
            if self.state_mode(s, -1, vac) != s:
                fails.append(f"u(-1)|0> != u at {self.format_state(s)}")
            for n in range(0, window + 1):
                total += 1
                if self.state_mode(s, n, vac):
                    fails.append(f"u({n})|0> != 0 at {self.format_state(s)}")
            for n in range(-window, window + 1):
                total += 1
                want = s if n == -1 else _ZERO
                if self.state_mode(vac, n, s) != want:
                    fails.append(f"|0>({n})u wrong at {self.format_state(s)}")
        rep.record("vacuum-creation", fails, total)
        return rep

    def check_d_translation(self, max_weight=4, torsion_bound=1, window=4):
        """D u = u_{-2}|0> and (D u)_n = -n u_{n-1} on a graded sample."""
        rep = ValidationReport(subject="vacuum-module")
        vac = self.vacuum()
        states = self._graded_basis_states(max_weight, torsion_bound)
        fails, total = [], 0
        for s in states:
            total += 1
            if self.D(s) != self.state_mode(s, -2, vac):
                fails.append(f"Du != u(-2)|0> at {self.format_state(s)}")
        for u in states:
            du = self.D(u)
            for v in states[:6]:
                for n in range(-window, window + 1):
                    total += 1
                    if self.state_mode(du, n, v) != (-n) * self.state_mode(u, n - 1, v):
                        fails.append(f"(Du)({n}) != -n u({n - 1}) at {self.format_state(u)}")
        rep.record("d-translation", fails, total)
        return rep

    def check_skew_symmetry(self, max_weight=3, window=3, torsion_bound=1):
        rep = ValidationReport(subject="vacuum-module")
        states = self._graded_basis_states(max_weight, torsion_bound)
        fails, total = [], 0
        for u in states:
            for v in states:
                for n in range(-window, window + 1):
                    total += 1
                    d = self.skew_defect(u, n, v)
                    if d:
                        fails.append(f"skew-symmetry fails at "
                                     f"({self.format_state(u)})_{n}({self.format_state(v)})")
        rep.record("skew-symmetry", fails, total)
        return rep

    def check_commutator(self, max_weight=4, window=3, torsion_bound=1):
        rep = ValidationReport(subject="vacuum-module")
        states = self._graded_basis_states(max_weight, torsion_bound)
        fails, total = [], 0
        for u in states:
            for v in states:
                for w in states:
                    for m in range(-window, window + 1):
                        for n in range(-window, window + 1):
                            total += 1
                            if self.commutator_defect(u, m, v, n, w):
                                fails.append(
                                    f"[u({m}),v({n})]w defect at u={self.format_state(u)}, "
                                    f"v={self.format_state(v)}, w={self.format_state(w)}")
        rep.record("borcherds-commutator", fails, total)
        return rep

    def check_jacobi(self, max_weight=3, window=3, torsion_bound=1):
        rep = ValidationReport(subject="vacuum-module")
        states = self._graded_basis_states(max_weight, torsion_bound)
        rng = range(-window, window + 1)
        fails, total = [], 0
        for u in states:
            for v in states:
                for w in states:
                    for p in rng:
                        for q in rng:
                            for r in rng:
                                total += 1
                                if self.jacobi_defect(u, v, w, p, q, r):
                                    fails.append(
                                        f"Jacobi coefficient ({p},{q},{r}) defect at "
                                        f"u={self.format_state(u)}, v={self.format_state(v)}, "
                                        f"w={self.format_state(w)}")
        rep.record("jacobi-identity", fails, total)
        return rep

    # -- formatting ---------------------------------------------------------------

    def format_word(self, word):
        return "".join(f"{m.gen}({m.n})" for m in word) + "|0⟩"

    def format_state(self, state):
        return state.format(self.format_word)


# -- identity defects, generic over mode algebras -------------------------------------
# alg provides state_mode(u, n, v), state_weight(state) and (for skew) D(state, power);
# state_weight must bound truncation: u_n v = 0 once n > wt(u) + wt(v) - 1.


def skew_defect_on(alg, u, n, v):
    """u_n v - sum_j (-1)^(n+j+1)/j! D^j (v_{n+j} u); zero iff skew-symmetry holds."""
    out = alg.state_mode(u, n, v)
    bound = alg.state_weight(u) + alg.state_weight(v)
    for j in range(0, max(bound - n, 0) + 1):
        p = alg.state_mode(v, n + j, u)
        if p:
            out.add_into(alg.D(p, j), -sign_pow(n + j + 1) * inv_factorial(j))
    return out


def commutator_defect_on(alg, u, m, v, n, w):
    """[u_m, v_n]w - sum_j binom(m,j) (u_j v)_{m+n-j} w."""
    out = alg.state_mode(u, m, alg.state_mode(v, n, w))
    out.add_into(alg.state_mode(v, n, alg.state_mode(u, m, w)), -1)
    for j in range(0, alg.state_weight(u) + alg.state_weight(v)):
        b = binom(m, j)
        if b:
            ujv = alg.state_mode(u, j, v)
            if ujv:
                out.add_into(alg.state_mode(ujv, m + n - j, w), -b)
    return out


def jacobi_defect_on(alg, u, v, w, p, q, r):
    """Coefficient of x0^p x1^q x2^r in the three-term Jacobi identity on w.

    Returns (left tail) - (right side); zero iff the identity holds there.
    """
    wu, wv, ww = alg.state_weight(u), alg.state_weight(v), alg.state_weight(w)
    out = LinComb()
    for i in range(0, max(wv + ww + r, -1) + 1):
        inner = alg.state_mode(v, i - r - 1, w)
        if inner:
            out.add_into(alg.state_mode(u, -p - q - i - 2, inner),
                         sign_pow(i) * binom(-p - 1, i))
    for i in range(0, max(wu + ww + q, -1) + 1):
        inner = alg.state_mode(u, i - q - 1, w)
        if inner:
            out.add_into(alg.state_mode(v, -p - r - i - 2, inner),
                         sign_pow(p + i) * binom(-p - 1, i))
    for i in range(0, max(wu + wv + p, -1) + 1):
        uv = alg.state_mode(u, i - p - 1, v)
        if uv:
            out.add_into(alg.state_mode(uv, -q - r - i - 2, w),
                         -sign_pow(i) * binom(q + i, i))
    return out
