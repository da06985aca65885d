"""Text and JSON forms for modes, elements, states and input files.

The text grammar is the one the CLI prints, so outputs parse back in:

    mode          L(-3)
    element       2·L + 1/2·D^2L        (D-powers of generators)
    state         L(-2)L(-1)|0⟩        (modes applied to the vacuum, any order)
    diff element  h1(-2)^2·e^{(3)}      (B_L / tensor keys; runs carry powers)

"*" is accepted wherever "·" is printed, and "|0>" wherever "|0⟩" is.
JSON forms use exact rational strings throughout.
"""

import json
import re

from .current import Mode
from .errors import InputError
from .lincomb import Fraction, LinComb, parse_rational
from .vla import Presentation, builtin

_MODE_RE = re.compile(r"^([A-Za-z_]\w*)\((-?\d+)\)$")
_WORD_RE = re.compile(r"([A-Za-z_]\w*)\((-?\d+)\)")
_STATE_RE = re.compile(r"^((?:[A-Za-z_]\w*\(-?\d+\))*)\|0[⟩>]$")
_COEFF_RE = re.compile(r"^(\d+(?:/\d+)?)\s*[·*]\s*(.+)$")
_DTERM_RE = re.compile(r"^D(?:\^(\d+))?([A-Za-z_]\w*)$")
_POWER_RE = re.compile(r"^([A-Za-z_]\w*)\((-?\d+)\)(?:\^(\d+))?$")
_ALPHA_RE = re.compile(r"^e\^\{?\((-?\d+(?:\s*,\s*-?\d+)*),?\)\}?$")


def format_mode(mode):
    return f"{mode.gen}({mode.n})"


def parse_mode(text):
    m = _MODE_RE.match(text.strip())
    if not m:
        raise InputError(f"cannot parse mode {text!r} (expected like \"L(-3)\")")
    return Mode(m.group(1), int(m.group(2)))


def mode_to_json(mode):
    return {"gen": mode.gen, "n": mode.n}


def mode_from_json(data):
    try:
        return Mode(str(data["gen"]), int(data["n"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed mode JSON: {exc}") from exc


def _split_signed(text):
    """Top-level (sign, chunk) pairs of a sum; +/- inside brackets are atoms."""
    chunks, buf, sign, depth = [], [], 1, 0
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and ch in "+-":
            if "".join(buf).strip():
                chunks.append((sign, "".join(buf).strip()))
                buf, sign = [], (1 if ch == "+" else -1)
            else:
                sign = sign if ch == "+" else -sign
        else:
            buf.append(ch)
    last = "".join(buf).strip()
    if not last:
        raise InputError(f"dangling sign in {text!r}")
    chunks.append((sign, last))
    return chunks


def _coeff_split(term):
    m = _COEFF_RE.match(term)
    if m:
        return parse_rational(m.group(1)), m.group(2).strip()
    return Fraction(1), term


# -- elements of C ---------------------------------------------------------------


def parse_element(pres, text):
    """An element of C from "2·L + 1/2·D^2L" style text; "0" is the zero."""
    text = text.strip()
    if text == "0":
        return LinComb()
    out = LinComb()
    for sign, term in _split_signed(text):
        coeff, body = _coeff_split(term)
        if body in {g.name for g in pres.generators}:
            key = (body, 0)
        else:
            m = _DTERM_RE.match(body)
            if not m:
                raise InputError(f"cannot parse element term {body!r}")
            key = (m.group(2), int(m.group(1) or 1))
        out.add_into(pres.make_element({key: 1}), sign * coeff)
    return out


def element_to_json(elt):
    return [{"coeff": str(c), "d": d, "gen": g} for (g, d), c in elt.sorted_items()]


def element_from_json(pres, rows):
    terms = {}
    try:
        for t in rows:
            k = (str(t["gen"]), int(t.get("d", 0)))
            terms[k] = terms.get(k, 0) + parse_rational(t["coeff"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed element JSON: {exc}") from exc
    return pres.make_element(terms)


# -- vacuum-module states ----------------------------------------------------------


def parse_state(vm, text):
    """A state from "L(-2)L(-1)|0⟩" style text; modes act right to left."""
    text = text.strip()
    if text == "0":
        return LinComb()
    out = LinComb()
    for sign, term in _split_signed(text):
        coeff, body = _coeff_split(term)
        m = _STATE_RE.match(body)
        if not m:
            raise InputError(f"cannot parse state term {body!r} "
                             f"(expected like \"L(-2)L(-1)|0⟩\")")
        s = vm.vacuum()
        for gen, n in reversed(_WORD_RE.findall(m.group(1))):
            s = vm.mode_apply(gen, int(n), s)
        out.add_into(s, sign * coeff)
    return out


def state_to_json(state):
    return [{"coeff": str(c), "word": [mode_to_json(m) for m in w]}
            for w, c in state.sorted_items()]


def tensor_to_json(tensor):
    """A Delta value: LinComb over (word, word) pairs."""
    return [{"coeff": str(c),
             "left": [mode_to_json(m) for m in w1],
             "right": [mode_to_json(m) for m in w2]}
            for (w1, w2), c in tensor.sorted_items()]


# -- differential / tensor keys (word, alpha) ----------------------------------------


def format_alpha(alpha):
    return "(" + ",".join(str(a) for a in alpha) + ")"


def parse_alpha(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    body = text.strip().rstrip(",")
    if not body:
        raise InputError("empty exponent tuple")
    try:
        return tuple(int(p) for p in body.split(","))
    except ValueError as exc:
        raise InputError(f"cannot parse exponent tuple {text!r}") from exc


def format_diff_key(key):
    """B_L / tensor basis key as "h1(-2)^2·e^{(3)}"."""
    word, alpha = key
    runs = []
    for m in word:
        if runs and runs[-1][0] == m:
            runs[-1][1] += 1
        else:
            runs.append([m, 1])
    parts = [format_mode(m) + (f"^{e}" if e > 1 else "") for m, e in runs]
    parts.append(f"e^{{{format_alpha(alpha)}}}")
    return "·".join(parts)


def parse_diff_element(bl, text):
    """A B_L element from "h1(-2)^2·e^{(3)}" style text."""
    text = text.strip()
    if text == "0":
        return LinComb()
    out = LinComb()
    for sign, term in _split_signed(text):
        coeff = Fraction(1)
        modes = []
        alpha = None
        for i, chunk in enumerate(_split_dots(term)):
            am = _ALPHA_RE.match(chunk)
            if am:
                if alpha is not None:
                    raise InputError(f"two exponent tags in {term!r}")
                alpha = parse_alpha(am.group(1))
                continue
            pm = _POWER_RE.match(chunk)
            if pm:
                modes.extend([(pm.group(1), int(pm.group(2)))] * int(pm.group(3) or 1))
                continue
            if i == 0:
                coeff = parse_rational(chunk)
                continue
            raise InputError(f"cannot parse {chunk!r} in diff element {term!r}")
        al = bl.semigroup.zero() if alpha is None else alpha
        out.add_into(bl.monomial(modes, al), sign * coeff)
    return out


def _split_dots(term):
    chunks, buf, depth = [], [], 0
    for ch in term:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and ch in "·*":
            chunks.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    chunks.append("".join(buf).strip())
    return [c for c in chunks if c]


def diff_state_to_json(state):
    return [{"coeff": str(c), "word": [mode_to_json(m) for m in w],
             "alpha": list(al)} for (w, al), c in state.sorted_items()]


# -- input files -----------------------------------------------------------------


def read_json_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def load_presentation(data):
    """A presentation from {"builtin": name[, "rank": r]} or inline JSON."""
    if not isinstance(data, dict):
        raise InputError("presentation must be a JSON object")
    if "builtin" in data:
        try:
            return builtin(str(data["builtin"]), int(data.get("rank", 1)))
        except (TypeError, ValueError) as exc:
            raise InputError(f"malformed builtin reference: {exc}") from exc
    return Presentation.from_json(data)


def is_construction(data):
    return isinstance(data, dict) and "semigroup" in data


def load_construction(data):
    """Pieces of a construction file: (presentation, rank, group, phi targets).

    Shape: {"presentation": {...}, "semigroup": {"rank": 1, "group": true},
    "phi": [[{"coeff": "1", "d": 0, "gen": "h"}], ...]} with one phi row per
    semigroup direction; a missing "phi" means the canonical weight-1 targets
    are intended and is left to the caller.
    """
    if "presentation" not in data:
        raise InputError("construction file needs a \"presentation\" field")
    pres = load_presentation(data["presentation"])
    sg = data.get("semigroup")
    if not isinstance(sg, dict):
        raise InputError("construction file needs a \"semigroup\" object")
    try:
        rank = int(sg["rank"])
        group = bool(sg.get("group", True))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed semigroup block: {exc}") from exc
    phi_rows = data.get("phi")
    targets = None
    if phi_rows is not None:
        if not isinstance(phi_rows, list) or len(phi_rows) != rank:
            raise InputError(f"phi must list {rank} target rows")
        targets = [element_from_json(pres, row) for row in phi_rows]
    return pres, rank, group, targets
