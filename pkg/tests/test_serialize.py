from fractions import Fraction

import pytest

from vertexkernel import serialize as ser
from vertexkernel.constructions import SemigroupL, bl_build
from vertexkernel.current import Mode
from vertexkernel.enveloping import VacuumModule
from vertexkernel.errors import InputError
from vertexkernel.lincomb import LinComb
from vertexkernel.vla import abelian, heisenberg, virasoro


def W(*modes):
    return tuple(Mode(g, n) for g, n in modes)


def S(word, coeff=1):
    return LinComb.single(word, coeff)


def test_mode_roundtrip():
    m = Mode("L", -3)
    assert ser.parse_mode(ser.format_mode(m)) == m
    assert ser.mode_from_json(ser.mode_to_json(m)) == m
    with pytest.raises(InputError):
        ser.parse_mode("L[3]")
    with pytest.raises(InputError):
        ser.mode_from_json({"gen": "L"})


def test_parse_element_forms():
    pres = virasoro()
    assert ser.parse_element(pres, "L") == pres.element("L")
    assert ser.parse_element(pres, "DL") == pres.make_element({("L", 1): 1})
    assert ser.parse_element(pres, "D^2L") == pres.make_element({("L", 2): 1})
    got = ser.parse_element(pres, "2·L + 1/2·DL - c")
    want = (2 * pres.element("L") + Fraction(1, 2) * pres.make_element({("L", 1): 1})
            - pres.element("c"))
    assert got == want
    assert ser.parse_element(pres, "2*L") == 2 * pres.element("L")
    assert ser.parse_element(pres, "-L") == -pres.element("L")
    assert not ser.parse_element(pres, "0")


def test_parse_element_rejects_junk():
    pres = virasoro()
    with pytest.raises(InputError):
        ser.parse_element(pres, "Q")
    with pytest.raises(InputError):
        ser.parse_element(pres, "2·")
    with pytest.raises(InputError):
        ser.parse_element(pres, "")


def test_element_json_roundtrip():
    pres = virasoro()
    e = 2 * pres.element("L") - Fraction(1, 3) * pres.make_element({("L", 2): 1})
    assert ser.element_from_json(pres, ser.element_to_json(e)) == e


def test_parse_state_sorted_and_ket_variants():
    vm = VacuumModule(virasoro())
    want = S(W(("L", -2), ("L", -1)))
    assert ser.parse_state(vm, "L(-2)L(-1)|0⟩") == want
    assert ser.parse_state(vm, "L(-2)L(-1)|0>") == want
    assert ser.parse_state(vm, "|0>") == vm.vacuum()
    assert not ser.parse_state(vm, "0")


def test_parse_state_applies_modes_in_order():
    # words are operator strings, so out-of-order input straightens
    vm = VacuumModule(virasoro())
    got = ser.parse_state(vm, "L(-1)L(-2)|0>")
    assert got == vm.straighten(W(("L", -1), ("L", -2)))
    # positive modes act too: h(1)h(-1)|0> = [h(1), h(-1)]|0> = c(-1)|0>
    vmh = VacuumModule(heisenberg(1))
    assert ser.parse_state(vmh, "h(1)h(-1)|0>") == S(W(("c", -1)))


def test_parse_state_coefficients():
    vm = VacuumModule(virasoro())
    got = ser.parse_state(vm, "2·L(-2)|0> - 1/2·|0>")
    assert got == S(W(("L", -2)), 2) + S((), Fraction(-1, 2))


def test_parse_state_rejects_junk():
    vm = VacuumModule(virasoro())
    with pytest.raises(InputError):
        ser.parse_state(vm, "L(-2)")
    with pytest.raises(InputError):
        ser.parse_state(vm, "L(-2)|0> +")


def test_state_and_tensor_json():
    vm = VacuumModule(virasoro())
    s = S(W(("L", -2)), Fraction(1, 2))
    assert ser.state_to_json(s) == [
        {"coeff": "1/2", "word": [{"gen": "L", "n": -2}]}]
    d = vm.delta(S(W(("L", -1))))
    rows = ser.tensor_to_json(d)
    assert {"coeff": "1", "left": [], "right": [{"gen": "L", "n": -1}]} in rows
    assert len(rows) == 2


def test_alpha_forms():
    assert ser.format_alpha((3,)) == "(3)"
    assert ser.format_alpha((1, -2)) == "(1,-2)"
    assert ser.parse_alpha("(3)") == (3,)
    assert ser.parse_alpha("(3,)") == (3,)
    assert ser.parse_alpha("(1, -2)") == (1, -2)
    with pytest.raises(InputError):
        ser.parse_alpha("()")


def test_diff_key_format():
    key = (W(("h1", -2), ("h1", -2)), (3,))
    assert ser.format_diff_key(key) == "h1(-2)^2·e^{(3)}"
    assert ser.format_diff_key(((), (0,))) == "e^{(0)}"
    assert ser.format_diff_key((W(("h", -2), ("h", -1)), (1,))) == "h(-2)·h(-1)·e^{(1)}"


def test_parse_diff_element_roundtrip():
    bl = bl_build(SemigroupL(1))
    s = (bl.monomial([("h", -2), ("h", -2)], (3,))
         + bl.monomial([("h", -1)], (-1,)) * Fraction(1, 2))
    text = bl.format_state(s)
    assert ser.parse_diff_element(bl, text) == s
    assert ser.parse_diff_element(bl, "e^{(2)}") == bl.group_like((2,))
    assert ser.parse_diff_element(bl, "h(-1)") == bl.monomial([("h", -1)])
    assert ser.parse_diff_element(bl, "3/2·h(-1)·e^{(1)}") == (
        bl.monomial([("h", -1)], (1,)) * Fraction(3, 2))


def test_parse_diff_element_rejects_junk():
    bl = bl_build(SemigroupL(1))
    with pytest.raises(InputError):
        ser.parse_diff_element(bl, "h(-1)·q")
    with pytest.raises(InputError):
        ser.parse_diff_element(bl, "e^{(1)}·e^{(2)}")


def test_load_presentation_builtin_and_inline():
    pres = ser.load_presentation({"builtin": "heisenberg", "rank": 2})
    assert [g.name for g in pres.generators] == ["h1", "h2", "c"]
    inline = virasoro().to_json()
    pres2 = ser.load_presentation(inline)
    assert pres2.to_json() == inline
    with pytest.raises(InputError):
        ser.load_presentation({"builtin": "nope"})
    with pytest.raises(InputError):
        ser.load_presentation([1, 2])


def test_load_construction():
    data = {
        "presentation": {"builtin": "abelian", "rank": 1},
        "semigroup": {"rank": 1, "group": True},
        "phi": [[{"coeff": "1", "d": 0, "gen": "h"}]],
    }
    pres, rank, group, targets = ser.load_construction(data)
    assert rank == 1 and group is True
    assert targets == [pres.element("h")]
    assert ser.is_construction(data)
    assert not ser.is_construction({"builtin": "abelian"})


def test_load_construction_defaults_and_errors():
    base = {"presentation": {"builtin": "abelian", "rank": 2},
            "semigroup": {"rank": 2, "group": False}}
    pres, rank, group, targets = ser.load_construction(base)
    assert (rank, group, targets) == (2, False, None)
    with pytest.raises(InputError):
        ser.load_construction({"semigroup": {"rank": 1}})
    with pytest.raises(InputError):
        ser.load_construction({"presentation": {"builtin": "abelian"}})
    with pytest.raises(InputError):
        ser.load_construction({"presentation": {"builtin": "abelian"},
                               "semigroup": {"rank": 2},
                               "phi": [[{"coeff": "1", "d": 0, "gen": "h"}]]})


def test_read_json_file_errors(tmp_path):
    with pytest.raises(InputError):
        ser.read_json_file(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"builtin": "vira')
    with pytest.raises(InputError):
        ser.read_json_file(bad)
