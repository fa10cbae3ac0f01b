import pytest
from hypothesis import given

from fungal.errors import EmptyWord, IllegalSymbol, MonotoneWord, NotPrimitive
from fungal.scheme import (
    UpdateScheme,
    is_primitive,
    normalize,
    parse_scheme,
    primitive_root,
    shifted_cycles,
)

from .conftest import schemes, words


def test_parse_counts():
    z = parse_scheme("HVVHHHV")
    assert (z.k, z.h, z.v) == (7, 4, 3)


def test_parse_single_symbol():
    z = parse_scheme("H")
    assert (z.h, z.v, z.k) == (1, 0, 1)


def test_parse_lowercase_and_whitespace():
    assert parse_scheme(" hvv \n").word == "HVV"


def test_illegal_symbol_position():
    with pytest.raises(IllegalSymbol) as exc:
        parse_scheme("HVX")
    assert exc.value.position == 2


@pytest.mark.parametrize("text", ["", "   "])
def test_empty_word(text):
    with pytest.raises(EmptyWord):
        parse_scheme(text)


def test_rule_is_cyclic():
    z = UpdateScheme("HVV")
    assert [z.rule(s) for s in range(1, 8)] == list("HVVHVVH")


def test_normalize_already_normal():
    n = normalize("HVVHHHV")
    assert (n.rotated, n.wait_steps, n.normalized.word) == (False, 0, "HVVHHHV")


def test_normalize_absorbs_leading_run():
    n = normalize("VHHV")
    assert (n.rotated, n.wait_steps, n.normalized.word) == (False, 1, "HHVV")


def test_normalize_rotates_v_to_h():
    n = normalize("VHVH")
    assert n.rotated and n.normalized.word == "HVHV" and n.wait_steps == 0


def test_normalize_h_both_ends():
    n = normalize("HVVH")
    assert n.rotated
    assert n.normalized.word[0] == "H" and n.normalized.word[-1] == "V"


@pytest.mark.parametrize("word", ["VVVV", "HHH"])
def test_normalize_monotone(word):
    with pytest.raises(MonotoneWord):
        normalize(word)


@pytest.mark.parametrize("word,root", [("HVHV", "HV"), ("HVVHHHV", "HVVHHHV"), ("HHVHHV", "HHV")])
def test_primitive_root(word, root):
    assert primitive_root(word).word == root


def test_primitive_root_brute_force_periods():
    # independent check: smallest p dividing k whose shift leaves the word fixed
    for word in ["HVVHHHV", "HHVHHV", "HVHVHV", "HHHH", "HVVHVV"]:
        k = len(word)
        p = min(p for p in range(1, k + 1) if k % p == 0 and word[p:] + word[:p] == word)
        assert primitive_root(word).k == p


def test_shifted_cycles_z1():
    ws = [w.word for w in shifted_cycles("HVVHHHV")]
    assert len(ws) == 6 and ws[0] == "VVHHHVH"


def test_shifted_cycles_hv():
    assert [w.word for w in shifted_cycles("HV")] == ["VH"]


def test_shifted_cycles_requires_primitive():
    with pytest.raises(NotPrimitive):
        shifted_cycles("HVHV")


@given(words(min_size=2))
def test_normalize_idempotent(word):
    if "H" not in word or "V" not in word:
        return
    n = normalize(word)
    assert n.normalized.word.startswith("H") and n.normalized.word.endswith("V")
    again = normalize(n.normalized)
    assert again.normalized == n.normalized and again.wait_steps == 0 and not again.rotated


@given(words(min_size=2))
def test_normalize_preserves_counts(word):
    if "H" not in word or "V" not in word:
        return
    n = normalize(word)
    z = UpdateScheme(word)
    assert n.normalized.k == z.k
    if n.rotated:
        assert (n.normalized.h, n.normalized.v) == (z.v, z.h)
    else:
        assert (n.normalized.h, n.normalized.v) == (z.h, z.v)


@given(words())
def test_root_repeats_to_word(word):
    r = primitive_root(word)
    assert r.word * (len(word) // r.k) == word
    assert is_primitive(r)


@given(schemes(kmax=12))
def test_shifted_cycles_distinct(z):
    ws = [w.word for w in shifted_cycles(z)]
    assert len(ws) == z.k - 1
    assert len(set(ws)) == len(ws) and z.word not in ws
