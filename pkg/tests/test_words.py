import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palfree.eertree import Eertree
from palfree.words import (FactorSet, complement, factors, palindrome_count,
                           palindrome_set, palindrome_set_scan, parikh,
                           read_words, reverse, write_words)

binary = st.text(alphabet="01", max_size=60)
quaternary = st.text(alphabet="0123", max_size=50)


def test_factors_basic():
    assert factors("001011", 2) == {"00", "01", "10", "11"}
    assert factors("anything-long", 0) == {""}
    assert factors("01", 5) == set()


def test_factors_of_p_prefix(p_word):
    assert factors(p_word[:35], 2) == {"01", "12", "21", "02", "10"}


@given(quaternary, st.integers(0, 12))
def test_factor_count_bound(w, n):
    f = factors(w, n)
    if n > len(w):
        assert f == set()
    else:
        assert len(f) <= min(len(w) - n + 1, 4 ** n)


def test_palindrome_set_small():
    assert palindrome_set("0") == {"", "0"}
    assert palindrome_count("0") == 2


def test_palindrome_set_periodic_baseline():
    w = ("001011" * 20000)[:100000]
    assert palindrome_count(w) == 9


@given(quaternary)
def test_palindrome_scan_agreement(w):
    assert palindrome_set(w) == palindrome_set_scan(w)


@given(binary)
def test_palindromes_closed_under_reversal(w):
    for x in palindrome_set(w):
        assert x == reverse(x)


@given(st.text(alphabet="012", max_size=40), st.text(alphabet="012", max_size=40))
def test_parikh_additive(u, v):
    a = parikh(u, 3)
    b = parikh(v, 3)
    assert parikh(u + v, 3) == tuple(x + y for x, y in zip(a, b))


def test_parikh_prefix_of_p(p_word):
    # direct count over the 11-letter prefix
    assert parikh(p_word[:11], 3) == (4, 4, 3)


def test_palindrome_count_monotone(nu_word):
    counts = [palindrome_count(nu_word[:L]) for L in (10, 100, 1000, 5000)]
    assert counts == sorted(counts)


@given(binary)
def test_reverse_complement_involutions(w):
    assert reverse(reverse(w)) == w
    assert complement(complement(w)) == w


def test_complement_requires_binary():
    with pytest.raises(ValueError):
        complement("012")
    assert complement("001011") == "110100"
    assert reverse("011") == "110"


def test_eertree_undo_random():
    rng = random.Random(99)
    tree = Eertree()
    stack = []
    for step in range(4000):
        if stack and rng.random() < 0.45:
            tree.pop()
            stack.pop()
        else:
            c = rng.choice("01")
            tree.push(c)
            stack.append(c)
        if step % 400 == 0:
            w = "".join(stack)
            assert sorted(tree.alive_words()) == sorted(palindrome_set_scan(w) - {""})


def test_factor_set_wrapper(p_word):
    fs = FactorSet(p_word[:1000])
    assert fs.count(2) == 5
    assert "02" in fs
    assert "20" not in fs
    # factorial closure: subfactors of stored factors are factors
    for w in fs.of_length(6):
        assert w[1:] in fs and w[:-1] in fs


def test_word_io_roundtrip(tmp_path):
    words = ["0", "01", "0101", "2103"]
    path = tmp_path / "words.txt"
    write_words(path, words)
    assert read_words(path) == sorted(words)
