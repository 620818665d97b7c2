import pytest

from tangentcones.weyl import (
    CycleSyntaxError,
    Permutation,
    compose,
    coxeter_elements,
    cycle_type,
    enumerate_group,
    inverse,
    is_conjugate,
    is_reduced_word,
    length,
    longest_element,
    parse_cycles,
    print_cycles,
    reduced_word,
    word_product,
)


def test_parse_examples():
    assert parse_cycles("(13)(24)", 3).one_line == (3, 4, 1, 2)
    assert parse_cycles("e", 3).is_identity()
    assert parse_cycles("(123)", 2).one_line == (2, 3, 1)
    assert parse_cycles(" (1 3)(24) ", 3).one_line == (3, 4, 1, 2)


@pytest.mark.parametrize("bad", ["(16)", "(11)", "(12)(23)", "(12", "12", "()", "", "(1a)", "(e)"])
def test_parse_errors(bad):
    with pytest.raises(CycleSyntaxError):
        parse_cycles(bad, 3)


def test_print_examples():
    assert print_cycles(Permutation((3, 4, 1, 2))) == "(13)(24)"
    assert print_cycles(Permutation((1, 2, 3))) == "e"
    assert print_cycles(Permutation((1, 3, 4, 2))) == "(234)"


def test_length_examples():
    assert length(Permutation.identity(4)) == 0
    assert length(Permutation((3, 4, 1, 2))) == 4
    assert length(parse_cycles("(14)(23)", 3)) == 6 == length(longest_element(3))


def test_reduced_word_examples():
    assert reduced_word(Permutation.identity(4)) == []
    w = parse_cycles("(13)(24)", 3)
    word = reduced_word(w)
    assert len(word) == 4 and word_product(word, 4) == w
    # the worked example's decomposition (23)(12)(34)(23)
    assert is_reduced_word([2, 1, 3, 2], w)
    assert reduced_word(parse_cycles("(12)", 3)) == [1]


def test_group_operations():
    w = parse_cycles("(1342)", 3)
    assert compose(w, inverse(w)).is_identity()
    assert inverse(parse_cycles("(123)", 2)) == parse_cycles("(132)", 2)
    letters = [Permutation.simple(i, 4) for i in (2, 1, 3, 2)]
    prod = letters[0]
    for s in letters[1:]:
        prod = compose(prod, s)
    assert prod == parse_cycles("(13)(24)", 3)
    # composition applies the right factor first
    assert compose(parse_cycles("(12)", 2), parse_cycles("(23)", 2)) == parse_cycles("(123)", 2)
    with pytest.raises(ValueError):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_cycle_types():
    assert cycle_type(parse_cycles("(1234)", 3)) == (4,)
    assert is_conjugate(parse_cycles("(12)", 2), parse_cycles("(23)", 2))
    assert not is_conjugate(parse_cycles("(12)(34)", 3), parse_cycles("(1234)", 3))


def test_enumerate():
    assert len(list(enumerate_group(1))) == 2
    s3 = [print_cycles(w) for w in enumerate_group(2)]
    assert sorted(s3) == sorted(["e", "(12)", "(23)", "(123)", "(132)", "(13)"])
    assert len(set(enumerate_group(4))) == 120
    assert list(enumerate_group(3)) == list(enumerate_group(3))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reduced_words_all(n):
    for w in enumerate_group(n):
        word = reduced_word(w)
        assert word_product(word, n + 1) == w
        assert len(word) == length(w)
        assert length(inverse(w)) == length(w)


def test_roundtrip_s5():
    for w in enumerate_group(4):
        assert parse_cycles(print_cycles(w), 4) == w


@pytest.mark.parametrize("n", [2, 3])
def test_exchange(n):
    for w in enumerate_group(n):
        word = reduced_word(w)
        for a in range(1, n + 1):
            assert abs(length(word_product(word + [a], n + 1)) - len(word)) == 1


def test_coxeter_elements():
    assert {print_cycles(c) for c in coxeter_elements(2)} == {"(123)", "(132)"}
    assert {print_cycles(c) for c in coxeter_elements(3)} == {"(1234)", "(1243)", "(1342)", "(1432)"}
    assert len(coxeter_elements(4)) == 8
