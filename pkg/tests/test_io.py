import json
from fractions import Fraction

import pytest

from homnambu import catalog
from homnambu.axioms import is_valid
from homnambu.core import LinearMap
from homnambu.io import (
    ERROR_CODES,
    FormatError,
    corpus_files,
    parse_algebra_file,
    parse_automorphism_file,
    parse_map_file,
    parse_rational,
    parse_terms_file,
    serialize_algebra,
    serialize_automorphism,
    serialize_map,
    serialize_terms,
)


def doc(**kw):
    base = {"version": "1", "arity": 2, "dimension": 1, "parity": [0], "alpha": [["1"]], "bracket": []}
    base.update(kw)
    return json.dumps(base)


def code_of(data):
    with pytest.raises(FormatError) as exc:
        parse_algebra_file(data)
    return exc.value.code


def test_minimal_file():
    a = parse_algebra_file(doc())
    assert a.dim == 1 and a.bracket.is_zero() and is_valid(a)


def test_sl2_file():
    text = doc(dimension=3, parity=[0, 0, 0], alpha=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
               bracket=[{"args": [0, 1], "value": {"2": "1"}},
                        {"args": [2, 0], "value": {"0": 2}},
                        {"args": [1, 2], "value": {"1": "2/1"}}])
    a = parse_algebra_file(text)
    assert a.bracket == catalog.sl2().bracket
    assert is_valid(a)


def test_super_skew_conflict():
    text = doc(dimension=2, parity=[0, 0], alpha=[["1", "0"], ["0", "1"]],
               bracket=[{"args": [0, 1], "value": {"0": "1"}}, {"args": [1, 0], "value": {"0": "1"}}])
    assert code_of(text) == "super_skew_conflict"
    ok = doc(dimension=2, parity=[0, 0], alpha=[["1", "0"], ["0", "1"]],
             bracket=[{"args": [0, 1], "value": {"0": "1"}}, {"args": [1, 0], "value": {"0": "-1"}}])
    assert parse_algebra_file(ok).bracket.value((0, 1)) == (1, 0)
    rep = doc(dimension=2, parity=[0, 0], alpha=[["1", "0"], ["0", "1"]],
              bracket=[{"args": [1, 1], "value": {"0": "1"}}])
    assert code_of(rep) == "super_skew_conflict"


def test_odd_swap_is_symmetric():
    text = doc(dimension=2, parity=[0, 1], alpha=[["1", "0"], ["0", "1"]],
               bracket=[{"args": [1, 1], "value": {"0": "1"}}])
    assert parse_algebra_file(text).bracket.value((1, 1)) == (1, 0)


def test_error_codes():
    assert code_of("{") == "schema"
    assert code_of(json.dumps({"version": "2"})) == "schema"
    assert code_of(doc(dimension=2)) == "schema"
    assert code_of(doc(bracket=[{"args": [0, 3], "value": {}}])) == "index"
    assert code_of(doc(bracket=[{"args": [0, 0], "value": {"4": "1"}}])) == "index"
    assert code_of(doc(alpha=[["1/0"]])) == "rational"
    assert code_of(doc(alpha=[[0.5]])) == "rational"
    assert code_of(doc(alpha=[[True]])) == "rational"
    assert code_of(doc(dimension=2, parity=[0, 1], alpha=[["1", "1"], ["0", "1"]])) == "alpha_parity"
    assert code_of(doc(dimension=2, parity=[0, 1], alpha=[["1", "0"], ["0", "1"]],
                       bracket=[{"args": [0, 1], "value": {"0": "1"}}])) == "grading"
    with pytest.raises(ValueError):
        FormatError("nope", "x", "y")
    assert len(ERROR_CODES) == 6


def test_rationals():
    assert parse_rational("3", "x") == 3
    assert parse_rational(" -4 / 6 ", "x") == Fraction(-2, 3)
    assert parse_rational(7, "x") == 7
    for bad in ("1.5", "a", None, 1.0):
        with pytest.raises(FormatError):
            parse_rational(bad, "x")


def test_corpus_round_trip():
    files = corpus_files()
    assert len(files) >= 10
    for name, path in files.items():
        data = path.read_bytes()
        alg = parse_algebra_file(data)
        assert is_valid(alg), name
        assert serialize_algebra(alg) == data, name
        assert serialize_algebra(parse_algebra_file(serialize_algebra(alg))) == data


def test_catalog_round_trip():
    for alg in catalog.standard().values():
        again = parse_algebra_file(serialize_algebra(alg))
        assert again == alg and again.name == alg.name


def test_integer_shorthand_normalized():
    a = parse_algebra_file(doc(alpha=[[2]]))
    assert b'"2/1"' in serialize_algebra(a)


def test_map_and_terms_round_trip():
    s = catalog.sl2()
    f = LinearMap(s.space, [[0, 1, 0], [1, 0, 0], [0, 0, Fraction(-1, 2)]])
    assert parse_map_file(serialize_map(f), s.space) == f
    terms = [s.bracket, s.bracket * 0, s.bracket * Fraction(1, 3)]
    assert parse_terms_file(serialize_terms(terms), s) == terms
    assert parse_terms_file(serialize_terms(terms[:1]), s, order=3)[1:] == [s.bracket * 0] * 2
    with pytest.raises(FormatError):
        parse_terms_file(serialize_terms(terms), s, order=1)
    mats = [f.matrix, (f @ f).matrix]
    back = parse_automorphism_file(serialize_automorphism(mats), s.space)
    assert [m.matrix.tolist() for m in back] == [m.tolist() for m in mats]
