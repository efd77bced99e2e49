import json
from fractions import Fraction

import pytest

from algen.algebra import is_generating
from algen.fields import GF, QQ
from algen.forster import forster_lift
from algen.integral import (
    bad_primes,
    integral_matrix_algebra,
    integral_split_etale,
    integral_zero_module,
    verify_global_generation,
)
from algen.ioformat import (
    FormatError,
    ParsedAlgebra,
    algebra_hash,
    bad_primes_doc,
    budget_doc,
    canonical_json,
    elements_doc,
    generation_certificate_doc,
    global_generation_doc,
    lift_certificate_doc,
    local_report_doc,
    mingen_report_doc,
    parse_algebra,
    parse_budget,
    parse_int,
    parse_lift_certificate,
    parse_scalar,
    scalar_str,
    serialize_algebra,
    verify_certificate,
)
from algen.search import DEFAULT_BUDGET, SearchBudget, min_generators
from algen.zoo import (
    canonical_matrix_generators,
    matrix_algebra,
    quaternion_algebra,
    split_etale,
)


def _reload(doc):
    """Through the wire: canonical text and back."""
    return json.loads(canonical_json(doc))


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def test_parse_int():
    assert parse_int("42") == 42
    assert parse_int("-17") == -17
    assert parse_int(7) == 7
    for bad in (True, "x", "1.5", "", None, [1]):
        with pytest.raises(FormatError):
            parse_int(bad)


def test_scalars():
    assert scalar_str(6) == "6"
    assert scalar_str(Fraction(-3, 4)) == "-3/4"
    assert scalar_str(Fraction(8, 2)) == "4"
    assert parse_scalar(QQ, "3/4") == Fraction(3, 4)
    assert parse_scalar(QQ, "-2") == Fraction(-2)
    # num/den over a prime field means num * den^-1
    assert parse_scalar(GF(5), "2/3") == 4
    assert parse_scalar(GF(5), 7) == 2
    with pytest.raises(FormatError):
        parse_scalar(GF(5), "1/5")
    with pytest.raises(FormatError):
        parse_scalar(QQ, True)


# ---------------------------------------------------------------------------
# Algebra documents
# ---------------------------------------------------------------------------


ROUND_TRIP_ALGEBRAS = [
    matrix_algebra(GF(2), 2),
    matrix_algebra(GF(3), 2),
    split_etale(QQ, 3),
    quaternion_algebra(QQ),
    integral_matrix_algebra(2),
    integral_split_etale(3),
    integral_zero_module((6, 0)),
    integral_zero_module(()),
]


def test_algebra_round_trip():
    for alg in ROUND_TRIP_ALGEBRAS:
        doc = serialize_algebra(alg)
        parsed = parse_algebra(_reload(doc))
        assert parsed.algebra == alg
        assert parsed.presentation is None
        assert canonical_json(serialize_algebra(parsed.algebra)) == canonical_json(doc)


def test_algebra_hash_distinguishes():
    hashes = {algebra_hash(alg) for alg in ROUND_TRIP_ALGEBRAS}
    assert len(hashes) == len(ROUND_TRIP_ALGEBRAS)
    assert algebra_hash(matrix_algebra(GF(2), 2)) == algebra_hash(matrix_algebra(GF(2), 2))


def _ring_presentation_doc():
    # Z[t]/(t^2 - 1, 2 + 2t) in raw generator coordinates (1, t)
    return {
        "format": "algen-algebra",
        "version": "1",
        "base": "Z",
        "presentation": {"generators": "2", "relations": [["2", "2"]]},
        "ops": [
            {
                "arity": "2",
                "role": "product",
                "entries": [
                    ["0", "0", "0", "1"],
                    ["0", "1", "1", "1"],
                    ["1", "0", "1", "1"],
                    ["1", "1", "0", "1"],
                ],
            },
            {"arity": "0", "role": "unit", "entries": [["0", "1"]]},
        ],
    }


def test_parse_raw_presentation():
    parsed = parse_algebra(_ring_presentation_doc())
    assert parsed.is_integral
    assert parsed.presentation is not None
    assert parsed.algebra.factors == (2, 0)
    # raw coordinates are mapped into canonical ones
    raw = [["1", "0"], ["1", "1"]]
    mapped = parsed.parse_elements(raw)
    assert len(mapped) == 2 and all(len(v) == 2 for v in mapped)
    assert mapped[0] == parsed.presentation.map_element((1, 0))


def test_parse_algebra_errors():
    good = serialize_algebra(matrix_algebra(GF(2), 2))

    def broken(**changes):
        doc = _reload(good)
        doc.update(changes)
        return doc

    with pytest.raises(FormatError):
        parse_algebra(broken(format="something-else"))
    with pytest.raises(FormatError):
        parse_algebra(broken(version="2"))
    with pytest.raises(FormatError):
        parse_algebra(broken(base="F4"))
    with pytest.raises(FormatError):
        parse_algebra(broken(dim=None))
    # roles must be unique and include a product
    doc = _reload(good)
    doc["ops"][0].pop("role")
    with pytest.raises(FormatError):
        parse_algebra(doc)
    doc = _reload(good)
    doc["ops"].append(dict(doc["ops"][0]))
    with pytest.raises(FormatError):
        parse_algebra(doc)
    # tensor row length must match the arity
    doc = _reload(good)
    doc["ops"][0]["entries"][0] = ["0", "0", "1"]
    with pytest.raises(FormatError):
        parse_algebra(doc)
    # a Z algebra needs exactly one presentation style
    doc = _ring_presentation_doc()
    doc["factors"] = ["2", "0"]
    with pytest.raises(FormatError):
        parse_algebra(doc)
    doc = _ring_presentation_doc()
    del doc["presentation"]
    with pytest.raises(FormatError):
        parse_algebra(doc)


def test_parse_elements():
    parsed = ParsedAlgebra(split_etale(QQ, 2))
    assert parsed.parse_elements([["1/2", "-3"]]) == ((Fraction(1, 2), Fraction(-3)),)
    with pytest.raises(FormatError):
        parsed.parse_elements([["1"]])
    with pytest.raises(FormatError):
        parsed.parse_elements("nope")
    zmod = ParsedAlgebra(integral_zero_module((6,)))
    assert zmod.parse_elements([["7"]]) == ((1,),)
    with pytest.raises(FormatError):
        zmod.parse_elements([["1", "2"]])


def test_budget_round_trip():
    budget = SearchBudget(max_exhaustive=500, random_trials=3, seed=9, coeff_height=4)
    assert parse_budget(_reload(budget_doc(budget))) == budget
    with pytest.raises(FormatError):
        parse_budget({"max_exhaustive": "0", "random_trials": "1", "seed": "1", "coeff_height": "1"})


# ---------------------------------------------------------------------------
# Certificate documents
# ---------------------------------------------------------------------------


def test_generation_certificate_verify():
    alg = matrix_algebra(GF(2), 2)
    parsed = ParsedAlgebra(alg)
    ok, cert = is_generating(alg, canonical_matrix_generators(GF(2), 2))
    assert ok
    doc = generation_certificate_doc(alg, cert)
    assert verify_certificate(parsed, _reload(doc)) == (True, "ok")
    # a certificate of failure is also replayable
    ok, cert0 = is_generating(alg, [(0, 0, 0, 0)])
    assert not ok
    doc0 = generation_certificate_doc(alg, cert0)
    assert verify_certificate(parsed, _reload(doc0)) == (True, "ok")
    # honest tampering attempts
    bad = _reload(doc)
    bad["elements"][0][0] = "0"
    assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["closure_dim"] = "3"
    assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["monomial_count"] = str(int(bad["monomial_count"]) + 1)
    assert verify_certificate(parsed, bad)[0] is False
    # wrong algebra
    other = ParsedAlgebra(matrix_algebra(GF(3), 2))
    ok, detail = verify_certificate(other, _reload(doc))
    assert not ok and "hash" in detail


def test_mingen_verify():
    alg = split_etale(GF(2), 3)
    parsed = ParsedAlgebra(alg)
    report = min_generators(alg, DEFAULT_BUDGET)
    doc = mingen_report_doc(alg, report, DEFAULT_BUDGET)
    assert verify_certificate(parsed, _reload(doc)) == (True, "ok")
    for field, value in [
        ("n_upper", "3"),
        ("lower_bound_certified", False),
        ("unital", True),
    ]:
        bad = _reload(doc)
        bad[field] = value
        assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["attempts"][1]["tested"] = "7"
    assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["certificate"]["elements"][0][0] = "1"
    assert verify_certificate(parsed, bad)[0] is False


def test_bad_primes_verify():
    A = integral_split_etale(3)
    parsed = ParsedAlgebra(A)
    elements = ((1, 2, 3),)
    report = bad_primes(A, elements)
    doc = bad_primes_doc(A, elements, report, 1_000_000)
    assert _reload(doc)["report"]["primes"] == ["2"]
    assert verify_certificate(parsed, _reload(doc)) == (True, "ok")
    bad = _reload(doc)
    bad["report"]["primes"] = ["2", "3"]
    assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["elements"][0][2] = "4"
    assert verify_certificate(parsed, bad)[0] is False


def test_global_generation_verify():
    A = integral_zero_module((6, 0))
    parsed = ParsedAlgebra(A)
    elements = ((1, 0), (0, 1))
    report = verify_global_generation(A, elements)
    doc = global_generation_doc(A, elements, report, 1_000_000)
    assert verify_certificate(parsed, _reload(doc)) == (True, "ok")
    bad = _reload(doc)
    bad["report"]["generates"] = False
    assert verify_certificate(parsed, bad)[0] is False
    bad = _reload(doc)
    bad["report"]["subgroup"][0][0] = "5"
    assert verify_certificate(parsed, bad)[0] is False


def test_lift_round_trip_and_verify():
    A = integral_zero_module((3, 0))
    parsed = ParsedAlgebra(A)
    cert = forster_lift(A, 2)
    doc = lift_certificate_doc(A, cert, 1_000_000)
    back, bound = parse_lift_certificate(_reload(doc))
    assert back == cert and bound == 1_000_000
    assert canonical_json(lift_certificate_doc(A, back, bound)) == canonical_json(doc)
    assert verify_certificate(parsed, _reload(doc)) == (True, "ok")
    # rewriting a subgroup row to another basis of the same lattice is
    # caught by the canonical-form comparison
    bad = _reload(doc)
    r0 = [int(x) for x in bad["verification"]["subgroup"][0]]
    r1 = [int(x) for x in bad["verification"]["subgroup"][1]]
    bad["verification"]["subgroup"][0] = [str(a + b) for a, b in zip(r0, r1)]
    ok, detail = verify_certificate(parsed, bad)
    assert not ok and "canonical" in detail
    bad = _reload(doc)
    bad["steps"][0]["completions"][0]["excluded"] = ["5"]
    assert verify_certificate(parsed, bad)[0] is False


def test_verify_rejects_mismatched_kinds():
    A = integral_split_etale(3)
    alg = split_etale(GF(2), 3)
    ok, cert = is_generating(alg, [(0, 1, 1)])
    gen_doc = generation_certificate_doc(alg, cert)
    # field certificate presented with a Z algebra: hash cannot match
    assert verify_certificate(ParsedAlgebra(A), _reload(gen_doc))[0] is False
    bad = _reload(gen_doc)
    bad["kind"] = "unheard-of"
    ok, detail = verify_certificate(ParsedAlgebra(alg), bad)
    assert not ok and "kind" in detail
    assert verify_certificate(ParsedAlgebra(alg), {"format": "x"})[0] is False


def test_elements_and_local_report_docs():
    A = integral_zero_module((6,))
    assert elements_doc(A, [(5,), (1,)]) == [["5"], ["1"]]
    alg = split_etale(QQ, 2)
    assert elements_doc(alg, [(Fraction(1, 2), Fraction(3))]) == [["1/2", "3"]]
    from algen.forster import local_requirement

    rep = local_requirement(integral_zero_module((2, 2)), 1)
    doc = local_report_doc(rep)
    assert doc["status"] == "counterexample" and doc["prime"] == "2"
    assert doc["support"]["primes"] == ["2"]
    assert doc["completions"][0][1] == "certified_none"
