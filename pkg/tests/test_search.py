import pytest

from algen.algebra import is_generating, replay_certificate
from algen.fields import GF, QQ
from algen.search import (
    DEFAULT_BUDGET,
    SearchBudget,
    completable,
    min_generators,
    random_probe,
)
from algen.zoo import matrix_algebra, split_etale, zero_algebra


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_exhaustive=0)
    with pytest.raises(ValueError):
        SearchBudget(random_trials=-1)
    with pytest.raises(ValueError):
        SearchBudget(coeff_height=0)


def test_min_generators_zero_algebra():
    rep = min_generators(zero_algebra(GF(2), 2))
    assert rep.n_upper == 2
    assert rep.lower_bound_certified
    assert [a.n for a in rep.attempts] == [0, 1, 2]
    assert all(a.exhaustive for a in rep.attempts)
    assert replay_certificate(zero_algebra(GF(2), 2), rep.certificate)


def test_min_generators_etale_f2_cubed():
    A = split_etale(GF(2), 3)
    rep = min_generators(A)
    assert rep.n_upper == 2 and rep.lower_bound_certified
    # lower bound came from exhausting all 8 singletons
    assert rep.attempts[1].total == 8 and rep.attempts[1].tested == 8
    assert not rep.attempts[1].found


def test_min_generators_mat2_f2():
    A = matrix_algebra(GF(2), 2)
    rep = min_generators(A)
    assert rep.n_upper == 2 and rep.lower_bound_certified
    assert rep.attempts[1].total == 16 and not rep.attempts[1].found
    assert rep.certificate.method == "exhaustive"
    assert is_generating(A, rep.certificate.elements)[0]


def test_min_generators_returns_lex_smallest():
    A = split_etale(GF(2), 2)
    rep = min_generators(A)
    assert rep.n_upper == 2
    assert rep.certificate.elements == ((0, 1), (1, 0))
    assert rep.certificate.index == 6  # 1 * 4 + 2 in the pair enumeration


def test_min_generators_requires_finite_field():
    with pytest.raises(ValueError):
        min_generators(split_etale(QQ, 2))


def test_min_generators_unital_flag():
    A = split_etale(GF(2), 2)
    assert min_generators(A).n_upper == 2
    rep = min_generators(A, unital=True)
    assert rep.n_upper == 1 and rep.unital
    assert rep.certificate.unital


def test_min_generators_zero_dim():
    rep = min_generators(zero_algebra(GF(3), 0))
    assert rep.n_upper == 0 and rep.lower_bound_certified
    assert rep.certificate.elements == ()


def test_random_probe():
    assert random_probe(zero_algebra(QQ, 3), 2) is None
    cert = random_probe(split_etale(GF(5), 3), 1)
    assert cert is not None and cert.method == "random"
    assert cert.seed == DEFAULT_BUDGET.seed
    assert is_generating(split_etale(GF(5), 3), cert.elements)[0]
    # deterministic given the budget
    again = random_probe(split_etale(GF(5), 3), 1)
    assert again == cert


def test_random_probe_over_q_respects_height():
    cert = random_probe(split_etale(QQ, 2), 1, SearchBudget(coeff_height=3, random_trials=50))
    assert cert is not None
    assert all(abs(x) <= 3 for v in cert.elements for x in v)


def test_completable_empty_partial():
    A = matrix_algebra(GF(2), 2)
    res = completable(A, [], 2)
    assert res.status == "found"
    assert len(res.extension) == 2
    assert res.first == res.extension[0]
    assert res.certificate.generates
    assert is_generating(A, res.extension)[0]


def test_completable_with_partial():
    A = matrix_algebra(GF(2), 2)
    res = completable(A, [(1, 0, 0, 0)], 2)
    assert res.status == "found"
    assert len(res.extension) == 1
    assert is_generating(A, [(1, 0, 0, 0), res.extension[0]])[0]


def test_completable_certified_none():
    A = split_etale(GF(2), 2)
    res = completable(A, [(0, 0)], 1)
    assert res.status == "certified_none"
    assert res.tested == 1  # zero extension slots: the tuple itself was tested
    res = completable(A, [(0, 0)], 2)
    assert res.status == "certified_none"
    assert res.tested == 4


def test_completable_inconclusive_on_budget():
    # no extension can work, and the space is too big to enumerate
    A = split_etale(GF(2), 5)
    budget = SearchBudget(max_exhaustive=1, random_trials=3)
    res = completable(A, [(0, 0, 0, 0, 0)], 2, budget)
    assert res.status == "inconclusive"
    assert res.tested == 3


def test_completable_rejects_overlong_partial():
    A = split_etale(GF(2), 2)
    with pytest.raises(ValueError):
        completable(A, [(0, 0), (1, 0), (0, 1)], 2)


def test_consistency_with_min_generators():
    A = split_etale(GF(2), 3)
    rep = min_generators(A)
    refuted = [
        n for n in range(rep.n_upper) if completable(A, [], n).status == "certified_none"
    ]
    assert rep.n_upper >= (max(refuted) if refuted else 0)


def test_monotone_exhaustion():
    A = zero_algebra(GF(2), 2)
    small = min_generators(A, SearchBudget(max_exhaustive=100))
    big = min_generators(A, SearchBudget(max_exhaustive=10_000))
    assert small.n_upper == big.n_upper == 2
    assert small.lower_bound_certified and big.lower_bound_certified
    assert small.certificate.elements == big.certificate.elements


def test_determinism():
    A = matrix_algebra(GF(3), 2)
    b = SearchBudget(max_exhaustive=10, random_trials=25, seed=9)
    assert min_generators(A, b) == min_generators(A, b)
    assert random_probe(A, 2, b) == random_probe(A, 2, b)
