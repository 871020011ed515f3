import pytest

from gonlab.constructions import (
    antipodal_divisor,
    block_profile,
    harary_even_bound,
    harary_odd_bound,
    independent_complement_divisor,
    universal_degree,
    universal_divisor,
    verify_translation,
)
from gonlab.divisor import Divisor
from gonlab.errors import ContractError
from gonlab.graph import CirculantSpec, circulant, harary, harary_spec
from gonlab.reduction import has_positive_rank


def test_block_profile():
    assert block_profile((1, 2)) == [1, 3, 1]
    assert block_profile((1,)) == [1]
    assert block_profile((2, 3)) == [1, 3, 5, 3, 1]
    for J in [(1, 2, 3), (1, 4), (2, 3, 4), (1, 2, 3, 4)]:
        assert sum(block_profile(J)) == sum(j * j for j in J)


def test_universal_on_h4_11():
    D = universal_divisor(harary_spec(4, 11))
    assert D == Divisor([1, 3, 1, 0, 0, 0, 0, 0, 1, 3, 1])
    assert D.degree == 10


def test_universal_rotation_invariance():
    spec = CirculantSpec(13, (1, 3))
    G = circulant(spec)
    D = universal_divisor(spec)
    for s in range(0, 13, 4):
        assert has_positive_rank(G, D.rotate(s))


def test_universal_short_cycle_overlaps_add():
    # n = 4 j_k - 3: the block and its mirror share the middle vertex
    D = universal_divisor(harary_spec(4, 5))
    assert D.degree == 10
    assert has_positive_rank(harary(4, 5), D)


def test_universal_rejects_disconnected():
    with pytest.raises(ContractError):
        universal_divisor(CirculantSpec(8, (2, 4)))


def test_harary_bounds():
    assert harary_even_bound(4) == 10 == universal_degree((1, 2))
    assert harary_even_bound(6) == 28
    assert harary_odd_bound(3) == 4
    assert harary_odd_bound(5) == 20
    for k in (2, 4, 6, 8):
        assert harary_even_bound(k) == universal_degree(range(1, k // 2 + 1))


def test_translation_certificate_log():
    cert = verify_translation(harary_spec(4, 11))
    assert cert.valid and cert.method == "translation"
    first = cert.steps[0]
    assert sorted(first.fired) == [0, 1, 9, 10]
    assert first.divisor == Divisor([0, 1, 3, 1, 0, 0, 0, 1, 3, 1, 0])
    assert all(s.divisor.is_effective for s in cert.steps)
    covered = set().union(*(s.divisor.support for s in cert.steps)) | cert.initial.support
    assert covered == set(range(11))
    d = cert.to_dict()
    assert d["log"][0]["fired"] == [1, 2, 10, 11]


@pytest.mark.parametrize("n,J", [(9, (1, 3)), (17, (2, 3)), (30, (1, 2, 4)), (5, (1, 2))])
def test_translation_agrees_with_rank(n, J):
    spec = CirculantSpec(n, J)
    assert verify_translation(spec).valid
    assert has_positive_rank(circulant(spec), universal_divisor(spec))


def test_antipodal_h3():
    for n in (8, 10, 12, 14):
        spec = harary_spec(3, n)
        D = antipodal_divisor(n, spec.J)
        assert D.degree == 4 == harary_odd_bound(3)
        assert has_positive_rank(circulant(spec), D)
        assert verify_translation(spec, antipodal=True).valid


def test_antipodal_falls_back_to_rank_engine():
    spec = harary_spec(5, 8)  # copies too close for the replay
    cert = verify_translation(spec, antipodal=True)
    assert cert.method == "rank"
    assert cert.valid == has_positive_rank(circulant(spec), antipodal_divisor(8, spec.J))


def test_antipodal_needs_half_distance():
    with pytest.raises(ContractError):
        antipodal_divisor(10, (1, 2))
    with pytest.raises(ContractError):
        antipodal_divisor(9, (1, 4))


def test_independent_complement():
    G = harary(4, 12)
    D = independent_complement_divisor(G)
    assert D.degree == 12 - 4
    assert has_positive_rank(G, D)
