import pytest

from adc_toolkit.bisimplicial import (
    CommaBisimplicial,
    CommaSimplex,
    comma_bisimplicial,
    comma_legs,
    diagonal,
    p1_star,
    p2_star,
    validate_bisimplicial_map,
)
from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap
from adc_toolkit.simplicial import identity_map, std_simplex


@pytest.fixture
def interval_comma() -> CommaBisimplicial:
    Z = std_simplex(1, 3)
    return comma_bisimplicial(identity_map(Z), identity_map(Z), (1, 1))


class TestComma:
    def test_counts(self, interval_comma: CommaBisimplicial) -> None:
        # (m, n)-simplices are the (m + 1 + n)-simplices of Δ1
        assert len(interval_comma.simplices(0, 0)) == 3
        assert len(interval_comma.simplices(1, 0)) == 4
        assert len(interval_comma.simplices(1, 1)) == 5

    def test_restrictions(self, interval_comma: CommaBisimplicial) -> None:
        for s in interval_comma.simplices(1, 0):
            assert isinstance(s, CommaSimplex)
            assert s.z.values[:2] == s.x.values
            assert s.z.values[2:] == s.y.values

    def test_audit(self, interval_comma: CommaBisimplicial) -> None:
        report = interval_comma.audit()
        assert report.ok
        for check in ("closed", "functorial", "commute"):
            assert report.checks[check]

    def test_horizontal_face_drops_a_front_vertex(self, interval_comma: CommaBisimplicial) -> None:
        s = CommaSimplex(
            SimplexMap(1, 1, (0, 1)),
            SimplexMap(0, 1, (1,)),
            SimplexMap(2, 1, (0, 1, 1)),
            1,
            0,
        )
        face = interval_comma.horizontal(SimplexMap.face(1, 0), s)
        assert face == CommaSimplex(SimplexMap(0, 1, (1,)), s.y, SimplexMap(1, 1, (1, 1)), 0, 0)

    def test_targets_must_coincide(self) -> None:
        with pytest.raises(AdcInputError):
            comma_bisimplicial(identity_map(std_simplex(1, 3)), identity_map(std_simplex(1, 3)), (0, 0))

    def test_base_truncation(self) -> None:
        Z = std_simplex(1, 2)
        with pytest.raises(CapExceededError):
            comma_bisimplicial(identity_map(Z), identity_map(Z), (1, 1))

    def test_bidegree_outside_the_truncation(self, interval_comma: CommaBisimplicial) -> None:
        with pytest.raises(CapExceededError):
            interval_comma.simplices(2, 0)


class TestDerived:
    def test_diagonal(self, interval_comma: CommaBisimplicial) -> None:
        D = diagonal(interval_comma)
        assert D.counts() == [3, 5]
        assert D.audit().ok

    def test_constant_pullbacks(self) -> None:
        X = std_simplex(2, 2)
        for B in (p1_star(X, (2, 1)), p2_star(X, (1, 2))):
            assert B.audit().ok
        assert len(p1_star(X, (2, 1)).simplices(1, 0)) == 6
        assert len(p2_star(X, (1, 2)).simplices(1, 0)) == 3

    def test_constant_pullback_needs_the_truncation(self) -> None:
        with pytest.raises(CapExceededError):
            p1_star(std_simplex(1, 1), (2, 0))

    def test_legs(self, interval_comma: CommaBisimplicial) -> None:
        for leg in comma_legs(interval_comma):
            assert validate_bisimplicial_map(leg).ok
