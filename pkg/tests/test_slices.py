import pytest

from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap
from adc_toolkit.simplicial import (
    SimplicialMap,
    boundary_simplex,
    identity_map,
    inclusion_map,
    std_simplex,
    validate_simplicial_map,
)
from adc_toolkit.slices import (
    SliceSimplex,
    check_fiber_decomposition,
    check_pullback_identity,
    check_slice_naturality,
    compare_over_slices,
    forget_to_base,
    slice_map,
    slice_over,
    slice_under,
)


def vertex(v: int, m: int = 1) -> SimplexMap:
    return SimplexMap(0, m, (v,))


@pytest.fixture
def interval() -> SimplicialMap:
    return identity_map(std_simplex(1, 3))


class TestUnderSlices:
    def test_under_the_first_vertex(self, interval: SimplicialMap) -> None:
        S = slice_under(interval, vertex(0), 0)
        # the cone Δ0 ⋆ Δ1 seen from its apex
        assert S.cap == 2
        assert S.counts() == [2, 3, 4]

    def test_under_the_last_vertex(self, interval: SimplicialMap) -> None:
        assert slice_under(interval, vertex(1), 0).counts() == [1, 1, 1]

    def test_simplices_restrict_correctly(self, interval: SimplicialMap) -> None:
        S = slice_under(interval, vertex(0), 0)
        for s in S.simplices(1):
            assert isinstance(s, SliceSimplex)
            assert s.z.values[0] == 0
            assert s.z.values[1:] == s.x.values

    def test_audit(self, interval: SimplicialMap) -> None:
        assert slice_under(interval, vertex(0), 0).audit().ok

    def test_forget_is_simplicial(self, interval: SimplicialMap) -> None:
        assert validate_simplicial_map(forget_to_base(slice_under(interval, vertex(0), 0))).ok

    def test_z_must_belong_to_the_base(self, interval: SimplicialMap) -> None:
        with pytest.raises(AdcInputError):
            slice_under(interval, vertex(2, 2), 0)

    def test_base_truncation_limits_the_slice(self, interval: SimplicialMap) -> None:
        with pytest.raises(CapExceededError):
            slice_under(interval, SimplexMap(3, 1, (0, 0, 0, 1)), 3)
        with pytest.raises(CapExceededError):
            slice_under(interval, vertex(0), 0, cap=3)


class TestOverSlices:
    def test_over_the_last_vertex(self, interval: SimplicialMap) -> None:
        assert slice_over(interval, vertex(1), 0).counts() == [2, 3, 4]

    def test_over_the_first_vertex(self, interval: SimplicialMap) -> None:
        assert slice_over(interval, vertex(0), 0).counts() == [1, 1, 1]

    @pytest.mark.parametrize("v", [0, 1])
    def test_direct_and_dual_constructions_agree(self, interval: SimplicialMap, v: int) -> None:
        assert compare_over_slices(interval, vertex(v), 0).ok

    def test_direct_construction_passes_its_audit(self, interval: SimplicialMap) -> None:
        assert slice_over(interval, vertex(1), 0, via_op=False).audit().ok


class TestComparisons:
    @pytest.mark.parametrize("v", [0, 1])
    def test_pullback_identity(self, interval: SimplicialMap, v: int) -> None:
        assert check_pullback_identity(interval, vertex(v), 0).ok

    def test_pullback_identity_for_an_inclusion(self) -> None:
        Z = std_simplex(2, 3)
        g = inclusion_map(boundary_simplex(2, 3), Z)
        assert check_pullback_identity(g, vertex(0, 2), 0).ok

    def test_fiber_decomposition(self, interval: SimplicialMap) -> None:
        report = check_fiber_decomposition(interval, 0, 2)
        assert report.ok
        assert report.checks["partition"] and report.checks["operators"]

    def test_fiber_decomposition_in_higher_columns(self) -> None:
        g = identity_map(std_simplex(1, 3))
        assert check_fiber_decomposition(g, 1, 1).ok


class TestSliceMaps:
    def test_inclusion_over_the_base(self) -> None:
        Z = std_simplex(2, 3)
        A = boundary_simplex(2, 3)
        f = inclusion_map(A, Z)
        g = slice_map(f, f, identity_map(Z), vertex(0, 2), 0)
        # only the top simplex of Δ2 is missing from the boundary
        assert g.source.counts() == [3, 6, 9]
        assert g.target.counts() == [3, 6, 10]
        assert validate_simplicial_map(g).ok

    def test_map_not_over_the_base_is_rejected(self) -> None:
        Z = std_simplex(1, 3)
        swap = SimplicialMap(Z, Z, lambda n, x: x.dual(), name="swap")
        with pytest.raises(AdcInputError):
            slice_map(swap, identity_map(Z), identity_map(Z), vertex(0), 0)

    def test_naturality(self) -> None:
        Z = std_simplex(2, 3)
        A = boundary_simplex(2, 3)
        f = inclusion_map(A, A, name="id_A")
        f_next = inclusion_map(A, Z)
        structure = inclusion_map(A, Z)
        report = check_slice_naturality(f, f_next, structure, structure, identity_map(Z), vertex(0, 2), 0)
        assert report.ok
