import pytest

from adc_toolkit.enumeration import nerve
from adc_toolkit.errors import CapExceededError
from adc_toolkit.homology import HomologyGroup, homology, reduced_homology_vanishes
from adc_toolkit.models import EnumerationBudget
from adc_toolkit.orientals import oriental_complex
from adc_toolkit.simplicial import TruncatedSimplicialSet, boundary_simplex, op_dual, std_simplex


@pytest.fixture
def projective_plane() -> TruncatedSimplicialSet:
    """One vertex, one edge a and a 2-simplex with faces (a, s0 v, a)."""
    levels = [["v"], ["a", "v1"], ["t", "s0a", "s1a", "v2"]]
    faces = {
        (1, 0, "a"): "v",
        (1, 1, "a"): "v",
        (1, 0, "v1"): "v",
        (1, 1, "v1"): "v",
        (2, 0, "t"): "a",
        (2, 1, "t"): "v1",
        (2, 2, "t"): "a",
        (2, 0, "s0a"): "a",
        (2, 1, "s0a"): "a",
        (2, 2, "s0a"): "v1",
        (2, 0, "s1a"): "v1",
        (2, 1, "s1a"): "a",
        (2, 2, "s1a"): "a",
        (2, 0, "v2"): "v1",
        (2, 1, "v2"): "v1",
        (2, 2, "v2"): "v1",
    }
    degeneracies = {
        (0, 0, "v"): "v1",
        (1, 0, "a"): "s0a",
        (1, 1, "a"): "s1a",
        (1, 0, "v1"): "v2",
        (1, 1, "v1"): "v2",
    }
    return TruncatedSimplicialSet(levels, faces, degeneracies, name="RP2")


class TestHomology:
    def test_simplex_is_acyclic(self) -> None:
        vanishes, groups = reduced_homology_vanishes(std_simplex(2, 3))
        assert vanishes
        assert len(groups) == 3

    def test_circle(self) -> None:
        groups = homology(boundary_simplex(2, 3))
        assert [(g.rank, g.torsion) for g in groups] == [(1, ()), (1, ()), (0, ())]

    def test_reduced_circle(self) -> None:
        groups = homology(boundary_simplex(2, 3), reduced=True)
        assert groups[0].is_trivial()
        assert str(groups[1]) == "Z"

    def test_torsion(self, projective_plane: TruncatedSimplicialSet) -> None:
        assert projective_plane.audit().ok
        groups = homology(projective_plane)
        assert groups == [HomologyGroup(0, 1), HomologyGroup(1, 0, (2,))]
        assert str(groups[1]) == "Z/2"

    def test_opposite_has_the_same_homology(self) -> None:
        X = boundary_simplex(3, 3)
        assert homology(X) == homology(op_dual(X))

    def test_nerve_of_an_oriental_is_contractible(self) -> None:
        X = nerve(oriental_complex(2), 2, EnumerationBudget(3))
        vanishes, _ = reduced_homology_vanishes(X)
        assert vanishes

    def test_degree_must_be_below_the_truncation(self) -> None:
        with pytest.raises(CapExceededError):
            homology(std_simplex(1, 2), up_to=2)

    def test_to_dict(self) -> None:
        assert HomologyGroup(1, 2, (3,)).to_dict() == {"degree": 1, "rank": 2, "torsion": [3]}
        assert str(HomologyGroup(0, 0)) == "0"
