import pytest

from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import SimplexMap
from adc_toolkit.simplicial import (
    SimplicialHomotopy,
    SimplicialMap,
    TruncatedSimplicialSet,
    act_by_generators,
    boundary_simplex,
    constant_homotopy,
    identity_map,
    inclusion_map,
    op_dual,
    product_with_interval,
    projection,
    pullback,
    simplex_inclusion,
    std_simplex,
    tabulate,
    validate_homotopy,
    validate_simplicial_map,
)


def point(cap: int) -> TruncatedSimplicialSet:
    levels = [[f"*{n}"] for n in range(cap + 1)]
    faces = {(n, i, f"*{n}"): f"*{n - 1}" for n in range(1, cap + 1) for i in range(n + 1)}
    degeneracies = {(n, i, f"*{n}"): f"*{n + 1}" for n in range(cap) for i in range(n + 1)}
    return TruncatedSimplicialSet(levels, faces, degeneracies, name="pt")


class TestStandardSimplices:
    def test_counts(self) -> None:
        assert std_simplex(2, 2).counts() == [3, 6, 10]
        # ∂Δ2 drops only the identity at level 2
        assert boundary_simplex(2, 2).counts() == [3, 6, 9]

    def test_nondegenerate_simplices(self) -> None:
        assert len(std_simplex(2, 3).nondegenerate(2)) == 1
        assert std_simplex(2, 3).nondegenerate(3) == []
        assert boundary_simplex(2, 3).nondegenerate(2) == []

    @pytest.mark.parametrize("X", [std_simplex(1, 3), boundary_simplex(2, 3), op_dual(std_simplex(2, 3))])
    def test_audit(self, X: object) -> None:
        assert X.audit().ok  # type: ignore[attr-defined]

    def test_face_of_an_edge(self) -> None:
        X = std_simplex(2, 2)
        edge = SimplexMap(1, 2, (0, 2))
        assert X.face(1, 0, edge) == SimplexMap(0, 2, (2,))
        assert X.face(1, 1, edge) == SimplexMap(0, 2, (0,))

    def test_level_outside_truncation(self) -> None:
        with pytest.raises(CapExceededError):
            std_simplex(1, 2).simplices(3)

    def test_generators_agree_with_direct_action(self) -> None:
        X = std_simplex(2, 3)
        x = SimplexMap(3, 2, (0, 1, 1, 2))
        for theta in SimplexMap.all_maps(2, 3):
            assert X.act(theta, x) == act_by_generators(X, theta, x)


class TestOpposite:
    def test_double_dual_unwraps(self) -> None:
        X = std_simplex(1, 2)
        assert op_dual(op_dual(X)) is X

    def test_faces_are_reversed(self) -> None:
        X = std_simplex(1, 2)
        edge = SimplexMap(1, 1, (0, 1))
        assert op_dual(X).face(1, 0, edge) == X.face(1, 1, edge)


class TestTables:
    def test_point_is_a_simplicial_set(self) -> None:
        assert point(3).audit().ok

    def test_missing_face_is_an_input_error(self) -> None:
        X = TruncatedSimplicialSet([["a"], ["e"]], {}, {(0, 0, "a"): "e"})
        with pytest.raises(AdcInputError):
            X.face(1, 0, "e")

    def test_broken_face_table_fails_the_audit(self) -> None:
        levels = [["a", "b"], ["e", "sa", "sb"]]
        faces = {
            (1, 0, "e"): "b",
            (1, 1, "e"): "a",
            (1, 0, "sa"): "a",
            (1, 1, "sa"): "a",
            (1, 0, "sb"): "a",
            (1, 1, "sb"): "b",
        }
        degeneracies = {(0, 0, "a"): "sa", (0, 0, "b"): "sb"}
        report = TruncatedSimplicialSet(levels, faces, degeneracies).audit()
        assert "face_degeneracy" in report.failed_checks()

    def test_tabulate_preserves_structure(self) -> None:
        table = tabulate(boundary_simplex(2, 2))
        assert table.counts() == [3, 6, 9]
        assert table.audit().ok


class TestMaps:
    def test_identity_and_inclusion(self) -> None:
        X = std_simplex(2, 2)
        assert validate_simplicial_map(identity_map(X)).ok
        assert validate_simplicial_map(inclusion_map(boundary_simplex(2, 2), X)).ok

    def test_inclusion_the_wrong_way_leaves_the_target(self) -> None:
        report = validate_simplicial_map(inclusion_map(std_simplex(2, 2), boundary_simplex(2, 2)))
        assert report.failed_checks() == ["lands_in_target"]

    def test_simplex_inclusion(self) -> None:
        f = simplex_inclusion(SimplexMap.face(2, 1), 2)
        assert validate_simplicial_map(f).ok
        assert f(0, SimplexMap(0, 1, (1,))) == SimplexMap(0, 2, (2,))

    def test_constant_homotopy(self) -> None:
        assert validate_homotopy(constant_homotopy(identity_map(std_simplex(1, 2)))).ok

    def test_contraction_of_the_interval(self) -> None:
        X = std_simplex(1, 2)
        cylinder = product_with_interval(X)

        def contract(n: int, pair: object) -> SimplexMap:
            phi, x = pair  # type: ignore[misc]
            return SimplexMap(n, 1, tuple(max(a, b) for a, b in zip(phi.values, x.values)))

        h = SimplicialMap(cylinder, X, contract, name="max")
        to_top = SimplicialMap(X, X, lambda n, x: SimplexMap.constant(n, 1, 1), name="const")

        report = validate_homotopy(SimplicialHomotopy(h, identity_map(X), to_top))
        assert report.ok

    def test_pullback_of_inclusions(self) -> None:
        X = std_simplex(2, 2)
        A = boundary_simplex(2, 2)
        P = pullback(inclusion_map(A, X), identity_map(X))
        assert P.counts() == A.counts()
        assert P.audit().ok
        assert validate_simplicial_map(projection(P, 0)).ok
