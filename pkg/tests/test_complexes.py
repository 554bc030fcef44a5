import networkx as nx
import pytest

from adc_toolkit.complexes import atom, build_complex, check_cell, classify_basis, leN_preorder, positive_parts, validate_complex
from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import AdcComplex, ChainElement
from adc_toolkit.orientals import oriental_complex


class TestValidateComplex:
    def test_globe_is_valid(self, globe: AdcComplex) -> None:
        report = validate_complex(globe)
        assert report.ok
        assert report.checks == {"unique_ids": True, "d_squared": True, "augmentation": True}

    def test_broken_differential_is_witnessed(self, broken: AdcComplex) -> None:
        report = validate_complex(broken)
        assert report.failed_checks() == ["d_squared"]
        assert report.witness("d_squared").witness == "z"

    def test_nonzero_augmentation_of_a_boundary(self) -> None:
        K = build_complex("skew", [["a", "b"], ["x"]], {"x": {"b": 1, "a": -1}}, {"a": 1, "b": 2})
        report = validate_complex(K)
        assert report.failed_checks() == ["augmentation"]

    def test_differential_on_unknown_element_is_rejected(self) -> None:
        with pytest.raises(AdcInputError):
            build_complex("bad", [["a"]], {"x": {"a": 1}}, {"a": 1})

    def test_degree_mismatch_is_an_input_error(self) -> None:
        K = build_complex("bad", [["a", "b"], ["x"], ["z"]], {"z": {"a": 1}}, {"a": 1})
        report = validate_complex(K)
        assert report.input_errors
        assert not report.ok

    @pytest.mark.parametrize("n", range(5))
    def test_orientals_are_valid(self, n: int) -> None:
        assert validate_complex(oriental_complex(n)).ok


class TestBasisStructure:
    def test_positive_parts_split(self, globe: AdcComplex) -> None:
        parts = positive_parts(globe, globe.boundary_of("z"))
        assert parts.plus == globe.generator("y")
        assert parts.minus == globe.generator("x")

    def test_preorder_of_the_globe(self, globe: AdcComplex) -> None:
        order = leN_preorder(globe)
        assert order.leq("a", "x") and order.leq("x", "b")
        assert order.leq("x", "z") and order.leq("z", "y")
        assert not order.leq("b", "a")
        assert order.is_antisymmetric()

    def test_triangle_preorder_is_the_least_closure(self) -> None:
        order = leN_preorder(oriental_complex(2))
        ids = oriental_complex(2).all_ids
        generating = order.generating_edges()
        assert order.pairs() == {(x, y) for x in ids for y in ids if nx.has_path(order.generating, x, y)}
        essential = set(nx.transitive_reduction(order.generating).edges())
        for pair in essential:
            thinned = nx.DiGraph(sorted(generating - {pair}))
            thinned.add_nodes_from(ids)
            assert not nx.has_path(thinned, *pair)
        # implied by 0.2 <= 0.1.2 <= 1.2 <= 2
        assert ("0.2", "2") in generating - essential

    def test_atom_of_the_two_cell(self, globe: AdcComplex) -> None:
        found = atom(globe, "z")
        assert found.unital
        assert found.cell.sources == (globe.generator("a"), globe.generator("x"), globe.generator("z"))
        assert found.cell.targets == (globe.generator("b"), globe.generator("y"), globe.generator("z"))
        assert check_cell(globe, found.cell).ok

    def test_globe_is_steiner_strong(self, globe: AdcComplex) -> None:
        assert classify_basis(globe).steiner_strong

    def test_loop_is_detected(self, loop: AdcComplex) -> None:
        found = classify_basis(loop)
        assert found.unital
        assert not found.strongly_loop_free
        assert set(found.loop) == {"a", "b", "x", "y"}

    def test_heavy_point_is_not_unital(self, heavy_point: AdcComplex) -> None:
        found = classify_basis(heavy_point)
        assert not found.unital
        assert found.non_unital_atoms == ("p",)

    def test_bad_cell_fails_the_boundary_condition(self, globe: AdcComplex) -> None:
        cell = atom(globe, "z").cell
        shifted = type(cell)(2, cell.sources, (cell.targets[0], globe.generator("x"), cell.targets[2]))
        report = check_cell(globe, shifted)
        assert "boundaries" in report.failed_checks()

    def test_unknown_id_in_a_cell_is_reported(self, globe: AdcComplex) -> None:
        cell = atom(globe, "x").cell
        ghost = type(cell)(1, (cell.sources[0], ChainElement.of(1, {"w": 1})), cell.targets)
        report = check_cell(globe, ghost)
        assert not report.ok
        assert any("w" in message for message in report.input_errors)

    @pytest.mark.parametrize("n", range(5))
    def test_orientals_are_steiner_strong(self, n: int) -> None:
        assert classify_basis(oriental_complex(n)).steiner_strong

    def test_oriental_sizes(self) -> None:
        assert [oriental_complex(n).size for n in range(5)] == [1, 3, 7, 15, 31]

    def test_zero_chain_has_no_support(self) -> None:
        assert ChainElement.zero(1).support() == frozenset()
