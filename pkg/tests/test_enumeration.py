import pytest

from adc_toolkit.complexes import check_cell
from adc_toolkit.enumeration import enumerate_cells, enumerate_morphisms, nerve, positive_preimages
from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import AdcComplex, ChainElement, EnumerationBudget
from adc_toolkit.monoidal import disk_complex, tensor_complex
from adc_toolkit.morphisms import validate_morphism
from adc_toolkit.orientals import oriental_complex

BUDGET = EnumerationBudget(3)


class TestCells:
    def test_vertices_and_arrows_of_the_triangle(self) -> None:
        C = oriental_complex(2)
        assert len(enumerate_cells(C, 0, BUDGET)) == 3
        arrows = enumerate_cells(C, 1, BUDGET)
        # three identities, three edges and the composite 0.1 + 1.2
        assert len(arrows) == 7
        assert arrows.budget.complete

    def test_cells_are_valid(self, globe: AdcComplex) -> None:
        cells = enumerate_cells(globe, 2, BUDGET)
        assert cells.items
        for cell in cells:
            assert check_cell(globe, cell).ok

    def test_globe_has_one_non_identity_two_cell(self, globe: AdcComplex) -> None:
        tops = {cell.top for cell in enumerate_cells(globe, 2, BUDGET) if cell.top.degree == 2 and not cell.top.is_zero()}
        assert tops == {globe.generator("z")}

    def test_order_is_deterministic(self) -> None:
        C = oriental_complex(2)
        assert enumerate_cells(C, 1, BUDGET).items == enumerate_cells(C, 1, BUDGET).items

    def test_cap_must_be_positive(self) -> None:
        with pytest.raises(AdcInputError):
            enumerate_cells(oriental_complex(1), 1, EnumerationBudget(0))

    @pytest.mark.parametrize("name", ["triangle", "globe", "loop"])
    def test_raising_the_cap_keeps_every_cell(self, name: str, request: pytest.FixtureRequest) -> None:
        K = oriental_complex(2) if name == "triangle" else request.getfixturevalue(name)
        for dim in range(K.max_degree + 1):
            smaller = enumerate_cells(K, dim, EnumerationBudget(2)).items
            larger = enumerate_cells(K, dim, EnumerationBudget(3)).items
            assert smaller
            assert all(cell in larger for cell in smaller)

    def test_loop_search_is_cut_by_the_cap(self, loop: AdcComplex) -> None:
        found = enumerate_cells(loop, 1, EnumerationBudget(2))
        assert not found.budget.complete

    def test_preimages_of_a_vertex(self) -> None:
        search = positive_preimages(oriental_complex(1), 0, 1, 3)
        assert set(search.solutions) == {ChainElement.generator(0, "0"), ChainElement.generator(0, "1")}
        assert search.complete


class TestMorphismSearch:
    def test_hom_from_the_interval_matches_arrows(self) -> None:
        C = oriental_complex(2)
        hom = enumerate_morphisms(oriental_complex(1), C, BUDGET)
        assert len(hom) == len(enumerate_cells(C, 1, BUDGET))
        for f in hom:
            assert validate_morphism(f).ok

    def test_constraint_pins_images(self) -> None:
        C = oriental_complex(2)
        pinned = {"0": C.generator("0"), "1": C.generator("2")}
        hom = enumerate_morphisms(oriental_complex(1), C, BUDGET, constraint=pinned)
        assert {f.image("0.1") for f in hom} == {C.generator("0.2"), C.generator("0.1") + C.generator("1.2")}

    def test_inconsistent_constraint_is_rejected(self) -> None:
        C = oriental_complex(2)
        with pytest.raises(AdcInputError):
            enumerate_morphisms(oriental_complex(1), C, BUDGET, constraint={"0": C.generator("0.1")})

    def test_square_hom_count(self) -> None:
        D1 = disk_complex(1)
        square = tensor_complex(D1, D1)
        hom = enumerate_morphisms(oriental_complex(0), square, BUDGET)
        assert len(hom) == 4

    @pytest.mark.slow
    def test_parallel_search_agrees(self) -> None:
        C = oriental_complex(2)
        serial = enumerate_morphisms(C, C, BUDGET, jobs=1)
        parallel = enumerate_morphisms(C, C, BUDGET, jobs=2)
        assert serial.items == parallel.items


class TestNerve:
    def test_nerve_of_the_interval_counts(self) -> None:
        X = nerve(oriental_complex(1), 3, BUDGET)
        # n-simplices are the monotone maps [n] -> [1]
        assert X.counts() == [2, 3, 4, 5]
        assert X.complete

    def test_nerve_passes_its_audit(self) -> None:
        assert nerve(oriental_complex(1), 2, BUDGET).audit().ok

    def test_truncation_cap(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv("ADC_TRUNC_CAP", "2")
        with pytest.raises(CapExceededError):
            nerve(oriental_complex(1), 3, BUDGET)
