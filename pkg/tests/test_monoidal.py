from typing import Tuple

import pytest

from adc_toolkit.complexes import classify_basis, validate_complex
from adc_toolkit.errors import AdcInputError, CapExceededError
from adc_toolkit.models import AdcComplex, AdcMorphism
from adc_toolkit.monoidal import (
    EMPTY,
    copair,
    disk_complex,
    is_isomorphism,
    iterated_join,
    join_associator,
    join_complex,
    join_inclusions,
    join_label,
    join_unitors,
    principal_cell,
    pushout_along_rigid_inclusion,
    q_projections,
    tensor_associator,
    tensor_complex,
    tensor_label,
    tensor_unitors,
)
from adc_toolkit.morphisms import compose, identity_morphism, morphism_from_images, same_action, validate_morphism
from adc_toolkit.orientals import oriental_complex, oriental_join_iso, vertex_inclusion

TRIPLES = [
    ("c0", "c0", "c0"),
    ("D0", "D1", "D2"),
    ("D1", "D1", "D2"),
    ("D2", "D1", "D1"),
    ("D2", "D2", "D0"),
    ("c1", "c1", "c2"),
    ("c2", "c0", "c2"),
    ("D1", "c2", "c1"),
    ("c1", "D2", "D1"),
]


def factor(code: str) -> AdcComplex:
    return disk_complex(int(code[1])) if code[0] == "D" else oriental_complex(int(code[1]))


def assert_renames_basis(alpha: AdcMorphism) -> None:
    assert validate_morphism(alpha).ok
    for ident in alpha.source.all_ids:
        image = alpha.image(ident)
        assert len(image.terms) == 1 and image.terms[0][1] == 1, ident
    assert is_isomorphism(alpha)


@pytest.mark.parametrize("codes", TRIPLES, ids="-".join)
@pytest.mark.parametrize("product", ["tensor", "join"])
def test_associators_rename_bases(codes: Tuple[str, str, str], product: str) -> None:
    K, L, M = (factor(code) for code in codes)
    if product == "tensor":
        alpha = tensor_associator(K, L, M)
    else:
        alpha = join_associator(K, L, M)
    assert_renames_basis(alpha)
    assert alpha.source.size == alpha.target.size


class TestTensor:
    def test_labels_wrap_compound_factors(self) -> None:
        assert tensor_label("0.1", "x") == "0.1⊗x"
        assert tensor_label("a⊗b", "c") == "(a⊗b)⊗c"

    def test_square_boundary_signs(self) -> None:
        I = oriental_complex(1)
        T = tensor_complex(I, I)
        top = tensor_label("0.1", "0.1")
        expected = {
            tensor_label("1", "0.1"): 1,
            tensor_label("0", "0.1"): -1,
            tensor_label("0.1", "1"): -1,
            tensor_label("0.1", "0"): 1,
        }
        assert T.boundary_of(top).as_dict() == expected

    @pytest.mark.parametrize("i, j", [(0, 0), (1, 1), (1, 2), (2, 2), (0, 3)])
    def test_products_of_orientals_are_steiner_strong(self, i: int, j: int) -> None:
        T = tensor_complex(oriental_complex(i), oriental_complex(j))
        assert validate_complex(T).ok
        assert classify_basis(T).steiner_strong
        assert T.size == oriental_complex(i).size * oriental_complex(j).size

    def test_degree_cap(self) -> None:
        with pytest.raises(CapExceededError):
            tensor_complex(oriental_complex(3), oriental_complex(3), degree_cap=5)

    def test_associator_and_unitors_are_isomorphisms(self) -> None:
        I = oriental_complex(1)
        assert is_isomorphism(tensor_associator(I, I, I))
        for unitor in tensor_unitors(oriental_complex(2)):
            assert is_isomorphism(unitor)

    def test_projections_are_morphisms(self) -> None:
        for q in q_projections(tensor_complex(oriental_complex(1), oriental_complex(2))):
            assert validate_morphism(q).ok

    def test_principal_cell_of_disks(self) -> None:
        cell = principal_cell(1, 1)
        assert cell.dimension == 2
        assert cell.top.terms == ((tensor_label("c1", "c1"), 1),)


class TestJoin:
    def test_unit_token_is_not_a_pair(self) -> None:
        with pytest.raises(AdcInputError):
            join_label(EMPTY, EMPTY)

    @pytest.mark.parametrize("i, j", [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)])
    def test_join_of_orientals_is_the_bigger_oriental(self, i: int, j: int) -> None:
        J = join_complex(oriental_complex(i), oriental_complex(j))
        assert validate_complex(J).ok
        assert classify_basis(J).steiner_strong
        assert is_isomorphism(oriental_join_iso(i, j))
        assert J.size == oriental_complex(i + 1 + j).size

    def test_edge_from_two_points(self) -> None:
        point = oriental_complex(0)
        J = join_complex(point, point)
        assert J.boundary_of(join_label("0", "0")).as_dict() == {
            join_label(EMPTY, "0"): 1,
            join_label("0", EMPTY): -1,
        }

    def test_inclusions_are_morphisms(self) -> None:
        for iota in join_inclusions(join_complex(oriental_complex(1), oriental_complex(1))):
            assert validate_morphism(iota).ok

    def test_associator_and_unitors(self) -> None:
        point = oriental_complex(0)
        assert is_isomorphism(join_associator(point, point, point))
        for unitor in join_unitors(oriental_complex(1)):
            assert is_isomorphism(unitor)

    def test_iterated_join_is_left_associated(self) -> None:
        point = oriental_complex(0)
        assert iterated_join([point, point, point]).name == "(c(Δ0)⋆c(Δ0))⋆c(Δ0)"
        with pytest.raises(AdcInputError):
            iterated_join([])


class TestDisks:
    @pytest.mark.parametrize("i", range(4))
    def test_disks_are_valid(self, i: int) -> None:
        D = disk_complex(i)
        assert validate_complex(D).ok
        assert classify_basis(D).steiner_strong
        assert D.size == 2 * i + 1

    def test_negative_dimension(self) -> None:
        with pytest.raises(AdcInputError):
            disk_complex(-1)


class TestPushout:
    def test_glue_a_globe_onto_an_edge(self, globe: AdcComplex) -> None:
        I = oriental_complex(1)
        D1 = disk_complex(1)
        g_prime = morphism_from_images(D1, I, {"s0": {"0": 1}, "t0": {"1": 1}, "c1": {"0.1": 1}})
        u = morphism_from_images(D1, globe, {"s0": {"a": 1}, "t0": {"b": 1}, "c1": {"x": 1}})
        po = pushout_along_rigid_inclusion(g_prime, u)
        assert validate_complex(po.complex).ok
        assert po.complex.size == globe.size
        assert validate_morphism(po.left_leg).ok and validate_morphism(po.right_leg).ok
        assert same_action(compose(po.left_leg, g_prime), compose(po.right_leg, u))

    def test_renames_colliding_ids(self) -> None:
        C = oriental_complex(2)
        point = oriental_complex(0)
        po = pushout_along_rigid_inclusion(vertex_inclusion(2, 0), vertex_inclusion(1, 0))
        assert validate_complex(po.complex).ok
        assert po.complex.renaming["1"] == "L|1"
        assert po.complex.size == C.size + oriental_complex(1).size - point.size

    def test_copair_recovers_identity(self) -> None:
        C = oriental_complex(1)
        po = pushout_along_rigid_inclusion(vertex_inclusion(1), vertex_inclusion(1))
        glued = copair(po, identity_morphism(C), identity_morphism(C))
        assert validate_morphism(glued).ok

    def test_non_rigid_leg_is_rejected(self) -> None:
        collapse = morphism_from_images(oriental_complex(1), oriental_complex(0), {"0": {"0": 1}, "1": {"0": 1}})
        with pytest.raises(AdcInputError):
            pushout_along_rigid_inclusion(collapse, identity_morphism(oriental_complex(1)))
