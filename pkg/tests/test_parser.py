from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from adc_toolkit.bisimplicial import comma_bisimplicial
from adc_toolkit.errors import AdcInputError
from adc_toolkit.models import AdcComplex
from adc_toolkit.orientals import oriental_complex, vertex_retraction
from adc_toolkit.parser import (
    builtin_complex,
    dumps,
    load_json,
    parse_adc_file,
    parse_complex,
    parse_morphism,
    parse_simplicial_file,
    parse_simplicial_set,
    serialize_bisimplicial,
    serialize_complex,
    serialize_morphism,
    serialize_simplicial_set,
    write_json,
)
from adc_toolkit.simplicial import boundary_simplex, identity_map, std_simplex

WriteJson = Callable[[str, Any], str]


def globe_document() -> Dict[str, Any]:
    return {
        "name": "globe",
        "basis": [["a", "b"], ["x", "y"], ["z"]],
        "d": {"x": [[1, "b"], [-1, "a"]], "y": [[1, "b"], [-1, "a"]], "z": [[1, "y"], [-1, "x"]]},
        "e": {"a": 1, "b": 1},
    }


class TestComplexes:
    def test_parse(self, globe: AdcComplex) -> None:
        K = parse_complex(globe_document())
        assert K.max_degree == 2
        assert K.boundary_of("z") == globe.boundary_of("z")
        assert K.augmentation_of("a") == 1

    def test_serialization_is_stable(self) -> None:
        C = oriental_complex(2)
        first = serialize_complex(C)
        assert serialize_complex(parse_complex(first)) == first
        assert dumps(first) == dumps(serialize_complex(parse_complex(first)))

    def test_unknown_face_points_at_the_term(self) -> None:
        document = globe_document()
        document["d"]["x"] = [[1, "q"], [-1, "a"]]
        with pytest.raises(AdcInputError) as excinfo:
            parse_complex(document)
        assert excinfo.value.field_path == 'd["x"][0][1]'

    def test_face_in_the_wrong_degree(self) -> None:
        document = globe_document()
        document["d"]["z"] = [[1, "a"]]
        with pytest.raises(AdcInputError) as excinfo:
            parse_complex(document)
        assert excinfo.value.field_path == 'd["z"][0][1]'

    @pytest.mark.parametrize(
        "change, path",
        [
            ({"name": 3}, "name"),
            ({"basis": "a"}, "basis"),
            ({"max_degree": 1}, "max_degree"),
            ({"e": {"x": 1}}, 'e["x"]'),
            ({"d": {"a": [[1, "b"]]}}, 'd["a"]'),
        ],
    )
    def test_schema_errors(self, change: Dict[str, Any], path: str) -> None:
        document = {**globe_document(), **change}
        with pytest.raises(AdcInputError) as excinfo:
            parse_complex(document)
        assert excinfo.value.field_path == path

    def test_algebra_is_not_checked_while_parsing(self) -> None:
        document = globe_document()
        document["d"]["z"] = [[1, "x"]]
        assert parse_complex(document).name == "globe"

    def test_file_errors_name_the_file(self, write_json: WriteJson) -> None:
        document = globe_document()
        document["d"]["x"] = [[1, "q"]]
        path = write_json("bad.json", document)
        with pytest.raises(AdcInputError) as excinfo:
            parse_adc_file(path)
        assert path in str(excinfo.value)

    def test_builtin_names(self) -> None:
        assert builtin_complex("c(Δ2)") is oriental_complex(2)
        assert builtin_complex("c(delta1)") is oriental_complex(1)
        found = builtin_complex("D2")
        assert found is not None and found.size == 5
        assert builtin_complex("globe") is None


class TestJson:
    def test_invalid_json_reports_the_position(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text('{"name": "x",\n  "basis": [}', encoding="utf-8")
        with pytest.raises(AdcInputError) as excinfo:
            load_json(str(path))
        assert "line 2" in str(excinfo.value)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(AdcInputError):
            load_json(str(tmp_path / "nowhere.json"))

    def test_write_is_canonical(self, tmp_path: Path) -> None:
        path = tmp_path / "out.json"
        write_json(str(path), {"b": 1, "a": [1, 2]})
        assert path.read_text(encoding="utf-8") == dumps({"a": [1, 2], "b": 1})
        assert path.read_text(encoding="utf-8").endswith("\n")


class TestMorphisms:
    def test_parse_against_builtins(self) -> None:
        f = parse_morphism(
            {"source": "c(Δ0)", "target": "c(Δ1)", "action": {"0": [[1, "1"]]}, "name": "last"},
            {},
        )
        assert f.image("0") == oriental_complex(1).generator("1")
        assert f.name == "last"

    def test_unknown_source_element(self) -> None:
        with pytest.raises(AdcInputError) as excinfo:
            parse_morphism({"source": "c(Δ0)", "target": "c(Δ1)", "action": {"7": [[1, "1"]]}}, {})
        assert excinfo.value.field_path == 'action["7"]'

    def test_unknown_complex(self) -> None:
        with pytest.raises(AdcInputError) as excinfo:
            parse_morphism({"source": "mystery", "target": "c(Δ1)", "action": {}}, {})
        assert excinfo.value.field_path == "source"

    def test_serialized_morphism_parses_back(self) -> None:
        r = vertex_retraction(2).retraction
        again = parse_morphism(serialize_morphism(r), {})
        assert again == r


class TestSimplicialSets:
    def test_round_trip_through_a_file(self, write_json: WriteJson) -> None:
        document = serialize_simplicial_set(boundary_simplex(2, 2))
        X = parse_simplicial_file(write_json("circle.json", document))
        assert X.counts() == [3, 6, 9]
        assert X.audit().ok

    def test_unknown_face_target(self) -> None:
        document = serialize_simplicial_set(std_simplex(0, 1))
        document["faces"]["1"]["0"] = {"1:0": "ghost"}
        with pytest.raises(AdcInputError) as excinfo:
            parse_simplicial_set(document)
        assert excinfo.value.field_path == "faces['1']['0']['1:0']"

    def test_cap_must_match_the_levels(self) -> None:
        document = serialize_simplicial_set(std_simplex(0, 1))
        document["cap"] = 4
        with pytest.raises(AdcInputError) as excinfo:
            parse_simplicial_set(document)
        assert excinfo.value.field_path == "cap"

    def test_bisimplicial_dump(self) -> None:
        Z = std_simplex(1, 3)
        B = comma_bisimplicial(identity_map(Z), identity_map(Z), (1, 1))
        dumped = serialize_bisimplicial(B)
        assert dumped["caps"] == [1, 1]
        assert len(dumped["levels"]["0,0"]) == 3
        assert set(dumped["horizontal"]) == set(dumped["levels"]["1,0"]) | set(dumped["levels"]["1,1"])
