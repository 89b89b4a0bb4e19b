import json

import numpy as np
import pytest

from wedgeops.exceptions import SerializationError
from wedgeops.hardy import VecTrigPoly
from wedgeops.serializers import (
    SeriesSerializer,
    dump_series,
    dump_symbol,
    load_series,
    load_symbol,
    read_series,
    series_to_dict,
)

from .factories import SeriesFactory, SymbolFactory


class TestSeriesSerializer:

    def test_layout(self):
        data = series_to_dict(VecTrigPoly.from_components([1], [0, 2j], kmin=-1))
        assert data == {
            'valdim': 2,
            'kmin': -1,
            'coeffs': [[(1.0, 0.0), (0.0, 0.0)], [(0.0, 0.0), (0.0, 2.0)]],
        }

    def test_round_trip_is_bit_exact(self):
        f = VecTrigPoly(-2, np.array([[0.1 + 1 / 3j, -2.5e-300], [np.pi, 1e300j]]))
        back = load_series(dump_series(f))
        assert back.kmin == f.kmin
        assert np.array_equal(back.coeffs, f.coeffs)

    def test_round_trip_of_generated_series(self):
        f = SeriesFactory(valdim=3, length=4)
        back = load_series(dump_series(f))
        assert np.array_equal(back.coeffs, f.coeffs)

    def test_valid_document(self):
        text = json.dumps({'valdim': 1, 'kmin': 0, 'coeffs': [[[1, 0]], [[0, 1]]]})
        f = load_series(text)
        assert f.kmax == 1
        assert f.coefficient(1)[0] == 1j

    def test_invalid_json(self):
        with pytest.raises(SerializationError):
            load_series('{"valdim": 1,')

    @pytest.mark.parametrize('document', [
        {'valdim': 2, 'kmin': 0, 'coeffs': [[[1, 0]]]},
        {'valdim': 0, 'kmin': 0, 'coeffs': [[]]},
        {'valdim': 1, 'kmin': 0, 'coeffs': []},
        {'valdim': 1, 'kmin': 0, 'coeffs': [[[1, 0, 0]]]},
        {'valdim': 1, 'kmin': 0, 'coeffs': [[[1, 0]]], 'extra': True},
        {'valdim': 1, 'coeffs': [[[1, 0]]]},
        [1, 2, 3],
    ])
    def test_malformed_documents(self, document):
        with pytest.raises(SerializationError):
            load_series(json.dumps(document))

    def test_rejects_non_finite_numbers(self):
        with pytest.raises(SerializationError):
            load_series('{"valdim": 1, "kmin": 0, "coeffs": [[[NaN, 0]]]}')

    def test_model_forbids_unknown_fields(self):
        assert SeriesSerializer.model_config['extra'] == 'forbid'

    def test_read_missing_file(self, tmp_path):
        with pytest.raises(SerializationError):
            read_series(tmp_path / 'missing.json')

    def test_read_file(self, tmp_path, shift_xi):
        path = tmp_path / 'xi.json'
        path.write_text(dump_series(shift_xi))
        assert np.array_equal(read_series(path).coeffs, shift_xi.coeffs)


class TestSymbolSerializer:

    def test_round_trip(self):
        g = SymbolFactory(rows=2, cols=3)
        back = load_symbol(dump_symbol(g))
        assert back.kmin == g.kmin
        assert np.array_equal(back.coeffs, g.coeffs)

    def test_block_shape_is_checked(self):
        text = json.dumps({'rows': 2, 'cols': 1, 'kmin': 0, 'coeffs': [[[[1, 0]]]]})
        with pytest.raises(SerializationError):
            load_symbol(text)
