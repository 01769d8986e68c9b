import json

import numpy as np
import pytest
import pytest_check as check

from phasenoise.errors import StateFileError
from phasenoise.factories import coherent_state, triangle_state
from phasenoise.fock import PureState, canonicalize
from phasenoise.statefile import (
    load_state,
    read_document,
    save_state,
    state_from_document,
    state_to_document,
)


def test_state_document_layout():
    document = state_to_document(PureState([0, 3j, 4j]))

    check.equal(document["dim"], 3)
    check.equal(document["amplitudes"][0], [0.0, 0.0])
    re, im = document["amplitudes"][1]
    check.almost_equal(re, 0.6, abs=1e-15)
    check.equal(im, 0.0)


def test_saved_state_is_sorted_json_with_full_precision(tmp_path):
    filepath = tmp_path / "triangle.json"
    state = triangle_state(4)
    save_state(state, filepath)

    text = filepath.read_text()
    document = json.loads(text)

    check.equal(list(document.keys()), ["amplitudes", "dim"])
    check.equal(document["dim"], 5)
    # 17 significant digits reproduce every amplitude exactly
    written = canonicalize(state).amplitudes
    for (re, im), value in zip(document["amplitudes"], written):
        check.equal(complex(re, im), value)


def test_state_round_trip(tmp_path):
    state = coherent_state(2 - 1j)
    filepath = tmp_path / "nested" / "coherent.json"
    save_state(state, filepath)

    loaded = load_state(filepath)
    check.equal(loaded.dim, state.dim)
    check.less_equal(np.max(np.abs(loaded.amplitudes - state.amplitudes)), 1e-15)


def test_loaded_state_is_normalized_and_canonical(tmp_path):
    filepath = tmp_path / "raw.json"
    filepath.write_text(
        json.dumps({"dim": 2, "amplitudes": [[0, 3], [0, 4]]})
    )

    state = load_state(filepath)
    check.almost_equal(state.amplitudes[0], 0.6, abs=1e-15)
    check.almost_equal(state.amplitudes[1], 0.8, abs=1e-15)


@pytest.mark.parametrize(
    "document",
    [
        [],
        {"dim": 2},
        {"amplitudes": [[1, 0]]},
        {"dim": 0, "amplitudes": []},
        {"dim": True, "amplitudes": [[1, 0]]},
        {"dim": 2, "amplitudes": [[1, 0]]},
        {"dim": 1, "amplitudes": [[1]]},
        {"dim": 1, "amplitudes": [["1", 0]]},
        {"dim": 2, "amplitudes": [[0, 0], [0, 0]]},
    ],
)
def test_invalid_state_documents(document):
    with pytest.raises(StateFileError):
        state_from_document(document)


def test_read_document_errors(tmp_path):
    with pytest.raises(StateFileError) as error:
        read_document(tmp_path / "missing.json")
    check.is_in("does not exist", str(error.value))

    broken = tmp_path / "broken.json"
    broken.write_text("{")
    with pytest.raises(StateFileError) as error:
        read_document(broken)
    check.is_in("not valid JSON", str(error.value))
