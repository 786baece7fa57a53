import doctest
import importlib

import pytest

MODULES = ["verlinde_traces", "verlinde_traces.exactnum", "verlinde_traces.series",
           "verlinde_traces.symprod", "verlinde_traces.curve", "verlinde_traces.lefschetz"]


@pytest.mark.parametrize("name", MODULES)
def test_docstring_examples(name):
    result = doctest.testmod(importlib.import_module(name))
    assert result.failed == 0
