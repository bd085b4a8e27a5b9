from __future__ import annotations

import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerfold import _kernels_py, kernels
from brauerfold.presentations import presentation_for
from brauerfold.prover import RulePool, prove_equal

compiled = pytest.importorskip("brauerfold._ckernels")

letters = st.binary(min_size=0, max_size=3).map(lambda b: bytes(65 + x % 4 for x in b))
rules_st = st.lists(st.tuples(letters, letters, st.integers(-3, 3)), min_size=1, max_size=6)
words_st = st.lists(st.binary(min_size=0, max_size=7).map(lambda b: bytes(65 + x % 4 for x in b)), min_size=1, max_size=5, unique=True)


@settings(max_examples=200, deadline=None)
@given(words_st, rules_st, st.integers(0, 9))
def test_expand_level_parity(frontier, rules, max_len):
    def run(mod):
        seen = {w: (k, None, -1, -1) for k, w in enumerate(frontier)}
        out = mod.expand_level(list(frontier), rules, max_len, seen)
        return out, seen

    assert run(_kernels_py) == run(compiled)


@settings(max_examples=200, deadline=None)
@given(letters.flatmap(lambda a: st.just(a * 3)), rules_st, st.integers(0, 9))
def test_rewrite_neighbors_parity(word, rules, max_len):
    assert _kernels_py.rewrite_neighbors(word, rules, max_len) == compiled.rewrite_neighbors(word, rules, max_len)


def test_real_rules_parity():
    pool = RulePool(presentation_for("D4"))
    start = pool.encode(("E1", "E2", "E4", "R3", "E1", "E2", "E4"))
    fronts = []
    for mod in (_kernels_py, compiled):
        seen = {start: (0, None, -1, -1)}
        f = [start]
        for _ in range(3):
            f = mod.expand_level(f, pool.rules, 12, seen)
        fronts.append((f, seen))
    assert fronts[0] == fronts[1]


def test_backend_selected():
    forced = os.environ.get("BRAUER_PURE_PYTHON", "") not in ("", "0")
    assert kernels.BACKEND == ("python" if forced else "compiled")
    code = "from brauerfold import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, BRAUER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_same_proof_with_either_backend(monkeypatch):
    p = presentation_for("G2")
    a = prove_equal("r1 r0 e1 r0 r1 e0", "e0", p)
    monkeypatch.setattr(kernels, "expand_level", _kernels_py.expand_level)
    b = prove_equal("r1 r0 e1 r0 r1 e0", "e0", p)
    assert a.steps == b.steps and a.total_delta == b.total_delta
    assert importlib.import_module("brauerfold.prover").kernels is kernels
