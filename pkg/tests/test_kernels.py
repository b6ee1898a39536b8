import os
import subprocess
import sys

import numpy as np
import pytest

from ccsim._accel import NUMBA_AVAILABLE, resolve_backend
from ccsim.kernels import hierarchy_stream, relation_matrix
from ccsim.semantics import Checker, RelationKind
from ccsim.table import EnumerationTooLarge, TermTable, count_terms
from ccsim.terms import Alphabet

AL = Alphabet.of(r="a", l="b", bi="c")
BACKENDS = ["numpy"] + (["numba"] if NUMBA_AVAILABLE else [])


@pytest.fixture(scope="module")
def table():
    return TermTable(["a", "b", "c"], 2, 2)


def test_enumeration_counts():
    assert [str(t) for t in TermTable(["a"], 1, 1)] == ["0", "a.0"]
    assert len(TermTable(["a"], 2, 2)) == 4
    for d in range(4):
        assert count_terms(2, d, 2) <= count_terms(2, d + 1, 2)
        assert len(TermTable(["a", "b"], d, 2)) == count_terms(2, d, 2)


def test_enumeration_is_duplicate_free_and_subterm_closed(table):
    ts = table.terms()
    assert len(set(ts)) == len(ts)
    seen = set(ts)
    for t in ts:
        assert all(c in seen for _, c in t.summands)
        assert t.depth <= 2 and len(t) <= 2
        assert table.index(t) == ts.index(t)


def test_cap_is_enforced(monkeypatch):
    with pytest.raises(EnumerationTooLarge):
        TermTable(["a", "b"], 3, 2, max_terms=100)
    monkeypatch.setenv("CCSIM_MAX_TERMS", "10")
    with pytest.raises(EnumerationTooLarge):
        TermTable(["a", "b"], 2, 2)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("kind", [k for k in RelationKind])
def test_matrix_matches_checker(table, kind, backend):
    M = relation_matrix(table, kind, AL, backend)
    chk = Checker(kind, AL)
    ts = table.terms()
    want = np.array([[chk.holds(p, q) for q in ts] for p in ts])
    assert np.array_equal(M, want)


def test_backends_agree_at_depth_three():
    if not NUMBA_AVAILABLE:
        pytest.skip("numba missing")
    t = TermTable(["a", "b"], 3, 2)
    for kind in ("cc_sim", "conf_precong", "ready_conf_sim"):
        assert np.array_equal(
            relation_matrix(t, kind, Alphabet.of(r="a", l="b"), "numba"),
            relation_matrix(t, kind, Alphabet.of(r="a", l="b"), "numpy"),
        )


@pytest.mark.parametrize("backend", BACKENDS)
def test_hierarchy_stream_is_clean(table, backend):
    evaluated, nfound, found = hierarchy_stream(table, backend)
    assert nfound == 0 and len(found) == 0
    buckets = {}
    for i in range(table.n):
        buckets[int(table.mask[i])] = buckets.get(int(table.mask[i]), 0) + 1
    assert evaluated == sum(v * v for v in buckets.values())


def test_unknown_backend():
    with pytest.raises(ValueError):
        resolve_backend("cuda")


def test_env_flag_selects_numpy():
    code = "from ccsim._accel import default_backend; print(default_backend())"
    env = dict(os.environ, CCSIM_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
