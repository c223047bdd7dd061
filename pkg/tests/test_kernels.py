import pytest

from dtxp import explain_horn, explain_traversal, kernels
from dtxp.oracle import gen_tree

BACKENDS = sorted(kernels.BACKENDS)


def test_compiled_backend_built():
    # the release build ships the compiled kernels; the fallback is only for broken toolchains
    assert "cython" in kernels.BACKENDS


def test_switching():
    prev = kernels.use("python")
    try:
        assert kernels.BACKEND == "python"
    finally:
        kernels.use(prev)
    with pytest.raises(ValueError):
        kernels.use("fortran")


def test_backends_agree():
    trees = [gen_tree(7, 3, depth=5, seed=s, split_prob=0.85) for s in range(12)]
    results = {}
    for name in BACKENDS:
        prev = kernels.use(name)
        try:
            out = []
            for t in trees:
                for p in t.paths:
                    stats = {}
                    e = explain_traversal(t, p, stats=stats)
                    out.append((e.features, stats["visits"], explain_horn(t, p).features))
            results[name] = out
        finally:
            kernels.use(prev)
    vals = list(results.values())
    assert all(v == vals[0] for v in vals)


def test_pure_env_selects_fallback():
    import os
    import subprocess
    import sys
    env = dict(os.environ, DTXP_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import dtxp; print(dtxp.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
