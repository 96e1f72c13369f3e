"""Smoke test for the coble_py extension.

Uses an installed coble_py when importable; otherwise builds the extension with cargo
and loads it from the target directory.
"""

import importlib.util
import os
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        import coble_py

        return coble_py
    except ImportError:
        pass
    subprocess.run(
        ["cargo", "build", "-p", "coble-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    target = Path(os.environ.get("CARGO_TARGET_DIR", ROOT / "target")) / "debug"
    lib = next(p for p in (target / "libcoble_py.so", target / "libcoble_py.dylib") if p.exists())
    tmp = Path(tempfile.mkdtemp())
    dest = tmp / "coble_py.so"
    shutil.copy(lib, dest)
    spec = importlib.util.spec_from_file_location("coble_py", dest)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main():
    cp = load()
    assert [cp.root_count(d) for d in (5, 4, 3, 2)] == [20, 40, 72, 126]
    assert cp.subsystem_count(3, "3A2") == 40
    assert cp.subsystem_count(4, "D4") == 5

    space = cp.covariants(4)
    assert (space["degree"], space["count"], space["dimension"]) == (10, 12, 6)

    pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [2, Fraction(-1, 3), 5]]
    res = cp.evaluate(4, pts)
    assert res["generic"] and len(res["vector"]["values"]) == 12
    moved = [[1, 0, 3], [2, 1, 0], [0, -1, 1], [3, 0, 4], ["4/3", "-16/3", 11]]
    assert cp.same_projective_vector(4, pts, moved)
    collinear = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 1, 1], [1, 2, 3]]
    assert cp.evaluate(4, collinear)["collinear"] == [[1, 2, 3]]

    fields = cp.vector_fields()
    assert len(fields["e6"]["x_hat"]["coefficients"]) == 6

    assert "naruki" in cp.suite_names()
    (s3,) = cp.verify(["s3"])
    assert s3["passed"], s3
    (deg5,) = cp.verify(["degree5"])
    failing = [c["name"] for c in deg5["checks"] if c["status"] == "fail"]
    assert failing == ["worked product equals z0z1z2 − z1²z2 as printed"], failing

    for bad in (lambda: cp.root_count(9), lambda: cp.verify(["nope"]), lambda: cp.evaluate(4, [[1, 0]])):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    print("python smoke test: ok")


if __name__ == "__main__":
    sys.exit(main())
