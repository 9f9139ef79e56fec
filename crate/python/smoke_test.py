"""Builds the extension module and exercises it end to end.

    python3 python/smoke_test.py
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_module() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "bfc-lab-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libbfc_lab_py.so"
    out = Path(tempfile.mkdtemp(prefix="bfc_lab_py_"))
    shutil.copy(lib, out / "bfc_lab.so")
    return out


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import bfc_lab

    a = bfc_lab.Algebra.load("band0.algebraA")
    assert a.size == 4 and len(a) == 4
    assert a.signature() == [("0", 0), ("*", 2)]
    assert len(a.congruences()) == 5
    assert a.cg([(1, 2)])[1] == a.cg([(1, 2)])[2]

    report = json.loads(a.check_bfc())
    assert report["is_sublattice"] and report["is_distributive"]

    c2 = bfc_lab.Algebra.load("chain2")
    square = c2.product(c2)
    assert square.size == 4 and len(square.factor_congruences()) == 4
    quotient, block_of = square.quotient([0, 0, 1, 1])
    assert quotient.size == 2 and block_of == [0, 0, 1, 1]
    assert bfc_lab.Algebra.from_json(square.to_json()).size == 4

    scheme = bfc_lab.Scheme.load("band0.scheme")
    assert json.loads(scheme.verify(a))["consistent"]
    pi = scheme.build_pi()
    assert json.loads(pi.check_star(a))["cond_c"]["holds"]
    assert pi.eval(a, {"x": 1, "y": 2, "z": 1, "w": 2})
    assert all(pi.truth_table(c2)) is False

    pi_s = bfc_lab.Formula.load("semilattice.pi_s")
    assert bfc_lab.Formula.parse(str(pi_s)) == pi_s
    assert sorted(pi_s.free_vars()) == ["w", "x", "y", "z"]

    ce = json.loads(bfc_lab.counterexample())
    assert all(c["holds"] for c in ce["clauses"])

    code, out, _ = bfc_lab.run_cli(["fc", "bfc", "--alg", "z6.ring", "--json"])
    assert code == 0 and json.loads(out)["is_distributive"]
    code, _, _ = bfc_lab.run_cli(["nonsense"])
    assert code == 2

    try:
        bfc_lab.Algebra.load("no-such-algebra")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown name accepted")

    assert "band0.scheme" in bfc_lab.builtin_names()
    print("python smoke test passed")


if __name__ == "__main__":
    main()
