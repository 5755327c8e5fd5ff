#!/usr/bin/env python3
"""Smoke test for the quasimod Python extension.

Builds nothing itself: expects `cargo build -p quasimod-python` to have
produced target/debug/libquasimod.so (or .dylib), which is linked into a
temporary directory as an importable module.
"""

import json
import os
import shutil
import sys
import tempfile


def locate_extension():
    here = os.path.dirname(os.path.abspath(__file__))
    root = os.path.dirname(here)
    for profile in ("debug", "release"):
        for stem, ext in (("libquasimod", ".so"), ("libquasimod", ".dylib"), ("quasimod", ".pyd")):
            cand = os.path.join(root, "target", profile, stem + ext)
            if os.path.exists(cand):
                return cand
    sys.exit("build the extension first: cargo build -p quasimod-python")


def main():
    ext = locate_extension()
    tmp = tempfile.mkdtemp(prefix="quasimod-py-")
    shutil.copy(ext, os.path.join(tmp, "quasimod.so"))
    sys.path.insert(0, tmp)
    import quasimod

    # groups and quadratic forms
    info = quasimod.group_info([2, 4])
    assert info["order"] == 8 and info["exponent"] == 4, info
    forms = quasimod.enumerate_qforms([2])
    assert len(forms) == 4, "H³_ab(Z₂) has four classes"
    forms8 = quasimod.enumerate_qforms([8])
    assert len(forms8) == 16

    # a nondegenerate form on Z₂ gives a valid cocycle
    q = json.dumps({"group": {"moduli": [2]}, "diag_exps": [[1, 4]], "offdiag_exps": {}})
    assert quasimod.qform_cocycle_valid(q)

    # modularization of a degenerate braiding on Z₈ (radical Z₂, Q trivial on it)
    q8 = json.dumps({"group": {"moduli": [8]}, "diag_exps": [[1, 16]], "offdiag_exps": {}})
    md = quasimod.modularize_qform(q8)
    assert md["modularizable"] and md["quotient_moduli"] == [4] and md["modular"], md

    # the rank-1 lattice datum: G ≅ Z_{2ℓ}
    lat = quasimod.lattice_datum("A", 1, 4)
    assert lat["group_moduli"] == [8] and lat["nondegenerate"], lat

    # Nichols dimensions: rank 1 at a primitive 4th root gives total 4
    nd = quasimod.nichols_dims([[(1, 4)]], max_degree=8)
    assert nd["total"] == 4, nd

    # decision table
    table = quasimod.sl2_table(3)
    by_name = {row["f"]: row for row in table}
    assert by_name["f+"]["nondegenerate"] and not by_name["f+"]["modularizable"]
    assert not by_name["f-"]["nondegenerate"]

    # the central build: u(ω̄,σ̄) at ℓ = 4
    u = quasimod.build_sl2_quotient(4)
    assert u.dim == 16
    lines = u.verify()
    fails = [l for l in lines if "FAIL" in l]
    assert all("Θ²" in l for l in fails), f"unexpected failures: {fails}"
    assert u.factorizable()
    assert u.drinfeld_ok()
    dump = json.loads(u.dump())
    assert dump["dim"] == 16 and len(dump["mult"]) == 16 * 16

    # B_n table at the fourth root of unity
    bn = quasimod.bn_check(2)
    assert bn["group_bar_moduli"] == [2, 2]
    assert bn["q_matches_pushdown"] and bn["b_nondegenerate"]

    print("smoke test: all assertions passed")


if __name__ == "__main__":
    main()
