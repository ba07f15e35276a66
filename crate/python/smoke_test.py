"""Smoke test for the vck extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
Then run:                 python python/smoke_test.py
"""

import vck


def main():
    trefoil = vck.LinkDiagram.catalog("trefoil")
    assert trefoil.num_components == 1 and trefoil.genus() == 0
    assert vck.count_colorings(trefoil, vck.VirtualPair.named("dihedral3-i3()")) == 9

    counts = [
        [vck.count_colorings(vck.LinkDiagram.catalog(k), vck.VirtualPair.named(p))
         for p in ("dihedral3-i3()", "dihedral3-i3(2,3)", "dihedral3-i3(1,2,3)")]
        for k in ("k1", "k2", "k3")
    ]
    assert counts == [[9, 3, 9], [3, 9, 3], [3, 3, 3]], counts

    flip = vck.VirtualPair.named("flip2-flip2")
    assert flip.s(0, 1) == (1, 0)
    unc = vck.UniversalGroup(flip)
    assert len(unc.gens) == 3 and len(unc.relators) == 2
    assert unc.abelianization() == (3, [])

    link = vck.LinkDiagram.catalog("paper-2comp")
    rows = vck.cocycle_invariant(link, "virtual-h")
    assert vck.multiset(rows) == "2{1, 1}, 1{h, h}, 1{h^-1, h^-1}", rows

    v23 = vck.LinkDiagram.catalog("v2.3")
    assert vck.multiset(vck.cocycle_invariant(v23, "flip2-flip2")) == "2{1, 1}, 2{a^-1, b^-1}"
    moved = v23.insert_vr2((0, 0), (1, 1))
    assert vck.multiset(vck.invariant(moved, flip)) == vck.multiset(vck.invariant(v23, flip))

    assert vck.census(3)["all"] == 90
    assert "K1\t9\t3\t9" in vck.reproduce("kishino")

    try:
        vck.LinkDiagram("O1+ U2+")
    except ValueError:
        pass
    else:
        raise AssertionError("unpaired crossing accepted")

    print("smoke test: OK")


if __name__ == "__main__":
    main()
