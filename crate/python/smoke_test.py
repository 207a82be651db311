"""Smoke test for the `ocn` extension module.

Build and install it first:

    pip install --no-build-isolation ./crates/python
"""

import ocn


def main():
    ex6 = ocn.gen_named("ex6")
    assert isinstance(ex6, ocn.MspExpr) and ex6.leaf_count == 27
    chi, colors = ocn.msp_ocn(ex6)
    assert chi == 7 and max(colors) == 6
    g = ex6.digraph()
    assert ocn.verify_coloring(g, colors) is None
    assert ocn.cw_ocn(ex6.to_cw()) == 7

    x1 = ocn.MspExpr("v1 * (v2 | v3 * v4) * v5 * v6")
    x2 = ocn.MspExpr("w1 * (w2 | w3 * (w4 | w5 * w6)) * w7")
    both = ocn.MspExpr(f"({x1}) | ({x2})")
    assert [ocn.msp_ocn(e)[0] for e in (x1, x2, both)] == [4, 4, 5]
    assert ocn.ocn_exact(both.digraph())[0] == 5

    c5 = ocn.gen_named("cycle", 5)
    assert ocn.ocn_exact(c5)[0] == 5
    assert ocn.ocn_decide(c5, 4) is None
    p3 = ocn.Digraph(3, [(0, 1), (1, 2)], ["a", "b", "c"])
    assert ocn.verify_coloring(p3, [0, 1, 0]) == [(0, 1), (1, 2)]
    assert " pair_1_2_2_1: 2 x_2_2 + x_1_1 + x_3_1 <= 3" in ocn.emit_bip(p3)
    assert ocn.enumerate_check(p3, 3)

    dico = ocn.DicoExpr("(v1 > v3) > (v2 + v4)")
    assert ocn.cograph_ocn(dico)[0] == 3
    assert dico.to_cw().labels == 2
    assert dico.digraph().is_oriented_cograph()
    assert len(set(ocn.transitive_dag_coloring(dico.digraph()))) == 3

    e = ocn.random_msp(150, seed=3)
    assert max(ocn.paley_coloring(e)) <= 6 and max(ocn.und_3coloring(e)) <= 2
    assert str(ocn.random_msp(20, seed=1)) == str(ocn.random_msp(20, seed=1))

    try:
        ocn.MspExpr("a * (b |")
    except ocn.OcnInputError as err:
        assert "syntax" in str(err)
    else:
        raise AssertionError("parse error not raised")
    try:
        ocn.transitive_dag_coloring(p3)
    except ValueError:
        pass
    else:
        raise AssertionError("precondition not checked")

    print("ocn smoke test passed")


if __name__ == "__main__":
    main()
