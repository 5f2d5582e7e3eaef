"""Smoke test for the compiled extension.

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

import json

import preclusion
from preclusion import Graph, PreclusionError


def main():
    q3 = Graph.hypercube(3)
    assert (q3.n, q3.m) == (8, 12)
    assert q3.to_graph6() == "Gr`HOk"
    assert Graph.parse(q3.to_edge_list()).edges == q3.edges
    assert Graph.parse(q3.to_json(), "json") == q3
    assert Graph.from_graph6("IheA@GUAo") == Graph.petersen()
    assert Graph.petersen().matching_number() == 5
    assert len(Graph.complete(5).max_matching()) == 2
    assert q3.v_e() == 4

    mp = q3.solve("mp")
    assert mp["value"] == 3, mp
    assert len(mp["witness"]) == 3
    assert mp["stats"]["nodes"] > 0
    assert q3.solve("mps", s=1)["value"] == 4
    assert q3.solve("mps", s=2, jobs=2)["value"] == 4
    assert q3.solve("mp", budget=2)["value"] == {"greater_than": 2}
    assert Graph.cycle(6).solve("ak")["value"] == "INFINITY"
    assert q3.brute_force("mps", s=1)["value"] == 4

    try:
        Graph.cycle(5).solve("ak")
    except PreclusionError as e:
        assert "even order" in str(e)
    else:
        raise AssertionError("odd order accepted for ak")

    k2 = Graph(2, [(0, 1)])
    gadget = preclusion.reduce(k2)
    assert (gadget["gadget"].n, gadget["gadget"].m) == (6, 7)
    assert gadget["e"] == (gadget["u_double_prime"], gadget["v_double_prime"])
    assert preclusion.verify_equivalence(k2, 1)["agree"]
    assert preclusion.reduction_fuzz(7, 20)["agreeing_instances"] == 20

    assert preclusion.verify_hypercube(3, 2)["passed"]
    assert preclusion.verify_lemma4(3)["subsets_checked"] == 495
    assert preclusion.verify_stars(3)["passed"]
    lemma5 = preclusion.verify_lemma5(4, samples=1000)
    assert lemma5["literal_counterexample"]["reproduced"]
    assert lemma5["corrected_form"]["passed"]
    assert preclusion.verify_lemma6(4)["passed"]
    assert preclusion.chain_suite(1, 10)["passed"]
    assert preclusion.ve_bound_suite(1, 5)["passed"]
    assert preclusion.matching_oracle_suite(1, 50)["passed"]

    print(json.dumps({"version": preclusion.__version__, "mp(Q3)": mp["value"], "ok": True}))


if __name__ == "__main__":
    main()
