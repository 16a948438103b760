"""Smoke test for the windex extension module."""

import json

import windex


def main():
    cp = windex.Presentation.chain(2, 1)
    systems = windex.enumerate(cp, "ae_unital")
    assert len(systems) == 13
    flags = [w.classify() for w in systems]
    assert sum(f["indexing"] for f in flags) == 2
    assert sum(f["unital"] for f in flags) == 6
    labels, covers = windex.hasse(systems)
    assert len(covers) == 16 and "F^λ" in labels

    cp2 = windex.Presentation.group("C_9")
    unital = windex.enumerate(cp2, "unital")
    assert len(unital) == 21
    assert len(windex.transfer_systems(cp2)) == 5

    zero = windex.named_system(cp, "zero")
    complete = windex.named_system(cp, "complete")
    assert zero <= complete and not complete <= zero
    assert zero.contains("C_2", {"C_2": 1}) is True
    assert zero.contains("C_2", {"e": 1}) is False
    assert windex.hull(zero) == complete
    assert zero.is_valid()
    assert zero.validate()["IC-iii"] and not zero.validate()["IC-iv"]

    dims, f_sigma = windex.rep_support("sigma", "C_2")
    assert dims == {"e": 1, "C_2": 0}
    assert f_sigma.families()["nabla"] == ["e"]
    assert f_sigma.f_r().pairs() == [("e", "C_2")]

    r = windex.transfer_system(cp2, [("e", "C_9")])
    assert len(windex.fiber(r, ["e"])) == 3
    moved = windex.transport("fold", f_sigma, ["e", "C_2"])
    assert moved.families()["nabla"] == ["e", "C_2"]

    back = windex.System.from_json(f_sigma.to_json())
    assert back == f_sigma and json.loads(back.to_json())["class"] == "sparse"
    print("smoke test passed")


if __name__ == "__main__":
    main()
