"""Smoke test for the amphicheck Python bindings.

Build and install first:  maturin develop  (from crates/python)
"""

import json

import amphicheck_py as ac


def main():
    p = ac.LaurentPoly("(t1-1)*(t2-1)*(t1-t2)*(t1*t2-1)", 2)
    f = ac.extract_symmetric_factor(p, [1, 2])
    assert str(f) in ("t1 - t2 - t2^-1 + t1^-1", "-t1 + t2 + t2^-1 - t1^-1"), str(f)
    assert f.inverted() == f
    assert ac.diagonal_vanishing(p)[0] == "PASS"

    q = ac.LaurentPoly("t1*t2 - 1", 2)
    assert (p.divide_exact(q) * q) == p
    try:
        q.divide_exact(ac.LaurentPoly("t1 - 1", 2))
    except ValueError:
        pass
    else:
        raise AssertionError("expected a remainder error")

    whitehead = ac.generate("fixture", ["whitehead"])
    assert whitehead.components == 2 and whitehead.is_algebraically_split()
    report = json.loads(whitehead.check())
    assert report[0]["overall_status"] == "OBSTRUCTED"

    borromean = ac.generate("borromean")
    code, text = ac.check_records(borromean.to_json(), eps=[[1, 1, 1]])
    assert code == 0, text
    assert json.loads(text)[0]["overall_status"] == "CONSISTENT"

    records = ac.LinkRecord.parse_all(ac.generate("milnor", ["4"]).to_json())
    code, text = ac.check_records(records[0].to_json(), format="text")
    assert code == 0 and "1 record" in text

    print("amphicheck_py smoke test: ok")


if __name__ == "__main__":
    main()
