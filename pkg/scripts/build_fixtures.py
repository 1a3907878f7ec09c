"""Regenerate the example web diagrams shipped in src/orbivertex/diagrams/."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src" / "orbivertex" / "diagrams"


def ray(eid, v, x, expect=None):
    d = {"id": eid, "from": v, "to": None, "marking_from": list(x), "marking_to": None,
         "compact": False}
    if expect:
        d["expect"] = expect
    return d


def inward_ray(eid, v, x):
    return {"id": eid, "from": None, "to": v, "marking_from": None, "marking_to": list(x),
            "compact": False}


def segment(eid, a, b, x, expect=None):
    d = {"id": eid, "from": a, "to": b, "marking_from": list(x),
         "marking_to": [-x[0], -x[1]], "compact": True}
    if expect:
        d["expect"] = expect
    return d


def c3():
    return {"name": "C3", "version": 1,
            "vertices": [{"id": "o", "edges": ["x", "y", "z"]}],
            "edges": [ray("x", "o", (1, 0)), ray("y", "o", (0, 1)), ray("z", "o", (-1, -1))]}


def football(a, b):
    """Tot(O(-p0) + O(-pinf)) over P^1_{a,b}; f and g' carry the orbifold points."""
    def frac(k):
        return "-1" if k == 1 else f"-1/{k}"
    expect = {"n": 1, "m": frac(a), "mp": frac(b)}
    if a > 1 and b > 1:
        expect.update({"mt": 0, "mtp": 0})
    return {"name": f"football_{a}_{b}", "version": 1,
            "vertices": [{"id": "p0", "edges": ["e", "fp", "f"]},
                         {"id": "pinf", "edges": ["e", "g", "gp"]}],
            "edges": [segment("e", "p0", "pinf", (1, 0), expect),
                      ray("f", "p0", (0, -a)),
                      inward_ray("fp", "p0", (-1, a)),
                      inward_ray("g", "pinf", (1, -b)),
                      ray("gp", "pinf", (0, b))]}


def bz2():
    """Resolved conifold divided by Z_2 acting by -1 on the fibres."""
    return {"name": "bz2_gerbe", "version": 1,
            "vertices": [{"id": "L", "edges": ["e", "fp", "f"]},
                         {"id": "R", "edges": ["e", "g", "gp"]}],
            "edges": [segment("e", "L", "R", (2, 0), {"n": 2, "m": "-1", "mp": "-1"}),
                      ray("fp", "L", (-1, 1)), ray("f", "L", (-1, -1)),
                      ray("g", "R", (1, -1)), ray("gp", "R", (1, 1))]}


def p1xp1():
    """Local P^1 x P^1: AB and DC are sections, AD and BC are fibres."""
    sec = {"n": 1, "m": "0", "mp": "-2"}
    return {"name": "local_p1xp1", "version": 1,
            "vertices": [{"id": "A", "edges": ["AB", "AD", "rA"]},
                         {"id": "B", "edges": ["rB", "BC", "AB"]},
                         {"id": "C", "edges": ["rC", "DC", "BC"]},
                         {"id": "D", "edges": ["DC", "rD", "AD"]}],
            "edges": [segment("AB", "A", "B", (1, 0), sec),
                      segment("BC", "B", "C", (0, 1)),
                      segment("DC", "D", "C", (1, 0)),
                      segment("AD", "A", "D", (0, 1)),
                      ray("rA", "A", (-1, -1)), ray("rB", "B", (1, -1)),
                      ray("rC", "C", (1, 1)), ray("rD", "D", (-1, 1))]}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = {"c3": c3(), "conifold": football(1, 1), "bz2_gerbe": bz2(), "local_p1xp1": p1xp1()}
    docs["conifold"]["name"] = "conifold"
    for a, b in [(2, 1), (2, 2), (2, 3), (3, 2)]:
        docs[f"football_{a}_{b}"] = football(a, b)
    for name, doc in docs.items():
        (OUT / f"{name}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print("wrote", name)


if __name__ == "__main__":
    main()
