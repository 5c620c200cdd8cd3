"""Recompute the frozen reference values in tests/data/oracles.json with sympy.

Run from the repository root:  python scripts/derive_oracles.py
The package itself is not imported, so the values are independent of it.
"""
import json
import random
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"
NAMES = ["x", "y", "z"]
DIRS = ["u", "v", "w"]


def show(e) -> str:
    return str(sp.expand(e)).replace("**", "^")


def directional(f, xs, vs):
    return sum(sp.diff(f, x) * v for x, v in zip(xs, vs))


def linear_part(f, keep, zero):
    """Terms of degree one in ``keep`` after nothing else is touched."""
    t = sp.Symbol("t")
    scaled = f.subs({k: t * k for k in keep}, simultaneous=True)
    return sp.expand(sp.diff(scaled, t).subs(t, 0))


def random_poly(rng, n):
    xs = sp.symbols(NAMES[:n])
    f = 0
    for _ in range(rng.randint(1, 5)):
        c = rng.choice([-2, -1, 1, 2])
        mono = 1
        for _ in range(rng.randint(0, 3)):
            mono *= rng.choice(xs)
        f += c * mono
    return sp.expand(f)


def corpus(size=120, seed=20240601):
    rng = random.Random(seed)
    out = []
    while len(out) < size:
        n = rng.randint(1, 3)
        f = random_poly(rng, n)
        xs = sp.symbols(NAMES[:n])
        vs = sp.symbols(DIRS[:n])
        k = rng.randint(1, n - 1) if n > 1 else 0
        entry = {
            "f": show(f),
            "vars": NAMES[:n],
            "dirs": DIRS[:n],
            "D": show(directional(f, xs, vs)),
            "L": show(linear_part(f, xs, ())),
            "ctx": k,
            "Lc": show(linear_part(f, xs[k:], ())),
            "at": [rng.randint(-3, 3) for _ in range(2 * n)],
        }
        pt = dict(zip(list(xs) + list(vs), entry["at"]))
        entry["D_at"] = str(directional(f, xs, vs).subs(pt))
        out.append(entry)
    return out


def examples():
    x, y, z, a, b, w = sp.symbols("x y z a b w")
    ex = {}
    ex["compose_square_then_shift"] = show((x ** 2) + 1)
    ex["add_square_3x"] = show(x ** 2 + 3 * x)
    ex["square_additive"] = bool(sp.expand((x + y) ** 2 - x ** 2 - y ** 2) == 0)
    ex["x_plus_1_reduced"] = bool((x + 1).subs(x, 0) == 0)
    ex["d_x2y"] = show(directional(x ** 2 * y, (x, y), (a, b)))
    ex["l_5x_x2"] = show(linear_part(5 * x + x ** 2, (x,), ()))
    ex["lc_zx_x2"] = show(linear_part(z * x + x ** 2, (x,), ()))
    ex["eval_x2y_3x_z_1"] = str((x ** 2 * y + 3 * x + z + 1).subs({x: 1, y: 2, z: 3}))
    ex["dc_z_x2"] = show(directional(z * x ** 2, (x,), (y,)))
    ex["d_x3_x"] = show(directional(x ** 3 + x, (x,), (y,)))
    ex["d_x3_x_at_2_1"] = str(directional(x ** 3 + x, (x,), (y,)).subs({x: 2, y: 1}))
    # second iterate of D on x^2 over (x, y | a, b)
    d1 = directional(x ** 2, (x,), (y,))
    ex["tower_x2"] = [show(x ** 2), show(d1), show(directional(d1, (x, y), (a, b)))]
    ex["c_a_additive_in_context"] = bool(sp.expand(z * (x + y) - z * x - z * y) == 0)
    ex["a2_additive_in_context"] = bool(sp.expand((x + y) ** 2 - x ** 2 - y ** 2) == 0)
    ex["smooth_d_sinx_x"] = show(sp.diff(sp.sin(x) * x, x) * y)
    ex["smooth_d_exp_cos"] = show(directional(sp.exp(x) * sp.cos(y), (x, y), (z, w)))
    ex["closed_lc_ca_a3"] = show(linear_part(z * x + x ** 3, (x,), ()))
    return ex


if __name__ == "__main__":
    OUT.write_text(json.dumps({"examples": examples(), "corpus": corpus()}, indent=1) + "\n")
    print(f"wrote {OUT}")
