"""Shared randomized-instance builders for the test suite."""

from __future__ import annotations

import random

from wittrecipe.chainalg import ChainComplex, cone, ChainMap, shift, tensor
from wittrecipe.geometry import (
    BlowupDiagram,
    HypothesisData,
    SchemeNode,
    attach_hypothesis,
    build_blowup,
)
from wittrecipe.lattice import LatticeHom, PicLattice
from wittrecipe.poly import PolyRing

_counter = [0]


def _fresh(prefix: str) -> str:
    _counter[0] += 1
    return f"{prefix}{_counter[0]}"


def random_unimodular(rng: random.Random, n: int, ops: int = 6):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(ops):
        kind = rng.randrange(3)
        i, j = rng.randrange(n), rng.randrange(n)
        if kind == 0 and i != j:
            c = rng.choice((-1, 1))
            for k in range(n):
                m[i][k] += c * m[j][k]
        elif kind == 1:
            m[i], m[j] = m[j], m[i]
        else:
            m[i] = [-x for x in m[i]]
    return tuple(tuple(row) for row in m)


def random_diagram(rng: random.Random, max_rank: int = 3, max_c: int = 6
                   ) -> BlowupDiagram:
    rx = rng.randint(1, max_rank)
    rz = rng.randint(1, max_rank)
    c = rng.randint(2, max_c)
    tag = _fresh("T")
    pic_x = PicLattice(f"Pic(X{tag})", tuple(f"H{i}" for i in range(rx)))
    pic_z = PicLattice(f"Pic(Z{tag})", tuple(f"h{i}" for i in range(rz)))
    X = SchemeNode(f"X{tag}", pic_x, regular=True)
    Z = SchemeNode(f"Z{tag}", pic_z, regular=True)
    iota = LatticeHom(
        pic_x, pic_z,
        tuple(
            tuple(rng.randint(-2, 2) for _ in range(rx)) for _ in range(rz)
        ),
    )
    omega = pic_z.element(tuple(rng.randint(-3, 3) for _ in range(rz)))
    return build_blowup(X, Z, c, iota, omega)


def random_hypothesis(rng: random.Random, d: BlowupDiagram) -> HypothesisData:
    rx = d.X.pic.rank
    tag = _fresh("Y")
    pic_y = PicLattice(f"Pic(Y{tag})", tuple(f"y{i}" for i in range(rx)))
    Y = SchemeNode(f"Y{tag}", pic_y, regular=True)
    alpha = random_unimodular(rng, rx)
    lam_row = tuple(rng.randint(-3, 3) for _ in range(rx))
    alpha_t = alpha + (lam_row,)
    return attach_hypothesis(
        d, Y,
        LatticeHom(pic_y, d.U.pic, alpha),
        LatticeHom(pic_y, d.Bl.pic, alpha_t),
        rng.randint(0, 4),
    )


def random_poly(rng: random.Random, ring: PolyRing, max_terms: int = 2):
    p = ring.zero()
    for _ in range(rng.randint(1, max_terms)):
        c = rng.choice((-2, -1, 1, 2))
        exp = tuple(rng.randint(0, 2) for _ in range(ring.nvars))
        from wittrecipe.poly import PolyElement
        p = p + PolyElement(ring, ((exp, c),))
    return p


def brick(rng: random.Random, ring: PolyRing) -> ChainComplex:
    """A guaranteed complex: either concentrated in one degree or a
    two-term multiplication complex."""
    base = rng.randint(-2, 2)
    if rng.random() < 0.3:
        return ChainComplex.build(ring, {base: rng.randint(1, 2)})
    p = random_poly(rng, ring)
    return ChainComplex.build(
        ring, {base: 1, base + 1: 1}, {base + 1: ((p,),)}
    )


def random_complex(rng: random.Random, ring: PolyRing) -> ChainComplex:
    cx = brick(rng, ring)
    for _ in range(rng.randint(0, 1)):
        cx = tensor(cx, brick(rng, ring))
    if rng.random() < 0.5:
        cx = shift(cx, rng.randint(-1, 1))
    return cx
