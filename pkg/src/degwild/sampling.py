"""Seeded random inputs for the property harness.

Every sample gets its own generator, spawned from the run seed and the
sample index, so results do not depend on iteration order or sharding.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from .fields import RatFunc
from .poly import Poly, Weighting

PRNG_NAME = "numpy PCG64, SeedSequence(seed, spawn_key=(sample_index,))"


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def random_rational(rng: np.random.Generator, bound: int = 5, nonzero: bool = True) -> Fraction:
    while True:
        num = int(rng.integers(-bound, bound + 1))
        if num or not nonzero:
            return Fraction(num, int(rng.integers(1, 4)))


def random_ratfunc(rng: np.random.Generator) -> RatFunc:
    """Nonzero element of Q(s): degree <= 2 over a monic denominator of degree <= 1."""
    while True:
        num = [random_rational(rng, nonzero=False) for _ in range(int(rng.integers(1, 4)))]
        if any(num):
            break
    den = [Fraction(1)]
    if rng.random() < 0.3:
        den = [Fraction(int(rng.integers(-3, 4))), Fraction(1)]
    return RatFunc(num, den)


def random_exponents(rng: np.random.Generator, nvars: int, max_degree: int) -> tuple:
    total = int(rng.integers(0, max_degree + 1))
    exps = [0] * nvars
    for _ in range(total):
        exps[int(rng.integers(0, nvars))] += 1
    return tuple(exps)


def random_poly(
    rng: np.random.Generator,
    nvars: int,
    max_degree: int = 3,
    max_terms: int = 4,
    coeff: Callable | None = None,
    zero_rate: float = 0.0,
) -> Poly:
    """Random polynomial of total degree <= max_degree.

    With probability ``zero_rate`` the zero polynomial is returned, so the
    "deg x = -inf iff x = 0" axiom sees both branches.
    """
    if zero_rate and rng.random() < zero_rate:
        return Poly.zero(nvars)
    coeff = coeff or random_rational
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        terms[random_exponents(rng, nvars, max_degree)] = coeff(rng)
    return Poly(nvars, terms)


def random_nonzero_poly(rng: np.random.Generator, nvars: int, **kw) -> Poly:
    while True:
        f = random_poly(rng, nvars, **kw)
        if f:
            return f


def random_homogeneous(rng: np.random.Generator, w: Weighting, max_degree: int = 4, **kw) -> Poly:
    """A nonzero homogeneous element: one graded component of a random polynomial."""
    f = random_nonzero_poly(rng, w.nvars, max_degree=max_degree, max_terms=6, **kw)
    parts = w.components(f)
    keys = sorted(parts, key=lambda d: d.value)
    return parts[keys[int(rng.integers(0, len(keys)))]]
