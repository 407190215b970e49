"""Shared builders: the four worked example parameter sets, random field
elements, random fractional ideals, and random standard-form parameter sets
for both surface families."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from inoueaut import (
    FieldDescriptor,
    FieldElement,
    Lattice,
    QuadComplex,
    QuadReal,
    SurfaceParams,
    fundamental_unit,
    is_standard_form_direct,
    solve_standard_e,
)

# -- the worked examples -------------------------------------------------------


def example_theta6() -> SurfaceParams:
    """theta=6, r=6, I=Z<1, eta>, e=0, t=0; Q = Z/2 x Z/2."""
    field = FieldDescriptor(6, 1)
    return SurfaceParams.create(field, 6, field.one(), fundamental_unit(field))


def example_theta4_shifted() -> SurfaceParams:
    """theta=4, r=6, I=Z[u], e=1/(6(1-u)); Q = Z/2."""
    field = FieldDescriptor(4, 1)
    e = field.one() / (6 * (field.one() - field.u()))
    return SurfaceParams.create(field, 6, field.one(), field.u(), e)


def example_theta4_zero() -> SurfaceParams:
    """theta=4, r=6, I=Z[u], e=0; Q trivial."""
    field = FieldDescriptor(4, 1)
    return SurfaceParams.create(field, 6, field.one(), field.u())


def example_theta7() -> SurfaceParams:
    """theta=7, r=10, I=Z<1, eta>, e=0; Q = (Z/4) |x (Z/5), action 3."""
    field = FieldDescriptor(7, 1)
    return SurfaceParams.create(field, 10, field.one(), fundamental_unit(field))


def all_examples() -> list[SurfaceParams]:
    return [
        example_theta6(),
        example_theta4_shifted(),
        example_theta4_zero(),
        example_theta7(),
    ]


# -- random data ---------------------------------------------------------------


def random_rational(rng: random.Random, span: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.choice((1, 1, 2, 3)))


def random_field_element(
    rng: random.Random, field: FieldDescriptor, span: int = 4
) -> FieldElement:
    return field.element(random_rational(rng, span), random_rational(rng, span))


def random_nonzero_element(
    rng: random.Random, field: FieldDescriptor, span: int = 4
) -> FieldElement:
    while True:
        x = random_field_element(rng, field, span)
        if x:
            return x


def random_invariant_lattice(rng: random.Random, field: FieldDescriptor) -> Lattice:
    """A fractional ideal of Z[u] with a randomized basis.

    Starts from an integral ideal Z<a, c + u> (a | Norm(c + u)), then applies
    unimodular basis moves and a nonzero field scaling, both of which keep
    invariance under u.
    """
    theta, c0 = field.theta, field.c0
    while True:
        a = rng.randint(1, 4)
        admissible = [c for c in range(a) if (c * c + theta * c + c0) % a == 0]
        if admissible:
            break
    c = rng.choice(admissible)
    b1 = field.element(a)
    b2 = field.element(c, 1)
    for _ in range(rng.randint(0, 3)):
        move = rng.randrange(3)
        m = rng.randint(-2, 2)
        if move == 0:
            b1 = b1 + m * b2
        elif move == 1:
            b2 = b2 + m * b1
        else:
            b1, b2 = b2, b1
    scale = random_nonzero_element(rng, field, span=2)
    b1 = scale * b1
    b2 = scale * b2
    lat = Lattice(b1, b2)
    assert lat.mult_matrix(field.u()).is_integral()
    return lat


def _solve_standard_e_minus(
    field: FieldDescriptor,
    r: int,
    x1: FieldElement,
    x2: FieldElement,
    p_int: int,
    q_int: int,
) -> FieldElement:
    # The (u-1)-variant of the plus-family solved form; validated by the
    # direct conjugation check in random_standard_params.
    lattice = Lattice(x1, x2)
    (n11, n12), (n21, n22) = lattice.mult_matrix(field.u()).int_rows()
    u = field.u()
    factor = u / (u - field.one())
    return factor * (
        (Fraction(n11 * n12, 2) + Fraction(p_int, r)) * x2
        - (Fraction(n21 * n22, 2) + Fraction(q_int, r)) * x1
    )


def random_t(rng: random.Random, field: FieldDescriptor) -> QuadComplex:
    delta = field.delta
    roll = rng.random()
    if roll < 0.5:
        return QuadComplex.zero(delta)
    if roll < 0.65:
        return QuadComplex.from_real(
            QuadReal.from_rational(random_rational(rng, 3), delta)
        )
    if roll < 0.85:
        return QuadComplex.from_real(QuadReal(0, random_rational(rng, 3), delta))
    return QuadComplex(
        QuadReal(random_rational(rng, 2), random_rational(rng, 2), delta),
        QuadReal(random_rational(rng, 2), random_rational(rng, 2), delta),
    )


def random_standard_params(
    rng: random.Random,
    c0: int,
    theta_range: tuple[int, int],
    r_range: tuple[int, int] = (1, 12),
) -> SurfaceParams:
    """A validated standard-form parameter set with randomized ideal and e."""
    theta = rng.randint(*theta_range)
    field = FieldDescriptor(theta, c0)
    r = rng.randint(*r_range)
    lat = random_invariant_lattice(rng, field)
    x1, x2 = lat.basis
    p_int = rng.randint(-2 * r, 2 * r)
    q_int = rng.randint(-2 * r, 2 * r)
    if c0 == 1:
        e = solve_standard_e(field, r, x1, x2, p_int, q_int)
        t = random_t(rng, field)
    else:
        e = _solve_standard_e_minus(field, r, x1, x2, p_int, q_int)
        t = QuadComplex.zero(field.delta)
    params = SurfaceParams(field, r, x1, x2, e, t)
    assert is_standard_form_direct(params)
    return params


def random_unit(
    rng: random.Random, field: FieldDescriptor, eta: FieldElement
) -> FieldElement:
    """A random element of the positive unit group (norm +-1, sigma1 > 0)."""
    return (field.u() ** rng.randint(-2, 2)) * (eta ** rng.randint(-2, 2))


@pytest.fixture(scope="session")
def example_params() -> list[SurfaceParams]:
    return all_examples()
