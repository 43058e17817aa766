"""Shared quiver algebra fixtures.

The five standard algebras used across the test suite, all over F_2:

  point      one vertex, no arrows (semisimple)
  dual       one vertex, loop a with a.a = 0 (F_2[x]/(x^2))
  a2         1 -> 2
  a3         1 -> 2 -> 3 with the length-2 path zero (global dimension 2)
  a4         1 -> 2 -> 3 -> 4 with both length-2 paths zero (gl.dim 3)
"""

from __future__ import annotations

import pytest

from levelcert.algebra import (
    Arrow,
    Presentation,
    Relation,
    RelationTerm,
    load_algebra,
)


def presentation_point():
    return Presentation(2, ("1",), (), (), 1)


def presentation_dual_numbers():
    return Presentation(
        2,
        ("1",),
        (Arrow("a", "1", "1"),),
        (Relation((RelationTerm(1, ("a", "a")),)),),
        2,
    )


def presentation_a2():
    return Presentation(2, ("1", "2"), (Arrow("a", "1", "2"),), (), 2)


def presentation_a3():
    return Presentation(
        2,
        ("1", "2", "3"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3")),
        (Relation((RelationTerm(1, ("a", "b")),)),),
        2,
    )


def presentation_a4():
    return Presentation(
        2,
        ("1", "2", "3", "4"),
        (Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "4")),
        (
            Relation((RelationTerm(1, ("a", "b")),)),
            Relation((RelationTerm(1, ("b", "c")),)),
        ),
        2,
    )


@pytest.fixture(scope="session")
def point():
    return load_algebra(presentation_point())


@pytest.fixture(scope="session")
def dual():
    return load_algebra(presentation_dual_numbers())


@pytest.fixture(scope="session")
def a2():
    return load_algebra(presentation_a2())


@pytest.fixture(scope="session")
def a3():
    return load_algebra(presentation_a3())


@pytest.fixture(scope="session")
def a4():
    return load_algebra(presentation_a4())
