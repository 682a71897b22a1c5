"""Built-in named instances and structures.

The pair ``figure-a`` / ``figure-b`` shares one interaction structure — a
triangle of three qubits with a doubled edge — yet differs in kind:

* ``figure-a`` forbids computational basis states and is satisfiable (the
  all-zeros state works); moreover every classical formula with this
  clause structure is satisfiable;
* ``figure-b`` uses entangled projectors on the triangle edges and is
  unsatisfiable, with ground energy (5 - sqrt(17))/4.

``figure-b`` is also a minimal unsatisfiable instance (every single-term
deletion is satisfiable), which makes it the default core for the
locality-raising gadget.
"""

import math

import numpy as np

from .errors import ArgumentError
from .instance import CnfFormula, QsatInstance, RankOneTerm

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

#: Ground energy of figure-b, (5 - sqrt(17))/4; doubles as the default
#: penalty constant of gadgets built from it.
FIGURE_B_GROUND_ENERGY = (5.0 - math.sqrt(17.0)) / 4.0


def basis_term(support, bits: str) -> RankOneTerm:
    """Projector onto the computational basis state written as a bit string
    over the support order, e.g. basis_term((0, 2), "10")."""
    if len(bits) != len(support):
        raise ArgumentError(f"bit string {bits!r} does not match support {support}")
    amps = np.zeros(1 << len(support), dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return RankOneTerm(tuple(support), amps)


def singlet_term(i: int, j: int) -> RankOneTerm:
    """Projector onto (|01> - |10>)/sqrt(2) on qubits (i, j)."""
    return RankOneTerm((i, j), [0.0, _INV_SQRT2, -_INV_SQRT2, 0.0])


def figure_a() -> QsatInstance:
    """The satisfiable, basis-aligned member of the canonical pair."""
    return QsatInstance(
        3,
        [
            basis_term((0, 1), "10"),
            basis_term((1, 2), "11"),
            basis_term((0, 2), "01"),
            basis_term((0, 2), "10"),
        ],
        1.0,
    )


def figure_b() -> QsatInstance:
    """The unsatisfiable, entangled member of the canonical pair.

    Its promise gap is set just below its ground energy so the instance
    honors the promise it carries.
    """
    return QsatInstance(
        3,
        [
            singlet_term(0, 1),
            singlet_term(1, 2),
            basis_term((0, 2), "00"),
            basis_term((0, 2), "11"),
        ],
        0.2,
    )


def figure_instances():
    """The same-structure (satisfiable, unsatisfiable) pair."""
    return figure_a(), figure_b()


def triangle_double_structure():
    """(num_qubits, supports) of the doubled-edge triangle."""
    return 3, ((0, 1), (1, 2), (0, 2), (0, 2))


def figure_a_formula() -> CnfFormula:
    """The clause skeleton of figure-a as an all-positive formula."""
    return CnfFormula(
        3,
        [
            ((0, True), (1, True)),
            ((1, True), (2, True)),
            ((0, True), (2, True)),
            ((0, True), (2, True)),
        ],
    )


_INSTANCES = {"figure-a": figure_a, "figure-b": figure_b}


def builtin_instance(name: str) -> QsatInstance:
    try:
        return _INSTANCES[name]()
    except KeyError:
        known = ", ".join(sorted(_INSTANCES))
        raise ArgumentError(f"unknown builtin instance {name!r} (known: {known})") from None


def builtin_structure(name: str):
    """(num_qubits, supports) for a named structure; instance names give
    their instance's structure."""
    if name == "triangle-double":
        return triangle_double_structure()
    if name in _INSTANCES:
        instance = _INSTANCES[name]()
        return instance.num_qubits, tuple(t.support for t in instance.terms)
    known = ", ".join(sorted([*_INSTANCES, "triangle-double"]))
    raise ArgumentError(f"unknown builtin structure {name!r} (known: {known})")
