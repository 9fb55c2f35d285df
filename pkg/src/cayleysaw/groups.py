"""Exact computable groups with canonical normal forms.

Elements are plain nested tuples of integers (hashable, exactly comparable),
and each group descriptor knows how to multiply, invert and validate them:

* free abelian rank k   -> k-tuple of ints
* cyclic mod m          -> a single int in [0, m)
* free group rank k     -> reduced word as a tuple of nonzero signed letters
* Heisenberg            -> (x, y, z) triple
* product               -> tuple of factor elements
* central quotient      -> base normal form with masked coordinates reduced

Descriptors are immutable and hashable; all operations are pure functions,
so groups and elements can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union

from .errors import EmptyGeneratingSetError, MalformedElementError, MaskError

Element = Union[int, tuple]
# An axis addresses one integer coordinate inside a nested normal form:
# leading entries index product factors, the last entry indexes a coordinate
# of the atomic factor (e.g. the z slot of a Heisenberg triple).
Axis = Tuple[int, ...]

__all__ = [
    "Element",
    "Axis",
    "Group",
    "FreeAbelian",
    "Cyclic",
    "FreeGroup",
    "Heisenberg",
    "Product",
    "CentralQuotient",
    "product",
    "GeneratingSet",
    "generating_set",
    "symmetric_closure",
    "ConstructionGroup",
    "make_construction_group",
    "element_str",
    "axis_value",
    "with_axis",
]


def element_str(e: Element) -> str:
    """Canonical, whitespace-free rendering of a normal form."""
    if isinstance(e, tuple):
        return "(" + ",".join(element_str(x) for x in e) + ")"
    return str(e)


def axis_value(e: Element, axis: Axis) -> int:
    for j in axis[:-1]:
        e = e[j]
    return e[axis[-1]]


def with_axis(e: Element, axis: Axis, value: int) -> Element:
    """Copy of ``e`` with the coordinate at ``axis`` replaced by ``value``."""
    i = axis[0]
    if len(axis) == 1:
        return e[:i] + (value,) + e[i + 1 :]
    return e[:i] + (with_axis(e[i], axis[1:], value),) + e[i + 1 :]


class Group:
    """Base descriptor; subclasses implement the group law on normal forms."""

    def identity(self) -> Element:
        raise NotImplementedError

    def _mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def _inv(self, a: Element) -> Element:
        raise NotImplementedError

    def validate(self, a: Element) -> None:
        """Raise MalformedElementError unless ``a`` is a normal form here."""
        raise NotImplementedError

    def multiply(self, a: Element, b: Element) -> Element:
        self.validate(a)
        self.validate(b)
        return self._mul(a, b)

    def inverse(self, a: Element) -> Element:
        self.validate(a)
        return self._inv(a)

    def power(self, a: Element, n: int) -> Element:
        self.validate(a)
        if n < 0:
            a, n = self._inv(a), -n
        out = self.identity()
        for _ in range(n):
            out = self._mul(out, a)
        return out

    def central_axes(self) -> Tuple[Axis, ...]:
        """Ordered coordinates that span a free abelian central subgroup."""
        return ()

    def axis_element(self, index: int, exponent: int = 1) -> Element:
        axis = self.central_axes()[index]
        return self._reduce_raw(with_axis(self.identity(), axis, exponent))

    def _reduce_raw(self, e: Element) -> Element:
        """Hook for quotients; identity map elsewhere."""
        return e

    def is_finite(self) -> bool:
        return self._finite_when_masked(frozenset())

    def _finite_when_masked(self, masked: frozenset) -> bool:
        raise NotImplementedError

    def term(self) -> str:
        """Canonical descriptor term (grammar documented in the CLI)."""
        raise NotImplementedError

    def default_generators(self) -> Tuple[Element, ...]:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.term()


def _check_int_tuple(a: Element, length: int, what: str) -> None:
    if not isinstance(a, tuple) or len(a) != length:
        raise MalformedElementError(f"{what}: expected {length}-tuple, got {a!r}")
    for x in a:
        if not isinstance(x, int):
            raise MalformedElementError(f"{what}: non-integer coordinate in {a!r}")


@dataclass(frozen=True)
class FreeAbelian(Group):
    rank: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("free abelian rank must be >= 0")

    def identity(self):
        return (0,) * self.rank

    def _mul(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv(self, a):
        return tuple(-x for x in a)

    def validate(self, a):
        _check_int_tuple(a, self.rank, self.term())

    def central_axes(self):
        return tuple((i,) for i in range(self.rank))

    def _finite_when_masked(self, masked):
        return all((i,) in masked for i in range(self.rank))

    def term(self):
        return "Z" if self.rank == 1 else f"Z^{self.rank}"

    def default_generators(self):
        ident = self.identity()
        return tuple(ident[:i] + (1,) + ident[i + 1 :] for i in range(self.rank))


@dataclass(frozen=True)
class Cyclic(Group):
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("cyclic modulus must be >= 2")

    def identity(self):
        return 0

    def _mul(self, a, b):
        return (a + b) % self.modulus

    def _inv(self, a):
        return (-a) % self.modulus

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.modulus:
            raise MalformedElementError(
                f"{self.term()}: expected residue in [0,{self.modulus}), got {a!r}"
            )

    def _finite_when_masked(self, masked):
        return True

    def term(self):
        return f"Z/{self.modulus}"

    def default_generators(self):
        return (1,)


@dataclass(frozen=True)
class FreeGroup(Group):
    """Free group on ``rank`` letters; words are eagerly reduced.

    Letters are nonzero ints: +i and -i are the i-th generator and its
    inverse (1-based), so a normal form is a tuple with no adjacent x, -x.
    """

    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free group rank must be >= 1")

    def identity(self):
        return ()

    def _mul(self, a, b):
        out = list(a)
        for letter in b:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def _inv(self, a):
        return tuple(-x for x in reversed(a))

    def validate(self, a):
        if not isinstance(a, tuple):
            raise MalformedElementError(f"{self.term()}: expected word tuple, got {a!r}")
        for i, x in enumerate(a):
            if not isinstance(x, int) or x == 0 or abs(x) > self.rank:
                raise MalformedElementError(f"{self.term()}: bad letter {x!r} in {a!r}")
            if i and a[i - 1] == -x:
                raise MalformedElementError(f"{self.term()}: unreduced word {a!r}")

    def _finite_when_masked(self, masked):
        return False

    def term(self):
        return f"F_{self.rank}"

    def default_generators(self):
        return tuple((i,) for i in range(1, self.rank + 1))


@dataclass(frozen=True)
class Heisenberg(Group):
    """Integer Heisenberg group as (x, y, z) triples.

    The product convention matches upper-triangular matrices
    [[1, x, z], [0, 1, y], [0, 0, 1]]: z' = z1 + z2 + x1*y2.  The center is
    the z line, which is the group's single central axis.
    """

    def identity(self):
        return (0, 0, 0)

    def _mul(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1])

    def _inv(self, a):
        x, y, z = a
        return (-x, -y, -z + x * y)

    def validate(self, a):
        _check_int_tuple(a, 3, "H3")

    def central_axes(self):
        return ((2,),)

    def _finite_when_masked(self, masked):
        return False

    def term(self):
        return "H3"

    def default_generators(self):
        return ((1, 0, 0), (0, 1, 0))


@dataclass(frozen=True)
class Product(Group):
    factors: Tuple[Group, ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("product needs at least two factors")
        if any(isinstance(f, Product) for f in self.factors):
            raise ValueError("products are flattened; use product(...)")

    def identity(self):
        return tuple(f.identity() for f in self.factors)

    def _mul(self, a, b):
        return tuple(f._mul(x, y) for f, x, y in zip(self.factors, a, b))

    def _inv(self, a):
        return tuple(f._inv(x) for f, x in zip(self.factors, a))

    def validate(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise MalformedElementError(
                f"{self.term()}: expected {len(self.factors)}-tuple, got {a!r}"
            )
        for f, x in zip(self.factors, a):
            f.validate(x)

    def central_axes(self):
        return tuple(
            (j,) + ax for j, f in enumerate(self.factors) for ax in f.central_axes()
        )

    def _finite_when_masked(self, masked):
        return all(
            f._finite_when_masked(
                frozenset(ax[1:] for ax in masked if ax[0] == j)
            )
            for j, f in enumerate(self.factors)
        )

    def term(self):
        return " x ".join(f.term() for f in self.factors)

    def default_generators(self):
        ident = self.identity()
        gens = []
        for j, f in enumerate(self.factors):
            for g in f.default_generators():
                gens.append(ident[:j] + (g,) + ident[j + 1 :])
        return tuple(gens)


def product(*groups: Group) -> Group:
    """Direct product, flattening nested products into one n-ary factor list."""
    flat: list[Group] = []
    for g in groups:
        if isinstance(g, Product):
            flat.extend(g.factors)
        else:
            flat.append(g)
    if not flat:
        raise ValueError("empty product")
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


@dataclass(frozen=True)
class CentralQuotient(Group):
    """Quotient of ``base`` by <m_i * g_i> over masked central axes.

    ``moduli`` aligns with ``base.central_axes()``: entry i is either None
    (coordinate i untouched) or a modulus >= 2, and trailing None entries are
    trimmed so the representation is canonical.  Masked coordinates are
    central and combine additively under the base group law, so reducing
    them modulo m_i after each base operation is well defined.
    """

    base: Group
    moduli: Tuple[Optional[int], ...]
    _masked: Tuple[Tuple[Axis, int], ...] = field(
        init=False, repr=False, compare=False, default=()
    )

    def __post_init__(self):
        if isinstance(self.base, CentralQuotient):
            raise MaskError("quotient towers are flattened; use central_quotient()")
        axes = self.base.central_axes()
        if not self.moduli or self.moduli[-1] is None:
            raise MaskError("mask must be nonempty with no trailing gaps")
        if len(self.moduli) > len(axes):
            raise MaskError(
                f"mask length {len(self.moduli)} exceeds {len(axes)} central axes"
            )
        masked = []
        for i, m in enumerate(self.moduli):
            if m is None:
                continue
            if m < 2:
                raise MaskError(f"modulus at index {i} must be >= 2, got {m}")
            masked.append((axes[i], m))
        object.__setattr__(self, "_masked", tuple(masked))

    def _reduce_raw(self, e: Element) -> Element:
        for axis, m in self._masked:
            e = with_axis(e, axis, axis_value(e, axis) % m)
        return e

    # Projection of a base-group normal form to its image's normal form.
    project = _reduce_raw

    def identity(self):
        return self.base.identity()

    def _mul(self, a, b):
        return self._reduce_raw(self.base._mul(a, b))

    def _inv(self, a):
        return self._reduce_raw(self.base._inv(a))

    def validate(self, a):
        self.base.validate(a)
        for axis, m in self._masked:
            v = axis_value(a, axis)
            if not 0 <= v < m:
                raise MalformedElementError(
                    f"{self.term()}: coordinate {v} at axis {axis} not reduced mod {m}"
                )

    def central_axes(self):
        # Indexing stays aligned with the base group so masks compose.
        return self.base.central_axes()

    def masked_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.moduli) if m is not None)

    def modulus_at(self, index: int) -> Optional[int]:
        if index < len(self.moduli):
            return self.moduli[index]
        return None

    def _finite_when_masked(self, masked):
        ours = frozenset(ax for ax, _ in self._masked)
        return self.base._finite_when_masked(masked | ours)

    def term(self):
        bits = "".join("0" if m is None else "1" for m in self.moduli)
        ms = ",".join("_" if m is None else str(m) for m in self.moduli)
        base = self.base.term()
        if isinstance(self.base, Product):
            base = f"({base})"
        return f"quot({base}; mask={bits}; m=[{ms}])"

    def default_generators(self):
        return tuple(self._reduce_raw(g) for g in self.base.default_generators())


@dataclass(frozen=True)
class GeneratingSet:
    """A finite generating set together with its symmetric closure.

    The closure is S u S^-1 with the identity removed and duplicates
    collapsed, sorted by normal form so that every traversal of the Cayley
    graph is deterministic.
    """

    group: Group
    generators: Tuple[Element, ...]
    closure: Tuple[Element, ...] = field(init=False, compare=False, default=())

    def __post_init__(self):
        if not self.generators:
            raise EmptyGeneratingSetError("generating set is empty")
        ident = self.group.identity()
        seen = set()
        for g in self.generators:
            self.group.validate(g)
            if g != ident:
                seen.add(g)
                seen.add(self.group._inv(g))
        if not seen:
            raise EmptyGeneratingSetError("generating set collapses to the identity")
        object.__setattr__(self, "closure", tuple(sorted(seen)))

    @property
    def degree(self) -> int:
        return len(self.closure)


def generating_set(group: Group, generators: Iterable[Element]) -> GeneratingSet:
    return GeneratingSet(group, tuple(generators))


def symmetric_closure(group: Group, generators: Iterable[Element]) -> GeneratingSet:
    """Build S u S^-1 (identity removed, deduplicated, deterministic order)."""
    return generating_set(group, generators)


@dataclass(frozen=True)
class ConstructionGroup:
    """A base group H x Z with designated central coordinates.

    ``central_rank`` coordinates g_0 .. g_{K-1} inside the H factor are the
    designated central basis used by quotient masks; ``line_axis`` addresses
    the generator of the trailing Z factor.
    """

    group: Group
    gens: GeneratingSet
    central_rank: int
    line_axis: Axis
    h_variant: str

    def central_generator(self, index: int, exponent: int = 1) -> Element:
        if not 0 <= index < self.central_rank:
            raise IndexError(f"central index {index} out of range")
        return self.group.axis_element(index, exponent)

    def line_generator(self) -> Element:
        return with_axis(self.group.identity(), self.line_axis, 1)


H_VARIANTS = ("free-abelian", "heisenberg")


def make_construction_group(K: int, h_variant: str = "free-abelian") -> ConstructionGroup:
    """Build G = H x Z with generating set S_H x {1} u {(1, a)}.

    For ``free-abelian`` H is Z^K (K >= 1); for ``heisenberg`` H is the
    integer Heisenberg group whose center supplies the single designated
    coordinate, so K is forced to 1.
    """
    if h_variant == "free-abelian":
        if K < 1:
            raise ValueError("construction needs at least one central generator")
        h: Group = FreeAbelian(K)
    elif h_variant == "heisenberg":
        if K != 1:
            raise ValueError("the Heisenberg center has rank 1; K must be 1")
        h = Heisenberg()
    else:
        raise ValueError(f"unknown H variant {h_variant!r}; try one of {H_VARIANTS}")
    g = product(h, FreeAbelian(1))
    gens = generating_set(g, g.default_generators())
    line_axis = (len(g.factors) - 1, 0) if isinstance(g, Product) else (0,)
    return ConstructionGroup(
        group=g,
        gens=gens,
        central_rank=K,
        line_axis=line_axis,
        h_variant=h_variant,
    )
