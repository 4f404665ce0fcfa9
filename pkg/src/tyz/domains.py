"""Classification data for irreducible bounded symmetric domains.

A domain is determined by its rank ``r`` and numerical invariants ``(a, b)``;
genus and dimension follow from

    genus     = (r - 1) a + b + 2
    dimension = r + r (r - 1) a / 2 + r b
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

FAMILIES = ("I", "II", "III", "IV", "V", "VI")


class DomainError(ValueError):
    """Invalid domain invariants or Cartan parameters."""


@dataclass(frozen=True, order=True)
class DomainInvariants:
    r: int
    a: int
    b: int

    def __post_init__(self):
        for name in ("r", "a", "b"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise DomainError(f"{name} must be an integer, got {getattr(self, name)!r}")
        if self.r < 1:
            raise DomainError(f"rank must be >= 1, got {self.r}")
        if self.a < 0 or self.b < 0:
            raise DomainError(f"numerical invariants must be >= 0, got a={self.a}, b={self.b}")

    @property
    def genus(self) -> int:
        return (self.r - 1) * self.a + self.b + 2

    @property
    def dimension(self) -> int:
        # r(r-1) is even, so the division is exact
        return self.r + self.r * (self.r - 1) * self.a // 2 + self.r * self.b

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.a, self.b)


@dataclass(frozen=True)
class CartanDescriptor:
    """One of Cartan's six families with its integer parameters.

    ``I`` takes ``(p, q)`` with ``1 <= p <= q``; ``II``, ``III`` and ``IV``
    take a single ``n``; the exceptional ``V`` and ``VI`` take none.
    """

    family: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        _validate(self.family, self.params)

    def __str__(self) -> str:
        if not self.params:
            return self.family
        return f"{self.family}:{','.join(str(p) for p in self.params)}"


def _validate(family: str, params: tuple[int, ...]) -> None:
    if family not in FAMILIES:
        raise DomainError(f"unknown Cartan family {family!r}; expected one of {FAMILIES}")
    if any(not isinstance(p, int) or isinstance(p, bool) for p in params):
        raise DomainError(f"parameters must be integers, got {params!r}")
    expected = {"I": 2, "II": 1, "III": 1, "IV": 1, "V": 0, "VI": 0}[family]
    if len(params) != expected:
        raise DomainError(f"family {family} takes {expected} parameter(s), got {len(params)}")
    if family == "I":
        p, q = params
        if not 1 <= p <= q:
            raise DomainError(f"I(p,q) requires 1 <= p <= q, got ({p},{q})")
    elif family == "II" and params[0] < 5:
        raise DomainError(f"II(n) requires n >= 5, got {params[0]}")
    elif family == "III" and params[0] < 1:
        raise DomainError(f"III(n) requires n >= 1, got {params[0]}")
    elif family == "IV" and params[0] < 5:
        raise DomainError(f"IV(n) requires n >= 5, got {params[0]}")


def parse_descriptor(text: str) -> CartanDescriptor:
    """Parse ``"I:2,3"``, ``"IV:5"`` or ``"V"``."""
    family, _, rest = text.strip().partition(":")
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest.strip() else ()
    except ValueError as exc:
        raise DomainError(f"cannot parse domain parameters in {text!r}") from exc
    return CartanDescriptor(family.strip().upper(), params)


def invariants_of(desc: CartanDescriptor) -> DomainInvariants:
    f, ps = desc.family, desc.params
    if f == "I":
        p, q = ps
        return DomainInvariants(p, 2, q - p)
    if f == "II":
        (n,) = ps
        return DomainInvariants(n // 2, 4, 0 if n % 2 == 0 else 2)
    if f == "III":
        (n,) = ps
        return DomainInvariants(n, 1, 0)
    if f == "IV":
        (n,) = ps
        return DomainInvariants(2, n - 2, 0)
    if f == "V":
        return DomainInvariants(2, 6, 4)
    return DomainInvariants(3, 8, 0)


def derive(inv: DomainInvariants) -> tuple[int, int]:
    """Return ``(genus, dimension)``."""
    return inv.genus, inv.dimension


def enumerate_invariants(r_max: int, a_max: int, b_max: int) -> list[DomainInvariants]:
    """All triples with ``1 <= r <= r_max``, ``0 <= a <= a_max``, ``0 <= b <= b_max``.

    The triples need not be realizable by a Cartan domain; sweeps deliberately
    over-cover.
    """
    if min(r_max, a_max, b_max) < 1:
        raise DomainError("sweep bounds must be >= 1")
    return [
        DomainInvariants(r, a, b)
        for r, a, b in itertools.product(range(1, r_max + 1), range(a_max + 1), range(b_max + 1))
    ]


def catalog(max_dim: int = 30) -> list[CartanDescriptor]:
    """Cartan descriptors of all irreducible domains with dimension ``<= max_dim``.

    Families overlap in low dimension (e.g. III(1) and I(1,1) are both the
    disk); every descriptor is listed under its own family.
    """
    out = []
    for p in range(1, max_dim + 1):
        for q in range(p, max_dim // p + 1):
            out.append(CartanDescriptor("I", (p, q)))
    n = 5
    while n * (n - 1) // 2 <= max_dim:
        out.append(CartanDescriptor("II", (n,)))
        n += 1
    n = 1
    while n * (n + 1) // 2 <= max_dim:
        out.append(CartanDescriptor("III", (n,)))
        n += 1
    for n in range(5, max_dim + 1):
        out.append(CartanDescriptor("IV", (n,)))
    for desc in (CartanDescriptor("V"), CartanDescriptor("VI")):
        if invariants_of(desc).dimension <= max_dim:
            out.append(desc)
    return out


def catalog_table(max_dim: int = 30) -> list[dict]:
    rows = []
    for desc in catalog(max_dim):
        inv = invariants_of(desc)
        rows.append(
            {
                "family": desc.family,
                "params": list(desc.params),
                "r": inv.r,
                "a": inv.a,
                "b": inv.b,
                "genus": inv.genus,
                "dimension": inv.dimension,
            }
        )
    return rows
