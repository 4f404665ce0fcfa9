"""Closed-form coefficients, sequence algebra and the two flatness/duality checks.

Coefficient sequences of products multiply as power series in ``1/m`` (the
Cauchy product), a compact dual flips the sign of odd entries, and scaling a
metric by ``lam`` divides ``a_j`` by ``lam**j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable

from .domains import CartanDescriptor, DomainInvariants, catalog, enumerate_invariants, invariants_of
from .kempf import CoefficientSequence, kempf_coefficients


class TheoremViolation(AssertionError):
    """A lemma or theorem that must hold failed; indicates a bug."""


@dataclass(frozen=True)
class ClosedFormReport:
    a1: Fraction
    a2: Fraction
    q: Fraction
    defect: Fraction


def closed_form(inv: DomainInvariants) -> ClosedFormReport:
    r, a = inv.r, inv.a
    g, d = inv.genus, inv.dimension
    q = (
        -Fraction(r - 1, 2) * d * a**2
        + Fraction(r - 1, r) * a * d * (d + r)
        + Fraction(2 * d * (d + r), r)
    )
    a1 = -Fraction(g * d, 2)
    a2 = Fraction(g**2 * d**2, 8) - Fraction(g**2 * d, 6) + q / 24
    return ClosedFormReport(a1, a2, q, a2 - a1**2 / 2)


def reduced_inequality_holds(inv: DomainInvariants) -> bool:
    """The polynomial inequality the defect bound reduces to."""
    r, a, b = inv.as_tuple()
    lhs = Fraction(1, 2) * a**2 * (r - 1) * (r - 2)
    rhs = 4 * (r - 1) ** 2 * a**2 + 4 * b**2 + 12 + 7 * (r - 1) * a * b + 13 * (r - 1) * a + 14 * b
    return lhs < rhs


@dataclass
class InequalitySweep:
    rows: list[tuple[DomainInvariants, ClosedFormReport]] = field(default_factory=list)
    max_defect: Fraction | None = None
    argmax: DomainInvariants | None = None


def inequality_sweep(r_max: int, a_max: int, b_max: int) -> InequalitySweep:
    sweep = InequalitySweep()
    for inv in enumerate_invariants(r_max, a_max, b_max):
        rep = closed_form(inv)
        if rep.defect >= 0:
            raise TheoremViolation(f"defect {rep.defect} >= 0 at (r,a,b)={inv.as_tuple()}")
        if not reduced_inequality_holds(inv):
            raise TheoremViolation(f"reduced inequality fails at (r,a,b)={inv.as_tuple()}")
        sweep.rows.append((inv, rep))
        if sweep.max_defect is None or rep.defect > sweep.max_defect:
            sweep.max_defect, sweep.argmax = rep.defect, inv
    return sweep


def dualize(seq: CoefficientSequence) -> CoefficientSequence:
    return CoefficientSequence(tuple(-c if j % 2 else c for j, c in enumerate(seq)))


def scale(seq: CoefficientSequence, lam) -> CoefficientSequence:
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError(f"scale factor must be positive, got {lam}")
    return CoefficientSequence(tuple(c / lam**j for j, c in enumerate(seq)))


def convolve(sa: CoefficientSequence, sb: CoefficientSequence) -> CoefficientSequence:
    out = [Fraction(0)] * (len(sa) + len(sb) - 1)
    for i, x in enumerate(sa):
        if x:
            for j, y in enumerate(sb):
                out[i + j] += x * y
    return CoefficientSequence(tuple(out))


def flat_sequence(flat_dim: int) -> CoefficientSequence:
    return CoefficientSequence((Fraction(1),) + (Fraction(0),) * flat_dim)


@dataclass(frozen=True)
class LhssFactor:
    invariants: DomainInvariants
    dual: bool = False
    lam: Fraction = Fraction(1)
    descriptor: CartanDescriptor | None = None

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    def coefficients(self) -> CoefficientSequence:
        seq = kempf_coefficients(self.invariants)
        if self.dual:
            seq = dualize(seq)
        return scale(seq, self.lam)


@dataclass(frozen=True)
class LhssSpec:
    """Universal cover: scaled irreducible factors times a flat ``C^flat_dim``."""

    factors: tuple[LhssFactor, ...] = ()
    flat_dim: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.flat_dim < 0:
            raise ValueError(f"flat_dim must be >= 0, got {self.flat_dim}")

    @property
    def dimension(self) -> int:
        return self.flat_dim + sum(f.invariants.dimension for f in self.factors)

    @classmethod
    def from_json(cls, obj: dict) -> "LhssSpec":
        factors = []
        for f in obj.get("factors", []):
            if "rab" in f:
                desc, inv = None, DomainInvariants(*(int(x) for x in f["rab"]))
            else:
                desc = CartanDescriptor(str(f["family"]), tuple(int(p) for p in f.get("params", [])))
                inv = invariants_of(desc)
            factors.append(LhssFactor(inv, bool(f.get("dual", False)), Fraction(str(f.get("lambda", "1"))), desc))
        return cls(tuple(factors), int(obj.get("flat_dim", 0)))

    @classmethod
    def load(cls, path) -> "LhssSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def to_json(self) -> dict:
        factors = []
        for f in self.factors:
            entry: dict = {}
            if f.descriptor is not None:
                entry["family"] = f.descriptor.family
                entry["params"] = list(f.descriptor.params)
            else:
                entry["rab"] = list(f.invariants.as_tuple())
            entry["dual"] = f.dual
            entry["lambda"] = f"{f.lam.numerator}/{f.lam.denominator}"
            factors.append(entry)
        return {"factors": factors, "flat_dim": self.flat_dim}


def convolve_all(seqs: Iterable[CoefficientSequence]) -> CoefficientSequence:
    return reduce(convolve, seqs, CoefficientSequence((Fraction(1),)))


def lhss_coefficients(spec: LhssSpec) -> CoefficientSequence:
    return convolve_all([flat_sequence(spec.flat_dim)] + [f.coefficients() for f in spec.factors])


@dataclass(frozen=True)
class FlatnessVerdict:
    flat: bool
    c1: Fraction
    c2: Fraction
    identity_checked: bool
    defect_sum: Fraction | None


def flatness_certificate(spec: LhssSpec) -> FlatnessVerdict:
    seq = lhss_coefficients(spec)
    c1, c2 = seq.get(1), seq.get(2)
    if not spec.factors:
        if c1 or c2:
            raise TheoremViolation(f"flat space with c1={c1}, c2={c2}")
        return FlatnessVerdict(True, c1, c2, False, None)
    if c1 == 0 and c2 == 0:
        raise TheoremViolation(f"non-flat spec {spec.to_json()} has c1 = c2 = 0")
    defect_sum = None
    if c1 == 0:
        # the defect a2 - a1^2/2 is unchanged by dualization
        defect_sum = sum((closed_form(f.invariants).defect / f.lam**2 for f in spec.factors), Fraction(0))
        if defect_sum != c2:
            raise TheoremViolation(f"c2={c2} but sum of scaled defects is {defect_sum}")
    return FlatnessVerdict(False, c1, c2, c1 == 0, defect_sum)


def odd_vanishing_check(inv: DomainInvariants) -> CoefficientSequence:
    """Coefficients of the domain times its compact dual; odd entries must vanish."""
    seq = kempf_coefficients(inv)
    prod = convolve(seq, dualize(seq))
    bad = [j for j in range(1, len(prod), 2) if prod[j] != 0]
    if bad:
        raise TheoremViolation(f"odd entries {bad} nonzero for (r,a,b)={inv.as_tuple()}")
    return prod


def random_lambda(rng) -> Fraction:
    while True:
        lam = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if Fraction(1, 3) <= lam <= 3:
            return lam


def random_lhss_spec(rng, max_dim: int = 16, balanced: bool = False) -> LhssSpec:
    """Random spec with 1-4 nonflat factors drawn from the Cartan catalog.

    ``balanced`` pairs each domain with its compact dual at the same scale so
    that ``c1 = 0`` and the defect identity is exercised.
    """
    pool = catalog(max_dim)
    factors = []
    if balanced:
        for _ in range(rng.randint(1, 2)):
            desc, lam = rng.choice(pool), random_lambda(rng)
            inv = invariants_of(desc)
            factors += [LhssFactor(inv, False, lam, desc), LhssFactor(inv, True, lam, desc)]
    else:
        for _ in range(rng.randint(1, 4)):
            desc = rng.choice(pool)
            factors.append(LhssFactor(invariants_of(desc), rng.random() < 0.5, random_lambda(rng), desc))
    return LhssSpec(tuple(factors), rng.randint(0, 3))
