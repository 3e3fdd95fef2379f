"""Exact-rational discharging engine over a canonical triangulation.

Every real vertex starts with charge deg - 4 and every planarization face
with length - 4; crossing vertices carry no entry (their contribution is
identically zero).  For one connected component the grand total is exactly
-8, and the transfer rules only move charge, so the total is preserved
after every prefix of the transcript.  All arithmetic is fractions.Fraction,
never floats.

Transfer rules, applied once each where triggered:

  face rules
    triangle          every face without a crossing vertex receives 1/3
                      from each of its three vertices
    crossing-triangle every face with a crossing vertex receives 1/2 from
                      each of its two non-crossing vertices
  vertex-to-vertex rules, by sender degree band (receiver degree: amount)
    deg9to11    7: 1/21
    deg12to14   7: 1/18   6: 1/6
    deg15to19   7: 1/15   6: 1/5   5: 4/15
    deg20to35   7: 1/12   6: 1/4   5: 1/3   4: 5/12
    deg36plus   7: 1/9    6: 1/3   5: 4/9   4: 5/9   3: 2/3
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .model import FaceList, OnePlanarError, trace_faces
from .triangulation import CanonicalTriangulation, is_canonical

ChargeKey = Union[int, tuple[str, int]]  # vertex id, or ("face", face index)

_BAND_RULES: tuple[tuple[str, int, int, dict[int, Fraction]], ...] = (
    ("deg9to11", 9, 11, {7: Fraction(1, 21)}),
    ("deg12to14", 12, 14, {7: Fraction(1, 18), 6: Fraction(1, 6)}),
    ("deg15to19", 15, 19, {7: Fraction(1, 15), 6: Fraction(1, 5), 5: Fraction(4, 15)}),
    (
        "deg20to35",
        20,
        35,
        {7: Fraction(1, 12), 6: Fraction(1, 4), 5: Fraction(1, 3), 4: Fraction(5, 12)},
    ),
    (
        "deg36plus",
        36,
        10**9,
        {
            7: Fraction(1, 9),
            6: Fraction(1, 3),
            5: Fraction(4, 9),
            4: Fraction(5, 9),
            3: Fraction(2, 3),
        },
    ),
)


class DischargingError(OnePlanarError):
    pass


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: ChargeKey
    target: ChargeKey
    amount: Fraction


@dataclass(frozen=True)
class ChargeLedger:
    charges: dict[ChargeKey, Fraction]
    transcript: tuple[Transfer, ...]

    def total(self) -> Fraction:
        return sum(self.charges.values(), Fraction(0))

    def vertex_charges(self) -> dict[int, Fraction]:
        return {k: v for k, v in self.charges.items() if isinstance(k, int)}

    def face_charges(self) -> dict[int, Fraction]:
        return {k[1]: v for k, v in self.charges.items() if isinstance(k, tuple)}


def faces_of(T: CanonicalTriangulation) -> FaceList:
    """Face list of the planarization, in deterministic trace order."""
    return trace_faces(T.drawing.rotation)


def special_faces(T: CanonicalTriangulation) -> tuple[int, ...]:
    """Indices of the 3-faces incident with a crossing vertex.

    At most one crossing per face can occur (two would need an edge between
    crossing vertices, which the drawing format cannot even express).
    """
    n = T.drawing.n
    fl = faces_of(T)
    return tuple(i for i, f in enumerate(fl.faces) if any(w >= n for w in f))


def initial_charges(T: CanonicalTriangulation) -> ChargeLedger:
    """Charge deg-4 on real vertices and len-4 on faces; total is exactly -8."""
    d = T.drawing
    if not is_canonical(d):
        raise DischargingError("discharging needs a canonical triangulation")
    fl = faces_of(T)
    if fl.components != 1:
        raise DischargingError("discharging needs a connected drawing")
    charges: dict[ChargeKey, Fraction] = {}
    for v in range(d.n):
        charges[v] = Fraction(d.base.degree(v) - 4)
    for i, f in enumerate(fl.faces):
        charges[("face", i)] = Fraction(len(f) - 4)
    ledger = ChargeLedger(charges, ())
    if ledger.total() != -8:
        raise DischargingError(f"initial total is {ledger.total()}, expected -8")
    return ledger


def apply_rules(T: CanonicalTriangulation, ledger: ChargeLedger) -> ChargeLedger:
    """Apply every rule once where triggered; deterministic transcript order."""
    d = T.drawing
    n = d.n
    fl = faces_of(T)
    charges = dict(ledger.charges)
    transcript = list(ledger.transcript)

    def move(rule: str, src: ChargeKey, dst: ChargeKey, amount: Fraction) -> None:
        charges[src] -= amount
        charges[dst] += amount
        transcript.append(Transfer(rule, src, dst, amount))

    special = set(special_faces(T))
    for i, f in enumerate(fl.faces):
        if i in special:
            continue
        for v in sorted(f):
            move("triangle", v, ("face", i), Fraction(1, 3))
    for i in sorted(special):
        for v in sorted(w for w in fl.faces[i] if w < n):
            move("crossing-triangle", v, ("face", i), Fraction(1, 2))

    degree = d.base.degree
    for rule, lo, hi, table in _BAND_RULES:
        for v in range(n):
            if not lo <= degree(v) <= hi:
                continue
            for u in sorted(d.base.neighbors(v)):
                amount = table.get(degree(u))
                if amount is not None:
                    move(rule, v, u, amount)
    return ChargeLedger(charges, tuple(transcript))


def replay(initial: ChargeLedger, transcript: Iterable[Transfer]) -> ChargeLedger:
    """Re-apply a transcript to an initial ledger; bit-exact reproduction."""
    charges = dict(initial.charges)
    applied = list(initial.transcript)
    for t in transcript:
        charges[t.source] -= t.amount
        charges[t.target] += t.amount
        applied.append(t)
    return ChargeLedger(charges, tuple(applied))


@dataclass(frozen=True)
class AuditReport:
    total: Fraction
    negatives: tuple[ChargeKey, ...]
    has_negative: bool
    total_is_minus8: bool


def audit(ledger: ChargeLedger) -> AuditReport:
    """Report the final total and every element with negative charge.

    With total -8, at least one element must be negative; that pigeonhole
    is the whole engine of the structural argument, so its truth is part
    of the report.
    """
    total = ledger.total()
    negatives = tuple(
        k
        for k in sorted(ledger.charges, key=lambda k: (isinstance(k, tuple), k))
        if ledger.charges[k] < 0
    )
    return AuditReport(
        total=total,
        negatives=negatives,
        has_negative=bool(negatives),
        total_is_minus8=(total == -8),
    )
