"""Slater determinants as occupation bit-strings.

A determinant is a pair of integers whose bits mark occupied spatial
orbitals, one integer per spin channel. Bit ``p`` of ``alpha`` set means
the alpha spin-orbital ``p`` is occupied. Spin-orbitals are ordered with
the full alpha block first: spin-orbital index ``p`` for alpha, ``M + p``
for beta, where ``M`` is the number of spatial orbitals.

The reference state behind every phase in this module is the ordered
product of creation operators, ascending in spin-orbital index, applied
to the vacuum. Moving one electron from spin-orbital ``h`` to ``p`` then
picks up a sign equal to the parity of the number of occupied
spin-orbitals strictly between ``h`` and ``p``. Double excitations apply
their two single moves sequentially (holes and particles each sorted
ascending, paired in order).

Determinants are immutable values: safe to hash, share, and compare.
The total order used for tie-breaking everywhere downstream is the
lexicographic order on ``(alpha, beta)`` as unsigned integers, which is
exactly the dataclass field order below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Collection, Iterator

ALPHA = 0
BETA = 1

__all__ = [
    "ALPHA",
    "BETA",
    "Determinant",
    "DomainError",
    "Excitation",
    "apply_excitation",
    "bits_of",
    "connected_excitations",
    "excitation_between",
    "excitation_degree",
    "excitation_phase",
    "format_determinant",
    "parse_determinant",
    "spin_orbital_hamming",
]


class DomainError(ValueError):
    """Inputs violate a documented precondition."""


@dataclass(frozen=True, order=True, slots=True)
class Determinant:
    """Occupation bit-strings for the alpha and beta spin channels."""

    alpha: int
    beta: int

    @property
    def n_alpha(self) -> int:
        return self.alpha.bit_count()

    @property
    def n_beta(self) -> int:
        return self.beta.bit_count()

    def occupied(self, spin: int) -> tuple[int, ...]:
        """Occupied spatial-orbital indices of one spin channel, ascending."""
        return bits_of(self.alpha if spin == ALPHA else self.beta)

    def spin_mask(self, spin: int) -> int:
        return self.alpha if spin == ALPHA else self.beta

    @staticmethod
    def from_occupied(alpha_occ: Collection[int], beta_occ: Collection[int]) -> "Determinant":
        a = 0
        for p in alpha_occ:
            if p < 0:
                raise DomainError(f"negative orbital index {p}")
            a |= 1 << p
        b = 0
        for p in beta_occ:
            if p < 0:
                raise DomainError(f"negative orbital index {p}")
            b |= 1 << p
        if a.bit_count() != len(set(alpha_occ)) or b.bit_count() != len(set(beta_occ)):
            raise DomainError("duplicate orbital index in occupation list")
        return Determinant(a, b)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Determinant({format_determinant(self)!r})"


@dataclass(frozen=True, slots=True)
class Excitation:
    """A degree-0/1/2 move between determinants.

    ``holes`` and ``particles`` are tuples of ``(spin, orbital)`` pairs,
    sorted ascending by spin-orbital index. ``phase`` is the fermionic
    sign of applying the move to the source determinant under the
    module's ordering convention.
    """

    degree: int
    holes: tuple[tuple[int, int], ...]
    particles: tuple[tuple[int, int], ...]
    phase: int


def bits_of(mask: int) -> tuple[int, ...]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def excitation_degree(a: Determinant, b: Determinant) -> int:
    """Number of electron moves separating two determinants.

    Raises ``DomainError`` when the particle numbers differ (the two
    determinants then do not live in the same CI space).
    """
    if a.n_alpha != b.n_alpha or a.n_beta != b.n_beta:
        raise DomainError(
            f"particle-number mismatch: ({a.n_alpha},{a.n_beta}) vs ({b.n_alpha},{b.n_beta})"
        )
    return ((a.alpha ^ b.alpha).bit_count() + (a.beta ^ b.beta).bit_count()) // 2


def spin_orbital_hamming(a: Determinant, b: Determinant) -> int:
    """Bit-level Hamming distance over the concatenated spin channels."""
    return (a.alpha ^ b.alpha).bit_count() + (a.beta ^ b.beta).bit_count()


def _combined(det: Determinant, n_orb: int) -> int:
    return det.alpha | (det.beta << n_orb)


def _single_move_phase(occ: int, hole: int, particle: int) -> int:
    """Sign of moving one electron between spin-orbitals on occupancy ``occ``."""
    lo, hi = (hole, particle) if hole < particle else (particle, hole)
    between = occ & (((1 << hi) - 1) ^ ((1 << (lo + 1)) - 1))
    return -1 if between.bit_count() & 1 else 1


def excitation_phase(det: Determinant, exc: Excitation, n_orb: int) -> int:
    """Fermionic sign of applying ``exc`` to ``det``.

    Raises ``DomainError`` if a hole is empty or a particle occupied.
    """
    occ = _combined(det, n_orb)
    phase = 1
    for (hs, ho), (ps, po) in zip(exc.holes, exc.particles):
        h = ho + hs * n_orb
        p = po + ps * n_orb
        if not (occ >> h) & 1:
            raise DomainError(f"hole spin-orbital {h} is not occupied")
        if (occ >> p) & 1:
            raise DomainError(f"particle spin-orbital {p} is already occupied")
        phase *= _single_move_phase(occ, h, p)
        occ = (occ ^ (1 << h)) | (1 << p)
    return phase


def apply_excitation(det: Determinant, exc: Excitation, n_orb: int) -> Determinant:
    """Destination determinant of ``exc`` applied to ``det``."""
    alpha, beta = det.alpha, det.beta
    for (hs, ho), (ps, po) in zip(exc.holes, exc.particles):
        if hs == ALPHA:
            if not (alpha >> ho) & 1:
                raise DomainError(f"alpha hole {ho} is not occupied")
            alpha ^= 1 << ho
        else:
            if not (beta >> ho) & 1:
                raise DomainError(f"beta hole {ho} is not occupied")
            beta ^= 1 << ho
        if ps == ALPHA:
            if (alpha >> po) & 1:
                raise DomainError(f"alpha particle {po} is already occupied")
            alpha |= 1 << po
        else:
            if (beta >> po) & 1:
                raise DomainError(f"beta particle {po} is already occupied")
            beta |= 1 << po
    return Determinant(alpha, beta)


def excitation_between(a: Determinant, b: Determinant, n_orb: int) -> Excitation:
    """The excitation carrying ``a`` into ``b`` (degree must be <= 2)."""
    degree = excitation_degree(a, b)
    if degree > 2:
        raise DomainError(f"determinants differ by degree {degree} > 2")
    holes: list[tuple[int, int]] = []
    particles: list[tuple[int, int]] = []
    for spin in (ALPHA, BETA):
        ma, mb = a.spin_mask(spin), b.spin_mask(spin)
        for p in bits_of(ma & ~mb):
            holes.append((spin, p))
        for p in bits_of(mb & ~ma):
            particles.append((spin, p))
    exc = Excitation(degree, tuple(holes), tuple(particles), 1)
    phase = excitation_phase(a, exc, n_orb) if degree else 1
    return Excitation(degree, exc.holes, exc.particles, phase)


def _spin_orb(spin: int, orb: int, n_orb: int) -> int:
    return orb + spin * n_orb


def connected_excitations(
    det: Determinant,
    n_orb: int,
    particle_filter: Collection[int] | None = None,
) -> Iterator[tuple[Determinant, Excitation]]:
    """All determinants one or two moves away, each exactly once.

    ``particle_filter``, when given, is a set of allowed particle
    spin-orbital indices (``orb`` for alpha, ``n_orb + orb`` for beta).
    Order is deterministic: singles before doubles, then ascending by
    hole and particle spin-orbital indices.
    """
    allowed = None if particle_filter is None else set(particle_filter)

    occ = [(spin, p) for spin in (ALPHA, BETA) for p in det.occupied(spin)]
    vir = {
        spin: [
            p
            for p in range(n_orb)
            if not (det.spin_mask(spin) >> p) & 1
            and (allowed is None or _spin_orb(spin, p, n_orb) in allowed)
        ]
        for spin in (ALPHA, BETA)
    }

    for hs, ho in occ:
        for po in vir[hs]:
            exc = Excitation(1, ((hs, ho),), ((hs, po),), 1)
            phase = excitation_phase(det, exc, n_orb)
            exc = Excitation(1, exc.holes, exc.particles, phase)
            yield apply_excitation(det, exc, n_orb), exc

    n_occ = len(occ)
    for i in range(n_occ):
        for j in range(i + 1, n_occ):
            h1, h2 = occ[i], occ[j]
            # Particle pairs sorted by spin-orbital index and spin-matched
            # to the hole pair: same-spin pairs draw both particles from
            # that channel, mixed pairs one from each.
            if h1[0] == h2[0]:
                vs = vir[h1[0]]
                pairs = [
                    ((h1[0], vs[x]), (h1[0], vs[y]))
                    for x in range(len(vs))
                    for y in range(x + 1, len(vs))
                ]
            else:
                pairs = [((ALPHA, pa), (BETA, pb)) for pa in vir[ALPHA] for pb in vir[BETA]]
            for p1, p2 in pairs:
                exc = Excitation(2, (h1, h2), (p1, p2), 1)
                phase = excitation_phase(det, exc, n_orb)
                exc = Excitation(2, exc.holes, exc.particles, phase)
                yield apply_excitation(det, exc, n_orb), exc


def format_determinant(det: Determinant) -> str:
    """Render as occupied-index lists, e.g. ``"α:0,3|β:1"``."""
    a = ",".join(str(p) for p in det.occupied(ALPHA))
    b = ",".join(str(p) for p in det.occupied(BETA))
    return f"α:{a}|β:{b}"


def parse_determinant(text: str) -> Determinant:
    """Inverse of :func:`format_determinant` (bit-exact round trip)."""
    stripped = text.strip()
    try:
        a_part, b_part = stripped.split("|")
        if not a_part.startswith("α:") or not b_part.startswith("β:"):
            raise ValueError
        alpha = [int(tok) for tok in a_part[2:].split(",") if tok]
        beta = [int(tok) for tok in b_part[2:].split(",") if tok]
    except ValueError as exc:
        raise DomainError(f"unparseable determinant text {text!r}") from exc
    return Determinant.from_occupied(alpha, beta)
