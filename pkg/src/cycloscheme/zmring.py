"""Exact group-ring arithmetic in Z[Z_M] and the partition identities.

A set S of residues doubles as the group-ring element sum_{i in S} [i];
all coefficients are arbitrary-precision ints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .reporting import Report


class GroupRingError(ValueError):
    pass


@dataclass(frozen=True)
class GroupRingElement:
    M: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.M < 1:
            raise GroupRingError("modulus must be >= 1")
        if len(self.coeffs) != self.M:
            raise GroupRingError(
                f"coefficient array has length {len(self.coeffs)}, expected {self.M}"
            )

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_set(cls, M: int, S) -> "GroupRingElement":
        coeffs = [0] * M
        for i in S:
            if not (0 <= i < M):
                raise GroupRingError(f"residue {i} out of range [0, {M})")
            coeffs[i] += 1
        return cls(M, tuple(coeffs))

    @classmethod
    def identity(cls, M: int) -> "GroupRingElement":
        return cls(M, (1,) + (0,) * (M - 1))

    @classmethod
    def all_ones(cls, M: int) -> "GroupRingElement":
        return cls(M, (1,) * M)

    @classmethod
    def zero(cls, M: int) -> "GroupRingElement":
        return cls(M, (0,) * M)

    # -- ring structure ---------------------------------------------------------

    def _coerce(self, other) -> "GroupRingElement":
        if isinstance(other, GroupRingElement):
            if other.M != self.M:
                raise GroupRingError("modulus mismatch")
            return other
        if isinstance(other, int):
            return GroupRingElement.identity(self.M).scale(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GroupRingElement(self.M, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GroupRingElement(self.M, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return GroupRingElement(self.M, tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "GroupRingElement":
        return GroupRingElement(self.M, tuple(k * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return convolve(self, o)

    __rmul__ = __mul__

    def involute(self) -> "GroupRingElement":
        """Coefficient at i moves to -i mod M."""
        out = [0] * self.M
        for i, c in enumerate(self.coeffs):
            out[(-i) % self.M] = c
        return GroupRingElement(self.M, tuple(out))

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def to_json(self) -> dict:
        return {"M": self.M, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "GroupRingElement":
        return cls(int(data["M"]), tuple(int(c) for c in data["coeffs"]))


def from_set(M: int, S) -> GroupRingElement:
    return GroupRingElement.from_set(M, S)


def convolve(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    if a.M != b.M:
        raise GroupRingError("modulus mismatch")
    M = a.M
    out = [0] * M
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j, cb in enumerate(b.coeffs):
            if cb:
                out[(i + j) % M] += ca * cb
    result = GroupRingElement(M, tuple(out))
    if result.augmentation() != a.augmentation() * b.augmentation():
        raise GroupRingError("augmentation mismatch after convolution")
    return result


def involute(a: GroupRingElement) -> GroupRingElement:
    return a.involute()


def _equation_check(report: Report, name: str, lhs: GroupRingElement,
                    rhs: GroupRingElement) -> None:
    if lhs.coeffs == rhs.coeffs:
        report.add(name, True)
        return
    for i, (l, r) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if l != r:
            report.add(name, False,
                       f"first differing coefficient at index {i}: {l} != {r}")
            return


def _t_elements(part):
    M = part.M
    T1 = GroupRingElement.from_set(M, part.T1)
    T2 = GroupRingElement.from_set(M, part.T2)
    T3 = GroupRingElement.from_set(M, part.T3)
    return T1, T2, T3


def verify_lemma2(part, s: int) -> Report:
    """(T2 - T3) * Tk^(-1) identities for k = 1, 2, 3."""
    M = part.M
    T1, T2, T3 = _t_elements(part)
    Z = GroupRingElement.all_ones(M)
    one = GroupRingElement.identity(M)
    delta = T2 - T3
    report = Report(f"partition convolution identities (s={s})")
    _equation_check(report, "delta*T1inv", delta * T1.involute(), T1.scale(1 << s))
    _equation_check(report, "delta*T2inv", delta * T2.involute(),
                    one.scale(1 << (2 * s - 1)) + (Z - T1).scale(1 << (s - 1)))
    _equation_check(report, "delta*T3inv", delta * T3.involute(),
                    one.scale(-(1 << (2 * s - 1))) + (Z - T1).scale(1 << (s - 1)))
    return report


def verify_remark_eqs(part, s: int) -> Report:
    """The six T1-convolution consequences of the planar difference set."""
    M = part.M
    T1, T2, T3 = _t_elements(part)
    Z = GroupRingElement.all_ones(M)
    one = GroupRingElement.identity(M)
    q = 1 << s
    h = 1 << (s - 1)
    T1inv = T1.involute()
    T1sq = T1 * T1
    report = Report(f"difference-set consequences (s={s})")
    _equation_check(report, "T1*T1inv", T1 * T1inv, one.scale(q) + Z)
    _equation_check(report, "T1*T2inv", T1 * T2.involute(),
                    T1inv.scale(h) + Z.scale(h) - one.scale(h))
    _equation_check(report, "T1*T3inv", T1 * T3.involute(),
                    T1inv.scale(-h) + Z.scale(h) - one.scale(h))
    _equation_check(report, "T1^2*T1inv", T1sq * T1inv,
                    T1.scale(q) + Z.scale(q + 1))
    # the Z_M coefficient is 2^s + 2^(2s-1): expanding T1^2 = T1 + 2 T2 and
    # eliminating T2*T2inv against the delta identities leaves |T2| + 2^(s-1)
    # copies of Z_M
    _equation_check(report, "T1^2*T2inv", T1sq * T2.involute(),
                    one.scale(h * q) + Z.scale(q + h * q) - T1.scale(h))
    _equation_check(report, "T1^2*T3inv", T1sq * T3.involute(),
                    one.scale(-h * q) + Z.scale(h * q) - T1.scale(h))
    return report


def delta_square_check(part, s: int) -> Report:
    """(T2 - T3)(T2 - T3)^(-1) = 2^(2s) * [identity]."""
    if part.M <= 1:
        raise GroupRingError("partition modulus must exceed 1")
    _, T2, T3 = _t_elements(part)
    delta = T2 - T3
    report = Report(f"delta square identity (s={s})")
    _equation_check(report, "delta*deltainv", delta * delta.involute(),
                    GroupRingElement.identity(part.M).scale(1 << (2 * s)))
    return report


def doubling_check(part) -> Report:
    """{2i : i in T1} must equal T1 setwise."""
    report = Report("T1 doubling invariance")
    doubled = sorted((2 * i) % part.M for i in part.T1)
    report.add("2*T1 == T1", doubled == sorted(part.T1),
               "" if doubled == sorted(part.T1) else f"2*T1 = {doubled}")
    return report
