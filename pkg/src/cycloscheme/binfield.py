"""Exact arithmetic in GF(2**m) and construction of the nested field tower.

Field elements are plain ints: bit i is the coefficient of x**i of the
polynomial-basis representative.  A modulus bit mask includes the leading
coefficient, so x**3 + x + 1 is 0b1011.  Everything here is exact integer
work; there is no floating point anywhere in the package.
"""

from __future__ import annotations

import math


class FieldError(ValueError):
    """Bad modulus, bad element, or an out-of-domain operation."""


class ReducibleModulusError(FieldError):
    """User-supplied modulus failed the irreducibility certificate.

    ``divisor_degree`` is the degree d for which gcd(x^(2^d) - x, f) != 1.
    """

    def __init__(self, modulus: int, divisor_degree: int):
        self.modulus = modulus
        self.divisor_degree = divisor_degree
        super().__init__(
            f"modulus {modulus:#x} is reducible: nontrivial gcd with "
            f"x^(2^{divisor_degree}) - x"
        )


class NonPrimitiveModulusError(FieldError):
    """x is not primitive under the user-supplied irreducible modulus."""

    def __init__(self, modulus: int, proper_order: int):
        self.modulus = modulus
        self.proper_order = proper_order
        super().__init__(
            f"x has order {proper_order} under modulus {modulus:#x}, "
            "not the full group order"
        )


class InternalCheckError(RuntimeError):
    """A consistency check that cannot fail for correct inputs did fail."""


# ---------------------------------------------------------------------------
# polynomial-over-GF(2) helpers on int bit masks
# ---------------------------------------------------------------------------

def poly_degree(f: int) -> int:
    return f.bit_length() - 1


def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    da = a.bit_length() - 1
    while da >= df:
        a ^= f << (da - df)
        da = a.bit_length() - 1
    return a


def poly_mulmod(a: int, b: int, f: int) -> int:
    return poly_mod(poly_mul(a, b), f)


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def poly_divmod(a: int, f: int) -> tuple[int, int]:
    q = 0
    df = f.bit_length() - 1
    da = a.bit_length() - 1
    while da >= df:
        q |= 1 << (da - df)
        a ^= f << (da - df)
        da = a.bit_length() - 1
    return q, a


def _frobenius_power(f: int, times: int) -> int:
    """x^(2^times) mod f via repeated squaring."""
    t = 0b10
    for _ in range(times):
        t = poly_mulmod(t, t, f)
    return t


def irreducibility_certificate(f: int) -> int | None:
    """None if f is irreducible over GF(2), else the failing divisor degree.

    The certificate is the smallest proper d (d | deg f or d = deg f for the
    final Frobenius-fixed-point test) at which the standard gcd criterion
    fails.
    """
    m = poly_degree(f)
    if m < 1:
        raise FieldError("modulus must have positive degree")
    if m == 1:
        return None
    if not (f & 1):
        return 1  # x divides f
    for p in sorted(_prime_factors(m)):
        d = m // p
        t = _frobenius_power(f, d)
        if poly_gcd(t ^ 0b10, f) != 1:
            return d
    if _frobenius_power(f, m) != 0b10:
        return m
    return None


def _prime_factors(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the tower sizes used here."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------

_LOG_TABLE_LIMIT = 1 << 20


class BinaryField:
    """GF(2**degree) with a fixed modulus; elements are int bit masks.

    The generator is the residue of x (primitive by construction for the
    moduli accepted by :func:`build_field`), or 1 for the degenerate GF(2).
    """

    def __init__(self, degree: int, modulus: int, generator: int):
        self.degree = degree
        self.modulus = modulus
        self.size = 1 << degree
        self.order = self.size - 1
        self.generator = generator
        self._top = 1 << degree
        self._log_table: list[int] | None = None
        self._zero_mask_cache: dict[int, list[int]] = {}
        self.trace_mask = self._build_trace_mask()

    def __repr__(self) -> str:
        return f"BinaryField(degree={self.degree}, modulus={self.modulus:#x})"

    def check(self, u: int) -> None:
        if not isinstance(u, int) or u < 0 or u >= self.size:
            raise FieldError(f"element {u!r} out of range for {self!r}")

    # -- ring operations ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        f = self.modulus
        top = self._top
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= f
        return r

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of 0")
        if self.order == 1:
            return 1
        return self.pow(a, self.order - 1)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise FieldError("negative power of 0")
            return 1 if e == 0 else 0
        e %= self.order or 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    # -- traces, norms, characters ------------------------------------------

    def _build_trace_mask(self) -> int:
        mask = 0
        for i in range(self.degree):
            t = 1 << i
            acc = 0
            for _ in range(self.degree):
                acc ^= t
                t = self.mul(t, t)
            if acc not in (0, 1):
                raise InternalCheckError("absolute trace left the prime field")
            mask |= acc << i
        return mask

    def abs_trace(self, u: int) -> int:
        return (u & self.trace_mask).bit_count() & 1

    def psi(self, u: int) -> int:
        """Canonical additive character: +1 iff the absolute trace is 0."""
        return 1 - 2 * self.abs_trace(u)

    def rel_trace(self, sub_degree: int, u: int) -> int:
        """Trace down to the subfield GF(2**sub_degree)."""
        if sub_degree <= 0 or self.degree % sub_degree:
            raise FieldError(
                f"sub_degree {sub_degree} does not divide degree {self.degree}"
            )
        r = 0
        t = u
        for _ in range(self.degree // sub_degree):
            r ^= t
            for _ in range(sub_degree):
                t = self.mul(t, t)
        check = r
        for _ in range(sub_degree):
            check = self.mul(check, check)
        if check != r:
            raise InternalCheckError("relative trace left the subfield")
        return r

    def subfield_zero_masks(self, sub_degree: int) -> list[int]:
        """Masks m_t with rel_trace(sub_degree, u) == 0 iff every
        (u & m_t) has even parity.  The trace is GF(2)-linear, so its
        coordinate t (in this field's basis) at u is the parity of
        u & m_t; zero masks are dropped."""
        if sub_degree not in self._zero_mask_cache:
            vals = [self.rel_trace(sub_degree, 1 << i) for i in range(self.degree)]
            masks = []
            for t in range(self.degree):
                mask = 0
                for i, v in enumerate(vals):
                    mask |= ((v >> t) & 1) << i
                if mask:
                    masks.append(mask)
            self._zero_mask_cache[sub_degree] = masks
        return self._zero_mask_cache[sub_degree]

    def rel_trace_is_zero(self, sub_degree: int, u: int) -> bool:
        for mask in self.subfield_zero_masks(sub_degree):
            if (u & mask).bit_count() & 1:
                return False
        return True

    def norm_to(self, sub_degree: int, u: int) -> int:
        if sub_degree <= 0 or self.degree % sub_degree:
            raise FieldError(
                f"sub_degree {sub_degree} does not divide degree {self.degree}"
            )
        if u == 0:
            return 0
        return self.pow(u, self.order // ((1 << sub_degree) - 1))

    # -- discrete logs -------------------------------------------------------

    @property
    def log_table(self) -> list[int] | None:
        if self.size > _LOG_TABLE_LIMIT:
            return None
        if self._log_table is None:
            table = [-1] * self.size
            u = 1
            for k in range(self.order):
                table[u] = k
                u = self.mul(u, self.generator)
            self._log_table = table
        return self._log_table

    def dlog(self, u: int) -> int:
        """Exponent k with generator**k == u."""
        if u == 0:
            raise FieldError("discrete log of 0")
        table = self.log_table
        if table is not None:
            return table[u]
        t = 1
        for k in range(self.order):
            if t == u:
                return k
            t = self.mul(t, self.generator)
        raise InternalCheckError("element not generated; generator not primitive?")

    def elements(self):
        return range(self.size)


def _order_of_x(modulus: int, m: int) -> int:
    """Multiplicative order of the residue of x modulo an irreducible modulus."""
    n = (1 << m) - 1
    order = n
    for p in _prime_factors(n):
        while order % p == 0:
            t = 0b10
            e = order // p
            r = 1
            while e:
                if e & 1:
                    r = poly_mulmod(r, t, modulus)
                t = poly_mulmod(t, t, modulus)
                e >>= 1
            if r == 1:
                order //= p
            else:
                break
    return order


def build_field(m: int, modulus: int | None = None) -> BinaryField:
    """GF(2**m) with the given modulus, or the lexicographically smallest
    primitive polynomial of degree m when none is supplied."""
    if m < 1:
        raise FieldError("degree must be >= 1")
    if m == 1:
        if modulus is not None and modulus != 0b11:
            raise FieldError("degree-1 modulus must be x + 1")
        return BinaryField(1, 0b11, 1)
    if modulus is not None:
        if poly_degree(modulus) != m:
            raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
        d = irreducibility_certificate(modulus)
        if d is not None:
            raise ReducibleModulusError(modulus, d)
        order = _order_of_x(modulus, m)
        if order != (1 << m) - 1:
            raise NonPrimitiveModulusError(modulus, order)
        return BinaryField(m, modulus, 0b10)
    for candidate in range((1 << m) | 1, 1 << (m + 1), 2):
        if irreducibility_certificate(candidate) is not None:
            continue
        if _order_of_x(candidate, m) == (1 << m) - 1:
            return BinaryField(m, candidate, 0b10)
    raise InternalCheckError(f"no primitive polynomial of degree {m} found")


def modulus_to_hex(modulus: int) -> str:
    return format(modulus, "x")


def modulus_from_hex(text: str) -> int:
    return int(text, 16)


# ---------------------------------------------------------------------------
# the field tower
# ---------------------------------------------------------------------------

class FieldTower:
    """Nested binary fields E, F, G, H of degrees s, 3s, 6s, 9s with
    primitive elements omega, gamma, beta normalized so that
    Norm(gamma) = Norm(beta) = omega under the embeddings of F."""

    def __init__(self, s: int, E: BinaryField, F: BinaryField,
                 G: BinaryField, H: BinaryField):
        self.s = s
        self.E = E
        self.F = F
        self.G = G
        self.H = H
        self.M = (1 << (2 * s)) + (1 << s) + 1
        self.omega = F.generator

        self._rootF_G = self._find_subfield_root(G, F)
        self._rootF_H = self._find_subfield_root(H, F)
        self._root_powers_G = self._powers(G, self._rootF_G, F.degree)
        self._root_powers_H = self._powers(H, self._rootF_H, F.degree)

        self.norm_dlog_G, self.gamma_exponent, self.gamma = \
            self._normalize_primitive(G, self._root_powers_G)
        self.norm_dlog_H, self.beta_exponent, self.beta = \
            self._normalize_primitive(H, self._root_powers_H)

        self._eta_cache: dict[str, list[int]] = {}
        self._gauss_cache: dict = {}
        self._partition = None

        for K, prim in ((G, self.gamma), (H, self.beta)):
            if K.pow(prim, K.order // F.order) != self.embed_F(K, self.omega):
                raise InternalCheckError("norm normalization failed")

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def _powers(K: BinaryField, base: int, count: int) -> list[int]:
        out = [1]
        for _ in range(count - 1):
            out.append(K.mul(out[-1], base))
        return out

    def _find_subfield_root(self, K: BinaryField, F: BinaryField) -> int:
        """First root of F's modulus inside the order-|F*| subfield of K,
        scanning z**k for z = g**(|K*|/|F*|)."""
        step = K.pow(K.generator, K.order // F.order)
        w = 1
        for _ in range(F.order):
            acc = 0
            f = F.modulus
            i = poly_degree(f)
            while i >= 0:
                acc = K.mul(acc, w)
                if (f >> i) & 1:
                    acc ^= 1
                i -= 1
            if acc == 0:
                return w
            w = K.mul(w, step)
        raise InternalCheckError("no root of F's modulus in the subfield")

    def _normalize_primitive(self, K: BinaryField,
                             root_powers: list[int]) -> tuple[int, int, int]:
        """Pick the smallest exponent j with gcd(j, |K*|) = 1 and
        Norm(g**j) equal to the embedded omega.  Returns (t0, j, g**j)."""
        F = self.F
        omega_img = self._embed(root_powers, K, self.omega)
        norm_g = K.pow(K.generator, K.order // F.order)
        t = 1
        t0 = None
        for k in range(F.order):
            if t == norm_g:
                t0 = k
                break
            t = K.mul(t, omega_img)
        if t0 is None:
            raise InternalCheckError("norm of generator not in embedded F*")
        j = pow(t0, -1, F.order)
        while j <= K.order:
            if math.gcd(j, K.order) == 1:
                return t0, j, K.pow(K.generator, j)
            j += F.order
        raise InternalCheckError("no coprime norm-compatible exponent found")

    @staticmethod
    def _embed(root_powers: list[int], K: BinaryField, u: int) -> int:
        acc = 0
        i = 0
        while u:
            if u & 1:
                acc ^= root_powers[i]
            u >>= 1
            i += 1
        return acc

    # -- public surface --------------------------------------------------------

    def field(self, label: str) -> BinaryField:
        try:
            return {"E": self.E, "F": self.F, "G": self.G, "H": self.H}[label]
        except KeyError:
            raise FieldError(f"unknown field label {label!r}") from None

    def embed_F_G(self, u: int) -> int:
        self.F.check(u)
        return self._embed(self._root_powers_G, self.G, u)

    def embed_F_H(self, u: int) -> int:
        self.F.check(u)
        return self._embed(self._root_powers_H, self.H, u)

    def embed_F(self, K: BinaryField, u: int) -> int:
        if K is self.G:
            return self.embed_F_G(u)
        if K is self.H:
            return self.embed_F_H(u)
        if K is self.F:
            return u
        raise FieldError("embedding only defined into F, G, H")

    def primitive_element(self, label: str) -> int:
        return {"F": self.omega, "G": self.gamma, "H": self.beta}[label]

    def class_step(self, label: str) -> int:
        """c with cyclotomic class of generator**k equal to k*c mod M."""
        if label == "F":
            return 1
        if label == "G":
            return pow(self.gamma_exponent % self.M, -1, self.M)
        if label == "H":
            return pow(self.beta_exponent % self.M, -1, self.M)
        raise FieldError(f"no cyclotomic classes for label {label!r}")

    def class_index(self, label: str, u: int) -> int:
        """Index of the order-M cyclotomic class of u (w.r.t. omega/gamma/beta)."""
        K = self.field(label)
        if u == 0:
            raise FieldError("0 has no cyclotomic class")
        return (K.dlog(u) * self.class_step(label)) % self.M

    def moduli_hex(self) -> dict[str, str]:
        return {lbl: modulus_to_hex(self.field(lbl).modulus)
                for lbl in ("E", "F", "G", "H")}


def build_tower(s: int, mod_f: int | None = None, mod_g: int | None = None,
                mod_h: int | None = None) -> FieldTower:
    if s < 1:
        raise FieldError("s must be >= 1")
    E = build_field(s)
    F = build_field(3 * s, mod_f)
    G = build_field(6 * s, mod_g)
    H = build_field(9 * s, mod_h)
    return FieldTower(s, E, F, G, H)


# ---------------------------------------------------------------------------
# spec-level free functions
# ---------------------------------------------------------------------------

def rel_trace(K: BinaryField, sub_degree: int, u: int) -> int:
    return K.rel_trace(sub_degree, u)


def psi(K: BinaryField, u: int) -> int:
    return K.psi(u)


def dlog_class(K: BinaryField, M: int, u: int, base: int | None = None) -> int:
    """Index of the order-M cyclotomic class of u, w.r.t. base (default:
    the field generator)."""
    if u == 0:
        raise FieldError("0 has no cyclotomic class")
    if M < 1 or K.order % M:
        raise FieldError(f"M={M} does not divide the group order {K.order}")
    k = K.dlog(u)
    if base is not None and base != K.generator:
        b = K.dlog(base)
        if math.gcd(b, K.order) != 1:
            raise FieldError("base is not a primitive element")
        k = (k * pow(b, -1, K.order)) % K.order
    return k % M
