"""Quadratic fields: discriminants, Kronecker symbols and class groups.

The class group of an imaginary quadratic field is computed from scratch:
reduced positive-definite forms are enumerated, composed with Dirichlet
composition and reduced again.  Group structure comes from counting
``p**k``-torsion, which determines each p-primary part.  For real fields
only the genus-theory 2-rank formula is exposed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import factorize, is_prime, is_squarefree, log2, omega
from .errors import DomainError, InputError, UnsupportedFieldError
from .zeta import ZetaValue, dedekind_zeta  # noqa: F401  (re-exported)


class RationalField:
    """Marker for Q, accepted wherever a quadratic field is."""

    degree = 1
    delta = 1
    abs_disc = 1
    signature = (1, 0)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def is_fundamental(delta: int) -> bool:
    if delta in (0, 1):
        return False
    if delta % 4 == 1:
        return is_squarefree(delta)
    if delta % 4 == 0:
        m = delta // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


@dataclass(frozen=True)
class QuadraticField:
    delta: int
    degree: int = field(default=2, init=False)

    def __post_init__(self):
        if not is_fundamental(self.delta):
            raise InputError(f"{self.delta} is not a fundamental discriminant")

    @property
    def abs_disc(self) -> int:
        return abs(self.delta)

    @property
    def signature(self) -> tuple[int, int]:
        return (2, 0) if self.delta > 0 else (0, 1)

    @property
    def imaginary(self) -> bool:
        return self.delta < 0


def fundamental_discriminant(m: int) -> QuadraticField:
    """Field Q(sqrt m) for squarefree m != 0, 1."""
    if m in (0, 1) or not is_squarefree(m):
        raise InputError(f"{m} must be squarefree and different from 0 and 1")
    return QuadraticField(m if m % 4 == 1 else 4 * m)


def parse_field(text):
    """``"Q"`` -> QQ, otherwise an integer fundamental discriminant."""
    if isinstance(text, (RationalField, QuadraticField)):
        return text
    if str(text).strip().upper() in ("Q", "QQ", "1"):
        return QQ
    try:
        delta = int(text)
    except ValueError as exc:
        raise InputError(f"cannot parse field {text!r}") from exc
    return QuadraticField(delta)


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_symbol(delta: int, n: int) -> int:
    """Kronecker symbol (delta | n) for n >= 1."""
    if n < 1:
        raise InputError("kronecker_symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if delta % 2 == 0:
            return 0
        if delta % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(delta, n)


# ---------------------------------------------------------------- forms


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c


def is_reduced(f: Form) -> bool:
    a, b, c = f
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def reduce_form(f: Form) -> Form:
    """Reduce a positive-definite form."""
    a, b, c = f
    D = b * b - 4 * a * c
    while True:
        k = (a - b) // (2 * a)
        b += 2 * a * k
        c = (b * b - D) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        if (a == c or a == -b) and b < 0:
            b = -b
        return Form(a, b, c)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def compose(f: Form, g: Form) -> Form:
    """Dirichlet composition of two forms of the same discriminant, reduced."""
    a1, b1, _ = f
    a2, b2, c2 = g
    D = b1 * b1 - 4 * a1 * f.c
    beta = (b1 + b2) // 2
    d1, x, y = _xgcd(a1, a2)
    e, z, w = _xgcd(d1, beta)
    u, v = z * x, z * y
    A = a1 * a2 // (e * e)
    B = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + D) // 2) // e
    B %= 2 * A
    if B > A:
        B -= 2 * A
    C = (B * B - D) // (4 * A)
    return reduce_form(Form(A, B, C))


def identity_form(delta: int) -> Form:
    r = delta % 2
    return Form(1, r, (r - delta) // 4)


def inverse_form(f: Form) -> Form:
    return reduce_form(Form(f.a, -f.b, f.c))


def form_power(f: Form, n: int) -> Form:
    result = identity_form(f.discriminant)
    base = f
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def reduced_forms(delta: int) -> list[Form]:
    """All reduced primitive positive-definite forms of discriminant delta < 0."""
    if delta >= 0:
        raise UnsupportedFieldError("reduced-form enumeration needs delta < 0")
    D = -delta
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b - delta) % 2:
                continue
            num = b * b + D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append(Form(a, b, c))
        a += 1
    return out


def forms_by_discriminant(dlo: int, dhi: int, fundamental_only: bool = True) -> dict[int, list[Form]]:
    """Reduced forms for every delta with dlo <= -delta <= dhi, in one sweep.

    Loops over (a, b) and the admissible range of c directly, so the cost is
    proportional to the number of forms produced rather than the sum of |delta|.
    """
    out: dict[int, list[Form]] = {}
    keep = {}
    a = 1
    while 3 * a * a <= dhi:
        four_a = 4 * a
        for b in range(-a + 1, a + 1):
            bb = b * b
            cmin = max(a, -(-(dlo + bb) // four_a))
            cmax = (dhi + bb) // four_a
            for c in range(cmin, cmax + 1):
                if c == a and b < 0:
                    continue
                D = four_a * c - bb
                ok = keep.get(D)
                if ok is None:
                    ok = keep[D] = is_fundamental(-D) if fundamental_only else True
                if not ok:
                    continue
                if not fundamental_only and math.gcd(math.gcd(a, b), c) != 1:
                    continue
                out.setdefault(-D, []).append(Form(a, b, c))
        a += 1
    return out


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class AbelianGroupShape:
    """Finite abelian group Z/d1 x ... x Z/dr with d1 | d2 | ... | dr, each >= 2."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if any(d < 2 for d in fs):
            raise InputError("invariant factors must be >= 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise InputError(f"{fs} is not a divisibility chain")

    @classmethod
    def from_cyclic_factors(cls, orders) -> "AbelianGroupShape":
        """Normalize an arbitrary product of cyclic groups to invariant factors."""
        parts: dict[int, list[int]] = {}
        for n in orders:
            if n < 1:
                raise InputError("cyclic factor orders must be positive")
            for p, e in factorize(n) if n > 1 else ():
                parts.setdefault(p, []).append(e)
        return cls.from_primary_parts({p: es for p, es in parts.items()})

    @classmethod
    def from_primary_parts(cls, parts: dict[int, list[int]]) -> "AbelianGroupShape":
        width = max((len(es) for es in parts.values()), default=0)
        factors = [1] * width
        for p, es in parts.items():
            for i, e in enumerate(sorted(es, reverse=True)):
                factors[width - 1 - i] *= p**e
        return cls(tuple(d for d in factors if d > 1))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def primary_parts(self) -> dict[int, list[int]]:
        """{p: partition (exponents, decreasing)} for each prime p dividing the order."""
        parts: dict[int, list[int]] = {}
        for d in self.invariant_factors:
            for p, e in factorize(d):
                parts.setdefault(p, []).append(e)
        return {p: sorted(es, reverse=True) for p, es in sorted(parts.items())}

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class ClassGroup:
    delta: int
    forms: tuple[Form, ...]
    shape: AbelianGroupShape

    @property
    def h(self) -> int:
        return len(self.forms)


def torsion_count(forms, m: int) -> int:
    """Number of classes x with x**m principal."""
    if not forms:
        return 0
    e = identity_form(forms[0].discriminant)
    return sum(1 for f in forms if form_power(f, m) == e)


def _shape_from_forms(forms) -> AbelianGroupShape:
    h = len(forms)
    parts = {}
    for p, v in factorize(h) if h > 1 else ():
        counts = [1]
        powers = list(forms)
        # counts[k] = #{x : x^(p^k) = 1}; the p-part has #{i: lambda_i >= k} = log_p(counts[k]/counts[k-1])
        e = identity_form(forms[0].discriminant)
        while counts[-1] < p**v:
            powers = [form_power(f, p) for f in powers]
            counts.append(sum(1 for f in powers if f == e))
        ranks = [round(math.log(counts[k] // counts[k - 1], p)) for k in range(1, len(counts))]
        # conjugate partition: lambda_i = #{k : ranks[k] >= i}
        parts[p] = [sum(1 for r in ranks if r >= i) for i in range(1, ranks[0] + 1)]
    return AbelianGroupShape.from_primary_parts(parts)


def form_class_group(k) -> ClassGroup:
    """Class group of an imaginary quadratic field from reduced forms."""
    k = k if isinstance(k, QuadraticField) else QuadraticField(int(k))
    if k.delta > 0:
        raise UnsupportedFieldError("form class group oracle covers imaginary fields only")
    forms = reduced_forms(k.delta)
    return ClassGroup(k.delta, tuple(forms), _shape_from_forms(forms))


def two_rank_from_forms(forms) -> int:
    """2-rank as log2 of the number of classes whose square is principal."""
    n = torsion_count(forms, 2)
    return n.bit_length() - 1


def gauss_two_rank(k) -> int:
    """2-rank of Cl(k) from the number t of prime divisors of the discriminant."""
    k = k if isinstance(k, QuadraticField) else QuadraticField(int(k))
    t = omega(k.delta)
    if k.delta > 0 and any(p % 4 == 3 for p, _ in factorize(k.delta)):
        return t - 2
    return t - 1


def l_rank(k, l: int) -> int:
    """l-rank of Cl(k) for imaginary k (from the oracle) or l = 2 (any sign)."""
    k = k if isinstance(k, QuadraticField) else QuadraticField(int(k))
    if not is_prime(l):
        raise InputError(f"{l} is not prime")
    if k.delta > 0:
        if l == 2:
            return gauss_two_rank(k)
        raise UnsupportedFieldError("l-ranks of real fields are only available for l = 2")
    forms = reduced_forms(k.delta)
    n = torsion_count(forms, l)
    return round(math.log(n, l))


class ConjectureRatios(NamedTuple):
    rank: int
    ratio_sqrt: float  # rank * sqrt(log log D) / log D
    ratio_loglog: float  # rank * log log D / log D


def conjecture_ratio(k, l: int, rank: int | None = None) -> ConjectureRatios:
    """Normalized l-rank functionals (base-2 logs); needs D_k >= 5."""
    k = k if isinstance(k, QuadraticField) else QuadraticField(int(k))
    D = k.abs_disc
    if D < 5:
        raise DomainError("conjecture ratios need D_k >= 5")
    r = l_rank(k, l) if rank is None else rank
    lg = log2(D)
    llg = math.log2(lg)
    return ConjectureRatios(r, r * math.sqrt(llg) / lg, r * llg / lg)


def fundamental_discriminants(dmin: int, dmax: int) -> list[int]:
    """Fundamental discriminants in [dmin, dmax], ordered by |delta| then sign."""
    out = [d for d in range(dmin, dmax + 1) if is_fundamental(d)]
    return sorted(out, key=lambda d: (abs(d), d))
