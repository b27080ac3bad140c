"""Dense integer polynomials in one variable u, with exact arithmetic only.

Coefficients are arbitrary-precision Python ints, index = degree, no trailing
zeros.  Everything here is exact; no floats enter this module.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ExactArithmeticError


class IntPoly:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of u**i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        for c in coeffs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {type(c).__name__}")
        self.coeffs = tuple(coeffs)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return IntPoly(())

    @staticmethod
    def one():
        return IntPoly((1,))

    @staticmethod
    def monomial(coeff, power=0):
        return IntPoly([0] * power + [coeff])

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def cf(self, k):
        """Coefficient of u**k (0 beyond the stored degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "IntPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*u")
            else:
                terms.append(f"{c}*u^{i}")
        return "IntPoly(" + " + ".join(terms) + ")"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = IntPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner's rule; exact for int and Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- calculus and substitution -----------------------------------------

    def derivative(self):
        return IntPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def substitute_square(self):
        """Return p(u**2)."""
        out = [0] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[2 * i] = c
        return IntPoly(out)

    # -- division ----------------------------------------------------------

    def divmod_exact_steps(self, divisor):
        """Long division; quotient steps must stay integral, else raises."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dlc = divisor.leading
        dd = divisor.degree
        q = [0] * max(len(rem) - dd, 0)
        for k in range(len(rem) - dd - 1, -1, -1):
            top = rem[k + dd]
            if top == 0:
                continue
            if top % dlc != 0:
                raise ExactArithmeticError(
                    f"inexact polynomial division at u^{k + dd}: {top} not divisible by {dlc}"
                )
            f = top // dlc
            q[k] = f
            for i, c in enumerate(divisor.coeffs):
                rem[k + i] -= f * c
        return IntPoly(q), IntPoly(rem)

    def exact_divide(self, divisor):
        """Return self / divisor, raising ExactArithmeticError on any remainder."""
        quot, rem = self.divmod_exact_steps(divisor)
        if not rem.is_zero():
            raise ExactArithmeticError(f"nonzero remainder of degree {rem.degree} in exact division")
        return quot

    def divides(self, other):
        """True when self divides other exactly over the integers."""
        try:
            other.exact_divide(self)
            return True
        except ExactArithmeticError:
            return False

    # -- truncated power series --------------------------------------------

    def series_inverse(self, order):
        """Coefficients 0..order of 1/self as a power series; needs self(0) = +-1."""
        if self.cf(0) not in (1, -1):
            raise ExactArithmeticError("series inverse needs constant term +-1")
        c0 = self.cf(0)
        inv = [c0] + [0] * order
        for k in range(1, order + 1):
            s = 0
            for j in range(1, min(k, self.degree) + 1):
                s += self.cf(j) * inv[k - j]
            inv[k] = -c0 * s
        return inv

    def log_derivative_series(self, order):
        """Coefficients 1..order of u * self'/self as a power series (index 0 unused).

        For self = prod(1 - r_i u) the result is out[m] = -sum_i r_i**m.
        """
        inv = self.series_inverse(order)
        der = self.derivative()
        out = [0] * (order + 1)
        for m in range(1, order + 1):
            s = 0
            for j in range(0, min(m - 1, der.degree) + 1):
                s += der.cf(j) * inv[m - 1 - j]
            out[m] = s
        return out

    # -- serialization -----------------------------------------------------

    def to_list(self):
        """Coefficient list, lowest degree first."""
        return list(self.coeffs)

    @staticmethod
    def from_list(coeffs):
        return IntPoly(coeffs)


# -- content, gcd, square-free structure ------------------------------------


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def content(p: IntPoly):
    """GCD of the coefficients (0 for the zero polynomial)."""
    g = 0
    for c in p.coeffs:
        g = _gcd_int(g, c)
        if g == 1:
            break
    return g


def primitive_part(p: IntPoly):
    """p divided by its content, sign-normalized to a positive leading coefficient."""
    if p.is_zero():
        return p
    g = content(p)
    if p.leading < 0:
        g = -g
    return IntPoly([c // g for c in p.coeffs])


def _gcd_mod_p(a, b, p):
    """Monic gcd of coefficient lists a, b over GF(p)."""
    a = [c % p for c in a]
    b = [c % p for c in b]

    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        inv = pow(b[-1], p - 2, p)
        for k in range(len(a) - len(b), -1, -1):
            f = a[k + len(b) - 1] * inv % p
            if f:
                for i, c in enumerate(b):
                    a[k + i] = (a[k + i] - f * c) % p
        a = trim(a)
        a, b = b, a
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _is_probable_prime(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_descending(start):
    """Yield primes <= start in descending order."""
    n = start if start % 2 else start - 1
    while n > 2:
        if _is_probable_prime(n):
            yield n
        n -= 2


def gcd_polys(f: IntPoly, g: IntPoly):
    """Primitive gcd over the integers, by modular images with a division check.

    The candidate reconstructed by CRT is only accepted once it divides both
    inputs exactly, so unlucky primes cannot produce a wrong answer.
    """
    if f.is_zero():
        return primitive_part(g)
    if g.is_zero():
        return primitive_part(f)
    f = primitive_part(f)
    g = primitive_part(g)
    if f.degree == 0 or g.degree == 0:
        return IntPoly.one()
    lc_gcd = _gcd_int(f.leading, g.leading)

    best_deg = None
    residues = None  # list of coefficient residues, modulus
    modulus = 1
    for p in primes_descending((1 << 25) - 1):
        if f.leading % p == 0 or g.leading % p == 0:
            continue
        gp = _gcd_mod_p(list(f.coeffs), list(g.coeffs), p)
        d = len(gp) - 1
        if d == 0:
            return IntPoly.one()
        if best_deg is None or d < best_deg:
            best_deg = d
            scaled = [c * lc_gcd % p for c in gp]
            residues = scaled
            modulus = p
        elif d == best_deg:
            scaled = [c * lc_gcd % p for c in gp]
            inv = pow(modulus % p, p - 2, p)
            new = []
            for r_old, r_new in zip(residues, scaled):
                t = (r_new - r_old) * inv % p
                new.append(r_old + modulus * t)
            residues = new
            modulus *= p
        else:
            continue
        # symmetric lift and division test
        half = modulus // 2
        lifted = [c - modulus if c > half else c for c in residues]
        cand = primitive_part(IntPoly(lifted))
        if not cand.is_zero() and cand.divides(f) and cand.divides(g):
            return cand
    raise ExactArithmeticError("modular gcd failed to stabilize")  # pragma: no cover


def squarefree_decomposition(f: IntPoly):
    """Yun decomposition: list of (factor, multiplicity) with square-free factors.

    Constant content is dropped; the product of factor**multiplicity equals f
    up to an integer constant, which is all the root-finding callers need.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = primitive_part(f)
    if f.degree == 0:
        return []
    df = f.derivative()
    g = gcd_polys(f, df)
    if g.degree == 0:
        return [(f, 1)]
    out = []
    w = f.exact_divide(g)
    y = df.exact_divide(g)
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        a = gcd_polys(w, z)
        if a.degree > 0:
            out.append((a, i))
        w = w.exact_divide(a)
        y = z.exact_divide(a)
        i += 1
    return out
