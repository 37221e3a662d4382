"""Exact integer Laurent polynomials in one or two variables.

A polynomial is a finite map from integer exponent vectors to nonzero
integer coefficients.  One-variable polynomials print with the symbol
``t``, two-variable ones with ``x`` and ``y``.  Arithmetic is exact;
coefficients are Python ints, so there is no overflow.

Alexander polynomials are only defined up to a unit ``±x^a*y^b``;
:meth:`LaurentPoly.normalize` picks the canonical representative of the
unit orbit (minimum exponent 0 in every variable, leading coefficient
positive).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

VAR_NAMES = {1: ("t",), 2: ("x", "y")}


class LaurentError(ValueError):
    """Raised on malformed input or impossible ring operations."""


def _grlex_key(exps: tuple[int, ...]):
    # total degree first, then first-variable exponent descending, so that
    # the rendered order is  -1 + x + y - x*y.
    return (sum(exps), tuple(-e for e in exps))


class LaurentPoly:
    """An immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("nvars", "terms", "_key")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        if nvars not in (1, 2):
            raise LaurentError(f"nvars must be 1 or 2, got {nvars}")
        clean: dict[tuple[int, ...], int] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise LaurentError(f"exponent {exps} has wrong arity for nvars={nvars}")
            coef = int(coef)
            if coef:
                clean[exps] = clean.get(exps, 0) + coef
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_key", (nvars, frozenset(clean.items())))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(1, nvars)

    @classmethod
    def constant(cls, value: int, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= index < nvars:
            raise LaurentError(f"no variable {index} with nvars={nvars}")
        exps = [0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, coef: int, exps: Sequence[int]) -> "LaurentPoly":
        return cls(len(tuple(exps)), {tuple(exps): coef})

    # -- basic protocol ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    # -- ring operations ---------------------------------------------------

    def _check_compatible(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise LaurentError(f"expected LaurentPoly, got {type(other).__name__}")
        if self.nvars != other.nvars:
            raise LaurentError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            terms[exps] = terms.get(exps, 0) + coef
        return LaurentPoly(self.nvars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compatible(other)
        terms: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                terms[exps] = terms.get(exps, 0) + c1 * c2
        return LaurentPoly(self.nvars, terms)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise LaurentError("negative powers of polynomials are not defined")
        result = LaurentPoly.one(self.nvars)
        for _ in range(n):
            result = result * self
        return result

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: k * c for e, c in self.terms.items()})

    # -- evaluation and substitution ----------------------------------------

    def evaluate(self, point: Sequence[int]) -> int:
        """Exact value at an integer point; nonzero coordinates only when
        negative exponents occur there."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise LaurentError(f"point arity {len(point)} != nvars {self.nvars}")
        total = 0
        for exps, coef in self.terms.items():
            value = coef
            for base, e in zip(point, exps):
                if e < 0:
                    if base not in (1, -1):
                        raise LaurentError(
                            f"cannot evaluate exponent {e} at {base} exactly")
                    value *= base ** (-e)
                else:
                    value *= base ** e
            total += value
        return total

    def invert_vars(self, which: Sequence[bool]) -> "LaurentPoly":
        """Substitute ``v -> v^-1`` for each flagged variable."""
        which = tuple(which)
        if len(which) != self.nvars:
            raise LaurentError("flag arity mismatch")
        terms = {}
        for exps, coef in self.terms.items():
            new = tuple(-e if w else e for e, w in zip(exps, which))
            terms[new] = coef
        return LaurentPoly(self.nvars, terms)

    def swap_vars(self) -> "LaurentPoly":
        if self.nvars != 2:
            raise LaurentError("swap_vars requires two variables")
        return LaurentPoly(2, {(b, a): c for (a, b), c in self.terms.items()})

    def specialize_to_one_var(self) -> "LaurentPoly":
        """Set every variable equal to the single variable t."""
        terms: dict[tuple[int, ...], int] = {}
        for exps, coef in self.terms.items():
            key = (sum(exps),)
            terms[key] = terms.get(key, 0) + coef
        return LaurentPoly(1, terms)

    # -- unit normalization --------------------------------------------------

    def min_exponents(self) -> tuple[int, ...]:
        if self.is_zero():
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, offsets: Sequence[int]) -> "LaurentPoly":
        offsets = tuple(offsets)
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, offsets)): c for e, c in self.terms.items()},
        )

    def normalize(self) -> "LaurentPoly":
        """Canonical representative of the unit orbit ``±x^a*y^b * p``."""
        if self.is_zero():
            return self
        shifted = self.shift(tuple(-m for m in self.min_exponents()))
        lead = max(shifted.terms, key=_grlex_key)
        if shifted.terms[lead] < 0:
            shifted = -shifted
        return shifted

    def unit_equal(self, other: "LaurentPoly") -> bool:
        """Equality up to multiplication by ``±x^a*y^b``."""
        self._check_compatible(other)
        return self.normalize() == other.normalize()

    # -- division ------------------------------------------------------------

    def divides(self, other: "LaurentPoly") -> bool:
        try:
            exact_divide(other, self)
            return True
        except LaurentError:
            return False

    # -- text form -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        names = VAR_NAMES[self.nvars]
        chunks: list[str] = []
        for exps, coef in self.sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(coef)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not chunks:
                chunks.append(body if coef > 0 else f"-{body}")
            else:
                chunks.append(f"+ {body}" if coef > 0 else f"- {body}")
        return " ".join(chunks)

    @classmethod
    def parse(cls, text: str, nvars: int) -> "LaurentPoly":
        """Parse the text rendering back into a polynomial."""
        names = VAR_NAMES[nvars]
        text = text.strip()
        if text in ("0", ""):
            return cls.zero(nvars)
        tokens = text.replace("- ", "-").replace("+ ", "+").split()
        terms: dict[tuple[int, ...], int] = {}
        for token in tokens:
            sign = 1
            if token.startswith("-"):
                sign, token = -1, token[1:]
            elif token.startswith("+"):
                token = token[1:]
            coef = sign
            exps = [0] * nvars
            for factor in token.split("*"):
                if not factor:
                    raise LaurentError(f"empty factor in {token!r}")
                if factor[0].isdigit():
                    coef *= int(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in names:
                    raise LaurentError(f"unknown variable {name!r}")
                exps[names.index(name)] += int(power) if power else 1
            key = tuple(exps)
            terms[key] = terms.get(key, 0) + coef
        return cls(nvars, terms)


# -- module-level arithmetic --------------------------------------------------


def exact_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``p = q * r``, up to units.

    Both arguments are unit-normalized first, so divisibility is decided in
    the ordinary polynomial ring.  Raises :class:`LaurentError` when ``q``
    does not divide ``p``.
    """
    if not isinstance(q, LaurentPoly) or not isinstance(p, LaurentPoly):
        raise LaurentError("exact_divide expects LaurentPoly arguments")
    p._check_compatible(q)
    if q.is_zero():
        raise LaurentError("division by the zero polynomial")
    if p.is_zero():
        return LaurentPoly.zero(p.nvars)
    p_min, q_min = p.min_exponents(), q.min_exponents()
    p0 = p.shift(tuple(-m for m in p_min))
    q0 = q.shift(tuple(-m for m in q_min))
    remainder = p0
    quotient: dict[tuple[int, ...], int] = {}
    q_lead = max(q0.terms, key=_grlex_key)
    q_lead_coef = q0.terms[q_lead]
    while not remainder.is_zero():
        r_lead = max(remainder.terms, key=_grlex_key)
        r_coef = remainder.terms[r_lead]
        exps = tuple(a - b for a, b in zip(r_lead, q_lead))
        if any(e < 0 for e in exps) or r_coef % q_lead_coef:
            raise LaurentError(f"({q}) does not divide ({p})")
        coef = r_coef // q_lead_coef
        quotient[exps] = coef
        remainder = remainder - LaurentPoly.monomial(coef, exps) * q0
    # undo the unit shifts so that p = q * result holds exactly
    return LaurentPoly(p.nvars, quotient).shift(
        tuple(a - b for a, b in zip(p_min, q_min)))


def _int_gcd_many(values: Iterable[int]) -> int:
    from math import gcd as _gcd

    result = 0
    for v in values:
        result = _gcd(result, v)
    return result


def _gcd_1var(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    # primitive pseudo-remainder sequence over Z[t]
    def content(f: LaurentPoly) -> int:
        return _int_gcd_many(f.terms.values())

    def primitive(f: LaurentPoly) -> LaurentPoly:
        c = content(f)
        return LaurentPoly(1, {e: v // c for e, v in f.terms.items()}) if c else f

    a, b = p.normalize(), q.normalize()
    ca, cb = content(a), content(b)
    from math import gcd as _gcd

    scalar = _gcd(ca, cb)
    a, b = primitive(a), primitive(b)
    while not b.is_zero():
        # pseudo-division: lead(b)^k * a = qb + r
        deg_a = max(e[0] for e in a.terms)
        deg_b = max(e[0] for e in b.terms)
        if deg_a < deg_b:
            a, b = b, a
            continue
        lead_b = b.terms[(deg_b,)]
        r = a.scale(lead_b ** (deg_a - deg_b + 1))
        while not r.is_zero() and max(e[0] for e in r.terms) >= deg_b:
            deg_r = max(e[0] for e in r.terms)
            lead_r = r.terms[(deg_r,)]
            assert lead_r % lead_b == 0
            r = r - b * LaurentPoly.monomial(lead_r // lead_b, (deg_r - deg_b,))
        a, b = b, primitive(r) if not r.is_zero() else r
    return a.scale(scalar).normalize()


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor up to units, via content/primitive-part
    recursion over the first variable in the two-variable case."""
    p._check_compatible(q)
    if p.is_zero():
        return q.normalize()
    if q.is_zero():
        return p.normalize()
    if p.nvars == 1:
        return _gcd_1var(p, q)

    def coeffs_in_y(f: LaurentPoly) -> dict[int, LaurentPoly]:
        by_y: dict[int, dict[tuple[int, ...], int]] = {}
        for (ex, ey), c in f.terms.items():
            by_y.setdefault(ey, {})[(ex,)] = c
        return {ey: LaurentPoly(1, t) for ey, t in by_y.items()}

    def content_y(f: LaurentPoly) -> LaurentPoly:
        parts = list(coeffs_in_y(f).values())
        g = parts[0]
        for part in parts[1:]:
            g = _gcd_1var(g, part)
        return g

    def primitive_y(f: LaurentPoly) -> LaurentPoly:
        c = content_y(f)
        out = LaurentPoly.zero(2)
        for ey, coef in coeffs_in_y(f).items():
            q1 = exact_divide(coef, c)
            out = out + LaurentPoly(2, {(ex, ey): v for (ex,), v in q1.terms.items()})
        return out

    def lift(f: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(2, {(e[0], 0): c for e, c in f.terms.items()})

    a, b = p.normalize(), q.normalize()
    cont = _gcd_1var(content_y(a), content_y(b))
    a, b = primitive_y(a), primitive_y(b)

    def deg_y(f: LaurentPoly) -> int:
        return max(e[1] for e in f.terms)

    while not b.is_zero():
        if deg_y(a) < deg_y(b):
            a, b = b, a
            continue
        da, db = deg_y(a), deg_y(b)
        lead_b = coeffs_in_y(b)[db]
        r = a * lift(lead_b) ** (da - db + 1)
        while not r.is_zero() and deg_y(r) >= db:
            dr = deg_y(r)
            lead_r = coeffs_in_y(r)[dr]
            factor = exact_divide(lead_r, lead_b)
            r = r - b * LaurentPoly(
                2, {(e[0], dr - db): c for e, c in factor.terms.items()}
            )
        a, b = b, primitive_y(r) if not r.is_zero() else r
    return (a * lift(cont)).normalize()
