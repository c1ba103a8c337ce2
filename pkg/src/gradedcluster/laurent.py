"""Multivariate Laurent polynomials over the integers.

Values are stored as a term dict, a normalised ``fmpz_mpoly`` times a
monomial, or both; products, sums and quotients of large operands stay in
the flint form until their terms are needed.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

import flint
from flint.utils.flint_exceptions import DomainError

Exponent = tuple[int, ...]


class InexactDivision(ArithmeticError):
    pass


def _context(nvars: int):
    return flint.fmpz_mpoly_ctx.get(("x", nvars), "lex")


def _shift_terms(terms: Mapping[Exponent, int], offset: Sequence[int]) -> dict[Exponent, int]:
    return {tuple(x + y for x, y in zip(e, offset)): c for e, c in terms.items()}


class LaurentPoly:
    """Immutable Laurent polynomial in ``nvars`` variables.

    Terms map exponent tuples to nonzero integer coefficients. Variables are
    printed as ``x1 .. xn``.
    """

    __slots__ = ("nvars", "_t", "_fl", "_hash", "_text")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                clean[tuple(e)] = c
        self._t = clean
        self._fl = None
        self._hash = None
        self._text = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, int]) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p.nvars = nvars
        p._t = terms
        p._fl = None
        p._hash = None
        p._text = None
        return p

    @classmethod
    def _from_form(cls, nvars: int, offset: Exponent, poly) -> LaurentPoly:
        p = object.__new__(cls)
        p.nvars = nvars
        p._t = None
        p._fl = (offset, poly)
        p._hash = None
        p._text = None
        return p

    @property
    def _terms(self) -> dict[Exponent, int]:
        if self._t is None:
            offset, poly = self._fl
            self._t = {tuple(int(x) + y for x, y in zip(e, offset)): int(c) for e, c in zip(poly.monoms(), poly.coeffs())}
        return self._t

    def _form(self):
        """``(m, q)`` with ``self == x^m * q``, ``q`` a polynomial divisible by no variable."""
        if self._fl is None:
            m = self.min_exponent()
            self._fl = (m, _context(self.nvars).from_dict(_shift_terms(self._t, [-x for x in m])))
        return self._fl

    @classmethod
    def constant(cls, nvars: int, c: int = 1) -> LaurentPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c: int = 1) -> LaurentPoly:
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> LaurentPoly:
        """The ``i``-th (0-based) generator."""
        e = [0] * nvars
        e[i] = 1
        return cls.monomial(e)

    @property
    def terms(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Exponent, int]]:
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms) if self._t is not None else len(self._fl[1])

    def is_zero(self) -> bool:
        return len(self) == 0

    def is_monomial(self) -> bool:
        return len(self) == 1

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: LaurentPoly) -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        if (self._t is None or other._t is None) and self.nvars and not self.is_zero() and not other.is_zero():
            return self._add_forms(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.nvars, out)

    def _add_forms(self, other: LaurentPoly) -> LaurentPoly:
        ctx = _context(self.nvars)
        (ma, pa), (mb, pb) = self._form(), other._form()
        m = tuple(min(x, y) for x, y in zip(ma, mb))
        if ma != m:
            pa = pa * ctx.term(exp_vec=[x - y for x, y in zip(ma, m)])
        if mb != m:
            pb = pb * ctx.term(exp_vec=[x - y for x, y in zip(mb, m)])
        total = pa + pb
        if total.is_zero():
            return LaurentPoly._raw(self.nvars, {})
        k = [int(x) for x in total.term_content().monomial(0)]
        if any(k):
            total = total / ctx.term(exp_vec=k)
            m = tuple(x + y for x, y in zip(m, k))
        return LaurentPoly._from_form(self.nvars, m, total)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        if len(self) < len(other):
            a, b = self, other
        else:
            a, b = other, self
        if a.is_zero():
            return a
        if len(a) == 1 or self.nvars == 0:
            out: dict[Exponent, int] = {}
            for ea, ca in a._terms.items():
                for eb, cb in b._terms.items():
                    e = tuple(x + y for x, y in zip(ea, eb))
                    out[e] = out.get(e, 0) + ca * cb
            return LaurentPoly._raw(self.nvars, {e: c for e, c in out.items() if c})
        (ma, pa), (mb, pb) = a._form(), b._form()
        return LaurentPoly._from_form(self.nvars, tuple(x + y for x, y in zip(ma, mb)), pa * pb)

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("negative power of a non-unit monomial")
            return LaurentPoly._raw(self.nvars, {tuple(x * k for x in e): c ** (-k)})
        result = LaurentPoly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exponent: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial ``x^exponent``."""
        return LaurentPoly._raw(
            self.nvars,
            {tuple(x + y for x, y in zip(e, exponent)): c for e, c in self._terms.items()},
        )

    def min_exponent(self) -> Exponent:
        if self._fl is not None and len(self._fl[1]):
            return self._fl[0]
        if not self._terms:
            raise ValueError("zero polynomial has no minimum exponent")
        return tuple(min(col) for col in zip(*self._terms))

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient ``self / other``, raising InexactDivision if it is not Laurent."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        mp, mq = self.min_exponent(), other.min_exponent()
        if other.is_monomial() or self.nvars == 0:
            (e, c), = _shift_terms(other._terms, [-x for x in mq]).items()
            out = {}
            for t, v in self._terms.items():
                q, r = divmod(v, c)
                if r:
                    raise InexactDivision("coefficient not divisible")
                out[t] = q
            return LaurentPoly._raw(self.nvars, _shift_terms(out, [-x for x in mq]))
        (_, num), (_, den) = self._form(), other._form()
        try:
            quotient = num / den
        except DomainError as exc:
            raise InexactDivision(str(exc)) from None
        return LaurentPoly._from_form(self.nvars, tuple(a - b for a, b in zip(mp, mq)), quotient)

    def __truediv__(self, other: LaurentPoly) -> LaurentPoly:
        return self.exact_div(other)

    def substitute_one(self, indices: Iterable[int]) -> LaurentPoly:
        """Set the listed variables to 1 and drop them from the variable list."""
        drop = set(indices)
        keep = [i for i in range(self.nvars) if i not in drop]
        out: dict[Exponent, int] = {}
        for e, c in self._terms.items():
            k = tuple(e[i] for i in keep)
            out[k] = out.get(k, 0) + c
        return LaurentPoly._raw(len(keep), {e: c for e, c in out.items() if c})

    def extend(self, extra: int) -> LaurentPoly:
        """Embed into a ring with ``extra`` more trailing variables."""
        pad = (0,) * extra
        return LaurentPoly._raw(self.nvars + extra, {e + pad: c for e, c in self._terms.items()})

    # -- comparison & text -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self._t is not None and other._t is not None:
            return self._t == other._t
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self._form() == other._form()

    def __hash__(self) -> int:
        # computed from the canonical form so both representations agree
        if self._hash is None:
            if self.is_zero() or not self.nvars:
                self._hash = hash((self.nvars, frozenset(self._terms.items())))
            else:
                m, q = self._form()
                lead = tuple(int(x) for x in q.monomial(0))
                self._hash = hash((self.nvars, m, len(q), lead, int(q.coefficient(0))))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self._terms.items(), reverse=True)

    def to_str(self) -> str:
        """Canonical text: terms in descending exponent order.

        >>> LaurentPoly(2, {(-1, 1): 1, (-1, 0): 1}).to_str()
        '(1)*x1^-1*x2^1 + (1)*x1^-1'
        """
        if self._text is None:
            if not self._terms:
                self._text = "0"
            else:
                parts = []
                for e, c in self.sorted_terms():
                    factors = [f"({c})"]
                    factors += [f"x{i + 1}^{x}" for i, x in enumerate(e) if x]
                    parts.append("*".join(factors))
                self._text = " + ".join(parts)
        return self._text

    __str__ = to_str

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self.to_str()!r})"

    def __getstate__(self):
        return self.nvars, self._terms

    def __setstate__(self, state):
        self.nvars, self._t = state
        self._fl = None
        self._hash = None
        self._text = None

    @classmethod
    def parse(cls, text: str, nvars: int) -> LaurentPoly:
        """Inverse of :meth:`to_str`."""
        text = text.strip()
        if text == "0":
            return cls(nvars)
        terms: dict[Exponent, int] = {}
        for part in text.split(" + "):
            m = _TERM.fullmatch(part.strip())
            if m is None:
                raise ValueError(f"cannot parse term {part!r}")
            e = [0] * nvars
            for var, exp in _FACTOR.findall(m.group(2) or ""):
                i = int(var) - 1
                if not 0 <= i < nvars:
                    raise ValueError(f"variable x{var} out of range")
                e[i] += int(exp)
            key = tuple(e)
            terms[key] = terms.get(key, 0) + int(m.group(1))
        return cls(nvars, terms)


_TERM = re.compile(r"\((-?\d+)\)((?:\*x\d+\^-?\d+)*)")
_FACTOR = re.compile(r"\*x(\d+)\^(-?\d+)")
