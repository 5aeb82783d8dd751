"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class LaurentPoly:
    """A finite map from exponent vectors to nonzero integer coefficients.

    Exponent vectors are tuples aligned with ``variables``; two polynomials
    can only be combined if their variable tuples agree.
    """

    __slots__ = ("variables", "_terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.variables = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            if len(exp) != len(self.variables):
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {len(self.variables)}")
            if c:
                clean[exp] = clean.get(exp, 0) + int(c)
        self._terms = {e: c for e, c in clean.items() if c}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def one(cls, variables):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): 1})

    @classmethod
    def monomial(cls, variables, exponent, coeff: int = 1):
        return cls(variables, {tuple(exponent): coeff})

    @classmethod
    def var(cls, variables, name: str, power: int = 1):
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = power
        return cls(variables, {tuple(exp): 1})

    # -- access ---------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def support(self) -> set[tuple[int, ...]]:
        return set(self._terms)

    def coefficients(self) -> list[int]:
        return [self._terms[e] for e in sorted(self._terms)]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.variables != other.variables:
            raise ValueError("Laurent polynomials over different variables")

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return LaurentPoly(self.variables, {(0,) * len(self.variables): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need a monomial; use invert_variable")
        out = LaurentPoly.one(self.variables)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self._terms == other._terms

    def __hash__(self):
        return hash((self.variables, frozenset(self._terms.items())))

    # -- substitution & evaluation -------------------------------------------

    def invert_variable(self, name: str) -> "LaurentPoly":
        """Substitute ``x -> 1/x`` for one variable."""
        i = self.variables.index(name)
        out = {}
        for e, c in self._terms.items():
            e = list(e)
            e[i] = -e[i]
            out[tuple(e)] = c
        return LaurentPoly(self.variables, out)

    def evaluate(self, values: Mapping[str, Fraction | int]) -> Fraction:
        vals = [Fraction(values[v]) for v in self.variables]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for x, k in zip(vals, e):
                if k:
                    if x == 0 and k < 0:
                        raise ZeroDivisionError("negative power of a zero weight")
                    term *= x ** k
            total += term
        return total

    # -- output -----------------------------------------------------------------

    def to_records(self) -> list[tuple[int, dict[str, int]]]:
        """Terms in lexicographic exponent order as ``(coeff, {var: power})``."""
        out = []
        for e in sorted(self._terms):
            out.append((self._terms[e], {v: k for v, k in zip(self.variables, e) if k}))
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for c, mono in self.to_records():
            factors = [v if k == 1 else f"{v}^{k}" for v, k in mono.items()]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)
