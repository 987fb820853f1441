"""Affine expressions in solver unknowns.

During an order-by-order solve, coefficients of the current order are
``LinExpr`` values (constant + linear part in fresh variables) while all
lower orders are plain rationals.  Series arithmetic is truncated at the
order being solved, so a product of two unknown-bearing values can never
contribute; attempting one raises, which guards the discipline.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import InternalCheckError
from ..linsolve import Certificate, LinSystem, Solution, lin_solve
from ..sparse import El


class LinExpr:
    __slots__ = ("const", "lin")

    def __init__(self, const=Fraction(0), lin: dict[int, Fraction] | None = None):
        self.const = const if isinstance(const, Fraction) else Fraction(const)
        self.lin = lin or {}

    def __bool__(self):
        return bool(self.const) or bool(self.lin)

    def __eq__(self, other):
        if isinstance(other, LinExpr):
            return self.const == other.const and self.lin == other.lin
        if isinstance(other, (int, Fraction)):
            return not self.lin and self.const == other
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return LinExpr(self.const + other, dict(self.lin))
        if isinstance(other, LinExpr):
            lin = dict(self.lin)
            for v, c in other.lin.items():
                acc = lin.get(v, Fraction(0)) + c
                if acc:
                    lin[v] = acc
                else:
                    lin.pop(v, None)
            return LinExpr(self.const + other.const, lin)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LinExpr(-self.const, {v: -c for v, c in self.lin.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LinExpr) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LinExpr()
            return LinExpr(self.const * other, {v: c * other for v, c in self.lin.items()})
        if isinstance(other, LinExpr):
            if self.lin and other.lin:
                raise InternalCheckError("product of two unknown-bearing coefficients")
            if other.lin:
                return other * self.const
            return self * other.const
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        parts = [str(self.const)] if self.const or not self.lin else []
        parts += [f"{c}·u{v}" for v, c in sorted(self.lin.items())]
        return " + ".join(parts)


_key_order_seed: int | None = None


def set_key_order_seed(seed: int | None):
    """Optional deterministic reshuffle of unknown allocation order.

    Changes only which gauge representative the pinned solves select; all
    defect postconditions are unaffected.  Used by the CLI --seed-order flag.
    """
    global _key_order_seed
    _key_order_seed = seed


class VarPool:
    """Allocates solver unknowns and turns solved systems back into values."""

    def __init__(self):
        self.labels: list[str] = []

    @property
    def nvars(self) -> int:
        return len(self.labels)

    def new(self, label: str) -> LinExpr:
        idx = len(self.labels)
        self.labels.append(label)
        return LinExpr(Fraction(0), {idx: Fraction(1)})

    def alloc_el(self, keys, label_fn=str) -> El:
        """Fresh unknown for every key, in the given (deterministic) order."""
        keys = list(keys)
        if _key_order_seed is not None:
            import random

            random.Random(_key_order_seed).shuffle(keys)
        out = El()
        for key in keys:
            out.data[key] = self.new(label_fn(key))
        return out


def equations_from_el(el: El) -> list[LinExpr]:
    """One equation ``expr = 0`` per key, in sorted key order."""
    eqs = []
    for _, expr in el.items_sorted():
        if isinstance(expr, LinExpr):
            if expr:
                eqs.append(expr)
        elif expr:
            # constant nonzero with no unknowns: an unsatisfiable row
            eqs.append(LinExpr(expr))
    return eqs


def solve_equations(pool: VarPool, equations: list[LinExpr]) -> Solution | Certificate:
    system = LinSystem(nvars=pool.nvars, var_labels=list(pool.labels))
    for eq in equations:
        system.add_row(dict(eq.lin), -eq.const)
    return lin_solve(system)


def substitute(el: El, values: list[Fraction]) -> El:
    """Evaluate all LinExpr coefficients at a solution vector."""
    out = El()
    for key, coeff in el.data.items():
        if isinstance(coeff, LinExpr):
            acc = coeff.const
            for v, c in coeff.lin.items():
                acc += c * values[v]
            if acc:
                out.data[key] = acc
        elif coeff:
            out.data[key] = coeff
    return out
