"""Closed-form permutation criteria for the trinomial family.

For p > 3 the criterion is a disjunction of two condition sets:

  prima:        a^q b^q = a(b^(q+1) - a^(q+1))  and  1 - 4(b/a)^(q+1) a
                nonzero square in GF(q);
  seconda:      a^(q-1) + 3b = 0  and  -3(1 - 4(b/a)^(q+1)) a nonzero
                square in GF(q).

Each has a reparametrised variant (prima_bis through v = b a^2, seconda_bis,
and the sharper seconda_tris), implemented here exactly as stated; only the
implications bis -> base are relied on, the reverse inclusions are recorded
empirically by the scan.  Beware that seconda_tris -> seconda is NOT an
unconditional implication: it holds exactly when -3 is a nonsquare in GF(q)
(q = 2 mod 3), and on permutation instances at every q, but fails on
non-permutation pairs when q = 1 mod 3.  Characteristic 2 and 3 have their
own complete criteria (check_char2, check_char3).

All GF(q)-valued quantities are computed in GF(q^2) and then projected, with
a Frobenius fixed-point assertion acting as an arithmetic tripwire.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ff import Elem, SquareClass, frobenius, is_square, project
from .perm import TrinomialParams

__all__ = [
    "ConditionReport",
    "check_prima",
    "check_seconda",
    "check_prima_bis",
    "check_seconda_bis",
    "check_seconda_tris",
    "check_char2",
    "check_char3",
    "main_predicate",
    "condition_report",
]


def _require_char(params: TrinomialParams, *, above3=False, equal=None) -> None:
    p = params.tower.p
    if above3 and p <= 3:
        raise ValueError(f"condition requires characteristic > 3, got {p}")
    if equal is not None and p != equal:
        raise ValueError(f"condition requires characteristic {equal}, got {p}")


def _fq_square_class(x: Elem) -> str:
    """Square class in GF(q) of a top-layer value that must lie in GF(q)."""
    if frobenius(x) != x:
        raise ArithmeticError("square-test operand is not Frobenius-fixed")
    return is_square(project(x, x.ctx.base))


def _norm(x: Elem) -> Elem:
    return x * frobenius(x)  # x^(q+1), kept in the top layer


def check_prima(params: TrinomialParams) -> bool:
    _require_char(params, above3=True)
    a, b = params.a, params.b
    if frobenius(a) * frobenius(b) != a * (_norm(b) - _norm(a)):
        return False
    val = a.ctx.one - 4 * _norm(b) * _norm(a).inv()
    return _fq_square_class(val) == SquareClass.SQUARE


def check_seconda(params: TrinomialParams) -> bool:
    _require_char(params, above3=True)
    a, b = params.a, params.b
    # a^(q-1) + 3b = 0, cleared of the division by a
    if frobenius(a) + 3 * a * b != 0:
        return False
    val = -3 * (a.ctx.one - 4 * _norm(b) * _norm(a).inv())
    return _fq_square_class(val) == SquareClass.SQUARE


def check_prima_bis(params: TrinomialParams) -> tuple[bool, Elem | None]:
    """The v-parametrised variant; returns (holds, v) with v in GF(q)*."""
    _require_char(params, above3=True)
    a, b = params.a, params.b
    v = b * a * a
    if v.i == 0 or frobenius(v) != v:
        return False, None
    na = _norm(a)
    if v * v - na * v - na**3 != 0:
        return False, None
    if _fq_square_class(-3 * na * na - 4 * v) != SquareClass.SQUARE:
        return False, None
    return True, project(v, v.ctx.base)


def check_seconda_bis(params: TrinomialParams) -> bool:
    _require_char(params, above3=True)
    a, b = params.a, params.b
    if frobenius(a) + 3 * a * b != 0:  # b = -a^(q-1)/3
        return False
    na = _norm(a)
    return _fq_square_class(3 * na * (4 - 9 * na)) == SquareClass.SQUARE


def check_seconda_tris(params: TrinomialParams) -> bool:
    _require_char(params, above3=True)
    a, b = params.a, params.b
    if 3 * a + 2 == 0:
        return False
    if 3 * b != 3 * frobenius(a) + 1:  # b = a^q + 1/3
        return False
    return _norm(a) * 3 + a + frobenius(a) == 0


def _abs_trace_to_f2(x: Elem) -> int:
    """Absolute trace GF(q) -> GF(2), the sum of the h conjugates x^(2^i)."""
    ctx = x.ctx
    acc = x
    y = x
    for _ in range(ctx.h - 1):
        y = y * y
        acc = acc + y
    if acc.i not in (0, 1):
        raise ArithmeticError("absolute trace left the prime field")
    return acc.i


def check_char2(params: TrinomialParams) -> bool:
    _require_char(params, equal=2)
    a, b = params.a, params.b
    na, nb = _norm(a), _norm(b)
    if b * (b.ctx.one + na + nb) + frobenius(a) ** 2 != 0:
        return False
    na_q = project(na, na.ctx.base)
    nb_q = project(nb, nb.ctx.base)
    if nb_q.i == 1:
        return _abs_trace_to_f2(na_q.ctx.one + na_q.inv()) == 0
    return _abs_trace_to_f2(nb_q * na_q.inv()) == 0


def check_char3(params: TrinomialParams) -> bool:
    _require_char(params, equal=3)
    a, b = params.a, params.b
    if frobenius(a) * frobenius(b) != a * (_norm(b) - _norm(a)):
        return False
    val = a.ctx.one - _norm(b) * _norm(a).inv()
    return _fq_square_class(val) == SquareClass.SQUARE


def main_predicate(params: TrinomialParams) -> bool:
    """The complete criterion, dispatched on the characteristic."""
    p = params.tower.p
    if p == 2:
        return check_char2(params)
    if p == 3:
        return check_char3(params)
    return check_prima(params) or check_seconda(params)


@dataclass(frozen=True)
class ConditionReport:
    """Every condition evaluated on one parameter pair.

    Fields that do not apply to the characteristic are None.  The invariants
    prima_bis -> prima, seconda_bis -> seconda and seconda_tris -> seconda
    hold instance by instance.
    """

    prima: bool | None
    seconda: bool | None
    prima_bis: bool | None
    v: Elem | None
    seconda_bis: bool | None
    seconda_tris: bool | None
    char2: bool | None
    char3: bool | None
    main: bool

    def to_json(self) -> dict:
        out = {
            "prima": self.prima,
            "seconda": self.seconda,
            "prima_bis": self.prima_bis,
            "seconda_bis": self.seconda_bis,
            "seconda_tris": self.seconda_tris,
            "char2": self.char2,
            "char3": self.char3,
            "main_predicate": self.main,
        }
        if self.prima_bis:
            out["v"] = self.v.i
        return out


def condition_report(params: TrinomialParams) -> ConditionReport:
    p = params.tower.p
    if p == 2:
        c2 = check_char2(params)
        return ConditionReport(None, None, None, None, None, None, c2, None, c2)
    if p == 3:
        c3 = check_char3(params)
        return ConditionReport(None, None, None, None, None, None, None, c3, c3)
    pb, v = check_prima_bis(params)
    pr = check_prima(params)
    se = check_seconda(params)
    return ConditionReport(
        prima=pr,
        seconda=se,
        prima_bis=pb,
        v=v,
        seconda_bis=check_seconda_bis(params),
        seconda_tris=check_seconda_tris(params),
        char2=None,
        char3=None,
        main=pr or se,
    )
