#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
整係數多項式模組 (polynomial.py)

用途：
    提供不可變的稠密整係數一元多項式 IntPolynomial（係數由低次到高次），
    實際的加減乘除交給 sympy.polys.densearith 在 ZZ 上運算
    （sympy 內部以高次在前的串列表示，這裡負責轉換）。
    另提供因式形式字串的解析器，例如
        "(1-t^2)^4(t-1)(3t-1)(3t^2+1)(9t^4-2t^2+1)"
    會被展開成單一多項式，供參考數值比對。

在整個應用中的角色：
    - zeta.py 的行列式、zeta 倒數、特徵多項式都以 IntPolynomial 回傳
    - golden_store.py 以 parse_factored 展開參考數值

關聯檔案：
    - zeta.py
    - golden_store.py
    - errors.py：NotDivisibleError
"""

import re

from sympy.polys.densearith import (
    dup_add,
    dup_div,
    dup_mul,
    dup_mul_ground,
    dup_neg,
    dup_pow,
    dup_sub,
)
from sympy.polys.domains import ZZ

from errors import NotDivisibleError


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    """
    稠密整係數多項式，係數由低次到高次，最高次係數非零；零多項式為空序列。

    屬性：
        coefficients (tuple[int]): 係數
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        self._coeffs = _strip(int(c) for c in coeffs)

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def variable(cls):
        """多項式 t。"""
        return cls([0, 1])

    @classmethod
    def _from_dup(cls, f):
        return cls(int(c) for c in reversed(f))

    def _dup(self):
        return [ZZ(c) for c in reversed(self._coeffs)]

    @staticmethod
    def _coerce(other):
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return NotImplemented

    @property
    def coefficients(self):
        return self._coeffs

    @property
    def degree(self):
        """次數；零多項式為 -1。"""
        return len(self._coeffs) - 1

    def is_zero(self):
        return not self._coeffs

    def coefficient(self, k):
        return self._coeffs[k] if 0 <= k < len(self._coeffs) else 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._from_dup(dup_add(self._dup(), other._dup(), ZZ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._from_dup(dup_sub(self._dup(), other._dup(), ZZ))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return self._from_dup(dup_neg(self._dup(), ZZ))

    def __mul__(self, other):
        if isinstance(other, int):
            return self._from_dup(dup_mul_ground(self._dup(), ZZ(other), ZZ))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._from_dup(dup_mul(self._dup(), other._dup(), ZZ))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
        return self._from_dup(dup_pow(self._dup(), k, ZZ))

    def divmod(self, other):
        """
        整環上的帶餘除法，回傳 (商, 餘式)。

        除式最高次係數不是 ±1 時，除法在無法整除的那一步停止。
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = dup_div(self._dup(), other._dup(), ZZ)
        return self._from_dup(q), self._from_dup(r)

    def divexact(self, other):
        """
        精確除法。

        Raises:
            NotDivisibleError: 餘式不為零（附帶商與餘式）
        """
        q, r = self.divmod(other)
        if not r.is_zero():
            raise NotDivisibleError(f"{other} does not divide {self}", quotient=q, remainder=r)
        return q

    def evaluate(self, x):
        """以 Horner 法求值。"""
        acc = 0
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def reversed(self, length=None):
        """
        係數反轉：t^length · p(1/t)，length 預設為次數。
        """
        if length is None:
            length = self.degree
        padded = list(self._coeffs) + [0] * (length + 1 - len(self._coeffs))
        return IntPolynomial(reversed(padded))

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self._coeffs)})"

    def format(self, var="t"):
        """由低次到高次的可讀字串，例如 "1 - 4*t + 6*t^2"。"""
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def to_json(self):
        """係數（由低次到高次）的十進位字串串列。"""
        return [str(c) for c in self._coeffs]

    @classmethod
    def from_json(cls, values):
        return cls(int(v) for v in values)


ONE = IntPolynomial([1])
ZERO = IntPolynomial()
T = IntPolynomial.variable()


# ===== 因式形式解析 =====

_TERM = re.compile(r"([+-]?)(\d*)(?:([a-z])(?:\^(\d+))?)?")


def _monomial(sign, digits, var, power):
    coeff = int(digits) if digits else 1
    if sign == "-":
        coeff = -coeff
    exp = (int(power) if power else 1) if var else 0
    return IntPolynomial([0] * exp + [coeff])


class _FactoredParser:
    def __init__(self, text):
        cleaned = text.replace("−", "-").replace("·", "").replace("*", "")
        self.text = re.sub(r"\s+", "", cleaned)
        self.pos = 0
        self.var = None

    def _note_var(self, var):
        if var:
            if self.var is None:
                self.var = var
            elif self.var != var:
                raise ValueError(f"mixed variables {self.var!r} and {var!r} in {self.text!r}")

    def _sum(self, inner):
        total = ZERO
        pos = 0
        if not inner:
            raise ValueError("empty parenthesis")
        while pos < len(inner):
            m = _TERM.match(inner, pos)
            sign, digits, var, power = m.groups()
            if m.end() == pos or not (digits or var):
                raise ValueError(f"cannot parse term at {inner[pos:]!r}")
            if pos > 0 and not sign:
                raise ValueError(f"missing operator before {inner[pos:]!r}")
            self._note_var(var)
            total = total + _monomial(sign, digits, var, power)
            pos = m.end()
        return total

    def _exponent(self):
        m = re.compile(r"\^(\d+)").match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return int(m.group(1))
        return 1

    def parse(self):
        result = ONE
        if not self.text:
            raise ValueError("empty polynomial text")
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "(":
                depth, end = 0, self.pos
                while end < len(self.text):
                    if self.text[end] == "(":
                        depth += 1
                    elif self.text[end] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    end += 1
                if depth != 0:
                    raise ValueError(f"unbalanced parenthesis in {self.text!r}")
                inner = self.text[self.pos + 1:end]
                self.pos = end + 1
                factor = self._sum(inner) if "(" not in inner else _FactoredParser(inner).parse()
                result = result * factor ** self._exponent()
            else:
                m = _TERM.match(self.text, self.pos)
                sign, digits, var, power = m.groups()
                if m.end() == self.pos or not (digits or var):
                    raise ValueError(f"cannot parse factor at {self.text[self.pos:]!r}")
                self._note_var(var)
                result = result * _monomial(sign, digits, var, power)
                self.pos = m.end()
        return result


def parse_factored(text):
    """
    將因式形式字串展開成 IntPolynomial。

    支援：括號內為整係數多項式的和、括號後的 ^k 次方、整數係數、
    單一字母變數（t 或 x）、單項式因子（例如 x^10）。

    Args:
        text (str): 例如 "(1-t^2)^4(t-1)(3t-1)"

    Returns:
        IntPolynomial

    Raises:
        ValueError: 無法解析
    """
    return _FactoredParser(text).parse()
