"""
Text form of ladder-operator expressions.

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := <real> | "(" <re> "," <im> ")" | <mode> ["'"] ["^" <int>]

A prime marks a creation operator. Letters keep their written order and the
result is normal ordered, so ``a*a'`` parses to ``a'*a + 1``.
"""
from __future__ import annotations

import re

from src.utils.errors import AlgebraError
from .poly import ANNIHILATE, CREATE, LadderWord, NormalPoly, normal_order

_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(')?(?:\^(\d+))?$")
_COMPLEX = re.compile(r"^\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)$")
_FLOAT_EXP_TAIL = re.compile(r"(?:^|[*(,])\s*\d[\d.]*[eE]$")


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    current = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise AlgebraError(f"unbalanced ')' in {text!r}")
        if ch in "+-" and depth == 0 and not _FLOAT_EXP_TAIL.search(current.strip()):
            if current.strip():
                terms.append((sign, current.strip()))
                sign = 1
            # a sign with no pending term is unary: "a + -2*b", "-a"
            if ch == "-":
                sign = -sign
            current = ""
            continue
        current += ch
    if depth != 0:
        raise AlgebraError(f"unbalanced '(' in {text!r}")
    if not current.strip():
        raise AlgebraError(f"expression {text!r} ends without a term")
    terms.append((sign, current.strip()))
    return terms


def _parse_number(token: str) -> complex | None:
    match = _COMPLEX.match(token)
    try:
        if match:
            return complex(float(match.group(1)), float(match.group(2)))
        return complex(float(token))
    except ValueError:
        return None


def parse_word(term: str, sign: int = 1) -> LadderWord:
    coeff = complex(sign)
    letters: list = []
    for factor in (f.strip() for f in term.split("*")):
        if not factor:
            raise AlgebraError(f"empty factor in term {term!r}")
        number = _parse_number(factor)
        if number is not None:
            coeff *= number
            continue
        match = _LETTER.match(factor)
        if not match:
            raise AlgebraError(f"cannot parse factor {factor!r}")
        mode, prime, power = match.groups()
        kind = CREATE if prime else ANNIHILATE
        letters.extend([(mode, kind)] * int(power or 1))
    return LadderWord(coeff, tuple(letters))


def parse_poly(text: str) -> NormalPoly:
    """Parse an operator expression into its normal-ordered polynomial."""
    if not text or not text.strip():
        raise AlgebraError("empty operator expression")
    result = NormalPoly.zero()
    for sign, term in _split_terms(text.strip()):
        result = result + normal_order(parse_word(term, sign))
    return result


def _format_coeff(c: complex) -> str:
    if abs(c.imag) == 0.0:
        return f"{c.real:.12g}"
    return f"({c.real:.12g},{c.imag:.12g})"


def format_poly(p: NormalPoly) -> str:
    """Deterministic text form, parseable by :func:`parse_poly`."""
    if not p:
        return "0"
    parts = []
    for key, coeff in p.items():
        letters = []
        for mode, i, j in key:
            if i:
                letters.append(f"{mode}'" + (f"^{i}" if i > 1 else ""))
            if j:
                letters.append(mode + (f"^{j}" if j > 1 else ""))
        parts.append("*".join([_format_coeff(coeff)] + letters))
    return " + ".join(parts)
