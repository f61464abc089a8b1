"""Text grammar for algebra elements.

    element := term (('+'|'-') term)*
    term    := coeff ws '[' factor (ws factor)* ']'
    factor  := '1' | 'g' digit+        (digits from {1,2,3}, no repeats)
    coeff   := rational | rational? 'i' | rational ('+'|'-') rational 'i'
    rational:= ['-'] int ['/' int]

Examples: "1 [g3 g3 g3]", "-1/2i [g12 1]", "1/2 [g3 g3 1] + -i [1 g13 g123]".
Factors may list generator indices in any order; the parser sorts them and
folds the transposition sign into the coefficient ("1 [g31]" is -1 on g13).
Rendering always emits canonical form, so parse(render(x)) == x.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Blade, Multivector
from .scalars import GaussianRational, format_scalar


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        consumed = text[:pos]
        self.line = consumed.count("\n") + 1
        self.column = pos - (consumed.rfind("\n") + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n\r":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def fail(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)


def _parse_int(cur: _Cursor) -> int:
    start = cur.pos
    while cur.peek().isdigit():
        cur.pos += 1
    if cur.pos == start:
        cur.fail("expected an integer")
    return int(cur.text[start:cur.pos])


def _parse_rational(cur: _Cursor) -> Fraction:
    negative = False
    if cur.peek() == "-":
        cur.take()
        negative = True
    value = Fraction(_parse_int(cur))
    if cur.peek() == "/":
        cur.take()
        denom = _parse_int(cur)
        if denom == 0:
            cur.fail("zero denominator")
        value /= denom
    return -value if negative else value


def _parse_signed_part(cur: _Cursor) -> GaussianRational:
    """One of: rational, rational 'i', bare (signed) 'i'."""
    negative = False
    if cur.peek() == "-":
        cur.take()
        negative = True
    if cur.peek() == "i":
        cur.take()
        mag = Fraction(1)
        value = GaussianRational(0, mag)
    else:
        mag = Fraction(_parse_int(cur))
        if cur.peek() == "/":
            cur.take()
            denom = _parse_int(cur)
            if denom == 0:
                cur.fail("zero denominator")
            mag /= denom
        if cur.peek() == "i":
            cur.take()
            value = GaussianRational(0, mag)
        else:
            value = GaussianRational(mag)
    return -value if negative else value


def _parse_coeff(cur: _Cursor) -> GaussianRational:
    first = _parse_signed_part(cur)
    if cur.peek() in ("+", "-") and first.im == 0:
        # mixed form: rational ('+'|'-') rational 'i'
        sign = -1 if cur.take() == "-" else 1
        start = cur.pos
        second = _parse_signed_part(cur)
        if second.im == 0:
            raise ParseError("expected imaginary part after sign", cur.text, start)
        return first + (second if sign > 0 else -second)
    return first


def _parse_factor(cur: _Cursor) -> tuple[int, int]:
    """Returns (sign, mask) for one factor token."""
    if cur.peek() == "1":
        cur.take()
        return 1, 0
    if cur.peek() != "g":
        cur.fail("expected factor '1' or 'g<digits>'")
    cur.take()
    digits = []
    while cur.peek().isdigit():
        d = int(cur.take())
        if d not in (1, 2, 3):
            cur.pos -= 1
            cur.fail(f"generator index {d} out of range 1..3")
        if d in digits:
            cur.pos -= 1
            cur.fail(f"repeated generator index {d}")
        digits.append(d)
    if not digits:
        cur.fail("expected generator digits after 'g'")
    inversions = sum(
        1
        for a in range(len(digits))
        for b in range(a + 1, len(digits))
        if digits[a] > digits[b]
    )
    mask = 0
    for d in digits:
        mask |= 1 << (d - 1)
    return (-1 if inversions % 2 else 1), mask


def _parse_term(cur: _Cursor) -> tuple[GaussianRational, Blade]:
    coeff = _parse_coeff(cur)
    cur.skip_ws()
    if cur.peek() != "[":
        cur.fail("expected '[' opening a blade")
    cur.take()
    masks = []
    while True:
        cur.skip_ws()
        if cur.peek() == "]":
            cur.take()
            break
        if cur.at_end():
            cur.fail("unterminated blade, expected ']'")
        sign, mask = _parse_factor(cur)
        if sign < 0:
            coeff = -coeff
        masks.append(mask)
    if not masks:
        cur.fail("blade needs at least one factor")
    return coeff, tuple(masks)


def parse_element(text: str) -> Multivector:
    """Parse an element; the factor count is inferred from the first term."""
    cur = _Cursor(text)
    cur.skip_ws()
    if cur.at_end():
        cur.fail("empty element")
    coeff, blade = _parse_term(cur)
    num_factors = len(blade)
    acc = {blade: coeff}
    while True:
        cur.skip_ws()
        if cur.at_end():
            break
        sep_pos = cur.pos
        sep = cur.take()
        if sep not in "+-":
            raise ParseError("expected '+' or '-' between terms", text, sep_pos)
        cur.skip_ws()
        term_pos = cur.pos
        coeff, blade = _parse_term(cur)
        if len(blade) != num_factors:
            raise ParseError(
                f"inconsistent factor count: {len(blade)} vs {num_factors}",
                text,
                term_pos,
            )
        if sep == "-":
            coeff = -coeff
        acc[blade] = acc.get(blade, GaussianRational(0)) + coeff
    return Multivector(num_factors, acc)


def render_factor(mask: int) -> str:
    if mask == 0:
        return "1"
    return "g" + "".join(str(k) for k in (1, 2, 3) if mask & (1 << (k - 1)))


def render_blade(blade: Blade) -> str:
    return "[" + " ".join(render_factor(mask) for mask in blade) + "]"


def render_element(x: Multivector) -> str:
    """Canonical text: blades in lexicographic order, ' + ' separators."""
    if x.is_zero():
        return "0 " + render_blade((0,) * x.num_factors)
    parts = [
        f"{format_scalar(x.coeff(blade))} {render_blade(blade)}"
        for blade in x.blades()
    ]
    return " + ".join(parts)


def parse_single_blade(text: str) -> tuple[GaussianRational, Blade]:
    """Parse an element that must be a single (possibly phased) blade."""
    element = parse_element(text)
    return element.single_blade()


def parse_scalar(text: str) -> GaussianRational:
    """Parse a standalone coefficient ("-1/2", "i", "1/2+3i")."""
    cur = _Cursor(text)
    cur.skip_ws()
    if cur.at_end():
        cur.fail("empty scalar")
    value = _parse_coeff(cur)
    cur.skip_ws()
    if not cur.at_end():
        cur.fail("trailing characters after scalar")
    return value
