"""Cursor-based scanner shared by the small text grammars."""

from fractions import Fraction

from .errors import ParseError

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CONT = _NAME_START | set("0123456789")


class TextCursor:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _line_col(self):
        upto = self.text[: self.pos]
        line = upto.count("\n") + 1
        col = self.pos - (upto.rfind("\n") + 1) + 1
        return line, col

    def error(self, message):
        line, col = self._line_col()
        return ParseError(message, line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def eat(self, literal):
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal):
        if not self.eat(literal):
            raise self.error("expected %r" % literal)

    def match_name(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in _NAME_START:
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos] in _NAME_CONT:
                self.pos += 1
            return self.text[start : self.pos]
        return None

    def match_int(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            return None
        return int(self.text[start : self.pos])

    def match_fraction(self):
        """Integer or integer/integer, returned as an exact Fraction."""
        self.skip_ws()
        start = self.pos
        num = self.match_int()
        if num is None:
            return None
        save = self.pos
        if self.eat("/"):
            den = self.match_int()
            if den is None or den == 0:
                self.pos = save
                return Fraction(num)
            return Fraction(num, den)
        self.pos = save
        return Fraction(num)

    def expect_end(self):
        if not self.at_end():
            raise self.error("unexpected trailing input %r" % self.text[self.pos : self.pos + 10])
