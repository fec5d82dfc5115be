"""
Recursive descent parser for the polynomial expression grammar.

    expr   := term (('+' | '-') term)*
    term   := factor (('*' factor) | ('/' integer))*
    factor := '-' factor | atom (('^' | '**') integer)?
    atom   := integer | name | '(' expr ')'

The parser does not build polynomials itself. It is handed a `lookup`
callback turning a name into a value and a `number` callback turning a
`fractions.Fraction` into a value, and combines values with `+`, `-`, `*`
and `**`. That lets the same grammar produce sympy ring elements, plain
Fractions (for weight expressions like `d+2`) or anything else with the
usual operators.
"""

import fractions
import re

from .exceptions import ParseError

_TOKEN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*/^()]))"
)


class Token:
    def __init__(self, kind, text, position):
        self.kind = kind
        self.text = text
        self.position = position

    def __repr__(self):
        return "Token({}, {!r}, {})".format(self.kind, self.text, self.position)


def tokenize(text):
    tokens = []
    position = 0
    while True:
        while position < len(text) and text[position].isspace():
            position += 1
        if position >= len(text):
            break
        match = _TOKEN.match(text, position)
        if match is None or match.end() == position:
            raise ParseError("Unexpected character '{}'".format(text[position]), text, position)
        kind = match.lastgroup
        start = match.start(kind)
        tokens.append(Token(kind, match.group(kind), start))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class ExpressionParser:
    """
    Parse one expression. Use `parse_expression()` rather than this class
    directly unless you need to keep the token stream around.
    """

    def __init__(self, text, lookup, number):
        self.text = text
        self.lookup = lookup
        self.number = number
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op):
        token = self.advance()
        if token.kind != "op" or token.text != op:
            self.fail("Expected '{}'".format(op), token)
        return token

    def fail(self, message, token):
        if token.kind == "end":
            message = "{} but reached end of input".format(message)
        else:
            message = "{}, found '{}'".format(message, token.text)
        raise ParseError(message, self.text, token.position)

    def at_op(self, *ops):
        token = self.peek()
        return token.kind == "op" and token.text in ops

    def parse(self):
        if self.peek().kind == "end":
            self.fail("Empty expression", self.peek())
        value = self.expr()
        if self.peek().kind != "end":
            self.fail("Unexpected trailing input", self.peek())
        return value

    def expr(self):
        value = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.term()
            value = value + right if op == "+" else value - right
        return value

    def term(self):
        value = self.factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            if op == "*":
                value = value * self.factor()
            else:
                token = self.advance()
                if token.kind != "number":
                    self.fail("Division is only allowed by an integer literal", token)
                denominator = int(token.text)
                if denominator == 0:
                    raise ParseError("Division by zero", self.text, token.position)
                value = value * self.number(fractions.Fraction(1, denominator))
        return value

    def factor(self):
        if self.at_op("-"):
            self.advance()
            return -self.factor()
        if self.at_op("+"):
            self.advance()
            return self.factor()
        value = self.atom()
        if self.at_op("^", "**"):
            self.advance()
            token = self.advance()
            if token.kind != "number":
                self.fail("Exponent must be a nonnegative integer literal", token)
            value = value ** int(token.text)
        return value

    def atom(self):
        token = self.advance()
        if token.kind == "number":
            return self.number(fractions.Fraction(int(token.text)))
        if token.kind == "name":
            try:
                return self.lookup(token.text)
            except KeyError:
                raise ParseError(
                    "Unknown identifier '{}'".format(token.text), self.text, token.position
                )
        if token.kind == "op" and token.text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        self.fail("Expected a number, a name or '('", token)


def parse_expression(text, lookup, number):
    return ExpressionParser(text, lookup, number).parse()


def evaluate_integer(text, variables):
    """
    Evaluate an integer-valued expression such as `d-1` with `variables`
    mapping names to ints. Used for the weight families of the Pi keys.
    """
    value = parse_expression(
        str(text), lambda name: fractions.Fraction(variables[name]), lambda f: f
    )
    if value.denominator != 1:
        raise ParseError("Expression is not an integer", str(text), 0)
    return int(value)


def identifiers(text):
    """
    All names appearing in an expression, in order of first appearance.
    """
    seen = []
    for token in tokenize(text):
        if token.kind == "name" and token.text not in seen:
            seen.append(token.text)
    return seen
