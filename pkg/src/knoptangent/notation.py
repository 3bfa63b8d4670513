"""Reading and writing weights in the usual ω/α/ε notation.

Symbols (ASCII or Unicode):

* ``w3`` / ``ω3`` - fundamental weight; ``a2`` / ``α2`` - simple root;
  ``e2`` / ``ε2`` - the classical ``ε_i`` of a factor.
* Primes pick the factor: ``w1`` is on the first non-torus factor,
  ``w1'`` on the second, ``w1''`` on the third.  ``w'1`` is accepted too.
* ``e`` / ``ε`` without an index is a torus character; ``e'`` is the
  second torus.
* On a rank-one factor the index may be dropped: ``a'`` = ``a1'``.
* ``sum(a2..a5)`` expands to ``a2+a3+a4+a5`` and is empty when the range is.

Coefficients are integers; parentheses group: ``w4-2(a1+a2+a3+a4)``.
"""

import re
from fractions import Fraction

from .rootsys import RootSystemError, Weight

__all__ = [
    "NotationError",
    "parse_weight",
    "render_simple",
    "render_weight",
    "render_combination",
]


class NotationError(ValueError):
    pass


_LETTERS = {"w": "w", "ω": "w", "a": "a", "α": "a", "e": "e", "ε": "e"}
_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")
_PRIME_CHARS = "'′″"


def _normalise(text):
    text = text.translate(_SUB).replace("−", "-").replace("″", "''").replace("′", "'")
    return text.replace(" ", "").replace("_", "")


_TOKEN = re.compile(r"sum\(|\.\.|[()+\-*]|\d+|[wωaαeε]'*\d*'*")


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise NotationError("unexpected %r at position %d in %r" % (text[pos], pos, text))
        out.append(m.group(0))
        pos = m.end()
    return out


_SYM = re.compile(r"^([wae])('*)(\d*)('*)$")


def _split_symbol(tok):
    tok = "".join(_LETTERS.get(ch, ch) for ch in tok)
    m = _SYM.match(tok)
    if not m:
        raise NotationError("bad symbol %r" % tok)
    letter, p1, idx, p2 = m.groups()
    if p1 and p2:
        raise NotationError("primes on both sides of the index in %r" % tok)
    return letter, len(p1) + len(p2), int(idx) if idx else None


class _Parser:
    def __init__(self, datum, text):
        self.datum = datum
        self.text = text
        self.toks = _tokenize(_normalise(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise NotationError("expected %r in %r" % (expected or "more input", self.text))
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise NotationError("empty weight expression")
        v = self.expr()
        if self.peek() is not None:
            raise NotationError("trailing %r in %r" % (self.peek(), self.text))
        return v

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        v = sign * self.term()
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            v = v + sign * self.term()
        return v

    def term(self):
        tok = self.peek()
        if tok is not None and tok.isdigit():
            coeff = int(self.take())
            if self.peek() == "*":
                self.take()
            nxt = self.peek()
            if nxt is None or nxt in ("+", "-", ")"):
                if coeff == 0:
                    return self.datum.zero
                raise NotationError("bare integer %d in %r" % (coeff, self.text))
            return coeff * self.atom()
        return self.atom()

    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.expr()
            self.take(")")
            return v
        if tok == "sum(":
            lo = _split_symbol(self.take())
            self.take("..")
            hi = _split_symbol(self.take())
            self.take(")")
            if lo[:2] != hi[:2] or lo[2] is None or hi[2] is None:
                raise NotationError("sum() bounds must share symbol and primes in %r" % self.text)
            v = self.datum.zero
            for k in range(lo[2], hi[2] + 1):
                v = v + self.symbol(lo[0], lo[1], k)
            return v
        if tok in ("+", "-", ")", "..", "*") or tok.isdigit():
            raise NotationError("unexpected %r in %r" % (tok, self.text))
        return self.symbol(*_split_symbol(tok))

    def symbol(self, letter, primes, index):
        d = self.datum
        try:
            if letter == "e" and index is None:
                tori = d.torus_positions()
                if primes >= len(tori):
                    raise NotationError("no torus number %d in %s" % (primes + 1, d.name))
                return d.torus_character(tori[primes])
            nonab = d.nonabelian_positions()
            if primes >= len(nonab):
                raise NotationError("no factor number %d in %s" % (primes + 1, d.name))
            pos = nonab[primes]
            f = d.components[pos]
            if index is None:
                if f.rank != 1 or letter == "e":
                    raise NotationError("index required on %s" % f.name)
                index = 1
            if letter == "w":
                return d.fundamental(pos, index)
            if letter == "a":
                return d.simple(pos, index)
            return d.eps(pos, index)
        except RootSystemError as exc:
            raise NotationError(str(exc)) from None


def parse_weight(datum, text):
    """Parse a weight expression into a Weight of ``datum``."""
    if isinstance(text, Weight):
        return text
    if isinstance(text, (list, tuple)):
        if len(text) != datum.coordinate_dim:
            raise NotationError("expected %d coordinates" % datum.coordinate_dim)
        return Weight(text)
    return _Parser(datum, str(text)).parse()


def _primes(k, unicode):
    if unicode:
        return "″" * (k // 2) + "′" * (k % 2)
    return "'" * k


def _fmt_coeff(c, first):
    c = Fraction(c)
    if c == 1:
        s = ""
    elif c == -1:
        s = "-"
    else:
        s = str(c) if c.denominator == 1 else "(%s)" % c
    if not first and not s.startswith("-"):
        s = "+" + s
    return s


def render_combination(terms, zero="0"):
    """Join (coefficient, name) pairs as ``2x-y``; zero coefficients skipped."""
    out = []
    for c, name in terms:
        if c:
            out.append(_fmt_coeff(c, not out) + name)
    return "".join(out) if out else zero


def render_simple(datum, beta, unicode=True):
    """Write β over the simple roots, e.g. ``α1+2α2+α′``."""
    coeffs = datum.simple_root_coordinates(beta)
    if coeffs is None:
        raise NotationError("%r is not in the span of the roots" % (beta,))
    letter = "α" if unicode else "a"
    nonab = datum.nonabelian_positions()
    terms = []
    for c, (pos, i) in zip(coeffs, datum.simple_root_labels):
        k = nonab.index(pos)
        f = datum.components[pos]
        idx = "" if f.rank == 1 else str(i)
        terms.append((c, letter + idx + _primes(k, unicode)))
    return render_combination(terms)


def render_weight(datum, lam, unicode=True):
    """Write a weight over fundamental weights and torus characters."""
    w, e = ("ω", "ε") if unicode else ("w", "e")
    nonab = datum.nonabelian_positions()
    tori = datum.torus_positions()
    terms = []
    for pos, f in enumerate(datum.components):
        loc = datum.local(lam, pos)
        if f.is_torus:
            terms.append((loc[0], e + _primes(tori.index(pos), unicode)))
            continue
        k = nonab.index(pos)
        if f.uses_eps_coordinates:
            n = len(loc)
            labels = [loc[i] - loc[i + 1] for i in range(n - 1)] + [loc[-1]]
        else:
            labels = list(loc)
        for i, c in enumerate(labels):
            idx = "" if f.rank == 1 and not f.gl_flag else str(i + 1)
            terms.append((c, w + idx + _primes(k, unicode)))
    return render_combination(terms)
