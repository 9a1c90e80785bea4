"""Boolean function representation, spectra, Gray codes, and bit utilities.

The index convention is fixed across the whole package: a truth table for
``n`` variables has ``2**n`` entries, and variable ``x_i`` occupies bit
position ``i - 1`` of the table index (``x_1`` is the least significant
bit).  Spectral indices and linear-combination indices follow the same
convention, which keeps rotation-angle indices aligned with the circuit
constructions in :mod:`fcnot.synth`.

Rotation angles are kept as exact rational multiples of pi (a
:class:`fractions.Fraction` in units of pi, always with a power-of-two
denominator).  Floating point only appears inside the simulator, so
Clifford-angle detection and adjoint cancellation are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_VARIABLES = 16


class ParseError(ValueError):
    """Malformed function text.  ``position`` is a 0-based offset when known."""

    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# ---------------------------------------------------------------------------
# Bit utilities


def mu(x: int) -> int:
    """Sideways sum (Hamming weight) of a nonnegative integer."""
    if x < 0:
        raise ValueError("mu is defined for nonnegative integers")
    return x.bit_count()


def rho(x: int) -> int:
    """Ruler function: the largest k such that 2**k divides x.

    ``rho(0)`` would be infinite; it is rejected because no construction
    ever evaluates it.
    """
    if x <= 0:
        raise ValueError("rho requires a positive integer")
    return (x & -x).bit_length() - 1


def trailing_bit(x: int) -> int:
    """Lowest set bit of x as a power of two, i.e. ``2**rho(x)``."""
    if x <= 0:
        raise ValueError("trailing_bit requires a positive integer")
    return x & -x


# ---------------------------------------------------------------------------
# Truth tables


@dataclass(frozen=True)
class TruthTable:
    """An n-variable Boolean function as a flat table of ``2**n`` bits.

    ``bits[k]`` is the function value at the assignment encoded by ``k``,
    where bit ``i - 1`` of ``k`` is the value of ``x_i``.
    """

    n: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VARIABLES:
            raise ValueError(
                f"variable count must be in [1, {MAX_VARIABLES}], got {self.n}"
            )
        if len(self.bits) != 1 << self.n:
            raise ValueError(
                f"table for n={self.n} needs {1 << self.n} entries, "
                f"got {len(self.bits)}"
            )
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("table entries must be 0 or 1")

    @classmethod
    def from_value(cls, n: int, value: int) -> "TruthTable":
        """Build a table from its packed integer (bit k of value = entry k)."""
        if value < 0 or value.bit_length() > 1 << n:
            raise ValueError(f"value does not fit a {1 << n}-entry table")
        return cls(n, tuple((value >> k) & 1 for k in range(1 << n)))

    def value(self) -> int:
        """Packed integer form (bit k = entry k)."""
        v = 0
        for k, b in enumerate(self.bits):
            v |= b << k
        return v

    def hex_form(self) -> str:
        """Canonical text form, accepted by :func:`parse_function`."""
        return f"0x{self.value():x}:{self.n}"


# ---------------------------------------------------------------------------
# Walsh-Hadamard spectra


def pm_one_vector(f: TruthTable) -> np.ndarray:
    """The +-1 coding of a truth table: entry k is ``(-1)**bits[k]``."""
    return 1 - 2 * np.asarray(f.bits, dtype=np.int64)


def walsh_hadamard(v) -> np.ndarray:
    """Hadamard transform of an integer vector of power-of-two length.

    Computed by the in-place butterfly transform in ``O(n * 2**n)`` integer
    additions.  Self-inverse up to the factor ``2**n``.
    """
    a = np.array(v, dtype=np.int64)
    if a.ndim != 1 or a.size == 0 or a.size & (a.size - 1):
        raise ValueError("length must be a positive power of two")
    h = 1
    while h < a.size:
        for start in range(0, a.size, 2 * h):
            lo = a[start : start + h].copy()
            hi = a[start + h : start + 2 * h]
            a[start : start + h] = lo + hi
            a[start + h : start + 2 * h] = lo - hi
        h *= 2
    return a


@dataclass(frozen=True)
class SpectralData:
    """The +-1 vector of a Boolean function and its spectral coefficients."""

    n: int
    pm_vector: np.ndarray
    coefficients: np.ndarray


def spectrum(f: TruthTable) -> SpectralData:
    """Spectral coefficients ``s = H_n * pm_one_vector(f)``."""
    pm = pm_one_vector(f)
    return SpectralData(n=f.n, pm_vector=pm, coefficients=walsh_hadamard(pm))


@dataclass(frozen=True)
class AngleTable:
    """Rotation angles ``theta_j = s_j * pi / 2**(n+1)``, exact in units of pi.

    Entry ``j`` is a Fraction ``a`` meaning the angle ``a * pi``; the
    denominator is always a power of two, so ``is_clifford`` is an exact
    test (an R1 rotation is Clifford iff its angle is a multiple of pi/2,
    i.e. iff ``s_j`` is a multiple of ``2**n``).
    """

    n: int
    angles: tuple[Fraction, ...]

    def is_clifford(self, j: int) -> bool:
        return self.angles[j].denominator <= 2


def angles(sd: SpectralData) -> AngleTable:
    """Angle table derived from spectral coefficients."""
    den = 1 << (sd.n + 1)
    return AngleTable(
        n=sd.n,
        angles=tuple(Fraction(int(s), den) for s in sd.coefficients),
    )


def lifted_spectrum(sd: SpectralData) -> np.ndarray:
    """Spectral coefficients of ``g = x_{n+1} and f`` from those of ``f``.

    For ``0 <= k < 2**(n+1)``::

        s'_k = 2**n * [k mod 2**n == 0] + (-1)**[k >= 2**n] * s_{k mod 2**n}

    which equals the direct transform of the +-1 coding of ``g`` (all-ones
    upper half, ``pm_one_vector(f)`` lower half).
    """
    s = sd.coefficients
    lifted = np.concatenate([s, -s])
    lifted[0] += 1 << sd.n
    lifted[1 << sd.n] += 1 << sd.n
    return lifted


# ---------------------------------------------------------------------------
# Gray codes


@dataclass(frozen=True)
class GrayCode:
    """Cyclic reflected binary Gray code on n bits.

    ``codewords[k]`` is the k-th word; ``deltas[k]`` is the bit position in
    which word k and word (k+1) mod 2**n differ.  For ``n == 0`` the code
    degenerates to the single empty word with no transitions.
    """

    n: int
    codewords: tuple[int, ...]
    deltas: tuple[int, ...]


def gray_code(n: int) -> GrayCode:
    """Standard reflected binary Gray code starting at the all-zero word.

    ``deltas[k] = rho(k + 1)`` except for the final wrap-around step, which
    flips the top bit ``n - 1``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return GrayCode(0, (0,), ())
    size = 1 << n
    codewords = tuple(k ^ (k >> 1) for k in range(size))
    deltas = tuple(rho(k + 1) for k in range(size - 1)) + (n - 1,)
    return GrayCode(n, codewords, deltas)


# ---------------------------------------------------------------------------
# Function parsing

_HEX_RE = re.compile(r"^0[xX]([0-9a-fA-F]+):(\d+)$")
_TOKEN_RE = re.compile(r"\s*(?:(x\d+)|([01])|([~&^|()]))")


def parse_function(text: str) -> TruthTable:
    """Parse a function given as ``0x<hex>:<n>`` or as a Boolean expression.

    The hex form packs the truth table into an integer (bit k = value at
    index k).  Expressions use variables ``x1 ... xn``, constants ``0``/``1``,
    and operators ``~`` (NOT), ``&`` (AND), ``^`` (XOR), ``|`` (OR) with
    precedence ``~ > & > ^ > |``, left-associative, plus parentheses.  The
    variable count is the highest subscript mentioned (an expression with
    no variables is treated as a 1-variable constant).
    """
    stripped = text.strip()
    m = _HEX_RE.match(stripped)
    if m is not None:
        return _parse_hex(m.group(1), m.group(2))
    if ":" in stripped:
        raise ParseError(f"malformed hex table {stripped!r}, expected 0x<hex>:<n>")
    return _parse_expression(stripped)


def _parse_hex(payload: str, n_text: str) -> TruthTable:
    n = int(n_text)
    if not 1 <= n <= MAX_VARIABLES:
        raise ParseError(f"variable count {n} out of range [1, {MAX_VARIABLES}]")
    value = int(payload, 16)
    if value.bit_length() > 1 << n:
        raise ParseError(f"hex payload is wider than {1 << n} bits")
    return TruthTable.from_value(n, value)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip():
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", bad)
            break
        var, const, op = m.groups()
        start = m.end() - len(m.group().lstrip())
        if var is not None:
            tokens.append(("var", var, start))
        elif const is not None:
            tokens.append(("const", const, start))
        else:
            tokens.append((op, op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _ExpressionParser:
    """Recursive-descent parser producing a tuple AST."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.index]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def parse(self):
        node = self.parse_or()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {text!r}", pos)
        return node

    def parse_or(self):
        node = self.parse_xor()
        while self.peek()[0] == "|":
            self.advance()
            node = ("or", node, self.parse_xor())
        return node

    def parse_xor(self):
        node = self.parse_and()
        while self.peek()[0] == "^":
            self.advance()
            node = ("xor", node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_unary()
        while self.peek()[0] == "&":
            self.advance()
            node = ("and", node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek()[0] == "~":
            self.advance()
            return ("not", self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        kind, text, pos = self.advance()
        if kind == "var":
            subscript = int(text[1:])
            if subscript < 1:
                raise ParseError("variable subscripts start at 1", pos)
            return ("var", subscript)
        if kind == "const":
            return ("const", int(text))
        if kind == "(":
            node = self.parse_or()
            kind, text, pos = self.advance()
            if kind != ")":
                raise ParseError("expected ')'", pos)
            return node
        raise ParseError(f"expected a variable, constant, or '(', got {text!r}", pos)


def _max_variable(node) -> int:
    tag = node[0]
    if tag == "var":
        return node[1]
    if tag == "const":
        return 0
    if tag == "not":
        return _max_variable(node[1])
    return max(_max_variable(node[1]), _max_variable(node[2]))


def _eval_node(node, assignment: int) -> int:
    tag = node[0]
    if tag == "var":
        return (assignment >> (node[1] - 1)) & 1
    if tag == "const":
        return node[1]
    if tag == "not":
        return 1 - _eval_node(node[1], assignment)
    a = _eval_node(node[1], assignment)
    b = _eval_node(node[2], assignment)
    if tag == "and":
        return a & b
    if tag == "xor":
        return a ^ b
    return a | b


def _parse_expression(text: str) -> TruthTable:
    node = _ExpressionParser(text).parse()
    n = max(_max_variable(node), 1)
    if n > MAX_VARIABLES:
        raise ParseError(f"variable count {n} out of range [1, {MAX_VARIABLES}]")
    bits = tuple(_eval_node(node, k) for k in range(1 << n))
    return TruthTable(n, bits)
