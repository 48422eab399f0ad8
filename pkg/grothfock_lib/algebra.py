"""Exact coefficient arithmetic over Z[b].

BetaScalar is the coefficient ring, MultiPoly a sparse polynomial in
x_1..x_n over it, RingMatrix a dense carrier for determinantal formulas.
Nothing here ever produces a fraction.
"""
import heapq
import logging
import math
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from sympy.utilities.iterables import multiset_permutations

from .constants import BETA_TEXT, COFACTOR_LIMIT
from .errors import DimensionError, InexactDivisionError, PreconditionError

logger = logging.getLogger(__name__)

# degree() of the zero element
ZERO_DEGREE = -1


def integer_binomial(a: int, m: int) -> int:
    """binom(a, m) = a(a-1)...(a-m+1)/m! for any integer a; 0 when m < 0."""
    if m < 0:
        return 0
    num = 1
    for t in range(m):
        num *= a - t
    return num // math.factorial(m)


class BetaScalar:
    """A polynomial in b with integer coefficients. Immutable."""

    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | int | None = None):
        data: dict[int, int] = {}
        if isinstance(coeffs, int):
            if coeffs:
                data[0] = coeffs
        elif coeffs is not None:
            for exp, c in coeffs.items():
                if exp < 0:
                    raise PreconditionError(f"negative power of b: {exp}")
                if c:
                    data[exp] = c
        self._coeffs = data
        self._hash = None

    @classmethod
    def _wrap(cls, data: dict[int, int]) -> "BetaScalar":
        obj = cls.__new__(cls)
        obj._coeffs = data
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "BetaScalar":
        return cls({exp: coeff})

    @property
    def coeffs(self) -> Mapping[int, int]:
        return MappingProxyType(self._coeffs)

    def items(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._coeffs.items())

    def degree(self) -> int:
        return max(self._coeffs) if self._coeffs else ZERO_DEGREE

    def coefficient(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    def is_constant(self) -> bool:
        return not self._coeffs or set(self._coeffs) == {0}

    def at_beta_zero(self) -> int:
        return self._coeffs.get(0, 0)

    def evaluate(self, beta: int) -> int:
        return sum(c * beta ** e for e, c in self._coeffs.items())

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._coeffs == ({0: other} if other else {})
        if isinstance(other, BetaScalar):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.at_beta_zero())
            else:
                self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __add__(self, other) -> "BetaScalar":
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        data = dict(self._coeffs)
        for exp, c in other._coeffs.items():
            v = data.get(exp, 0) + c
            if v:
                data[exp] = v
            else:
                data.pop(exp, None)
        return BetaScalar._wrap(data)

    __radd__ = __add__

    def __neg__(self) -> "BetaScalar":
        return BetaScalar._wrap({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other) -> "BetaScalar":
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "BetaScalar":
        return (-self) + other

    def __mul__(self, other) -> "BetaScalar":
        if isinstance(other, int):
            if not other:
                return BetaScalar._wrap({})
            return BetaScalar._wrap({e: c * other for e, c in self._coeffs.items()})
        if not isinstance(other, BetaScalar):
            return NotImplemented
        data: dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                data[e1 + e2] = data.get(e1 + e2, 0) + c1 * c2
        return BetaScalar._wrap({e: c for e, c in data.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BetaScalar":
        if k < 0:
            raise PreconditionError("negative power of a BetaScalar")
        result, base = BetaScalar(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "BetaScalar | int") -> "BetaScalar":
        """Univariate long division; raises InexactDivisionError on a remainder."""
        other = _as_scalar(other)
        if not other:
            raise PreconditionError("division by zero in Z[b]")
        rem = dict(self._coeffs)
        lead = other.degree()
        lead_c = other._coeffs[lead]
        quotient: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top < lead or rem[top] % lead_c:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            q_exp, q_c = top - lead, rem[top] // lead_c
            quotient[q_exp] = q_c
            for e, c in other._coeffs.items():
                v = rem.get(e + q_exp, 0) - q_c * c
                if v:
                    rem[e + q_exp] = v
                else:
                    rem.pop(e + q_exp, None)
        return BetaScalar._wrap(quotient)

    def to_text(self, symbol: str = BETA_TEXT, latex: bool = False) -> str:
        if not self._coeffs:
            return "0"
        pieces = []
        for exp, c in self.items():
            if exp == 0:
                body = str(abs(c))
            else:
                power = symbol if exp == 1 else (f"{symbol}^{{{exp}}}" if latex else f"{symbol}^{exp}")
                body = power if abs(c) == 1 else f"{abs(c)}{'' if latex else ' '}{power}"
            pieces.append(("-" if c < 0 else "+", body))
        return _join_signed(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"BetaScalar({self.to_text()!r})"


def _as_scalar(value) -> BetaScalar:
    if isinstance(value, BetaScalar):
        return value
    if isinstance(value, int):
        return BetaScalar(value)
    return NotImplemented


def _join_signed(pieces: list[tuple[str, str]]) -> str:
    if not pieces:
        return "0"
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


def join_terms(terms: Iterable[tuple[BetaScalar, str]], symbol: str = BETA_TEXT, latex: bool = False) -> str:
    """Render a sum of coefficient * basis-symbol pairs; an empty body is the unit."""
    pieces = []
    for coeff, body in terms:
        if not coeff:
            continue
        items = coeff.items()
        if len(items) == 1:
            exp, c = items[0]
            magnitude = BetaScalar.monomial(exp, abs(c)).to_text(symbol, latex)
            if not body:
                text = magnitude
            elif magnitude == "1":
                text = body
            else:
                text = f"{magnitude} {body}"
            pieces.append(("-" if c < 0 else "+", text))
        else:
            inner = coeff.to_text(symbol, latex)
            pieces.append(("+", f"({inner}) {body}" if body else f"({inner})"))
    return _join_signed(pieces)


BETA = BetaScalar.monomial(1)


class MultiPoly:
    """Sparse polynomial in x_1..x_n with BetaScalar coefficients.

    Terms are stored flat, keyed by the exponent vector with the b-exponent
    appended, so products never allocate intermediate BetaScalars.
    """

    __slots__ = ("n_vars", "_flat")

    def __init__(self, n_vars: int, terms: Mapping[Sequence[int], "BetaScalar | int"] | None = None):
        if n_vars < 1:
            raise PreconditionError(f"a MultiPoly needs at least one variable, got {n_vars}")
        self.n_vars = n_vars
        flat: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n_vars or any(e < 0 for e in exps):
                raise DimensionError(f"bad exponent vector {exps} for {n_vars} variables")
            for b, c in _as_scalar(coeff).coeffs.items():
                key = exps + (b,)
                v = flat.get(key, 0) + c
                if v:
                    flat[key] = v
                else:
                    flat.pop(key, None)
        self._flat = flat

    @classmethod
    def _wrap(cls, n_vars: int, flat: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.n_vars = n_vars
        obj._flat = flat
        return obj

    @classmethod
    def constant(cls, n_vars: int, value: "BetaScalar | int" = 1) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: value})

    @classmethod
    def variable(cls, n_vars: int, i: int) -> "MultiPoly":
        """x_i, 1-based."""
        if not 1 <= i <= n_vars:
            raise PreconditionError(f"x{i} does not exist among {n_vars} variables")
        exps = [0] * n_vars
        exps[i - 1] = 1
        return cls(n_vars, {tuple(exps): 1})

    @classmethod
    def beta(cls, n_vars: int) -> "MultiPoly":
        return cls(n_vars, {(0,) * n_vars: BETA})

    @property
    def terms(self) -> dict[tuple[int, ...], BetaScalar]:
        grouped: dict[tuple[int, ...], dict[int, int]] = {}
        for key, c in self._flat.items():
            grouped.setdefault(key[:-1], {})[key[-1]] = c
        return {exps: BetaScalar._wrap(data) for exps, data in grouped.items()}

    def flat_items(self):
        return self._flat.items()

    def coefficient(self, exps: Sequence[int]) -> BetaScalar:
        exps = tuple(exps)
        return BetaScalar._wrap({key[-1]: c for key, c in self._flat.items() if key[:-1] == exps})

    def total_degree(self) -> int:
        """Largest total x-degree; b does not count."""
        if not self._flat:
            return ZERO_DEGREE
        return max(sum(key[:-1]) for key in self._flat)

    def truncate(self, max_degree: int) -> "MultiPoly":
        return MultiPoly._wrap(self.n_vars, {k: c for k, c in self._flat.items() if sum(k[:-1]) <= max_degree})

    def restrict(self, k: int) -> "MultiPoly":
        """Set x_{k+1}, ..., x_n to zero."""
        if not 1 <= k <= self.n_vars:
            raise PreconditionError(f"cannot restrict {self.n_vars} variables to {k}")
        flat = {}
        for key, c in self._flat.items():
            if not any(key[k:self.n_vars]):
                flat[key[:k] + key[-1:]] = c
        return MultiPoly._wrap(k, flat)

    def extend(self, n: int) -> "MultiPoly":
        if n < self.n_vars:
            raise PreconditionError(f"cannot extend {self.n_vars} variables to {n}")
        pad = (0,) * (n - self.n_vars)
        return MultiPoly._wrap(n, {k[:-1] + pad + k[-1:]: c for k, c in self._flat.items()})

    def swap_variables(self, i: int, j: int) -> "MultiPoly":
        flat = {}
        for key, c in self._flat.items():
            key = list(key)
            key[i - 1], key[j - 1] = key[j - 1], key[i - 1]
            flat[tuple(key)] = c
        return MultiPoly._wrap(self.n_vars, flat)

    def is_symmetric(self) -> bool:
        return all(self.swap_variables(i, i + 1) == self for i in range(1, self.n_vars))

    def at_beta_zero(self) -> "MultiPoly":
        return MultiPoly._wrap(self.n_vars, {k: c for k, c in self._flat.items() if k[-1] == 0})

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.n_vars != self.n_vars:
                raise DimensionError(f"{self.n_vars} vs {other.n_vars} variables")
            return other
        if isinstance(other, (int, BetaScalar)):
            return MultiPoly.constant(self.n_vars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self._flat)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, BetaScalar)):
            other = MultiPoly.constant(self.n_vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n_vars == other.n_vars and self._flat == other._flat

    def __hash__(self) -> int:
        return hash((self.n_vars, frozenset(self._flat.items())))

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        flat = dict(self._flat)
        for key, c in other._flat.items():
            v = flat.get(key, 0) + c
            if v:
                flat[key] = v
            else:
                flat.pop(key, None)
        return MultiPoly._wrap(self.n_vars, flat)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._wrap(self.n_vars, {k: -c for k, c in self._flat.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            if not other:
                return MultiPoly._wrap(self.n_vars, {})
            return MultiPoly._wrap(self.n_vars, {k: c * other for k, c in self._flat.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        flat: dict[tuple[int, ...], int] = {}
        for k1, c1 in self._flat.items():
            for k2, c2 in other._flat.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                flat[key] = flat.get(key, 0) + c1 * c2
        return MultiPoly._wrap(self.n_vars, {k: c for k, c in flat.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise PreconditionError("negative power of a MultiPoly")
        result, base = MultiPoly.constant(self.n_vars, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sorted_terms(self) -> list[tuple[tuple[int, ...], BetaScalar]]:
        """Ascending total degree, lexicographically descending within a degree."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-e for e in t[0])))

    def to_text(self, symbol: str = BETA_TEXT, latex: bool = False) -> str:
        terms = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for i, e in enumerate(exps, start=1):
                if not e:
                    continue
                var = f"x_{{{i}}}" if latex else f"x{i}"
                if e > 1:
                    var += f"^{{{e}}}" if latex else f"^{e}"
                factors.append(var)
            terms.append((coeff, ("" if latex else " ").join(factors)))
        return join_terms(terms, symbol, latex)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.n_vars}, {self.to_text()!r})"


class RingMatrix:
    """Dense rectangular matrix over any commutative ring type in this package."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionError("a RingMatrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = width
        self._entries = tuple(e for r in rows for e in r)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self._entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def swap_rows(self, i: int, j: int) -> "RingMatrix":
        rows = self.to_rows()
        rows[i], rows[j] = rows[j], rows[i]
        return RingMatrix(rows)

    def transpose(self) -> "RingMatrix":
        return RingMatrix([[self[i, j] for i in range(self.rows)] for j in range(self.cols)])


def det_exact(matrix: RingMatrix):
    """Exact determinant without fractions.

    Small matrices go through cofactor expansion over column subsets;
    larger matrices over a ring with exact division use Bareiss elimination.
    """
    if not matrix.is_square:
        raise DimensionError(f"determinant of a {matrix.rows}x{matrix.cols} matrix")
    n = matrix.rows
    if n <= COFACTOR_LIMIT or not _has_exact_division(matrix[0, 0]):
        logger.debug("cofactor expansion for a %dx%d determinant", n, n)
        return _det_cofactor(matrix)
    logger.debug("fraction-free elimination for a %dx%d determinant", n, n)
    return _det_bareiss(matrix)


def _has_exact_division(entry) -> bool:
    return isinstance(entry, (int, BetaScalar, MultiPoly))


def _exquo(a, b):
    if isinstance(a, MultiPoly):
        return exact_divide(a, b)
    if isinstance(a, BetaScalar) or isinstance(b, BetaScalar):
        return _as_scalar(a).exact_div(b)
    if a % b:
        raise InexactDivisionError(f"{a} is not divisible by {b}")
    return a // b


def _det_cofactor(matrix: RingMatrix):
    n = matrix.rows
    # minors of the first k rows, keyed by the bitmask of columns used
    minors = {}
    for j in range(n):
        v = matrix[0, j]
        if v:
            minors[1 << j] = v
    for k in range(1, n):
        nxt = {}
        for mask, minor in minors.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                entry = matrix[k, j]
                if not entry:
                    continue
                term = entry * minor
                if (k + bin(mask & (bit - 1)).count("1")) % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        minors = {m: v for m, v in nxt.items() if v}
    full = (1 << n) - 1
    if full in minors:
        return minors[full]
    return matrix[0, 0] * 0


def _det_bareiss(matrix: RingMatrix):
    n = matrix.rows
    m = matrix.to_rows()
    negate = False
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot is None:
                return m[k][k]
            m[k], m[pivot] = m[pivot], m[k]
            negate = not negate
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                if prev is not None:
                    v = _exquo(v, prev)
                m[i][j] = v
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if negate else det


def _order(key: tuple[int, ...]) -> tuple[int, ...]:
    # graded lex on x, ties broken by the power of b
    return (sum(key[:-1]),) + key


def _heap_item(key: tuple[int, ...]):
    return tuple(-v for v in _order(key)), key


def exact_divide(num: MultiPoly, den: MultiPoly) -> MultiPoly:
    """Multivariate long division under graded lex order; the remainder must vanish."""
    if num.n_vars != den.n_vars:
        raise DimensionError(f"{num.n_vars} vs {den.n_vars} variables")
    if not den:
        raise PreconditionError("division by the zero polynomial")
    lead = max(den._flat, key=_order)
    lead_c = den._flat[lead]
    rem = dict(num._flat)
    heap = [_heap_item(k) for k in rem]
    heapq.heapify(heap)
    quotient = {}
    while heap:
        _, key = heapq.heappop(heap)
        c = rem.get(key)
        if not c:
            continue
        q_key = tuple(a - b for a, b in zip(key, lead))
        if min(q_key) < 0 or c % lead_c:
            raise InexactDivisionError(f"{num} is not divisible by {den}")
        q_c = c // lead_c
        quotient[q_key] = q_c
        for d_key, d_c in den._flat.items():
            t = tuple(a + b for a, b in zip(q_key, d_key))
            v = rem.get(t, 0) - q_c * d_c
            if v:
                if t not in rem:
                    heapq.heappush(heap, _heap_item(t))
                rem[t] = v
            else:
                rem.pop(t, None)
    return MultiPoly._wrap(num.n_vars, quotient)


def vandermonde(n: int) -> MultiPoly:
    """prod_{i<j} (x_i - x_j)."""
    if n < 1:
        raise PreconditionError(f"vandermonde needs n >= 1, got {n}")
    xs = [MultiPoly.variable(n, i) for i in range(1, n + 1)]
    result = MultiPoly.constant(n, 1)
    for i in range(n):
        for j in range(i + 1, n):
            result = result * (xs[i] - xs[j])
    return result


def _partitions_desc(weight: int, length: int, max_part: int | None = None):
    # padded to length, lexicographically descending
    if max_part is None:
        max_part = weight
    if length == 0:
        if weight == 0:
            yield ()
        return
    for first in range(min(weight, max_part), -1, -1):
        if first * length < weight:
            break
        for rest in _partitions_desc(weight - first, length - 1, first):
            yield (first,) + rest


def _staircase_shifts(e: tuple[int, ...]):
    """(sign of w, e - w(delta)) for every permutation w of the staircase with e - w(delta) >= 0."""
    n = len(e)

    def walk(i, used, inversions, prefix):
        if i == n:
            yield (-1) ** inversions, tuple(prefix)
            return
        for v in range(min(e[i], n - 1), -1, -1):
            if used >> v & 1:
                continue
            prefix.append(e[i] - v)
            yield from walk(i + 1, used | 1 << v, inversions + bin(used & ((1 << v) - 1)).count("1"), prefix)
            prefix.pop()

    yield from walk(0, 0, 0, [])


def alternant_quotient(dominant: Mapping[tuple[int, ...], BetaScalar], n: int) -> dict[tuple[int, ...], BetaScalar]:
    """Divide an alternating polynomial by prod_{i<j}(x_i - x_j), one degree at a time.

    dominant maps each strictly decreasing exponent vector e to the
    coefficient of x^e. The symmetric quotient comes back keyed by weakly
    decreasing exponent vectors, i.e. in the monomial basis.
    """
    staircase = tuple(range(n - 1, -1, -1))
    weights = set()
    for e in dominant:
        if len(e) != n:
            raise DimensionError(f"exponent vector {e} for {n} variables")
        if any(a <= b for a, b in zip(e, e[1:])) or e[-1] < 0:
            raise InexactDivisionError(f"x^{e} is not the leading term of an alternant")
        weights.add(sum(e) - sum(staircase))
    quotient: dict[tuple[int, ...], BetaScalar] = {}
    for weight in sorted(weights):
        # dominance order refines to descending lex, so every q_nu needed is already known
        for mu in _partitions_desc(weight, n):
            e = tuple(m + d for m, d in zip(mu, staircase))
            q = dominant.get(e, BetaScalar())
            for sign, alpha in _staircase_shifts(e):
                if alpha == mu:
                    continue
                known = quotient.get(tuple(sorted(alpha, reverse=True)))
                if known:
                    q = q - known * sign
            if q:
                quotient[mu] = q
    return quotient


def symmetric_polynomial(coeffs: Mapping[tuple[int, ...], BetaScalar], n: int) -> MultiPoly:
    """sum_mu c_mu m_mu(x_1..x_n) from coefficients keyed by weakly decreasing exponent vectors."""
    flat: dict[tuple[int, ...], int] = {}
    for mu, c in coeffs.items():
        if len(mu) != n:
            raise DimensionError(f"exponent vector {mu} for {n} variables")
        for exps in multiset_permutations(list(mu)):
            exps = tuple(exps)
            for b, v in c.coeffs.items():
                flat[exps + (b,)] = v
    return MultiPoly._wrap(n, flat)
