"""Exact polynomial arithmetic over the rationals.

Two value types live here: :class:`MultiPoly`, a sparse multivariate
polynomial keyed by exponent tuples, and :class:`UniPoly`, a dense
univariate polynomial.  Both are immutable and hashable.  Coefficients are
:class:`fractions.Fraction` throughout; nothing in this module touches
floating point.
"""
from __future__ import annotations

import ast
import itertools
import json
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class InputError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


class InternalError(RuntimeError):
    """Raised when an internal consistency check fails."""


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 1:
            raise InputError("a polynomial needs at least one variable")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise InputError(f"bad exponent vector {exp} for {nvars} variables")
            c = as_fraction(coef)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        self.nvars = nvars
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, value, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        """The variable ``X_{i+1}`` (0-based index ``i``)."""
        if not 0 <= i < nvars:
            raise InputError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in decreasing graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.to_text()!r})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise InputError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_fraction(other) if not isinstance(other, int) else Fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative polynomial power")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- evaluation and substitution ---------------------------------------

    def __call__(self, *x):
        return poly_eval(self, x)

    def compose(self, values: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``X_i <- values[i]``; all values share one ring."""
        if len(values) != self.nvars:
            raise InputError(f"expected {self.nvars} substitutions, got {len(values)}")
        if not values:
            raise InputError("empty substitution")
        m = values[0].nvars
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.const(1, m)} for _ in values]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pw(i, e - 1) * values[i]
            return cache[e]

        out = MultiPoly.zero(m)
        for exp, c in self.terms.items():
            term = MultiPoly.const(c, m)
            for i, e in enumerate(exp):
                if e:
                    term = term * pw(i, e)
            out = out + term
        return out

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Rename variables: ``X_i`` becomes ``X_{perm[i]}``."""
        out = {}
        for exp, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exp):
                new[perm[i]] = e
            out[tuple(new)] = c
        return MultiPoly._raw(self.nvars, out)

    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return MultiPoly._raw(self.nvars, out)

    def to_univariate(self, i: int = 0) -> "UniPoly":
        """View a polynomial involving only ``X_{i+1}`` as a UniPoly."""
        coeffs: dict[int, Fraction] = {}
        for exp, c in self.terms.items():
            if any(e for j, e in enumerate(exp) if j != i):
                raise InputError("polynomial involves more than one variable")
            coeffs[exp[i]] = c
        if not coeffs:
            return UniPoly(())
        return UniPoly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])

    # -- serialization ------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        """Text form ``c * X1^e1*X2^e2 + ...`` in graded-lex order."""
        if not self.terms:
            return "0"
        names = names or [f"X{i + 1}" for i in range(self.nvars)]
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(exp) if e
            )
            parts.append(f"{c} * {mono}" if mono else str(c))
        return " + ".join(parts)

    def to_json(self) -> list:
        return [[list(exp), str(c)] for exp, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, terms: Iterable, nvars: int | None = None) -> "MultiPoly":
        terms = list(terms)
        parsed = []
        for item in terms:
            if not (isinstance(item, (list, tuple)) and len(item) == 2):
                raise InputError(f"malformed term {item!r}; expected [[e1,...,en], \"p/q\"]")
            exp, c = item
            if not isinstance(exp, (list, tuple)) or not all(isinstance(e, int) for e in exp):
                raise InputError(f"malformed exponent vector {exp!r}")
            parsed.append((tuple(exp), as_fraction(c)))
        if nvars is None:
            if not parsed:
                raise InputError("cannot infer variable count of an empty term list")
            nvars = len(parsed[0][0])
        return cls(nvars, dict(_accumulate(parsed)))

    @classmethod
    def parse(cls, text: str, nvars: int, names: Sequence[str] | None = None) -> "MultiPoly":
        """Parse an arithmetic expression in ``X1..Xn`` (``^`` or ``**`` for powers)."""
        names = list(names or [f"X{i + 1}" for i in range(nvars)])
        env = {name: cls.var(i, nvars) for i, name in enumerate(names)}
        return _parse_expr(text, env, lambda c: cls.const(c, nvars))


def _accumulate(pairs):
    acc: dict = {}
    for e, c in pairs:
        acc[e] = acc.get(e, 0) + c
    return acc


def _parse_expr(text: str, env: dict, const):
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InputError(f"cannot parse polynomial {text!r}: {exc.msg}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise InputError(f"unknown variable {node.id!r} in {text!r}")
            return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise InputError("exponents must be nonnegative integer literals")
                return left ** node.right.value
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant():
                    raise InputError("division by a non-constant polynomial")
                return left / right.constant_term()
        raise InputError(f"unsupported syntax in polynomial {text!r}")

    return ev(tree)


def poly_eval(p: MultiPoly, x: Sequence) -> Fraction:
    """Exact value of ``p`` at the rational point ``x``."""
    if len(x) != p.nvars:
        raise InputError(f"point has {len(x)} coordinates, polynomial has {p.nvars} variables")
    xs = [as_fraction(v) if not isinstance(v, Fraction) else v for v in x]
    total = Fraction(0)
    for exp, c in p.terms.items():
        t = c
        for v, e in zip(xs, exp):
            if e:
                t *= v ** e
        total += t
    return total


def power_sum(i: int, n: int) -> MultiPoly:
    """``X_1^i + ... + X_n^i``."""
    if i < 1 or n < 1:
        raise InputError("power_sum needs i >= 1 and n >= 1")
    terms = {}
    for k in range(n):
        e = [0] * n
        e[k] = i
        terms[tuple(e)] = Fraction(1)
    return MultiPoly._raw(n, terms)


def elementary_symmetric(k: int, n: int) -> MultiPoly:
    if not 0 <= k <= n:
        raise InputError("elementary_symmetric needs 0 <= k <= n")
    terms = {}
    for idx in itertools.combinations(range(n), k):
        e = [0] * n
        for i in idx:
            e[i] = 1
        terms[tuple(e)] = Fraction(1)
    return MultiPoly._raw(n, terms)


def is_symmetric(f: MultiPoly) -> bool:
    """Invariance under the transposition (1 2) and the cycle (1 2 ... n)."""
    n = f.nvars
    if n == 1:
        return True
    swap = [1, 0] + list(range(2, n))
    cycle = [(i + 1) % n for i in range(n)]
    return f.permute(swap) == f and f.permute(cycle) == f


def _elementary_to_powersum(d: int) -> list[MultiPoly]:
    """``e_0..e_d`` written in ``Z_1..Z_d`` (``Z_i`` standing for ``p_i``)."""
    Z = [MultiPoly.var(i, d) for i in range(d)]
    e = [MultiPoly.const(1, d)]
    for k in range(1, d + 1):
        acc = MultiPoly.zero(d)
        for i in range(1, k + 1):
            term = e[k - i] * Z[i - 1]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / k)
    return e


def powersum_decompose(f: MultiPoly, d: int) -> MultiPoly:
    """Return ``g`` in ``d`` variables with ``f = g(p_1, ..., p_d)``.

    Leading-term reduction to elementary symmetric polynomials, then Newton's
    identities.  The result is checked by expanding ``g(p_1, ..., p_d)``.
    """
    n = f.nvars
    if not is_symmetric(f):
        raise InputError("powersum_decompose needs a symmetric polynomial")
    if d < 1 or d > n:
        raise InputError(f"need 1 <= d <= n, got d={d}, n={n}")
    if f.degree() > d:
        raise InputError(f"degree {f.degree()} exceeds d={d}")

    elem = {k: elementary_symmetric(k, n) for k in range(1, d + 1)}
    g_elem: dict[tuple[int, ...], Fraction] = {}
    rest = f
    while not rest.is_zero():
        lead = max(rest.terms)  # lex order
        c = rest.terms[lead]
        powers = [lead[k] - (lead[k + 1] if k + 1 < n else 0) for k in range(n)]
        if any(powers[k] for k in range(d, n)):
            raise InternalError("leading monomial needs e_k with k > d")
        key = tuple(powers[:d])
        g_elem[key] = g_elem.get(key, 0) + c
        sub = MultiPoly.const(c, n)
        for k in range(d):
            if powers[k]:
                sub = sub * elem[k + 1] ** powers[k]
        rest = rest - sub

    e_in_p = _elementary_to_powersum(d)
    g = MultiPoly(d, {(0,) * d: 0})
    for key, c in g_elem.items():
        term = MultiPoly.const(c, d)
        for k, e in enumerate(key):
            if e:
                term = term * e_in_p[k + 1] ** e
        g = g + term

    check = g.compose([power_sum(i, n) for i in range(1, d + 1)])
    if check != f:
        raise InternalError("power-sum recomposition does not reproduce the input")
    return g


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``T^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "UniPoly":
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def T(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def parse(cls, text: str, name: str = "T") -> "UniPoly":
        env = {name: cls.T()}
        return _parse_expr(text, env, cls.const)

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.to_text()!r})"

    def to_text(self, name: str = "T") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (name if k == 1 else f"{name}^{k}")
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def _co(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly.const(other)

    def __add__(self, other):
        other = self._co(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._co(other))

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly._raw([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return UniPoly._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = as_fraction(c)
        if c == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return UniPoly._raw([x / c for x in self.coeffs])

    def __pow__(self, k: int):
        result = UniPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, UniPoly) else UniPoly(())
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "UniPoly":
        p = self
        for _ in range(k):
            p = UniPoly._raw([c * i for i, c in enumerate(p.coeffs)][1:])
        return p

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        lb = other.lc()
        if len(r) - 1 < db:
            return UniPoly(()), self
        q = [Fraction(0)] * (len(r) - db)
        bc = other.coeffs
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for j in range(db + 1):
                    r[k + j] -= c * bc[j]
        return UniPoly._raw(q), UniPoly._raw(r[:db])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def primitive(self) -> "UniPoly":
        """Integer-coefficient multiple with content 1 and the same signs."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return UniPoly._raw([Fraction(v // g) for v in ints])

    def sign_at_inf(self, positive: bool = True) -> int:
        if self.is_zero():
            return 0
        s = 1 if self.lc() > 0 else -1
        if not positive and self.degree() % 2:
            s = -s
        return s

    def compose(self, other: "UniPoly") -> "UniPoly":
        return self(other)


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree() <= 0:
        return p
    g = uni_gcd(p, p.derivative())
    return (p // g).primitive()


def uni_inverse_mod(a: UniPoly, m: UniPoly) -> UniPoly:
    """``a^{-1} mod m``; requires ``gcd(a, m) = 1``."""
    r0, r1 = m, a % m
    s0, s1 = UniPoly(()), UniPoly.const(1)
    while not r1.is_zero():
        qt, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
    if r0.degree() != 0:
        raise InputError("polynomials are not coprime")
    return (s0 * (1 / r0.lc())) % m


def signed_subresultants(q: UniPoly, r: UniPoly) -> list[UniPoly]:
    """Signed remainder sequence of ``(q, r)`` up to positive scalings.

    Each entry is a positive multiple of the corresponding term of
    ``q, r, -rem(q, r), ...``, so the sign-variation counts at any point
    match the Sturm-Habicht sequence of the pair.  Intermediate terms are
    kept primitive to contain coefficient growth.
    """
    if q.is_zero():
        raise InputError("signed_subresultants needs a nonzero first polynomial")
    seq = [q.primitive()]
    if r.is_zero():
        return seq
    seq.append(r.primitive())
    while True:
        rem = seq[-2] % seq[-1]
        if rem.is_zero():
            return seq
        seq.append((-rem).primitive())


def sign_variations(values: Iterable) -> int:
    count = 0
    last = 0
    for v in values:
        s = (v > 0) - (v < 0)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def variations_at_infinity(seq: Sequence[UniPoly]) -> tuple[int, int]:
    """Sign variations of ``seq`` at ``-inf`` and ``+inf``."""
    return (
        sign_variations(p.sign_at_inf(False) for p in seq),
        sign_variations(p.sign_at_inf(True) for p in seq),
    )


def variations_at(seq: Sequence[UniPoly], x: Fraction) -> int:
    return sign_variations(p(x) for p in seq)


def dumps_poly(p: MultiPoly) -> str:
    return json.dumps(p.to_json())
