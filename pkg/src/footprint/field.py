"""Exact arithmetic in GF(p), GF(p^e) and the rationals.

Elements are carried around as raw values so that polynomial and matrix code
stays cheap:

* prime field: an ``int`` in ``[0, p)``;
* extension field: an ``int`` code ``c_0 + c_1 p + ... + c_{e-1} p^(e-1)``
  encoding the residue ``c_0 + c_1 x + ... + c_{e-1} x^(e-1)`` modulo the
  defining polynomial;
* rationals: a :class:`fractions.Fraction`.

:class:`FieldElem` wraps a raw value together with its :class:`FieldSpec` for
callers who prefer operator syntax.  The ``v*`` methods of a spec operate on
numpy arrays (``int64`` for finite fields, ``object`` for the rationals).
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DivisionByZero,
    InfiniteField,
    NonPrimeCharacteristic,
    ParseError,
    ReducibleModulus,
    SpecMismatch,
    UnsupportedDegree,
)

MAX_DEGREE = 8
# Extension fields keep log/exp tables of size q.
MAX_EXTENSION_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 729

# Moduli are given high-to-low, leading coefficient first.
DEFAULT_MODULI = {
    4: (2, 2, (1, 1, 1)),
    8: (2, 3, (1, 0, 1, 1)),
    9: (3, 2, (1, 0, 1)),
    16: (2, 4, (1, 0, 0, 1, 1)),
    25: (5, 2, (1, 1, 2)),
    27: (3, 3, (1, 0, 2, 1)),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_power(q: int):
    """Return (p, e) with q = p^e, or None."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            e = 0
            while q % p == 0:
                q //= p
                e += 1
            return (p, e) if q == 1 else None
    return None


# -- polynomials over GF(p), as low-to-high coefficient lists -----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a, b, p):
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def is_irreducible(coeffs_high_to_low, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= e/2."""
    f = list(reversed(coeffs_high_to_low))
    e = len(f) - 1
    if e < 1 or f[-1] % p == 0:
        return False
    for d in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_rem(f, g, p):
                return False
    return True


def first_irreducible(p: int, e: int):
    """Smallest monic irreducible of degree e, ordering by the code of its tail."""
    for code in range(p**e):
        tail = [(code // p**i) % p for i in range(e)]
        coeffs = (1,) + tuple(reversed(tail))
        if is_irreducible(coeffs, p):
            return coeffs
    raise ReducibleModulus(f"no irreducible polynomial of degree {e} over GF({p})")


# -- field specs ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """A field: ``kind`` is one of ``prime``, ``extension``, ``rational``."""

    kind: str
    p: int | None = None
    e: int = 1
    modulus: tuple | None = None
    _t: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None or self.modulus is not None:
                raise ValueError("rational field takes no characteristic")
            object.__setattr__(self, "e", 1)
            object.__setattr__(self, "_t", {})
            return
        if self.kind not in ("prime", "extension"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.p is None or not is_prime(self.p):
            raise NonPrimeCharacteristic(f"characteristic {self.p} is not prime")
        if self.kind == "prime":
            if self.e != 1 or self.modulus is not None:
                raise ValueError("prime field takes no modulus")
            object.__setattr__(self, "_t", {"q": self.p})
            return
        if self.e < 1:
            raise UnsupportedDegree(f"extension degree {self.e} < 1")
        if self.e > MAX_DEGREE:
            raise UnsupportedDegree(f"extension degree {self.e} > {MAX_DEGREE}")
        if self.p**self.e > MAX_EXTENSION_ORDER:
            raise UnsupportedDegree(f"GF({self.p}^{self.e}) is too large")
        mod = tuple(int(c) % self.p for c in self.modulus or ())
        if len(mod) != self.e + 1 or mod[0] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(mod, self.p):
            raise ReducibleModulus(f"{_render_modulus(mod)} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "_t", _extension_tables(self.p, self.e, mod))

    # -- basic properties --

    @property
    def is_finite(self) -> bool:
        return self.kind != "rational"

    @property
    def q(self) -> int:
        if not self.is_finite:
            raise InfiniteField("the rationals have no finite order")
        return self.p**self.e

    @property
    def zero(self):
        return Fraction(0) if self.kind == "rational" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "rational" else 1

    @property
    def dtype(self):
        if self.kind == "rational" or self.p >= 1 << 31:
            return object
        return np.int64

    def __str__(self):
        return render_field(self)

    # -- scalars --

    def normalize(self, v):
        """Validate ``v`` as a raw element and return its canonical form."""
        if self.kind == "rational":
            return Fraction(v)
        v = int(v)
        if self.kind == "prime":
            return v % self.p
        if not 0 <= v < self.q:
            raise ValueError(f"code {v} outside GF({self.q})")
        return v

    def from_int(self, n: int):
        """Image of the integer n under Z -> F."""
        if self.kind == "rational":
            return Fraction(n)
        return int(n) % self.p

    def add(self, a, b):
        if self.kind == "extension":
            if self.p == 2:
                return a ^ b
            return self._t["add"](a, b)
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def neg(self, a):
        if self.kind == "extension":
            return self._t["neg"](a)
        if self.kind == "prime":
            return -a % self.p
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "extension":
            if a == 0 or b == 0:
                return 0
            t = self._t
            return t["exp"][(t["log"][a] + t["log"][b]) % (t["q"] - 1)]
        if self.kind == "prime":
            return a * b % self.p
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.kind == "extension":
            t = self._t
            return t["exp"][(-t["log"][a]) % (t["q"] - 1)]
        if self.kind == "prime":
            return pow(int(a), self.p - 2, self.p)
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.kind == "extension":
            if a == 0:
                return 1 if n == 0 else 0
            t = self._t
            return t["exp"][(t["log"][a] * n) % (t["q"] - 1)]
        if self.kind == "prime":
            return pow(int(a), n, self.p)
        return a**n

    def elements(self):
        """All elements, 0 first and 1 second."""
        if not self.is_finite:
            raise InfiniteField("cannot enumerate the rationals")
        return list(range(self.q))

    def elem(self, v) -> FieldElem:
        return FieldElem(self, self.normalize(v))

    def parse(self, text):
        return parse_element(self, text)

    def render(self, v) -> str:
        return render_element(self, v)

    # -- numpy arrays --

    def array(self, values):
        if self.kind == "rational":
            a = np.empty(np.shape(values), dtype=object)
            a[...] = values
            if a.ndim == 0:
                return a
            for idx in np.ndindex(a.shape):
                a[idx] = Fraction(a[idx])
            return a
        return np.asarray(values, dtype=self.dtype)

    def zeros(self, shape):
        if self.kind == "rational":
            a = np.empty(shape, dtype=object)
            a.fill(Fraction(0))
            return a
        return np.zeros(shape, dtype=self.dtype)

    def vadd(self, a, b):
        if self.kind == "extension":
            if self.p == 2:
                return np.bitwise_xor(a, b)
            if "addtab" in self._t:
                return self._t["addtab"][a, b]
            return self._t["add"](np.asarray(a), np.asarray(b))
        if self.kind == "prime":
            return (a + b) % self.p
        return a + b

    def vneg(self, a):
        if self.kind == "extension":
            if self.p == 2:
                return a
            return self._t["neg"](np.asarray(a))
        if self.kind == "prime":
            return (-a) % self.p
        return -a

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        if self.kind == "extension":
            t = self._t
            a = np.asarray(a)
            b = np.asarray(b)
            r = t["exp_arr"][(t["log_arr"][a] + t["log_arr"][b]) % (t["q"] - 1)]
            return np.where((a == 0) | (b == 0), 0, r)
        if self.kind == "prime":
            return (a * b) % self.p
        return a * b

    def vinv(self, a):
        if self.kind == "extension":
            t = self._t
            a = np.asarray(a)
            if np.any(a == 0):
                raise DivisionByZero("inverse of zero")
            return t["exp_arr"][(-t["log_arr"][a]) % (t["q"] - 1)]
        if self.kind == "prime":
            if np.any(a == 0):
                raise DivisionByZero("inverse of zero")
            return np.asarray([pow(int(x), self.p - 2, self.p) for x in np.ravel(a)],
                              dtype=self.dtype).reshape(np.shape(a))
        return Fraction(1) / a


def _digit_ops(p, e):
    powers = [p**i for i in range(e)]

    def add(a, b):
        r = 0
        for w in powers:
            r = r + ((a // w + b // w) % p) * w
        return r

    def neg(a):
        r = 0
        for w in powers:
            r = r + ((-(a // w)) % p) * w
        return r

    return add, neg


def _mulmod_code(a, b, p, e, low_mod):
    """Multiply two codes as polynomials modulo the monic modulus."""
    da = [(a // p**i) % p for i in range(e)]
    db = [(b // p**i) % p for i in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    for k in range(2 * e - 2, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(e):
                prod[k - e + i] = (prod[k - e + i] - c * low_mod[i]) % p
    return sum(c * p**i for i, c in enumerate(prod[:e]))


def _extension_tables(p, e, modulus):
    q = p**e
    low_mod = list(reversed(modulus))
    add, neg = _digit_ops(p, e)
    t = {"q": q, "add": add, "neg": neg}
    if q == 2 or q == p:
        gens = range(1, q)
    else:
        gens = range(2, q)
    for g in gens:
        exp = [1]
        x = g
        while x != 1 and len(exp) < q:
            exp.append(x)
            x = _mulmod_code(x, g, p, e, low_mod)
        if len(exp) == q - 1 and x == 1:
            break
    else:
        raise ReducibleModulus("no primitive element found")
    log = [0] * q
    for i, x in enumerate(exp):
        log[x] = i
    t["exp"] = exp
    t["log"] = log
    t["exp_arr"] = np.asarray(exp, dtype=np.int64)
    t["log_arr"] = np.asarray(log, dtype=np.int64)
    if p != 2 and q <= _ADD_TABLE_LIMIT:
        r = np.arange(q, dtype=np.int64)
        t["addtab"] = add(r[:, None], r[None, :])
    return t


@functools.lru_cache(maxsize=None)
def field_make(kind: str, p: int | None = None, e: int = 1, modulus=None) -> FieldSpec:
    """Validated, cached field constructor.

    For ``extension`` without a modulus the built-in default is used when one
    exists, else the first irreducible polynomial found by search.
    """
    if kind == "extension" and modulus is None:
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if e > MAX_DEGREE:
            raise UnsupportedDegree(f"extension degree {e} > {MAX_DEGREE}")
        q = p**e
        if q in DEFAULT_MODULI:
            modulus = DEFAULT_MODULI[q][2]
        elif e == 1:
            modulus = (1, 0)
        else:
            modulus = first_irreducible(p, e)
    if modulus is not None:
        modulus = tuple(modulus)
    return FieldSpec(kind, p, e, modulus)


def GF(q: int, modulus=None) -> FieldSpec:
    """Shorthand: ``GF(5)`` is a prime field, ``GF(8)`` an extension field."""
    pe = _prime_power(q)
    if pe is None:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p, e = pe
    if e == 1 and modulus is None:
        return field_make("prime", p)
    return field_make("extension", p, e, modulus)


RATIONAL = FieldSpec("rational")


# -- text forms ---------------------------------------------------------------

def _render_modulus(mod):
    e = len(mod) - 1
    terms = []
    for i, c in enumerate(mod):
        k = e - i
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


def render_field(spec: FieldSpec) -> str:
    if spec.kind == "rational":
        return "rational"
    if spec.kind == "prime":
        return f"gf({spec.p})"
    if spec.modulus == GF(spec.q).modulus:
        return f"gf({spec.p}^{spec.e})"
    return f"gf({spec.p}^{spec.e}):" + ",".join(str(c) for c in spec.modulus)


_FIELD_RE = re.compile(r"^gf\((\d+)(?:\^(\d+))?\)(?::([\d,\s]+))?$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``gf(p)``, ``gf(q)``, ``gf(p^e)``, ``gf(p^e):c_e,...,c_0`` or ``rational``."""
    s = text.strip().lower().replace(" ", "")
    if s in ("rational", "q", "qq"):
        return RATIONAL
    m = _FIELD_RE.match(s)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    base, exp, mod = m.groups()
    base = int(base)
    if exp is None and mod is None:
        return GF(base)
    if exp is None:
        pe = _prime_power(base)
        if pe is None:
            raise NonPrimeCharacteristic(f"{base} is not a prime power")
        p, e = pe
    else:
        p, e = base, int(exp)
    modulus = tuple(int(c) for c in mod.split(",")) if mod else None
    return field_make("extension", p, e, modulus)


def render_element(spec: FieldSpec, v) -> str:
    if spec.kind == "rational":
        return str(Fraction(v))
    if spec.kind == "prime":
        return str(int(v))
    digits = [(int(v) // spec.p**i) % spec.p for i in range(spec.e)]
    terms = []
    for k in range(spec.e - 1, -1, -1):
        c = digits[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


_TERM_RE = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_element(spec: FieldSpec, text):
    """Parse an element; integers map through Z -> F."""
    if isinstance(text, bool):
        raise ParseError("booleans are not field elements")
    if isinstance(text, int):
        return spec.from_int(text)
    if isinstance(text, Fraction):
        if spec.kind == "rational":
            return text
        return spec.div(spec.from_int(text.numerator), spec.from_int(text.denominator))
    s = str(text).strip().replace(" ", "")
    if spec.kind == "rational":
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc
    if spec.kind == "prime":
        if re.fullmatch(r"-?\d+", s):
            return spec.from_int(int(s))
        if re.fullmatch(r"-?\d+/\d+", s):
            n, d = s.split("/")
            return spec.div(spec.from_int(int(n)), spec.from_int(int(d)))
        raise ParseError(f"bad element {text!r} of {render_field(spec)}")
    if not s:
        raise ParseError("empty element")
    # code of the generator x; with a degree-1 modulus x + c it is -c
    x = spec.p if spec.e > 1 else spec.neg(spec.modulus[1])
    acc = 0
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM_RE.match(body)
        if not m or (not m.group(1) and not m.group(2)):
            raise ParseError(f"bad element {text!r} of {render_field(spec)}")
        coef = int(m.group(1)) if m.group(1) else 1
        k = 0 if not m.group(2) else int(m.group(3) or 1)
        term = spec.mul(spec.from_int(coef), spec.pow(x, k))
        acc = spec.sub(acc, term) if sign == "-" else spec.add(acc, term)
    return acc


# -- element wrapper ------------------------------------------------------------

@dataclass(frozen=True)
class FieldElem:
    """An element bound to its field; supports ``+ - * / **`` and ``==``."""

    spec: FieldSpec
    value: object

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return parse_element(self.spec, other)
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.spec, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.spec.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, n):
        return self._wrap(self.spec.pow(self.value, n))

    def inv(self):
        return self._wrap(self.spec.inv(self.value))

    def __bool__(self):
        return self.value != 0

    @property
    def coeffs(self):
        """Low-to-high coefficients over the prime field (extension fields)."""
        if self.spec.kind != "extension":
            return (self.value,)
        p = self.spec.p
        return tuple((self.value // p**i) % p for i in range(self.spec.e))

    def __str__(self):
        return render_element(self.spec, self.value)


def field_enumerate(spec: FieldSpec) -> list[FieldElem]:
    return [FieldElem(spec, v) for v in spec.elements()]
