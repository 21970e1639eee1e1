"""円分体 Q(ζ_n) の厳密演算と証明付き複素区間

係数は Φ_n を法とした冪基底で保持する。異なる導手の演算は lcm へ持ち上げる。
区間演算は mpmath の中点・半径表現で行い、丸め誤差を外向きに積み増す。
"""
import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
from sympy import QQ, Poly, Symbol, cyclotomic_poly, divisors, totient
from sympy import Rational as SymRational
from sympy.polys.matrices import DomainMatrix

from .errors import DivisionByZero, GroupMismatch, NotCoprime, NotReal, PrecisionInsufficient

Rational = Fraction
Scalar = Union[int, Fraction, "CyclotomicNumber"]

_X = Symbol("x")
_PRECISION_BITS = 53


def set_working_precision(bits: int) -> None:
    """作業精度を設定（起動時に一度だけ呼ぶ）"""
    global _PRECISION_BITS
    if bits < 24:
        raise ValueError(f"精度が小さすぎます: {bits}")
    _PRECISION_BITS = int(bits)
    mpmath.mp.prec = _PRECISION_BITS


def working_precision() -> int:
    return _PRECISION_BITS


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _modulus(n: int) -> Poly:
    return Poly(cyclotomic_poly(n, _X), _X, domain=QQ)


@lru_cache(maxsize=None)
def cyclotomic_degree(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def units_mod(n: int) -> Tuple[int, ...]:
    if n == 1:
        return (1,)
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


def _poly(coeffs: Sequence[Fraction]) -> Poly:
    rep = [SymRational(c.numerator, c.denominator) for c in reversed(coeffs)]
    return Poly(rep or [0], _X, domain=QQ)


def _unpoly(poly: Poly, degree: int) -> Tuple[Fraction, ...]:
    coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
    coeffs = coeffs[:degree]
    return tuple(coeffs + [Fraction(0)] * (degree - len(coeffs)))


def _reduce(coeffs: Sequence[Fraction], n: int) -> Tuple[Fraction, ...]:
    degree = cyclotomic_degree(n)
    coeffs = [Fraction(c) for c in coeffs]
    if len(coeffs) <= degree:
        return tuple(coeffs + [Fraction(0)] * (degree - len(coeffs)))
    return _unpoly(_poly(coeffs).rem(_modulus(n)), degree)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"有理数に変換できません: {value!r}")


@dataclass(frozen=True)
class CyclotomicNumber:
    """Q(ζ_n) の元 Σ coeffs[i]·ζ_n^i（Φ_n で簡約済み）"""
    n: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"導手は正の整数である必要があります: {self.n}")
        if len(self.coeffs) != cyclotomic_degree(self.n):
            raise ValueError(
                f"係数の長さ {len(self.coeffs)} が φ({self.n}) = {cyclotomic_degree(self.n)} と一致しません"
            )
        object.__setattr__(self, "coeffs", tuple(_as_fraction(c) for c in self.coeffs))

    # 生成

    @classmethod
    def from_rational(cls, value: Union[int, Fraction], n: int = 1) -> "CyclotomicNumber":
        degree = cyclotomic_degree(n)
        return cls(n, (_as_fraction(value),) + (Fraction(0),) * (degree - 1))

    @classmethod
    def from_coefficients(cls, n: int, coeffs: Iterable) -> "CyclotomicNumber":
        """任意長の係数列（ζ_n の冪）から簡約して生成"""
        return cls(n, _reduce([_as_fraction(c) for c in coeffs], n))

    @classmethod
    def from_exponents(cls, n: int, terms: Dict[int, Union[int, Fraction]]) -> "CyclotomicNumber":
        """{指数: 係数} から Σ c·ζ_n^e を生成"""
        dense = [Fraction(0)] * n
        for exponent, coeff in terms.items():
            dense[exponent % n] += _as_fraction(coeff)
        return cls.from_coefficients(n, dense)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CyclotomicNumber":
        return cls.from_exponents(n, {k: 1})

    @classmethod
    def zero(cls, n: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(0, n)

    @classmethod
    def one(cls, n: int = 1) -> "CyclotomicNumber":
        return cls.from_rational(1, n)

    # 判定

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"有理数ではありません: {self}")
        return self.coeffs[0]

    def is_algebraic_integer_in_power_basis(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_root_of_unity(self) -> bool:
        """±ζ_n^k の形かどうか"""
        m = self.n if self.n % 2 == 0 else 2 * self.n
        return any(self == CyclotomicNumber.zeta(m, k) for k in range(m))

    # 導手の持ち上げ

    def lift(self, m: int) -> "CyclotomicNumber":
        """Q(ζ_m) ⊇ Q(ζ_n) へ持ち上げる（n | m）"""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError(f"{self.n} は {m} を割り切りません")
        step = m // self.n
        dense = [Fraction(0)] * (step * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            dense[i * step] = c
        return CyclotomicNumber.from_coefficients(m, dense)

    def _align(self, other: Scalar) -> Tuple["CyclotomicNumber", "CyclotomicNumber"]:
        other = coerce(other)
        if other.n == self.n:
            return self, other
        m = lcm(self.n, other.n)
        return self.lift(m), other.lift(m)

    # 体演算

    def __add__(self, other: Scalar) -> "CyclotomicNumber":
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other: Scalar) -> "CyclotomicNumber":
        try:
            return self + (-coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other: Scalar) -> "CyclotomicNumber":
        return coerce(other) - self

    def __mul__(self, other: Scalar) -> "CyclotomicNumber":
        if isinstance(other, (int, Fraction)):
            scale = _as_fraction(other)
            return CyclotomicNumber(self.n, tuple(c * scale for c in self.coeffs))
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        if b.is_rational:
            return a * b.coeffs[0]
        if a.is_rational:
            return b * a.coeffs[0]
        product = (_poly(a.coeffs) * _poly(b.coeffs)).rem(_modulus(a.n))
        return CyclotomicNumber(a.n, _unpoly(product, len(a.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero:
            raise DivisionByZero("0 の逆元は存在しません")
        if self.is_rational:
            return CyclotomicNumber.from_rational(1 / self.coeffs[0], self.n)
        inv = _poly(self.coeffs).invert(_modulus(self.n))
        return CyclotomicNumber(self.n, _unpoly(inv, len(self.coeffs)))

    def __truediv__(self, other: Scalar) -> "CyclotomicNumber":
        try:
            other = coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Scalar) -> "CyclotomicNumber":
        return coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "CyclotomicNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicNumber.one(self.n)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        try:
            a, b = self._align(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.coeffs[0])
        reduced = self.minimal()
        return hash((reduced.n, reduced.coeffs))

    def minimal(self) -> "CyclotomicNumber":
        """同じ数を最小の導手で表す"""
        if self.is_rational:
            return CyclotomicNumber.from_rational(self.coeffs[0])
        for m in divisors(self.n):
            if m == self.n:
                break
            fixing = [k for k in units_mod(self.n) if (k - 1) % m == 0]
            if all(galois_apply(GaloisElement(self.n, k), self) == self for k in fixing):
                return _descend(self, m)
        return self

    def __complex__(self) -> complex:
        """浮動小数点による近似値（証明なし）"""
        return sum(
            (complex(c) * cmath.exp(2j * cmath.pi * i / self.n) for i, c in enumerate(self.coeffs) if c),
            0j,
        )

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f"{c}·ζ{self.n}^{i}")
        return " + ".join(terms) if terms else "0"


def _descend(a: CyclotomicNumber, m: int) -> CyclotomicNumber:
    """Q(ζ_m) に含まれる a を ζ_m の冪基底で書き直す"""
    degree = cyclotomic_degree(m)
    columns = [CyclotomicNumber.zeta(m, j).lift(a.n).coeffs for j in range(degree)]
    rows = [[columns[j][i] for j in range(degree)] + [a.coeffs[i]] for i in range(len(a.coeffs))]
    augmented = DomainMatrix(
        [[QQ(c.numerator, c.denominator) for c in row] for row in rows],
        (len(rows), degree + 1),
        QQ,
    )
    reduced, _ = augmented.rref()
    solution = reduced.to_list()
    return CyclotomicNumber(m, tuple(Fraction(int(solution[j][-1].numerator), int(solution[j][-1].denominator)) for j in range(degree)))


def coerce(value: Scalar) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    if isinstance(value, (int, Fraction)):
        return CyclotomicNumber.from_rational(value)
    raise TypeError(f"円分数に変換できません: {value!r}")


@dataclass(frozen=True)
class GaloisElement:
    """ζ_n ↦ ζ_n^k"""
    n: int
    k: int

    def __post_init__(self):
        if gcd(self.k, self.n) != 1:
            raise NotCoprime(f"k={self.k} は n={self.n} と互いに素ではありません")
        object.__setattr__(self, "k", self.k % self.n if self.n > 1 else 1)

    def compose(self, other: "GaloisElement") -> "GaloisElement":
        n = lcm(self.n, other.n)
        return GaloisElement(n, self.k * other.k)

    def apply(self, a: Scalar) -> CyclotomicNumber:
        return galois_apply(self, a)


def galois_group(n: int) -> List[GaloisElement]:
    return [GaloisElement(n, k) for k in units_mod(n)]


def complex_conjugation(n: int) -> GaloisElement:
    return GaloisElement(n, n - 1 if n > 2 else 1)


def galois_apply(omega: GaloisElement, a: Scalar) -> CyclotomicNumber:
    """ζ_m ↦ ζ_m^k を a に作用させる（m は a の導手）

    Raises:
        GroupMismatch: a が Q(ζ_n)（n = omega.n）に含まれない
    """
    a = coerce(a)
    if omega.n % a.n:
        a = a.minimal()
        if omega.n % a.n:
            raise GroupMismatch(f"{a} は Q(ζ_{omega.n}) に含まれません")
    m = a.n
    if gcd(omega.k, m) != 1:
        raise NotCoprime(f"k={omega.k} は導手 {m} と互いに素ではありません")
    if m == 1 or a.is_rational:
        return a
    dense = [Fraction(0)] * m
    for i, c in enumerate(a.coeffs):
        if c:
            dense[(i * omega.k) % m] += c
    return CyclotomicNumber.from_coefficients(m, dense)


def conjugate(a: Scalar) -> CyclotomicNumber:
    a = coerce(a)
    return galois_apply(complex_conjugation(a.n), a)


def norm_to_Q(a: Scalar) -> Fraction:
    """全ての Galois 共役の積"""
    a = coerce(a)
    product = CyclotomicNumber.one(a.n)
    for omega in galois_group(a.n):
        product = product * galois_apply(omega, a)
    return product.to_rational()


# 証明付き区間演算


def _eps() -> mpmath.mpf:
    return mpmath.ldexp(mpmath.mpf(1), 1 - mpmath.mp.prec)


def _round_up(rad: mpmath.mpf, mid: mpmath.mpf) -> mpmath.mpf:
    eps = _eps()
    return rad * (1 + 4 * eps) + abs(mid) * eps + mpmath.ldexp(mpmath.mpf(1), -1074)


@dataclass(frozen=True)
class Ball:
    """実数の中点・半径区間"""
    mid: mpmath.mpf
    rad: mpmath.mpf

    def __post_init__(self):
        if self.rad < 0:
            raise ValueError("半径は非負である必要があります")

    @classmethod
    def exact(cls, value: Union[int, Fraction]) -> "Ball":
        value = _as_fraction(value)
        mid = mpmath.mpf(value.numerator) / value.denominator
        return cls(mid, abs(mid) * _eps())

    @classmethod
    def from_float(cls, value: float, radius: float = 0.0) -> "Ball":
        return cls(mpmath.mpf(value), mpmath.mpf(abs(radius)))

    @property
    def lower(self) -> mpmath.mpf:
        return self.mid - self.rad

    @property
    def upper(self) -> mpmath.mpf:
        return self.mid + self.rad

    def contains(self, value) -> bool:
        return abs(mpmath.mpf(value) - self.mid) <= self.rad

    def excludes_zero(self) -> bool:
        return abs(self.mid) > self.rad

    def __add__(self, other: "Ball") -> "Ball":
        mid = self.mid + other.mid
        return Ball(mid, _round_up(self.rad + other.rad, mid))

    def __sub__(self, other: "Ball") -> "Ball":
        mid = self.mid - other.mid
        return Ball(mid, _round_up(self.rad + other.rad, mid))

    def __neg__(self) -> "Ball":
        return Ball(-self.mid, self.rad)

    def __mul__(self, other: "Ball") -> "Ball":
        mid = self.mid * other.mid
        rad = abs(self.mid) * other.rad + abs(other.mid) * self.rad + self.rad * other.rad
        return Ball(mid, _round_up(rad, mid))

    def __truediv__(self, other: "Ball") -> "Ball":
        if not other.excludes_zero():
            raise PrecisionInsufficient("0 を含む区間で割ろうとしました", 2 * working_precision())
        mid = self.mid / other.mid
        rad = (self.rad + abs(mid) * other.rad) / (abs(other.mid) - other.rad)
        return Ball(mid, _round_up(rad, mid))

    def sqrt(self) -> "Ball":
        lo = max(self.lower, mpmath.mpf(0))
        hi = self.upper
        if hi < 0:
            raise ValueError("負の区間の平方根")
        lo_root, hi_root = mpmath.sqrt(lo), mpmath.sqrt(hi)
        mid = (lo_root + hi_root) / 2
        return Ball(mid, _round_up((hi_root - lo_root) / 2, mid))

    def __float__(self) -> float:
        return float(self.mid)


@dataclass(frozen=True)
class ComplexInterval:
    """実部・虚部それぞれの中点・半径区間"""
    real: Ball
    imag: Ball

    @classmethod
    def exact(cls, value: Union[int, Fraction]) -> "ComplexInterval":
        return cls(Ball.exact(value), Ball.exact(0))

    @classmethod
    def from_complex(cls, value: complex, radius: float = 0.0) -> "ComplexInterval":
        value = complex(value)
        return cls(Ball.from_float(value.real, radius), Ball.from_float(value.imag, radius))

    @property
    def midpoint(self) -> complex:
        return complex(float(self.real.mid), float(self.imag.mid))

    @property
    def radius(self) -> float:
        return float(max(self.real.rad, self.imag.rad))

    def contains(self, value: complex) -> bool:
        value = complex(value)
        return self.real.contains(value.real) and self.imag.contains(value.imag)

    def contains_zero(self) -> bool:
        return self.real.contains(0) and self.imag.contains(0)

    def overlaps(self, other: "ComplexInterval") -> bool:
        return (self - other).contains_zero()

    def __add__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(self.real - other.real, self.imag - other.imag)

    def __neg__(self) -> "ComplexInterval":
        return ComplexInterval(-self.real, -self.imag)

    def __mul__(self, other: "ComplexInterval") -> "ComplexInterval":
        return ComplexInterval(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def scale(self, value: Union[int, Fraction]) -> "ComplexInterval":
        factor = Ball.exact(value)
        return ComplexInterval(self.real * factor, self.imag * factor)

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.real, -self.imag)

    def abs_squared(self) -> Ball:
        return self.real * self.real + self.imag * self.imag

    def abs(self) -> Ball:
        return self.abs_squared().sqrt()

    def inverse(self) -> "ComplexInterval":
        denominator = self.abs_squared()
        return ComplexInterval(self.real / denominator, -self.imag / denominator)


def _unit_root(n: int, j: int) -> ComplexInterval:
    j %= n
    if j == 0:
        return ComplexInterval.exact(1)
    angle = 2 * mpmath.pi * j / n
    err = mpmath.ldexp(mpmath.mpf(1), 3 - mpmath.mp.prec)
    return ComplexInterval(Ball(mpmath.cos(angle), err), Ball(mpmath.sin(angle), err))


def embed(a: Scalar, omega: Optional[GaloisElement] = None) -> ComplexInterval:
    """ζ_n ↦ exp(2πik/n) による像を包む区間"""
    a = coerce(a)
    k = 1 if omega is None else omega.k
    if gcd(k, a.n) != 1:
        raise NotCoprime(f"k={k} は導手 {a.n} と互いに素ではありません")
    total = ComplexInterval.exact(0)
    for i, c in enumerate(a.coeffs):
        if c:
            total = total + _unit_root(a.n, i * k).scale(c)
    return total


def certified_sign(x: ComplexInterval) -> int:
    """実数と宣言された区間の符号"""
    if not x.imag.contains(0):
        raise NotReal(f"虚部が 0 を含みません: {x.midpoint}")
    if x.real.lower > 0:
        return 1
    if x.real.upper < 0:
        return -1
    raise PrecisionInsufficient(
        f"区間が 0 をまたいでいます: 中点 {float(x.real.mid)}, 半径 {float(x.real.rad)}",
        2 * working_precision(),
    )


# 円分体上の小さな行列

CycloMatrix = Tuple[Tuple[CyclotomicNumber, ...], ...]


def matrix_identity(size: int, n: int = 1) -> CycloMatrix:
    one, zero = CyclotomicNumber.one(n), CyclotomicNumber.zero(n)
    return tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))


def matrix_multiply(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    inner = len(b)
    columns = len(b[0]) if b else 0
    return tuple(
        tuple(sum((row[t] * b[t][j] for t in range(inner)), CyclotomicNumber.zero()) for j in range(columns))
        for row in a
    )


def matrix_add(a: CycloMatrix, b: CycloMatrix) -> CycloMatrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def matrix_scale(a: CycloMatrix, c: Scalar) -> CycloMatrix:
    return tuple(tuple(x * c for x in row) for row in a)


def matrix_trace(a: CycloMatrix) -> CyclotomicNumber:
    return sum((a[i][i] for i in range(len(a))), CyclotomicNumber.zero())


def matrix_determinant(a: CycloMatrix) -> CyclotomicNumber:
    """ガウスの消去法による行列式"""
    rows = [list(row) for row in a]
    size = len(rows)
    det = CyclotomicNumber.one()
    for col in range(size):
        pivot = next((r for r in range(col, size) if not rows[r][col].is_zero), None)
        if pivot is None:
            return CyclotomicNumber.zero()
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        head = rows[col][col]
        det = det * head
        head_inv = head.inverse()
        for r in range(col + 1, size):
            if rows[r][col].is_zero:
                continue
            factor = rows[r][col] * head_inv
            rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det
