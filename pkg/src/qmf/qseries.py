"""
Séries q truncadas com coeficientes racionais exatos.

Uma ``QSeries`` guarda os coeficientes c_0, …, c_{N−1} de Σ c_n q^n e a
precisão N (número de coeficientes conhecidos). O resultado de qualquer
operação tem a precisão mínima dos operandos.

A igualdade ``==`` exige mesma precisão e mesmos coeficientes; para comparar
séries de precisões diferentes na parte comum use ``agrees_with``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from qmf.exactnum import reduce_rational_mod
from qmf.exceptions import ValidationError


@dataclass(frozen=True)
class QSeries:
    """Série formal truncada Σ_{n<N} c_n q^n.

    Atributos:
        coeffs: Coeficientes exatos, índice n = 0…N−1.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) < 1:
            raise ValidationError("Uma QSeries precisa de precisão ≥ 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @classmethod
    def constant(cls, c: Fraction | int, N: int) -> QSeries:
        return cls((Fraction(c),) + (Fraction(0),) * (N - 1))

    @classmethod
    def monomial(cls, n: int, N: int, c: Fraction | int = 1) -> QSeries:
        """c·q^n truncado em N."""
        coeffs = [Fraction(0)] * N
        if n < N:
            coeffs[n] = Fraction(c)
        return cls(tuple(coeffs))

    def __getitem__(self, n: int) -> Fraction:
        if not 0 <= n < self.precision:
            raise IndexError(f"Coeficiente q^{n} fora da precisão {self.precision}")
        return self.coeffs[n]

    def truncate(self, N: int) -> QSeries:
        if N > self.precision:
            raise ValidationError(f"Não é possível estender a precisão de {self.precision} para {N}")
        return QSeries(self.coeffs[:N])

    def agrees_with(self, outra: QSeries) -> bool:
        """Compara apenas os coeficientes na precisão comum."""
        N = min(self.precision, outra.precision)
        return self.coeffs[:N] == outra.coeffs[:N]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def reduce_mod(self, p: int, m: int) -> tuple[int, ...]:
        """Coeficientes reduzidos em ℤ/p^mℤ."""
        return tuple(reduce_rational_mod(c, p, m) for c in self.coeffs)

    def __add__(self, outra: QSeries) -> QSeries:
        return series_add(self, outra)

    def __sub__(self, outra: QSeries) -> QSeries:
        return series_add(self, series_scale(outra, -1))

    def __neg__(self) -> QSeries:
        return series_scale(self, -1)

    def __mul__(self, outra) -> QSeries:
        if isinstance(outra, (int, Fraction)):
            return series_scale(self, outra)
        return series_mul(self, outra)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QSeries:
        if e < 0:
            raise ValidationError("Potência negativa de série não suportada")
        result = QSeries.constant(1, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __str__(self) -> str:
        return format_series(self)


def series_add(f: QSeries, g: QSeries) -> QSeries:
    N = min(f.precision, g.precision)
    return QSeries(tuple(a + b for a, b in zip(f.coeffs[:N], g.coeffs[:N])))


def series_scale(f: QSeries, r: Fraction | int) -> QSeries:
    r = Fraction(r)
    return QSeries(tuple(c * r for c in f.coeffs))


def series_mul(f: QSeries, g: QSeries) -> QSeries:
    """Produto de Cauchy truncado na precisão mínima."""
    N = min(f.precision, g.precision)
    result = [Fraction(0)] * N
    gs = g.coeffs
    for i, a in enumerate(f.coeffs[:N]):
        if not a:
            continue
        for j in range(N - i):
            b = gs[j]
            if b:
                result[i + j] += a * b
    return QSeries(tuple(result))


def d_series(f: QSeries) -> QSeries:
    """D = q d/dq: o coeficiente n passa a n·c_n."""
    return QSeries(tuple(n * c for n, c in enumerate(f.coeffs)))


@functools.lru_cache(maxsize=None)
def _bernoulli_ate(k: int) -> tuple[Fraction, ...]:
    """B_0…B_k pela recorrência Σ_{j=0}^{m} C(m+1, j) B_j = 0 (B_1 = −1/2)."""
    bs = [Fraction(1)]
    for m in range(1, k + 1):
        soma = sum((comb(m + 1, j) * bs[j] for j in range(m)), Fraction(0))
        bs.append(-soma / (m + 1))
    return tuple(bs)


def bernoulli(k: int) -> Fraction:
    """Número de Bernoulli B_k exato, k par ≥ 2.

    Examples:
        >>> bernoulli(12)
        Fraction(-691, 2730)
    """
    if k < 2 or k % 2:
        raise ValidationError(f"bernoulli exige k par ≥ 2: {k}")
    return _bernoulli_ate(k)[k]


def sigma(j: int, n: int) -> int:
    """σ_j(n) = Σ_{d | n} d^j."""
    if n < 1:
        raise ValidationError(f"sigma exige n ≥ 1: {n}")
    total = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            total += d ** j
            outro = n // d
            if outro != d:
                total += outro ** j
    return total


def _validar_precisao(N: int) -> None:
    if N < 1:
        raise ValidationError(f"Precisão deve ser ≥ 1: {N}")


def theta_series(N: int) -> QSeries:
    """Θ = Σ_{n∈ℤ} q^{n²} até q^{N−1}."""
    _validar_precisao(N)
    coeffs = [Fraction(0)] * N
    coeffs[0] = Fraction(1)
    n = 1
    while n * n < N:
        coeffs[n * n] = Fraction(2)
        n += 1
    return QSeries(tuple(coeffs))


def f2_series(N: int) -> QSeries:
    """F₂ = Σ_{n ímpar} σ₁(n) q^n até q^{N−1}."""
    _validar_precisao(N)
    return QSeries(tuple(Fraction(sigma(1, n)) if n % 2 else Fraction(0) for n in range(N)))


def eisenstein_series(k: int, N: int) -> QSeries:
    """E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) q^n, k par ≥ 2."""
    if Fraction(k).denominator != 1 or k < 2 or int(k) % 2:
        raise ValidationError(f"eisenstein_series exige peso k par ≥ 2: {k}")
    k = int(k)
    _validar_precisao(N)
    fator = -Fraction(2 * k) / bernoulli(k)
    coeffs = [Fraction(1)] + [fator * sigma(k - 1, n) for n in range(1, N)]
    return QSeries(tuple(coeffs))


def format_series(f: QSeries) -> str:
    """Formato legível: "1 + 2q + 2q^4"; racionais aparecem entre parênteses."""
    partes: list[str] = []
    for n, c in enumerate(f.coeffs):
        if not c:
            continue
        sinal = "-" if c < 0 else "+"
        a = abs(c)
        if a.denominator != 1:
            coef = f"({a.numerator}/{a.denominator})"
        elif a == 1 and n > 0:
            coef = ""
        else:
            coef = str(a.numerator)
        var = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
        termo = coef + var
        if not partes:
            partes.append(termo if sinal == "+" else f"-{termo}")
        else:
            partes.append(f"{sinal} {termo}")
    return " ".join(partes) if partes else "0"


def _serie_gerador(nome: str, N: int) -> QSeries:
    if nome == "theta":
        return theta_series(N)
    if nome == "f2":
        return f2_series(N)
    if nome == "e2":
        return eisenstein_series(2, N)
    if nome.startswith("eisenstein:"):
        return eisenstein_series(int(nome.split(":", 1)[1]), N)
    raise ValidationError(f"Gerador desconhecido: '{nome}'")


def form_series(fatores: dict[str, int], N: int) -> QSeries:
    """Série q de um produto de geradores ({gerador: expoente}, ver ``expand_forma``)."""
    _validar_precisao(N)
    result = QSeries.constant(1, N)
    for nome, e in fatores.items():
        result = result * _serie_gerador(nome, N) ** e
    return result
