"""
Tipos numéricos exatos.

- ``Rational``: racionais de precisão arbitrária (``fractions.Fraction``,
  sempre reduzidos, denominador positivo);
- ``AlgebraicNumber``: elementos de ℚ[t]/(t⁸ − 2), com t = 2^{1/8};
- ``PadicOrder``: ordem p-ádica racional ou +∞;
- redução de racionais p-inteiros para ℤ/p^mℤ.

Todos os valores são imutáveis e todas as operações são funções puras.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from qmf.exceptions import DenominatorNotPUnit, ValidationError
from qmf.utils import validar_primo

Rational = Fraction

GRAU = 8
# t⁸ = 2
RELACAO = 2


def ord_p_rational(r: Fraction | int, p: int) -> PadicOrder:
    """Valuação p-ádica usual em ℚ; +∞ para zero."""
    r = Fraction(r)
    if r == 0:
        return PadicOrder.infinito()
    v = 0
    num, den = abs(r.numerator), r.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return PadicOrder(Fraction(v))


@functools.total_ordering
@dataclass(frozen=True)
class PadicOrder:
    """Ordem p-ádica: um racional ou +∞ (``value is None``).

    Compara com int, Fraction e outras PadicOrder.
    """

    value: Fraction | None

    @classmethod
    def infinito(cls) -> PadicOrder:
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _chave(self, outro) -> tuple[Fraction | None, Fraction | None]:
        if isinstance(outro, PadicOrder):
            return self.value, outro.value
        return self.value, Fraction(outro)

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, (PadicOrder, int, Fraction)):
            return NotImplemented
        a, b = self._chave(outro)
        return a == b

    def __lt__(self, outro) -> bool:
        if not isinstance(outro, (PadicOrder, int, Fraction)):
            return NotImplemented
        a, b = self._chave(outro)
        if a is None:
            return False
        if b is None:
            return True
        return a < b

    def __hash__(self) -> int:
        return hash(self.value)

    def __add__(self, outro) -> PadicOrder:
        a, b = self._chave(outro)
        if a is None or b is None:
            return PadicOrder.infinito()
        return PadicOrder(a + b)

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


def _reduzir(coeficientes: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduz uma lista de coeficientes em t usando t⁸ = 2 (laço de cima para baixo)."""
    coeficientes = list(coeficientes)
    for j in range(len(coeficientes) - 1, GRAU - 1, -1):
        c = coeficientes[j]
        if c:
            coeficientes[j - GRAU] += RELACAO * c
    coeficientes = coeficientes[:GRAU]
    coeficientes += [Fraction(0)] * (GRAU - len(coeficientes))
    return tuple(coeficientes)


@dataclass(frozen=True)
class AlgebraicNumber:
    """Elemento Σ x_j t^j (j < 8) de ℚ[t]/(t⁸ − 2).

    Atributos:
        coords: Oito racionais (x₀…x₇) na base 1, t, …, t⁷.
    """

    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != GRAU:
            raise ValueError(f"AlgebraicNumber exige {GRAU} coordenadas, recebeu {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(Fraction(x) for x in self.coords))

    @classmethod
    def from_rational(cls, r: Fraction | int) -> AlgebraicNumber:
        return cls((Fraction(r),) + (Fraction(0),) * (GRAU - 1))

    @classmethod
    def t_power(cls, e: int, coef: Fraction | int = 1) -> AlgebraicNumber:
        """coef · t^e, com e ≥ 0 qualquer (reduzido por t⁸ = 2)."""
        if e < 0:
            raise ValueError("Expoente de t deve ser não negativo")
        coords = [Fraction(0)] * GRAU
        coords[e % GRAU] = Fraction(coef) * RELACAO ** (e // GRAU)
        return cls(tuple(coords))

    @classmethod
    def zero(cls) -> AlgebraicNumber:
        return cls.from_rational(0)

    @classmethod
    def one(cls) -> AlgebraicNumber:
        return cls.from_rational(1)

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def support(self) -> frozenset[int]:
        """Potências de t com coordenada não nula."""
        return frozenset(j for j, x in enumerate(self.coords) if x)

    def __add__(self, outro) -> AlgebraicNumber:
        outro = _promover(outro)
        return AlgebraicNumber(tuple(a + b for a, b in zip(self.coords, outro.coords)))

    __radd__ = __add__

    def __neg__(self) -> AlgebraicNumber:
        return AlgebraicNumber(tuple(-a for a in self.coords))

    def __sub__(self, outro) -> AlgebraicNumber:
        return self + (-_promover(outro))

    def __rsub__(self, outro) -> AlgebraicNumber:
        return _promover(outro) - self

    def __mul__(self, outro) -> AlgebraicNumber:
        if isinstance(outro, (int, Fraction)):
            return self.scale(outro)
        if not isinstance(outro, AlgebraicNumber):
            return NotImplemented
        produto = [Fraction(0)] * (2 * GRAU - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(outro.coords):
                if b:
                    produto[i + j] += a * b
        return AlgebraicNumber(_reduzir(produto))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> AlgebraicNumber:
        if n < 0:
            raise ValueError("Potência negativa não suportada")
        result = AlgebraicNumber.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, r: Fraction | int) -> AlgebraicNumber:
        r = Fraction(r)
        return AlgebraicNumber(tuple(a * r for a in self.coords))

    def __str__(self) -> str:
        partes = []
        for j, x in enumerate(self.coords):
            if not x:
                continue
            coef = str(x.numerator) if x.denominator == 1 else f"({x.numerator}/{x.denominator})"
            partes.append(coef if j == 0 else f"{coef}*t^{j}")
        return " + ".join(partes) if partes else "0"


def _promover(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return AlgebraicNumber.from_rational(x)
    raise TypeError(f"Não é possível operar AlgebraicNumber com {type(x).__name__}")


def alg_mul(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> AlgebraicNumber:
    """Produto canônico em ℚ[t]/(t⁸ − 2)."""
    return alpha * beta


def alg_add(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> AlgebraicNumber:
    return alpha + beta


def alg_sub(alpha: AlgebraicNumber, beta: AlgebraicNumber) -> AlgebraicNumber:
    return alpha - beta


def alg_scale(alpha: AlgebraicNumber, r: Fraction | int) -> AlgebraicNumber:
    return alpha.scale(r)


def ord_p_alg(alpha: AlgebraicNumber, p: int) -> PadicOrder:
    """Ordem p-ádica em ℚ(2^{1/8}) como mínimo coordenada a coordenada.

    Para p ímpar, p não ramifica em ℚ(2^{1/8}) (o discriminante de t⁸ − 2 é
    potência de 2), então o mínimo nas coordenadas da base {t^j} coincide com
    o mínimo de ord_𝔭 sobre todos os primos 𝔭 | p.

    Args:
        alpha: Elemento a medir.
        p: Primo ≥ 5.

    Returns:
        PadicOrder, +∞ se alpha = 0.

    Raises:
        ValidationError: Se p não for um primo ≥ 5.
    """
    validar_primo(p)
    ordens = [ord_p_rational(x, p) for x in alpha.coords if x]
    if not ordens:
        return PadicOrder.infinito()
    return min(ordens)


def reduce_rational_mod(r: Fraction | int, p: int, m: int) -> int:
    """Imagem de r ∈ ℤ_(p) em ℤ/p^mℤ, no intervalo [0, p^m).

    Examples:
        >>> reduce_rational_mod(Fraction(1, 6), 5, 2)
        21

    Raises:
        DenominatorNotPUnit: Se p dividir o denominador de r.
    """
    r = Fraction(r)
    modulo = p ** m
    if r.denominator % p == 0:
        raise DenominatorNotPUnit(
            f"Denominador de {r} é divisível por {p}; o elemento não está em ℤ_({p}).",
            p=p,
            valor=r,
        )
    return r.numerator * pow(r.denominator, -1, modulo) % modulo
