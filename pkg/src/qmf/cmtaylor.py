"""
Derivadas iteradas, avaliação no ponto CM τ₀ = i/2 e a sequência d(n).

O valor normalizado c_n(f) = ∂^n f(τ₀)/Ω^{2n+k} é obtido substituindo em
𝒢(D^n f; X, Y, Z) as constantes algébricas

    X ↦ t⁵ (= 2^{5/8}),  Y ↦ t⁴/8 (= 2^{−5/2}),  Z ↦ −6t⁴ (= −3·2^{3/2}),

com t = 2^{1/8}. Nenhum número transcendente é representado: a
normalização por Ω está embutida nas constantes.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

import pandas as pd
from tqdm import tqdm

from qmf.exactnum import AlgebraicNumber, PadicOrder, ord_p_alg, ord_p_rational
from qmf.exceptions import (
    InvalidBracket,
    NonIntegerResult,
    NonModularResidue,
    NormalizationError,
    UnexpectedSupport,
    ValidationError,
    WeightMismatchError,
)
from qmf.padic import nu_p
from qmf.qmring import E4_POLY, IsobaricPoly, X, Z, calA_p, d_poly, modular_part
from qmf.utils import validar_inteiro, validar_intervalo, validar_peso, validar_primo

logger = logging.getLogger(__name__)

# Imagens de X, Y, Z em ℚ[t]/(t⁸ − 2): coeficiente racional e expoente de t
CM_X = AlgebraicNumber.t_power(5)
CM_Y = AlgebraicNumber.t_power(4, Fraction(1, 8))
CM_Z = AlgebraicNumber.t_power(4, -6)


def bracket(x, y) -> Fraction:
    """[x⌄y] = x(x−1)⋯(y+1), com [y⌄y] = 1.

    Raises:
        InvalidBracket: Se x − y não for inteiro não negativo.
    """
    x, y = Fraction(x), Fraction(y)
    diferenca = x - y
    if diferenca.denominator != 1 or diferenca < 0:
        raise InvalidBracket(f"[{x}⌄{y}] exige x − y inteiro ≥ 0")
    produto = Fraction(1)
    for j in range(int(diferenca)):
        produto *= x - j
    return produto


def _validar_modular(f: IsobaricPoly, k) -> Fraction:
    k = validar_peso(k)
    if f.has_z():
        raise ValidationError(f"A forma precisa ser modular (sem termos em Z): {f}")
    if not f.is_zero() and f.weight != k:
        raise WeightMismatchError(f"Peso declarado {k} difere do peso do polinômio {f.weight}")
    return k


@dataclass(frozen=True)
class ZagierSequence:
    """f₀, f₁, …, f_N com f_n modular de peso k + 2n.

    Atributos:
        k: Peso de f₀.
        forms: Tupla (f₀, …, f_N), todos sem termos em Z.
    """

    k: Fraction
    forms: tuple[IsobaricPoly, ...]

    def __getitem__(self, n: int) -> IsobaricPoly:
        return self.forms[n]

    def __len__(self) -> int:
        return len(self.forms)


def zagier_f_sequence(f: IsobaricPoly, k, N: int) -> ZagierSequence:
    """f_{n+1} = D f_n − ((k+2n)/12) E₂ f_n − (n(n+k−1)/144) E₄ f_{n−1}, f_{−1} = 0.

    Raises:
        NonModularResidue: Se algum f_n sair com termo em Z.
    """
    k = _validar_modular(f, k)
    N = validar_inteiro(N, "N")
    formas = [f]
    anterior: IsobaricPoly | None = None
    for n in range(N):
        atual = formas[-1]
        proximo = d_poly(atual) - (Z * atual).scale((k + 2 * n) / 12)
        if anterior is not None:
            proximo = proximo - (E4_POLY * anterior).scale(n * (n + k - 1) / 144)
        if proximo.has_z():
            raise NonModularResidue(f"f_{n + 1} tem termo em Z: {proximo}")
        anterior = atual
        formas.append(proximo)
    return ZagierSequence(k, tuple(formas))


def dn_via_zagier(f: IsobaricPoly, k, n: int) -> IsobaricPoly:
    """D^n f = Σ_{i=0}^{n} C(n,i)·[n+k−1 ⌄ n+k−1−i]·f_{n−i}·(E₂/12)^i."""
    sequencia = zagier_f_sequence(f, k, n)
    k = sequencia.k
    total = IsobaricPoly.zero(k + 2 * n)
    potencia_z = IsobaricPoly.one()
    topo = n + k - 1
    for i in range(n + 1):
        coef = comb(n, i) * bracket(topo, topo - i) / Fraction(12) ** i
        if coef:
            total = total + (sequencia[n - i] * potencia_z).scale(coef)
        potencia_z = potencia_z * Z
    return total


class DerivativeLadder:
    """Cache sequencial de D^n f.

    A escada é construída em ordem (D^{n+1} f só existe depois de D^n f) e,
    uma vez construída, é apenas lida.
    """

    def __init__(self, f: IsobaricPoly):
        self.f = f
        self._degraus: list[IsobaricPoly] = [f]

    def __len__(self) -> int:
        return len(self._degraus)

    def extend_to(self, n: int, progress: bool = False) -> None:
        inicio = len(self._degraus)
        if n < inicio:
            return
        for _ in tqdm(range(inicio, n + 1), desc="Derivadas D^n", disable=not progress):
            self._degraus.append(d_poly(self._degraus[-1]))
        logger.debug(f"Escada de derivadas estendida até D^{n} ({len(self._degraus[-1])} termos)")

    def derivative(self, n: int, progress: bool = False) -> IsobaricPoly:
        n = validar_inteiro(n, "n")
        self.extend_to(n, progress=progress)
        return self._degraus[n]

    __getitem__ = derivative


@functools.lru_cache(maxsize=32)
def ladder_for(f: IsobaricPoly) -> DerivativeLadder:
    """Escada compartilhada por polinômio."""
    return DerivativeLadder(f)


def cm_eval(P: IsobaricPoly) -> AlgebraicNumber:
    """𝒢(P; t⁵, t⁴/8, −6t⁴) em ℚ[t]/(t⁸ − 2), monômio a monômio em forma fechada.

    X^a Y^b Z^c ↦ (−6)^c/8^b · t^{5a+4b+4c}.
    """
    coords = [Fraction(0)] * 8
    for (a, b, c), coef in P.items():
        e = 5 * a + 4 * b + 4 * c
        coords[e % 8] += coef * Fraction((-6) ** c * 2 ** (e // 8), 8 ** b)
    return AlgebraicNumber(tuple(coords))


def cm_eval_generic(P: IsobaricPoly) -> AlgebraicNumber:
    """Mesma avaliação de ``cm_eval`` pela aritmética genérica de AlgebraicNumber."""
    return P.substitute(CM_X, CM_Y, CM_Z, AlgebraicNumber.one())


def expected_t_power(w) -> int:
    """Potência de t que suporta cm_eval de qualquer polinômio isobárico de peso w.

    Um monômio de peso w tem a ≡ 2w (mod 4), logo 5a + 4b + 4c = 2w + 4a ≡ 10w (mod 8).
    """
    return int(10 * Fraction(w)) % 8


def _sem_primos_grandes(r: Fraction) -> bool:
    den = r.denominator
    for primo in (2, 3):
        while den % primo == 0:
            den //= primo
    return den == 1


def c_n(f: IsobaricPoly, k, n: int, ladder: DerivativeLadder | None = None) -> AlgebraicNumber:
    """c_n(f) = cm_eval(D^n f).

    Confere que o valor é suportado numa única potência de t e que
    ord_p(c_n) ≥ 0 para todo p ≥ 5 (denominadores só com 2 e 3).

    Raises:
        UnexpectedSupport: Suporte fora da potência esperada.
        NormalizationError: Denominador com primo ≥ 5.
    """
    k = _validar_modular(f, k)
    n = validar_inteiro(n, "n")
    ladder = ladder or ladder_for(f)
    valor = cm_eval(ladder.derivative(n))

    esperada = expected_t_power(k + 2 * n)
    if not valor.support <= {esperada}:
        raise UnexpectedSupport(f"c_{n} suportado em {sorted(valor.support)}, esperado {{{esperada}}}")
    if not all(_sem_primos_grandes(x) for x in valor.coords):
        raise NormalizationError(f"c_{n} tem ord_p negativo para algum p ≥ 5: {valor}")
    return valor


def romik_d(n: int) -> int:
    """d(n) = 2^{−5/8}·c_{2n}(Θ), inteiro.

    Raises:
        UnexpectedSupport: Se c_{2n}(Θ) não for múltiplo racional de t⁵.
        NonIntegerResult: Se o resultado não for inteiro.
    """
    n = validar_inteiro(n, "n")
    valor = c_n(X, Fraction(1, 2), 2 * n)
    if valor.support != {5}:
        raise UnexpectedSupport(f"c_{2 * n}(Θ) deveria ser suportado em t⁵: {valor}")
    d = valor.coords[5]
    if d.denominator != 1:
        raise NonIntegerResult(f"d({n}) não é inteiro: {d}")
    return d.numerator


def romik_sequence(n_max: int, progress: bool = False) -> list[int]:
    """[d(0), …, d(n_max)]."""
    n_max = validar_inteiro(n_max, "n_max")
    ladder_for(X).extend_to(2 * n_max, progress=progress)
    return [romik_d(n) for n in range(n_max + 1)]


@dataclass(frozen=True)
class CongruenceEntry:
    """Uma linha do relatório.

    Atributos:
        n: Índice.
        ordem: ord_p do alvo.
        atinge_minimo: ordem ≥ m.
        exigido: A congruência é afirmada para este n.
        valor: O alvo serializado.
    """

    n: int
    ordem: PadicOrder
    atinge_minimo: bool
    exigido: bool
    valor: str

    @property
    def satisfeito(self) -> bool:
        return self.atinge_minimo or not self.exigido


@dataclass(frozen=True)
class CongruenceReport:
    """Registro por n de ord_p(alvo) contra o mínimo m.

    Atributos:
        p: Primo.
        m: Ordem mínima exigida.
        alvo: Descrição do alvo ("d(n)", "c_n(f)"...).
        entries: Entradas ordenadas por n.
    """

    p: int
    m: int
    alvo: str
    entries: tuple[CongruenceEntry, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(sorted(self.entries, key=lambda e: e.n)))

    @property
    def todas_satisfeitas(self) -> bool:
        """True se toda entrada em que a congruência é exigida foi satisfeita."""
        return all(e.satisfeito for e in self.entries)

    def exigindo_todas(self, alvo: str) -> CongruenceReport:
        """Cópia em que todas as entradas são exigidas."""
        entradas = tuple(CongruenceEntry(e.n, e.ordem, e.atinge_minimo, True, e.valor) for e in self.entries)
        return CongruenceReport(self.p, self.m, alvo, entradas)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "n": e.n,
                    "alvo": self.alvo,
                    "valor": e.valor,
                    "ord_p": str(e.ordem),
                    "minimo": self.m,
                    "atinge_minimo": e.atinge_minimo,
                    "exigido": e.exigido,
                    "satisfeito": e.satisfeito,
                }
                for e in self.entries
            ],
            columns=["n", "alvo", "valor", "ord_p", "minimo", "atinge_minimo", "exigido", "satisfeito"],
        )


def romik_threshold(p: int, m: int) -> int:
    """Menor n a partir do qual d(n) ≡ 0 (mod p^m) vale para p ≡ 3 (mod 4).

    m = 1: (p² + 1)/2; m ≥ 2: ⌈(m − 1)p²/2⌉.
    """
    if m == 1:
        return (p * p + 1) // 2
    return ((m - 1) * p * p + 1) // 2


def congruence_scan(p: int, m: int, n_range, progress: bool = False) -> CongruenceReport:
    """ord_p(d(n)) para n no intervalo, marcado contra m.

    A congruência só é exigida quando p ≡ 3 (mod 4) e n atinge
    ``romik_threshold``; para p ≡ 1 (mod 4) o relatório é exploratório.
    """
    p = validar_primo(p)
    m = validar_inteiro(m, "m", minimo=1)
    intervalo = validar_intervalo(n_range)
    ladder_for(X).extend_to(2 * intervalo[-1], progress=progress)
    limiar = romik_threshold(p, m)

    entradas = []
    for n in intervalo:
        d = romik_d(n)
        ordem = ord_p_rational(d, p)
        entradas.append(
            CongruenceEntry(n, ordem, ordem >= m, p % 4 == 3 and n >= limiar, str(d))
        )
    return CongruenceReport(p, m, "d(n)", tuple(entradas))


def taylor_threshold(p: int, m: int) -> int:
    return (m - 1) * p * p


def taylor_congruence_scan(
    f: IsobaricPoly, k, p: int, m: int, n_range, progress: bool = False
) -> CongruenceReport:
    """ord_p(c_n(f)) para n no intervalo.

    Exigido quando p ≡ 3 (mod 4), m ≥ 2 e n ≥ (m − 1)p².
    """
    k = _validar_modular(f, k)
    p = validar_primo(p)
    m = validar_inteiro(m, "m", minimo=1)
    intervalo = validar_intervalo(n_range)
    ladder = ladder_for(f)
    ladder.extend_to(intervalo[-1], progress=progress)
    limiar = taylor_threshold(p, m)

    entradas = []
    for n in intervalo:
        valor = c_n(f, k, n, ladder)
        ordem = ord_p_alg(valor, p)
        exigido = p % 4 == 3 and m >= 2 and n >= limiar
        entradas.append(CongruenceEntry(n, ordem, ordem >= m, exigido, str(valor)))
    return CongruenceReport(p, m, f"c_n({f})", tuple(entradas))


def hasse_cm_scan(p: int, n_range, progress: bool = False) -> CongruenceReport:
    """ord_p(c_n(E_{p−1})) ≥ 1 para p ≡ 3 (mod 4).

    Raises:
        ValidationError: Se p ≢ 3 (mod 4).
    """
    p = validar_primo(p)
    if p % 4 != 3:
        raise ValidationError(f"c_n(E_{{p−1}}) ≡ 0 (mod p) exige p ≡ 3 (mod 4): {p}")
    relatorio = taylor_congruence_scan(calA_p(p), p - 1, p, 1, n_range, progress=progress)
    return relatorio.exigindo_todas(f"c_n(E_{p - 1})")


def nonmodular_min_order(f: IsobaricPoly, k, p: int, n: int) -> PadicOrder:
    """min ord_p dos coeficientes de 𝒢(D^n f − (D^n f)₀); +∞ se não houver termos em Z."""
    _validar_modular(f, k)
    p = validar_primo(p)
    derivada = ladder_for(f).derivative(n)
    parte = derivada - modular_part(derivada)
    ordens: Iterable[PadicOrder] = (ord_p_rational(c, p) for _, c in parte.items())
    return min(ordens, default=PadicOrder.infinito())


def nu_bridge(f: IsobaricPoly, k, p: int, n: int, m: int) -> bool:
    """Se ν_p(𝒢(D^n f)) ≥ m, confere ord_p(c_n(f)) ≥ m; sem a hipótese, é vacuamente True.

    Raises:
        ValidationError: Se p ≢ 3 (mod 4) (a ponte depende de c_n(E_{p−1}) ≡ 0).
    """
    k = _validar_modular(f, k)
    p = validar_primo(p)
    if p % 4 != 3:
        raise ValidationError(f"A ponte ν_p → ord_p exige p ≡ 3 (mod 4): {p}")
    m = validar_inteiro(m, "m", minimo=1)
    ladder = ladder_for(f)
    nu = nu_p(ladder.derivative(n), p, cap=m)
    if not nu >= m:
        logger.debug(f"ν_{p}(D^{n}f) = {nu} < {m}; ponte vacuamente verdadeira")
        return True
    return ord_p_alg(c_n(f, k, n, ladder), p) >= m
