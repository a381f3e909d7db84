"""
Modelo polinomial das formas quasimodulares em Γ₁(4).

A toda forma quasimodular g ∈ ℚ[Θ, F₂, E₂] associamos o polinômio isobárico
𝒢(g; X, Y, Z), com pesos ½, 2, 2 em X, Y, Z (espelhando Θ, F₂, E₂). Para
formas em Γ(1) usamos o modelo G(g; X, Y, Z) com pesos 4, 6, 2 (E₄, E₆, E₂).

Este módulo fornece:

- ``IsobaricPoly`` e ``Gamma1Poly`` (polinômios esparsos com peso declarado);
- a derivada D nos dois modelos, pelas equações de estrutura;
- avaliação em séries q, parte modular e decomposição em bases;
- a substituição Γ(1) → Γ₁(4) e os polinômios 𝒜_p, A_p.
"""

from __future__ import annotations

import functools
import logging
from collections import defaultdict
from fractions import Fraction
from types import MappingProxyType
from typing import Any, Iterator, Mapping, TypeVar

from qmf.exceptions import InsufficientPrecision, NotInSpan, PathDisagreement, ValidationError, WeightMismatchError
from qmf.qseries import QSeries, eisenstein_series, f2_series, theta_series
from qmf.utils import validar_peso, validar_primo

logger = logging.getLogger(__name__)

Expoente = tuple[int, int, int]
P = TypeVar("P", bound="_PolinomioPonderado")

# Coeficientes extras exigidos além da dimensão ao decompor uma série.
GUARDA = 5


class _PolinomioPonderado:
    """Polinômio esparso em X, Y, Z com peso declarado.

    Os pesos das variáveis são guardados dobrados (inteiros) em
    ``PESOS_DOBRADOS``; todo monômio armazenado satisfaz
    a·w_X + b·w_Y + c·w_Z = peso. Coeficientes nulos não são armazenados e o
    polinômio zero pode ter qualquer peso declarado.
    """

    PESOS_DOBRADOS: tuple[int, int, int] = (0, 0, 0)
    __slots__ = ("weight", "_terms", "_hash")

    def __init__(self, weight, terms: Mapping[Expoente, Any] | None = None):
        self.weight: Fraction = Fraction(weight)
        limpos: dict[Expoente, Fraction] = {}
        for exp, coef in (terms or {}).items():
            coef = Fraction(coef)
            if coef:
                limpos[tuple(exp)] = coef  # type: ignore[assignment]
        self._terms = limpos
        self._hash: int | None = None
        self._verificar_pesos()

    def _verificar_pesos(self) -> None:
        peso2 = 2 * self.weight
        wa, wb, wc = self.PESOS_DOBRADOS
        for a, b, c in self._terms:
            if min(a, b, c) < 0 or a * wa + b * wb + c * wc != peso2:
                raise WeightMismatchError(
                    f"Monômio X^{a}Y^{b}Z^{c} incompatível com o peso {self.weight} "
                    f"em {type(self).__name__}"
                )

    @classmethod
    def zero(cls: type[P], weight=0) -> P:
        return cls(weight)

    @classmethod
    def one(cls: type[P]) -> P:
        return cls(0, {(0, 0, 0): 1})

    @classmethod
    def monomial(cls: type[P], a: int, b: int = 0, c: int = 0, coef: Fraction | int = 1) -> P:
        wa, wb, wc = cls.PESOS_DOBRADOS
        return cls(Fraction(a * wa + b * wb + c * wc, 2), {(a, b, c): coef})

    @property
    def terms(self) -> Mapping[Expoente, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Expoente, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, a: int, b: int = 0, c: int = 0) -> Fraction:
        return self._terms.get((a, b, c), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def has_z(self) -> bool:
        return any(c for (_, _, c) in self._terms)

    def max_x_degree(self) -> int:
        return max((a for (a, _, _) in self._terms), default=-1)

    def __eq__(self, outro) -> bool:
        if type(outro) is not type(self):
            return NotImplemented
        return self.weight == outro.weight and self._terms == outro._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.weight, frozenset(self._terms.items())))
        return self._hash

    def _peso_da_soma(self, outro: P) -> Fraction:
        if self.weight == outro.weight or not outro._terms:
            return self.weight
        if not self._terms:
            return outro.weight
        raise WeightMismatchError(
            f"Soma heterogênea rejeitada: pesos {self.weight} e {outro.weight}"
        )

    def __add__(self: P, outro: P) -> P:
        if type(outro) is not type(self):
            return NotImplemented
        peso = self._peso_da_soma(outro)
        novo = dict(self._terms)
        for exp, coef in outro._terms.items():
            novo[exp] = novo.get(exp, 0) + coef
        return type(self)(peso, novo)

    def __neg__(self: P) -> P:
        return self.scale(-1)

    def __sub__(self: P, outro: P) -> P:
        if type(outro) is not type(self):
            return NotImplemented
        return self + (-outro)

    def scale(self: P, r: Fraction | int) -> P:
        r = Fraction(r)
        return type(self)(self.weight, {exp: coef * r for exp, coef in self._terms.items()})

    def __mul__(self: P, outro) -> P:
        if isinstance(outro, (int, Fraction)):
            return self.scale(outro)
        if type(outro) is not type(self):
            return NotImplemented
        novo: dict[Expoente, Fraction] = defaultdict(Fraction)
        for (a1, b1, c1), x in self._terms.items():
            for (a2, b2, c2), y in outro._terms.items():
                novo[(a1 + a2, b1 + b2, c1 + c2)] += x * y
        return type(self)(self.weight + outro.weight, novo)

    def __rmul__(self: P, outro) -> P:
        if isinstance(outro, (int, Fraction)):
            return self.scale(outro)
        return NotImplemented

    def __pow__(self: P, e: int) -> P:
        if e < 0:
            raise ValidationError("Potência negativa de polinômio não suportada")
        result = type(self).one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def without_z(self: P) -> P:
        return type(self)(self.weight, {exp: c for exp, c in self._terms.items() if exp[2] == 0})

    def substitute(self, x, y, z, um):
        """Avalia o polinômio em elementos de um anel qualquer.

        Args:
            x, y, z: Valores das variáveis (precisam de ``*`` entre si e por Fraction, e ``+``).
            um: Unidade do anel de destino.

        Returns:
            Σ coef · x^a y^b z^c no anel de destino.
        """
        def potencias(base, maximo):
            pot = [um]
            for _ in range(maximo):
                pot.append(pot[-1] * base)
            return pot

        ma = max((a for a, _, _ in self._terms), default=0)
        mb = max((b for _, b, _ in self._terms), default=0)
        mc = max((c for _, _, c in self._terms), default=0)
        xs, ys, zs = potencias(x, ma), potencias(y, mb), potencias(z, mc)

        total = um * 0
        for (a, b, c), coef in sorted(self._terms.items()):
            total = total + (xs[a] * ys[b] * zs[c]) * coef
        return total

    def sorted_terms(self) -> list[tuple[Expoente, Fraction]]:
        """Termos em ordem determinística (grau em X decrescente, depois Y, depois Z)."""
        return sorted(self._terms.items(), key=lambda item: (-item[0][0], -item[0][1], -item[0][2]))

    def __str__(self) -> str:
        partes: list[str] = []
        for (a, b, c), coef in self.sorted_terms():
            vars_ = [f"{v}^{e}" if e > 1 else v for v, e in zip("XYZ", (a, b, c)) if e]
            mono = "*".join(vars_)
            sinal = "-" if coef < 0 else "+"
            modulo = abs(coef)
            num = str(modulo.numerator) if modulo.denominator == 1 else f"({modulo.numerator}/{modulo.denominator})"
            if mono:
                termo = mono if modulo == 1 else f"{num}*{mono}"
            else:
                termo = num
            partes.append(termo if not partes and sinal == "+" else (f"-{termo}" if not partes else f"{sinal} {termo}"))
        return " ".join(partes) if partes else "0"

    def __repr__(self) -> str:
        return f"{type(self).__name__}(weight={self.weight}, {self})"


class IsobaricPoly(_PolinomioPonderado):
    """𝒢(g; X, Y, Z) com pesos ½, 2, 2 (Θ, F₂, E₂)."""

    PESOS_DOBRADOS = (1, 4, 4)
    __slots__ = ()


class Gamma1Poly(_PolinomioPonderado):
    """G(g; X, Y, Z) com pesos 4, 6, 2 (E₄, E₆, E₂)."""

    PESOS_DOBRADOS = (8, 12, 4)
    __slots__ = ()


X = IsobaricPoly.monomial(1, 0, 0)
Y = IsobaricPoly.monomial(0, 1, 0)
Z = IsobaricPoly.monomial(0, 0, 1)

# E₄ = Θ⁸ + 224Θ⁴F₂ + 256F₂² e E₆ = Θ¹² − 528Θ⁸F₂ − 8448Θ⁴F₂² + 4096F₂³
E4_POLY = IsobaricPoly(4, {(8, 0, 0): 1, (4, 1, 0): 224, (0, 2, 0): 256})
E6_POLY = IsobaricPoly(6, {(12, 0, 0): 1, (8, 1, 0): -528, (4, 2, 0): -8448, (0, 3, 0): 4096})


@functools.lru_cache(maxsize=16)
def _geradores(N: int) -> tuple[QSeries, QSeries, QSeries]:
    return theta_series(N), f2_series(N), eisenstein_series(2, N)


def eval_to_qseries(P: IsobaricPoly, N: int) -> QSeries:
    """Substitui Θ, F₂, E₂ em 𝒢 e expande até q^{N−1}."""
    theta, f2, e2 = _geradores(N)
    return P.substitute(theta, f2, e2, QSeries.constant(1, N))


def eval_gamma1_to_qseries(G: Gamma1Poly, N: int) -> QSeries:
    """Substitui E₄, E₆, E₂ em G e expande até q^{N−1}."""
    return G.substitute(eisenstein_series(4, N), eisenstein_series(6, N), eisenstein_series(2, N),
                        QSeries.constant(1, N))


def d_poly(P: IsobaricPoly) -> IsobaricPoly:
    """Derivada D no modelo polinomial, peso w → w + 2.

    Regra de Leibniz aplicada às equações de estrutura
    DX = (XZ − X⁵ + 80XY)/24, DY = (YZ + 5X⁴Y − 16Y²)/6,
    DZ = (Z² − X⁸ − 224X⁴Y − 256Y²)/12.
    Todos os coeficientes ficam sobre o denominador comum 24.
    """
    novo: dict[Expoente, Fraction] = defaultdict(Fraction)
    for (a, b, c), coef in P.items():
        if not (a or b or c):
            continue
        base = coef / 24
        k = a + 4 * b + 2 * c
        if k:
            novo[(a, b, c + 1)] += base * k
        k = 20 * b - a
        if k:
            novo[(a + 4, b, c)] += base * k
        k = 80 * a - 64 * b
        if k:
            novo[(a, b + 1, c)] += base * k
        if c:
            novo[(a + 8, b, c - 1)] += base * (-2 * c)
            novo[(a + 4, b + 1, c - 1)] += base * (-448 * c)
            novo[(a, b + 2, c - 1)] += base * (-512 * c)
    return IsobaricPoly(P.weight + 2, novo)


def d_poly_gamma1(G: Gamma1Poly) -> Gamma1Poly:
    """Derivada D no modelo de Γ(1), pelas relações
    DE₄ = (E₂E₄ − E₆)/3, DE₆ = (E₂E₆ − E₄²)/2, DE₂ = (E₂² − E₄)/12."""
    novo: dict[Expoente, Fraction] = defaultdict(Fraction)
    for (a, b, c), coef in G.items():
        if not (a or b or c):
            continue
        base = coef / 12
        novo[(a, b, c + 1)] += base * (4 * a + 6 * b + c)
        if a:
            novo[(a - 1, b + 1, c)] += base * (-4 * a)
        if b:
            novo[(a + 2, b - 1, c)] += base * (-6 * b)
        if c:
            novo[(a + 1, b, c - 1)] += base * (-c)
    return Gamma1Poly(G.weight + 2, novo)


def modular_part(P: IsobaricPoly) -> IsobaricPoly:
    """g₀ = 𝒢(g; Θ, F₂, 0): remove todos os termos com Z."""
    return P.without_z()


def base_gamma14(k: Fraction) -> list[tuple[int, int]]:
    """Pares (a, b) com a/2 + 2b = k, ordenados por b (Θ^a F₂^b começa em q^b)."""
    dois_k = int(2 * k)
    return [(dois_k - 4 * b, b) for b in range(dois_k // 4 + 1)]


def decompose_gamma14(f: QSeries, k) -> IsobaricPoly:
    """Escreve f como Σ c_{a,b} Θ^a F₂^b com a/2 + 2b = k.

    Eliminação triangular: Θ^a F₂^b = q^b + O(q^{b+1}), então os coeficientes
    saem em ordem crescente de b. O resíduo precisa se anular em toda a
    precisão de f.

    Args:
        f: Série q de uma (suposta) forma de peso k em Γ₁(4).
        k: Peso inteiro ou meio-inteiro.

    Returns:
        IsobaricPoly em X, Y apenas.

    Raises:
        InsufficientPrecision: Se a precisão de f for menor que dim + GUARDA.
        NotInSpan: Se o resíduo não se anular.
    """
    k = validar_peso(k)
    base = base_gamma14(k)
    necessaria = len(base) + GUARDA
    if f.precision < necessaria:
        raise InsufficientPrecision(
            f"Decomposição em peso {k} exige precisão ≥ {necessaria}, recebeu {f.precision}",
            precisao=f.precision,
            necessaria=necessaria,
        )

    N = f.precision
    theta, f2, _ = _geradores(N)
    theta4 = theta ** 4
    # Θ^a para a = 2k − 4b: começa no menor expoente e sobe de 4 em 4
    a_min = base[-1][0]
    pot_theta = {a_min: theta ** a_min}
    for a in range(a_min + 4, base[0][0] + 1, 4):
        pot_theta[a] = pot_theta[a - 4] * theta4

    residuo = list(f.coeffs)
    termos: dict[Expoente, Fraction] = {}
    pot_f2 = QSeries.constant(1, N)
    for a, b in base:
        if b:
            pot_f2 = pot_f2 * f2
        c = residuo[b]
        if c:
            termos[(a, b, 0)] = c
            elemento = (pot_theta[a] * pot_f2).coeffs
            for n in range(b, N):
                if elemento[n]:
                    residuo[n] -= c * elemento[n]

    for n, r in enumerate(residuo):
        if r:
            raise NotInSpan(
                f"A série não é de peso {k} em Γ₁(4) até a precisão {N} (resíduo em q^{n})",
                residuo_indice=n,
            )
    return IsobaricPoly(k, termos)


def _resolver_sistema(matriz: list[list[Fraction]], lado: list[Fraction]) -> list[Fraction]:
    """Eliminação de Gauss exata (matriz quadrada não singular)."""
    n = len(matriz)
    aumentada = [list(linha) + [v] for linha, v in zip(matriz, lado)]
    for col in range(n):
        pivo = next((i for i in range(col, n) if aumentada[i][col]), None)
        if pivo is None:
            raise PathDisagreement("Sistema singular na decomposição de Γ(1)")
        aumentada[col], aumentada[pivo] = aumentada[pivo], aumentada[col]
        inv = 1 / aumentada[col][col]
        aumentada[col] = [x * inv for x in aumentada[col]]
        for i in range(n):
            if i != col and aumentada[i][col]:
                fator = aumentada[i][col]
                aumentada[i] = [x - fator * y for x, y in zip(aumentada[i], aumentada[col])]
    return [linha[-1] for linha in aumentada]


def decompose_gamma1(f: QSeries, k: int) -> Gamma1Poly:
    """Escreve f ∈ M_k(Γ(1)) como Σ c_{a,b} E₄^a E₆^b, 4a + 6b = k.

    Os primeiros dim coeficientes de uma base de M_k são linearmente
    independentes (fórmula da valência), então o sistema quadrado tem solução
    única; o resíduo é verificado em toda a precisão.

    Raises:
        ValidationError: Se k não for par e não negativo.
        InsufficientPrecision: Se a precisão for menor que dim + GUARDA.
        NotInSpan: Se o resíduo não se anular.
    """
    k_frac = validar_peso(k)
    if k_frac.denominator != 1 or k_frac.numerator % 2:
        raise ValidationError(f"Formas de Γ(1) têm peso par: {k_frac}")
    k = k_frac.numerator
    base = [(a, (k - 4 * a) // 6) for a in range(k // 4 + 1) if (k - 4 * a) % 6 == 0]
    dim = len(base)
    necessaria = dim + GUARDA
    if f.precision < necessaria:
        raise InsufficientPrecision(
            f"Decomposição em Γ(1), peso {k}, exige precisão ≥ {necessaria}, recebeu {f.precision}",
            precisao=f.precision,
            necessaria=necessaria,
        )

    N = f.precision
    e4, e6 = eisenstein_series(4, N), eisenstein_series(6, N)
    elementos = [(e4 ** a) * (e6 ** b) for a, b in base]
    if dim:
        matriz = [[elementos[j][n] for j in range(dim)] for n in range(dim)]
        solucao = _resolver_sistema(matriz, list(f.coeffs[:dim]))
    else:
        solucao = []

    residuo = list(f.coeffs)
    for c, elemento in zip(solucao, elementos):
        for n in range(N):
            residuo[n] -= c * elemento[n]
    for n, r in enumerate(residuo):
        if r:
            raise NotInSpan(
                f"A série não é de peso {k} em Γ(1) até a precisão {N} (resíduo em q^{n})",
                residuo_indice=n,
            )
    return Gamma1Poly(k, {(a, b, 0): c for (a, b), c in zip(base, solucao)})


def gamma1_to_gamma14(G: Gamma1Poly) -> IsobaricPoly:
    """𝒢(f; X, Y) = G(f; X⁸ + 224X⁴Y + 256Y², X¹² − 528X⁸Y − 8448X⁴Y² + 4096Y³).

    Termos em Z (E₂) são levados em Z.
    """
    result = G.substitute(E4_POLY, E6_POLY, Z, IsobaricPoly.one())
    if result.is_zero():
        return IsobaricPoly.zero(G.weight)
    return result


def _dimensao_gamma14(k: int) -> int:
    return len(base_gamma14(Fraction(k)))


@functools.lru_cache(maxsize=None)
def calA_p(p: int, N: int | None = None) -> IsobaricPoly:
    """𝒜_p = 𝒢(E_{p−1}; X, Y), calculado por decomposição direta.

    O resultado é conferido contra o caminho de Γ(1)
    (``gamma1_to_gamma14(A_p(p))``) e contra a forma esperada: mônico em X com
    grau 2(p − 1) em X.

    Raises:
        ValidationError: Se p não for primo ≥ 5.
        PathDisagreement: Se os dois caminhos divergirem.
    """
    p = validar_primo(p)
    k = p - 1
    if N is None:
        N = _dimensao_gamma14(k) + GUARDA
    direto = decompose_gamma14(eisenstein_series(k, N), k)

    if direto.max_x_degree() != 2 * k or direto.coefficient(2 * k) != 1:
        raise PathDisagreement(f"𝒜_{p} não é mônico em X de grau {2 * k}: {direto}")

    via_gamma1 = gamma1_to_gamma14(A_p(p))
    if via_gamma1 != direto:
        raise PathDisagreement(f"Os dois caminhos para 𝒜_{p} divergem: {direto} ≠ {via_gamma1}")

    logger.debug(f"𝒜_{p} = {direto}")
    return direto


@functools.lru_cache(maxsize=None)
def A_p(p: int) -> Gamma1Poly:
    """A_p = G(E_{p−1}; X, Y)."""
    p = validar_primo(p)
    k = p - 1
    dim = len([a for a in range(k // 4 + 1) if (k - 4 * a) % 6 == 0])
    return decompose_gamma1(eisenstein_series(k, dim + GUARDA), k)


@functools.lru_cache(maxsize=64)
def calA_p_power(p: int, e: int) -> IsobaricPoly:
    """𝒜_p^e exato (com cache)."""
    if e == 0:
        return IsobaricPoly.one()
    if e == 1:
        return calA_p(p)
    metade = calA_p_power(p, e // 2)
    quadrado = metade * metade
    return quadrado * calA_p(p) if e % 2 else quadrado


@functools.lru_cache(maxsize=None)
def eisenstein_poly(k: int) -> IsobaricPoly:
    """𝒢(E_k): Z para k = 2, decomposição em Θ, F₂ para k ≥ 4 par."""
    if k == 2:
        return Z
    if k < 4 or k % 2:
        raise ValidationError(f"Peso de Eisenstein deve ser par ≥ 2: {k}")
    return decompose_gamma14(eisenstein_series(k, _dimensao_gamma14(k) + GUARDA), k)


def form_polynomial(fatores: Mapping[str, int]) -> IsobaricPoly:
    """𝒢 de um produto de geradores ({gerador: expoente}, ver ``expand_forma``).

    theta ↦ X, f2 ↦ Y, e2 ↦ Z e eisenstein:k ↦ 𝒢(E_k).

    Example:
        >>> str(form_polynomial({"theta": 1, "eisenstein:4": 1}))
        'X^9 + 224*X^5*Y + 256*X*Y^2'
    """
    result = IsobaricPoly.one()
    for nome, e in fatores.items():
        if nome == "theta":
            gerador = X
        elif nome == "f2":
            gerador = Y
        elif nome == "e2":
            gerador = Z
        elif nome.startswith("eisenstein:"):
            gerador = eisenstein_poly(int(nome.split(":", 1)[1]))
        else:
            raise ValidationError(f"Gerador desconhecido: '{nome}'")
        result = result * gerador ** e
    return result
