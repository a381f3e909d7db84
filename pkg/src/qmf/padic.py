"""
Redução mod p^m, divisão por polinômios mônicos em X, filtração e ν_p.

O critério de filtração usa a divisibilidade de 𝒢̄(f; X, Y) por
𝒜̄_p(X, Y)^{p^{m−1}} em (ℤ/p^mℤ)[X, Y, Z]. A quase-valuação
ν_p(𝒢) = sup{n | 𝒢 ∈ ⟨𝒜_p^p, p⟩^n} é decidida por descida recursiva: em
cada nível reduzimos mod p, dividimos por 𝒜̄_p^{pn}, levantamos o quociente
para ℤ e dividimos o resto exato por p.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

from qmf.exactnum import reduce_rational_mod
from qmf.exceptions import InsufficientPrecision, NotMonicInX, ValidationError, WeightMismatchError
from qmf.qmring import GUARDA, IsobaricPoly, base_gamma14, calA_p_power, decompose_gamma14, eval_to_qseries
from qmf.qseries import QSeries, eisenstein_series
from qmf.utils import nu_cap_configurado, validar_inteiro, validar_peso, validar_primo

logger = logging.getLogger(__name__)

Expoente = tuple[int, int, int]
ConvencaoLift = Literal["canonical", "symmetric"]
CONVENCOES_LIFT = ("canonical", "symmetric")


@dataclass(frozen=True, eq=False)
class ModPoly:
    """Polinômio isobárico (pesos ½, 2, 2) com coeficientes em ℤ/p^mℤ.

    Atributos:
        p: Primo.
        m: Expoente do módulo.
        weight: Peso declarado.
        terms: Mapa (a, b, c) → resíduo em [0, p^m), sem zeros.
    """

    p: int
    m: int
    weight: Fraction
    terms: Mapping[Expoente, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        modulo = self.p ** self.m
        limpos = {}
        for exp, coef in self.terms.items():
            coef %= modulo
            if coef:
                a, b, c = exp
                if a + 4 * b + 4 * c != 2 * self.weight:
                    raise WeightMismatchError(f"Monômio X^{a}Y^{b}Z^{c} fora do peso {self.weight}")
                limpos[tuple(exp)] = coef
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "terms", limpos)

    @property
    def modulus(self) -> int:
        return self.p ** self.m

    def is_zero(self) -> bool:
        return not self.terms

    def max_x_degree(self) -> int:
        return max((a for a, _, _ in self.terms), default=-1)

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, ModPoly):
            return NotImplemented
        return (self.p, self.m, self.weight, self.terms) == (outro.p, outro.m, outro.weight, outro.terms)

    __hash__ = None  # type: ignore[assignment]

    def _compativel(self, outro: ModPoly) -> None:
        if (self.p, self.m) != (outro.p, outro.m):
            raise ValidationError(f"Módulos diferentes: {self.modulus} e {outro.modulus}")

    def __add__(self, outro: ModPoly) -> ModPoly:
        self._compativel(outro)
        if self.weight != outro.weight and self.terms and outro.terms:
            raise WeightMismatchError(f"Soma heterogênea: pesos {self.weight} e {outro.weight}")
        peso = self.weight if self.terms else outro.weight
        novo = dict(self.terms)
        for exp, coef in outro.terms.items():
            novo[exp] = novo.get(exp, 0) + coef
        return ModPoly(self.p, self.m, peso, novo)

    def __neg__(self) -> ModPoly:
        return ModPoly(self.p, self.m, self.weight, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, outro: ModPoly) -> ModPoly:
        return self + (-outro)

    def __mul__(self, outro: ModPoly) -> ModPoly:
        self._compativel(outro)
        modulo = self.modulus
        novo: dict[Expoente, int] = defaultdict(int)
        for (a1, b1, c1), x in self.terms.items():
            for (a2, b2, c2), y in outro.terms.items():
                chave = (a1 + a2, b1 + b2, c1 + c2)
                novo[chave] = (novo[chave] + x * y) % modulo
        return ModPoly(self.p, self.m, self.weight + outro.weight, novo)

    def lift(self, convention: ConvencaoLift = "canonical") -> IsobaricPoly:
        """Levanta os coeficientes para ℤ.

        Args:
            convention: "canonical" usa representantes em [0, p^m);
                "symmetric" usa (−p^m/2, p^m/2].

        Raises:
            ValidationError: Para convenção desconhecida.
        """
        if convention not in CONVENCOES_LIFT:
            raise ValidationError(f"Convenção de lift desconhecida: '{convention}'. Use {CONVENCOES_LIFT}.")
        modulo = self.modulus
        if convention == "canonical":
            termos = dict(self.terms)
        else:
            termos = {exp: (c - modulo if c > modulo // 2 else c) for exp, c in self.terms.items()}
        return IsobaricPoly(self.weight, termos)

    def __str__(self) -> str:
        return f"{self.lift()} (mod {self.p}^{self.m})"


def reduce_poly_mod(P: IsobaricPoly, p: int, m: int) -> ModPoly:
    """Redução coeficiente a coeficiente de 𝒢 em ℤ/p^mℤ.

    Raises:
        DenominatorNotPUnit: Se algum coeficiente tiver p no denominador.
    """
    return ModPoly(p, m, P.weight, {exp: reduce_rational_mod(c, p, m) for exp, c in P.items()})


def _por_grau_x(terms: Mapping[Expoente, int]) -> dict[int, dict[tuple[int, int], int]]:
    grupos: dict[int, dict[tuple[int, int], int]] = defaultdict(dict)
    for (a, b, c), coef in terms.items():
        grupos[a][(b, c)] = coef
    return grupos


def divide_monic_x(P: ModPoly, Q: ModPoly) -> tuple[ModPoly, ModPoly]:
    """Divisão longa em X sobre (ℤ/p^mℤ)[Y, Z].

    Args:
        P: Dividendo.
        Q: Divisor cujo termo de maior grau em X é X^d puro com coeficiente 1.

    Returns:
        (quociente, resto) com grau_X(resto) < d e P = Q·quociente + resto.

    Raises:
        NotMonicInX: Se Q não for mônico em X.
        ValidationError: Se os módulos diferirem.
    """
    P._compativel(Q)
    d = Q.max_x_degree()
    lideres = [(exp, c) for exp, c in Q.terms.items() if exp[0] == d]
    if d < 0 or lideres != [((d, 0, 0), 1)]:
        raise NotMonicInX(f"Divisor não é mônico em X: {Q}")

    modulo = P.modulus
    cauda = [(exp, c) for exp, c in Q.terms.items() if exp[0] < d]
    resto = _por_grau_x(P.terms)
    quociente: dict[Expoente, int] = {}

    for a in range(P.max_x_degree(), d - 1, -1):
        nivel = resto.pop(a, None)
        if not nivel:
            continue
        for (b, c), coef in nivel.items():
            quociente[(a - d, b, c)] = coef
            for (qa, qb, qc), qcoef in cauda:
                alvo = resto[qa + a - d]
                chave = (qb + b, qc + c)
                v = (alvo.get(chave, 0) - coef * qcoef) % modulo
                if v:
                    alvo[chave] = v
                else:
                    alvo.pop(chave, None)

    termos_resto = {(a, b, c): coef for a, nivel in resto.items() for (b, c), coef in nivel.items()}
    return (
        ModPoly(P.p, P.m, P.weight - Q.weight, quociente),
        ModPoly(P.p, P.m, P.weight, termos_resto),
    )


@dataclass(frozen=True)
class FiltrationBound:
    """Resultado de ``filtration_bound``.

    Atributos:
        weight: Peso final; ``None`` representa −∞ (redução nula).
        drops: Número de divisões bem-sucedidas.
        quotient: Último quociente (a forma de peso menor congruente a f).
    """

    weight: Fraction | None
    drops: int
    quotient: ModPoly

    @property
    def is_minus_infinity(self) -> bool:
        return self.weight is None

    def __str__(self) -> str:
        if self.weight is None:
            return "-inf"
        return str(self.weight.numerator) if self.weight.denominator == 1 else str(self.weight)


def _precisao_decomposicao(k: Fraction) -> int:
    return len(base_gamma14(k)) + GUARDA


def filtration_bound(f: QSeries, k, p: int, m: int, N: int | None = None) -> FiltrationBound:
    """Limite superior para a filtração mod p^m de uma forma de Γ₁(4).

    Reduz 𝒢(f) mod p^m e divide repetidamente por 𝒜̄_p^{p^{m−1}}; cada
    divisão exata baixa o peso em (p − 1)p^{m−1}.

    Args:
        f: Série q da forma.
        k: Peso de f.
        p: Primo ≥ 5.
        m: Expoente do módulo (≥ 1).
        N: Precisão usada na decomposição (padrão: toda a precisão de f; o
            resíduo é conferido em todos os coeficientes usados).

    Returns:
        FiltrationBound com o peso final (ou −∞).
    """
    k = validar_peso(k)
    p = validar_primo(p)
    m = validar_inteiro(m, "m", minimo=1)
    N = f.precision if N is None else min(validar_inteiro(N, "N", minimo=1), f.precision)
    necessaria = _precisao_decomposicao(k)
    if N < necessaria:
        raise InsufficientPrecision(
            f"filtration_bound exige precisão ≥ {necessaria}, recebeu {N}", precisao=N, necessaria=necessaria
        )

    atual = reduce_poly_mod(decompose_gamma14(f.truncate(N), k), p, m)
    if atual.is_zero():
        return FiltrationBound(None, 0, atual)

    potencia = p ** (m - 1)
    divisor = reduce_poly_mod(calA_p_power(p, potencia), p, m)
    passo = (p - 1) * potencia
    peso, quedas = k, 0
    while True:
        quociente, resto = divide_monic_x(atual, divisor)
        if not resto.is_zero():
            break
        atual, peso, quedas = quociente, peso - passo, quedas + 1
        logger.debug(f"Filtração mod {p}^{m}: queda para o peso {peso}")
    return FiltrationBound(peso, quedas, atual)


def verify_filtration_witness(f: QSeries, k, p: int, m: int, precision: int = 40) -> bool:
    """Confere a congruência f ≡ h (mod p^m) para a testemunha de peso menor.

    h é a série do quociente de ``filtration_bound``. Também confere
    f ≡ E_{p−1}^{p^{m−1}·quedas}·h, a forma exata do múltiplo de 𝒜_p. Sem
    queda, h é a própria redução de f e a conferência é trivial.

    Raises:
        InsufficientPrecision: Se f tiver menos que ``precision`` coeficientes.
    """
    if f.precision < precision:
        raise InsufficientPrecision(
            f"A testemunha exige f com precisão ≥ {precision}", precisao=f.precision, necessaria=precision
        )
    resultado = filtration_bound(f, k, p, m)
    if resultado.is_minus_infinity:
        return all(c == 0 for c in f.truncate(precision).reduce_mod(p, m))

    alvo = f.truncate(precision).reduce_mod(p, m)
    h = eval_to_qseries(resultado.quotient.lift(), precision)
    if h.reduce_mod(p, m) != alvo:
        return False
    multiplo = eisenstein_series(p - 1, precision) ** (p ** (m - 1) * resultado.drops) * h
    return multiplo.reduce_mod(p, m) == alvo


def ideal_membership(P: IsobaricPoly, n: int, p: int, lift: ConvencaoLift = "canonical") -> bool:
    """Decide se 𝒢 ∈ ⟨𝒜_p^p, p⟩^n.

    Em cada nível ℓ = n, n−1, …, 1: reduz mod p, exige 𝒜̄_p^{pℓ} | P̄,
    levanta o quociente H e desce para (P − 𝒜_p^{pℓ}H)/p. Dois lifts diferem
    por p·(algo), o que muda o argumento seguinte por um elemento de
    ⟨𝒜_p^p, p⟩^{ℓ−1}; o veredito não depende da convenção.

    Args:
        P: Polinômio com denominadores p-unidades.
        n: Potência do ideal.
        p: Primo ≥ 5.
        lift: Convenção de levantamento do quociente.

    Returns:
        True se P pertence à n-ésima potência do ideal.
    """
    p = validar_primo(p)
    n = validar_inteiro(n, "n")
    atual = P
    for nivel in range(n, 0, -1):
        barra = reduce_poly_mod(atual, p, 1)
        H = None
        if not barra.is_zero():
            divisor = reduce_poly_mod(calA_p_power(p, p * nivel), p, 1)
            quociente, resto = divide_monic_x(barra, divisor)
            if not resto.is_zero():
                logger.debug(f"Pertinência falhou no nível {nivel} de {n} (p = {p})")
                return False
            H = quociente.lift(lift)
        if nivel == 1:
            break
        if H is not None and not H.is_zero():
            atual = atual - calA_p_power(p, p * nivel) * H
        atual = atual.scale(Fraction(1, p))
    return True


@dataclass(frozen=True)
class NuValue:
    """Valor de ν_p: inteiro ≥ 0, +∞ (só para o polinômio zero) ou "≥ teto".

    Atributos:
        value: O inteiro (ou o teto, quando ``lower_bound`` é True); None para +∞.
        lower_bound: True quando a pertinência vale no teto e só sabemos ν ≥ value.
    """

    value: int | None
    lower_bound: bool = False

    @classmethod
    def infinito(cls) -> NuValue:
        return cls(None)

    @classmethod
    def pelo_menos(cls, cap: int) -> NuValue:
        return cls(cap, lower_bound=True)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __ge__(self, n: int) -> bool:
        """ν ≥ n. Para "≥ teto" só é decidível quando n ≤ teto."""
        if self.value is None:
            return True
        return self.value >= n

    def __str__(self) -> str:
        if self.value is None:
            return "inf"
        return f">={self.value}" if self.lower_bound else str(self.value)


def nu_p(P: IsobaricPoly, p: int, cap: int | None = None, lift: ConvencaoLift = "canonical") -> NuValue:
    """ν_p(𝒢) = maior n ≤ cap com 𝒢 ∈ ⟨𝒜_p^p, p⟩^n.

    Args:
        P: Polinômio a medir.
        p: Primo ≥ 5.
        cap: Teto da busca (padrão: QMF_NU_CAP ou 16).
        lift: Convenção de levantamento repassada a ``ideal_membership``.

    Returns:
        NuValue; +∞ se P = 0, "≥cap" se a pertinência valer no teto.
    """
    p = validar_primo(p)
    cap = nu_cap_configurado() if cap is None else validar_inteiro(cap, "cap", minimo=1)
    if P.is_zero():
        return NuValue.infinito()
    for n in range(1, cap + 1):
        if not ideal_membership(P, n, p, lift=lift):
            return NuValue(n - 1)
    return NuValue.pelo_menos(cap)
