"""
Verificação numérica independente em alta precisão (mpmath).

Nada aqui usa o motor exato: as funções teta são somadas diretamente, as
séries de Eisenstein no ponto CM vêm das séries de Lambert e os coeficientes
de Taylor de

    L(w) = (1 − w)^{−1/2} θ₃(i(1 + w)/(1 − w)) = θ₃(i) Σ d(n)/(2n)! (C w)^{2n},
    C = Γ(1/4)⁴/(8π²√2),

são extraídos por somas trapezoidais no círculo |w| = r.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import pandas as pd
from mpmath import mp, mpf
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from qmf.exceptions import PrecisionExhausted, ValidationError
from qmf.utils import validar_inteiro

logger = logging.getLogger(__name__)

DIGITOS_MINIMOS = 20
# Dígitos extras de trabalho além dos pedidos
GUARDA_DIGITOS = 15
RAIO_PADRAO = mpf(1) / 2
TENTATIVAS = 3


@dataclass(frozen=True)
class ValorNumerico:
    """Valor em precisão arbitrária com cota de erro explícita.

    Atributos:
        valor: Número mpmath (real ou complexo).
        erro: Cota (estimada) do erro absoluto.
        digits: Precisão de trabalho em dígitos decimais.
    """

    valor: object
    erro: mpf
    digits: int

    def diferenca(self, exato) -> mpf:
        """|valor − exato| calculado na precisão de trabalho."""
        with mp.workdps(self.digits + GUARDA_DIGITOS):
            if isinstance(exato, Fraction):
                exato = mpf(exato.numerator) / exato.denominator
            return abs(self.valor - mp.mpmathify(exato))

    def concorda_com(self, exato, tolerancia=mpf("1e-20")) -> bool:
        return self.diferenca(exato) < tolerancia

    def __str__(self) -> str:
        with mp.workdps(self.digits):
            return f"{mp.nstr(self.valor, min(self.digits, 40))} ± {mp.nstr(self.erro, 3)}"


def _validar_digitos(digits) -> int:
    return validar_inteiro(digits, "digits", minimo=DIGITOS_MINIMOS)


def _termos_necessarios(taxa, digits: int) -> int:
    """Menor N com e^{−taxa·N} < 10^{−digits} (com a guarda)."""
    return int(math.ceil((digits + GUARDA_DIGITOS) * math.log(10) / float(taxa))) + 1


def numeric_constant_a(digits: int = 30) -> ValorNumerico:
    """a = Γ(1/4)/(√2·π^{3/4})."""
    digits = _validar_digitos(digits)
    with mp.workdps(digits + GUARDA_DIGITOS):
        a = mp.gamma(mpf(1) / 4) / (mp.sqrt(2) * mp.pi ** (mpf(3) / 4))
        return ValorNumerico(a, mpf(10) ** (-(digits + GUARDA_DIGITOS)), digits)


def _theta(z, digits: int, deslocamento: mpf, sinal_alternado: bool):
    """Σ_n (±1)^n e^{πi(n + deslocamento)² z} por soma direta."""
    z = mp.mpmathify(z)
    if mp.im(z) <= 0:
        raise ValidationError(f"θ exige Im z > 0: {z}")
    # |e^{πi n² z}| = e^{−π n² Im z}
    n_max = int(math.isqrt(_termos_necessarios(mp.pi * mp.im(z), digits))) + 2
    termos = []
    for n in range(-n_max, n_max + 1):
        termo = mp.exp(1j * mp.pi * (n + deslocamento) ** 2 * z)
        if sinal_alternado and n % 2:
            termo = -termo
        termos.append(termo)
    return mp.fsum(termos)


def theta2(z, digits: int = 30):
    """θ₂(z) = Σ e^{πi(n+½)² z}."""
    with mp.workdps(_validar_digitos(digits) + GUARDA_DIGITOS):
        return _theta(z, digits, mpf(1) / 2, False)


def theta3(z, digits: int = 30):
    """θ₃(z) = Σ e^{πi n² z}."""
    with mp.workdps(_validar_digitos(digits) + GUARDA_DIGITOS):
        return _theta(z, digits, mpf(0), False)


def theta4(z, digits: int = 30):
    """θ₄(z) = Σ (−1)^n e^{πi n² z}."""
    with mp.workdps(_validar_digitos(digits) + GUARDA_DIGITOS):
        return _theta(z, digits, mpf(0), True)


def _linha(nome: str, calculado, esperado, digits: int, tolerancia) -> dict:
    erro = abs(calculado - esperado)
    return {
        "nome": nome,
        "calculado": mp.nstr(calculado, min(digits, 40)),
        "esperado": mp.nstr(esperado, min(digits, 40)),
        "erro": mp.nstr(erro, 5),
        "satisfeito": bool(erro < tolerancia),
    }


def theta_constants_check(digits: int = 40, tolerancia: str = "1e-20") -> pd.DataFrame:
    """θ₂, θ₃, θ₄ em i/2 e θ₃(i) contra as formas fechadas em termos de a."""
    digits = _validar_digitos(digits)
    with mp.workdps(digits + GUARDA_DIGITOS):
        a = numeric_constant_a(digits).valor
        tau = mp.mpc(0, mpf(1) / 2)
        raiz2 = mp.sqrt(2)
        quarta2 = mpf(2) ** (mpf(1) / 4)
        tol = mpf(tolerancia)
        linhas = [
            _linha("theta2(i/2)", mp.re(theta2(tau, digits)), mpf(2) ** (mpf(3) / 8) * a, digits, tol),
            _linha("theta3(i/2)", mp.re(theta3(tau, digits)), mp.sqrt(raiz2 + 1) / quarta2 * a, digits, tol),
            _linha("theta4(i/2)", mp.re(theta4(tau, digits)), mp.sqrt(raiz2 - 1) / quarta2 * a, digits, tol),
            _linha("theta3(i)", mp.re(theta3(mp.mpc(0, 1), digits)), a, digits, tol),
        ]
    return pd.DataFrame(linhas, columns=["nome", "calculado", "esperado", "erro", "satisfeito"])


def cm_values_check(digits: int = 40, tolerancia: str = "1e-20") -> pd.DataFrame:
    """E₄(i/2)/a⁸ = 33/4, F₂(i/2)/a⁴ = 1/32 e E₂*(i/2)/a⁴ = −3/2.

    Séries de Lambert em q = e^{2πi·i/2} = e^{−π}:
    E₄ = 1 + 240 Σ n³qⁿ/(1 − qⁿ), E₂ = 1 − 24 Σ n qⁿ/(1 − qⁿ),
    F₂ = Σ_{d ímpar} d q^d/(1 − q^{2d}), e E₂* = E₂ − 3/(πy) com y = 1/2.
    """
    digits = _validar_digitos(digits)
    with mp.workdps(digits + GUARDA_DIGITOS):
        a = numeric_constant_a(digits).valor
        q = mp.exp(-mp.pi)
        N = _termos_necessarios(mp.pi, digits)
        e4 = 1 + 240 * mp.fsum(n ** 3 * q ** n / (1 - q ** n) for n in range(1, N))
        e2 = 1 - 24 * mp.fsum(n * q ** n / (1 - q ** n) for n in range(1, N))
        f2 = mp.fsum(d * q ** d / (1 - q ** (2 * d)) for d in range(1, N, 2))
        e2_estrela = e2 - 3 / (mp.pi * mpf(1) / 2)
        tol = mpf(tolerancia)
        linhas = [
            _linha("E4(i/2)/a^8", e4 / a ** 8, mpf(33) / 4, digits, tol),
            _linha("F2(i/2)/a^4", f2 / a ** 4, mpf(1) / 32, digits, tol),
            _linha("E2*(i/2)/a^4", e2_estrela / a ** 4, mpf(-3) / 2, digits, tol),
        ]
    return pd.DataFrame(linhas, columns=["nome", "calculado", "esperado", "erro", "satisfeito"])


def _integrando(w, digits: int):
    """(1 − w)^{−1/2} θ₃(i(1 + w)/(1 − w)), ramo principal da raiz."""
    return theta3(1j * (1 + w) / (1 - w), digits) / mp.sqrt(1 - w)


def _amostrar(amostras: int, raio: mpf, digits: int) -> tuple[list, list]:
    """Pontos r·e^{2πik/M} e os valores de L neles, na ordem de k."""
    pontos = [raio * mp.expjpi(mpf(2 * k) / amostras) for k in range(amostras)]
    return pontos, [_integrando(w, digits) for w in pontos]


def _coeficientes_trapezio(pontos: list, valores: list, j_max: int) -> list:
    """a_j ≈ (1/M) Σ_k L(w_k) w_k^{−j}, somado em ordem fixa."""
    M = len(pontos)
    return [mp.fsum(v * w ** (-j) for v, w in zip(valores, pontos)) / M for j in range(j_max + 1)]


def _amostras_base(j_max: int, digits: int, raio: mpf) -> int:
    return int(math.ceil((digits + GUARDA_DIGITOS) * math.log(10) / -math.log(float(raio)))) + j_max + 8


def _estimar(j_max: int, digits: int, raio: mpf, amostras: int) -> list[ValorNumerico]:
    with mp.workdps(digits + GUARDA_DIGITOS):
        # Os pontos pares da malha de 2M formam a malha de M
        pontos, valores = _amostrar(2 * amostras, raio, digits)
        grossos = _coeficientes_trapezio(pontos[::2], valores[::2], j_max)
        finos = _coeficientes_trapezio(pontos, valores, j_max)
        tolerancia = mpf(10) ** (-(digits - 10))
        resultado = []
        for j, (g, f) in enumerate(zip(grossos, finos)):
            erro = abs(g - f)
            if erro > tolerancia * max(1, abs(f)):
                raise PrecisionExhausted(
                    f"Coeficiente w^{j}: estimativas com {amostras} e {2 * amostras} pontos "
                    f"diferem em {mp.nstr(erro, 5)}",
                    estimativa=f,
                    erro=erro,
                )
            resultado.append(ValorNumerico(f, erro, digits))
    return resultado


def numeric_taylor_coefficients(j_max: int, digits: int = 100, radius=RAIO_PADRAO) -> list[ValorNumerico]:
    """Coeficientes a_0…a_{j_max} de L(w), cada um com estimativa de erro.

    O erro é a diferença entre as somas com M e 2M pontos. Se ela passar da
    tolerância, o número de pontos é dobrado (até 3 tentativas).

    Raises:
        PrecisionExhausted: Se as estimativas discordarem em todas as tentativas.
        ValidationError: Para raio fora de (0, 1) ou dígitos < 20.
    """
    j_max = validar_inteiro(j_max, "j_max")
    digits = _validar_digitos(digits)
    raio = mpf(radius)
    if not 0 < raio < 1:
        raise ValidationError(f"O raio do contorno deve estar em (0, 1): {radius}")

    base = _amostras_base(j_max, digits, raio)
    for tentativa in Retrying(
        stop=stop_after_attempt(TENTATIVAS),
        retry=retry_if_exception_type(PrecisionExhausted),
        reraise=True,
    ):
        with tentativa:
            numero = tentativa.retry_state.attempt_number
            amostras = base * 2 ** (numero - 1)
            if numero > 1:
                logger.warning(f"Precisão esgotada; repetindo com {amostras} pontos (tentativa {numero}/{TENTATIVAS})")
            return _estimar(j_max, digits, raio, amostras)
    raise PrecisionExhausted("Nenhuma tentativa concluída")  # pragma: no cover


def constante_c(digits: int) -> mpf:
    """C = Γ(1/4)⁴/(8π²√2)."""
    with mp.workdps(digits + GUARDA_DIGITOS):
        return mp.gamma(mpf(1) / 4) ** 4 / (8 * mp.pi ** 2 * mp.sqrt(2))


def numeric_d_sequence(n_max: int, digits: int = 100, radius=RAIO_PADRAO) -> list[ValorNumerico]:
    """d(0), …, d(n_max) a partir de uma única extração de coeficientes.

    d(n) = Re(a_{2n})·(2n)!/(θ₃(i)·C^{2n}); o erro de a_{2n} é propagado pelo
    mesmo fator.
    """
    n_max = validar_inteiro(n_max, "n_max")
    digits = _validar_digitos(digits)
    coeficientes = numeric_taylor_coefficients(2 * n_max, digits, radius)
    with mp.workdps(digits + GUARDA_DIGITOS):
        theta_i = mp.re(theta3(mp.mpc(0, 1), digits))
        c = constante_c(digits)
        resultado = []
        for n in range(n_max + 1):
            alvo = coeficientes[2 * n]
            fator = mp.factorial(2 * n) / (theta_i * c ** (2 * n))
            d = mp.re(alvo.valor) * fator
            erro = alvo.erro * fator
            logger.debug(f"d({n}) numérico = {mp.nstr(d, 30)} (erro {mp.nstr(erro, 3)})")
            resultado.append(ValorNumerico(d, erro, digits))
    return resultado


def numeric_d(n: int, digits: int = 100, radius=RAIO_PADRAO) -> ValorNumerico:
    """d(n) numérico. Recomenda-se digits ≥ 30 + 10n.

    Raises:
        PrecisionExhausted: Propagado de ``numeric_taylor_coefficients``.
    """
    n = validar_inteiro(n, "n")
    return numeric_d_sequence(n, digits, radius)[n]
