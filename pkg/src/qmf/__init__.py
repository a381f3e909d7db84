"""
qmf - Formas quasimodulares em Γ₁(4)

Aritmética exata no anel ℚ[Θ, F₂, E₂], filtrações mod p^m, a
quase-valorização ν_p e a avaliação no ponto CM i/2, com a sequência inteira
d(n) e verificadores das congruências de seus coeficientes de Taylor.

Exemplo de uso:
    import qmf

    # d(0), …, d(5)
    qmf.romik_sequence(5)

    # d(n) ≡ 0 (mod 7²) para n ≥ 25
    resultado = qmf.romik(debug=False).verificar(p=7, m=2, intervalo="25..30")

    # ν_5(D^25 Θ) ≥ 2
    resultado = qmf.nu_dp2().verificar(forma="theta", p=5)
"""

from importlib.metadata import version

from .cmtaylor import c_n, cm_eval, congruence_scan, romik_d, romik_sequence
from .exceptions import (
    DenominatorNotPUnit,
    InsufficientPrecision,
    InternalAssertionError,
    InvalidBracket,
    NonIntegerResult,
    NonModularResidue,
    NormalizationError,
    NotInSpan,
    NotMonicInX,
    PathDisagreement,
    PrecisionExhausted,
    QMFError,
    UnexpectedSupport,
    ValidationError,
    WeightMismatchError,
)
from .padic import filtration_bound, nu_p
from .qmring import IsobaricPoly, X, Y, Z, d_poly, decompose_gamma14, form_polynomial
from .qseries import QSeries, form_series
from .utils import expand_forma
from .verificadores import (
    VerificadorFiltracao,
    VerificadorHasseCM,
    VerificadorNaoModular,
    VerificadorNuDp2,
    VerificadorOraculo,
    VerificadorRomik,
    VerificadorRomikP,
    VerificadorTaylor,
)

__version__ = version("qmf")


def romik(**kwargs):
    """
    Cria um verificador de d(n) ≡ 0 (mod p^m) para p ≡ 3 (mod 4).

    Returns:
        VerificadorRomik: Instância configurada do verificador.
    """
    return VerificadorRomik(**kwargs)


def romik_p(**kwargs):
    """
    Cria um verificador de d(n) ≡ 0 (mod p) a partir de (p² + 1)/2.

    Returns:
        VerificadorRomikP: Instância configurada do verificador.
    """
    return VerificadorRomikP(**kwargs)


def taylor(**kwargs):
    """
    Cria um verificador de c_n(f) ≡ 0 (mod p^m) para n ≥ (m − 1)p².

    Returns:
        VerificadorTaylor: Instância configurada do verificador.
    """
    return VerificadorTaylor(**kwargs)


def hasse(**kwargs):
    """
    Cria um verificador de c_n(E_{p−1}) ≡ 0 (mod p).

    Returns:
        VerificadorHasseCM: Instância configurada do verificador.
    """
    return VerificadorHasseCM(**kwargs)


def nao_modular(**kwargs):
    """
    Cria um verificador da divisibilidade da parte não modular de D^{p^e} f.

    Returns:
        VerificadorNaoModular: Instância configurada do verificador.
    """
    return VerificadorNaoModular(**kwargs)


def nu_dp2(**kwargs):
    """
    Cria um verificador de ν_p(D^{p²} f) ≥ 2.

    Returns:
        VerificadorNuDp2: Instância configurada do verificador.
    """
    return VerificadorNuDp2(**kwargs)


def filtracao(**kwargs):
    """
    Cria um verificador da cota de filtração com testemunha.

    Returns:
        VerificadorFiltracao: Instância configurada do verificador.
    """
    return VerificadorFiltracao(**kwargs)


def oraculo(**kwargs):
    """
    Cria o verificador que confronta o motor exato com o oráculo numérico.

    Returns:
        VerificadorOraculo: Instância configurada do verificador.
    """
    return VerificadorOraculo(**kwargs)


__all__ = [
    "DenominatorNotPUnit",
    "InsufficientPrecision",
    "InternalAssertionError",
    "InvalidBracket",
    "IsobaricPoly",
    "NonIntegerResult",
    "NonModularResidue",
    "NormalizationError",
    "NotInSpan",
    "NotMonicInX",
    "PathDisagreement",
    "PrecisionExhausted",
    "QMFError",
    "QSeries",
    "UnexpectedSupport",
    "ValidationError",
    "WeightMismatchError",
    "X",
    "Y",
    "Z",
    "__version__",
    "c_n",
    "cm_eval",
    "congruence_scan",
    "d_poly",
    "decompose_gamma14",
    "expand_forma",
    "filtracao",
    "filtration_bound",
    "form_polynomial",
    "form_series",
    "hasse",
    "nao_modular",
    "nu_dp2",
    "nu_p",
    "oraculo",
    "romik",
    "romik_d",
    "romik_p",
    "romik_sequence",
    "taylor",
]
