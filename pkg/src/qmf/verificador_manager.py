from typing import Type

from .abstract_verificador import AbstractVerificador
from .verificadores import (
    VerificadorFiltracao,
    VerificadorHasseCM,
    VerificadorNaoModular,
    VerificadorNuD2Hasse,
    VerificadorNuDmp2,
    VerificadorNuDp2,
    VerificadorNuDp2Hasse,
    VerificadorNuDp2Shift,
    VerificadorOraculo,
    VerificadorRomik,
    VerificadorRomikP,
    VerificadorTaylor,
)

VERIFICADORES: dict[str, Type[AbstractVerificador]] = {
    "ROMIK-PM": VerificadorRomik,
    "ROMIK-P": VerificadorRomikP,
    "TAYLOR-PM": VerificadorTaylor,
    "HASSE-CM": VerificadorHasseCM,
    "NONMODULAR": VerificadorNaoModular,
    "NU-DP2": VerificadorNuDp2,
    "NU-D2-HASSE": VerificadorNuD2Hasse,
    "NU-DP2-HASSE": VerificadorNuDp2Hasse,
    "NU-DP2-SHIFT": VerificadorNuDp2Shift,
    "NU-DMP2": VerificadorNuDmp2,
    "FILTRATION": VerificadorFiltracao,
    "ORACLE": VerificadorOraculo,
}


def verificador(nome_verificador: str, **kwargs) -> AbstractVerificador:
    """Retorna o verificador correspondente ao identificador solicitado."""

    nome = nome_verificador.upper()
    try:
        klas = VERIFICADORES[nome]
    except KeyError as exc:
        raise ValueError(f"Verificador '{nome_verificador}' ainda não é suportado.") from exc

    return klas(**kwargs)


def nomes_verificadores() -> list[str]:
    """Identificadores aceitos por ``verificador`` (em minúsculas, como no CLI)."""
    return [nome.lower() for nome in VERIFICADORES]
