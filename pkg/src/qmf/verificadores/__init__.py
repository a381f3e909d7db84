"""Verificadores de congruências e cotas de ν_p."""

from .filtracao import VerificadorFiltracao
from .nao_modular import VerificadorNaoModular
from .nu import (
    VerificadorNuD2Hasse,
    VerificadorNuDmp2,
    VerificadorNuDp2,
    VerificadorNuDp2Hasse,
    VerificadorNuDp2Shift,
)
from .oraculo import VerificadorOraculo
from .romik import VerificadorRomik, VerificadorRomikP
from .taylor import VerificadorHasseCM, VerificadorTaylor

__all__ = [
    "VerificadorFiltracao",
    "VerificadorHasseCM",
    "VerificadorNaoModular",
    "VerificadorNuD2Hasse",
    "VerificadorNuDmp2",
    "VerificadorNuDp2",
    "VerificadorNuDp2Hasse",
    "VerificadorNuDp2Shift",
    "VerificadorOraculo",
    "VerificadorRomik",
    "VerificadorRomikP",
    "VerificadorTaylor",
]
