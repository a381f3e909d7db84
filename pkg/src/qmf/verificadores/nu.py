"""
Cotas inferiores para ν_p de derivadas iteradas.

Cada verificador monta uma lista de alvos (descrição, polinômio, mínimo) e
confere ν_p(alvo) ≥ mínimo. O teto de ν_p é o próprio mínimo, a menos que
``cap`` maior seja pedido para ver o valor exato.
"""

from abc import abstractmethod
from typing import NamedTuple

import pandas as pd

from ..abstract_verificador import AbstractVerificador
from ..cmtaylor import ladder_for
from ..exceptions import ValidationError
from ..padic import nu_p
from ..qmring import IsobaricPoly, calA_p, calA_p_power, d_poly


class Alvo(NamedTuple):
    descricao: str
    polinomio: IsobaricPoly
    minimo: int


class _VerificadorNu(AbstractVerificador):
    """Base dos verificadores de ν_p."""

    def _verificar(self, p: int, cap: int | None = None, **params) -> pd.DataFrame:
        linhas = []
        for alvo in self._alvos(p=p, cap=cap, **params):
            teto = max(alvo.minimo, cap or 0)
            valor = nu_p(alvo.polinomio, p, cap=teto)
            self.logger.debug(f"ν_{p}({alvo.descricao}) = {valor}")
            linhas.append({
                "alvo": alvo.descricao,
                "p": p,
                "nu": str(valor),
                "minimo": alvo.minimo,
                "satisfeito": valor >= alvo.minimo,
            })
        return pd.DataFrame(linhas, columns=["alvo", "p", "nu", "minimo", "satisfeito"])

    @abstractmethod
    def _alvos(self, p: int, **params) -> list[Alvo]:
        """Lista de alvos para um único primo (recebe também ``cap``)."""

    def _derivada(self, f: IsobaricPoly, n: int) -> IsobaricPoly:
        return ladder_for(f).derivative(n, progress=self.progresso)


class VerificadorNuDp2(_VerificadorNu):
    """ν_p(D^{p²} f) ≥ 2 para f modular."""

    parametros_obrigatorios = ("forma", "p")

    def __init__(self, **kwargs):
        super().__init__("nu-dp2", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        return params

    def _alvos(self, p: int, forma: str, f: IsobaricPoly, **_) -> list[Alvo]:
        return [Alvo(f"D^{p * p}({forma})", self._derivada(f, p * p), 2)]


class VerificadorNuD2Hasse(_VerificadorNu):
    """ν_p(D² E_{p−1}) ≥ 1."""

    parametros_obrigatorios = ("p",)

    def __init__(self, **kwargs):
        super().__init__("nu-d2-hasse", **kwargs)

    def _alvos(self, p: int, **_) -> list[Alvo]:
        return [Alvo(f"D^2(E_{p - 1})", d_poly(d_poly(calA_p(p))), 1)]


class VerificadorNuDp2Hasse(_VerificadorNu):
    """ν_p(D^{p²} E_{p−1}^p) ≥ 3."""

    parametros_obrigatorios = ("p",)

    def __init__(self, **kwargs):
        super().__init__("nu-dp2-hasse", **kwargs)

    def _alvos(self, p: int, **_) -> list[Alvo]:
        return [Alvo(f"D^{p * p}(E_{p - 1}^{p})", self._derivada(calA_p_power(p, p), p * p), 3)]


class VerificadorNuDp2Shift(_VerificadorNu):
    """ν_p(D^{p²} f) ≥ max(ν_p(f) + 1, 2).

    ν_p(f) é medido com o teto ``cap`` (padrão QMF_NU_CAP); se só soubermos
    ν_p(f) ≥ teto, o mínimo exigido passa a teto + 1.
    """

    parametros_obrigatorios = ("forma", "p")

    def __init__(self, **kwargs):
        super().__init__("nu-dp2-shift", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        if params["f"].is_zero():
            raise ValidationError("'nu-dp2-shift' não se aplica à forma nula.")
        return params

    def _alvos(self, p: int, forma: str, f: IsobaricPoly, cap: int | None = None, **_) -> list[Alvo]:
        base = nu_p(f, p, cap=cap)
        self.logger.debug(f"ν_{p}({forma}) = {base}")
        minimo = max(base.value + 1, 2)
        return [Alvo(f"D^{p * p}({forma})", self._derivada(f, p * p), minimo)]


class VerificadorNuDmp2(_VerificadorNu):
    """ν_p(D^{mp²} f) ≥ m + 1 para f modular."""

    parametros_obrigatorios = ("forma", "p", "m")

    def __init__(self, **kwargs):
        super().__init__("nu-dmp2", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        return params

    def _alvos(self, p: int, m: int, forma: str, f: IsobaricPoly, **_) -> list[Alvo]:
        n = m * p * p
        return [Alvo(f"D^{n}({forma})", self._derivada(f, n), m + 1)]
