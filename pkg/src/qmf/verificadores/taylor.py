import pandas as pd

from ..abstract_verificador import AbstractVerificador
from ..cmtaylor import hasse_cm_scan, taylor_congruence_scan, taylor_threshold
from ..exceptions import ValidationError


class VerificadorTaylor(AbstractVerificador):
    """c_n(f) ≡ 0 (mod p^m) para f modular, m ≥ 2, n ≥ (m − 1)p² e p ≡ 3 (mod 4)."""

    parametros_obrigatorios = ("forma", "p", "m")

    def __init__(self, **kwargs):
        super().__init__("taylor-pm", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        if params["m"] < 2:
            raise ValidationError(f"'taylor-pm' exige m ≥ 2: {params['m']}.")
        return params

    def _verificar(self, f, k, p: int, m: int, intervalo: range | None = None, **_) -> pd.DataFrame:
        self._exigir_p_3_mod_4(p)
        if intervalo is None:
            limiar = taylor_threshold(p, m)
            intervalo = range(limiar, limiar + 3)
        relatorio = taylor_congruence_scan(f, k, p, m, intervalo, progress=self.progresso)
        return relatorio.to_frame()


class VerificadorHasseCM(AbstractVerificador):
    """c_n(E_{p−1}) ≡ 0 (mod p) para p ≡ 3 (mod 4)."""

    parametros_obrigatorios = ("p",)

    def __init__(self, **kwargs):
        super().__init__("hasse-cm", **kwargs)

    def _verificar(self, p: int, intervalo: range | None = None, **_) -> pd.DataFrame:
        self._exigir_p_3_mod_4(p)
        return hasse_cm_scan(p, intervalo or range(0, 11), progress=self.progresso).to_frame()
