import pandas as pd

from ..abstract_verificador import AbstractVerificador
from ..cmtaylor import congruence_scan, romik_threshold
from ..exceptions import ValidationError

# Quantos n a partir do limiar são conferidos quando o intervalo é omitido
JANELA_PADRAO = 6


class VerificadorRomik(AbstractVerificador):
    """d(n) ≡ 0 (mod p^m) para n ≥ ⌈(m − 1)p²/2⌉ e p ≡ 3 (mod 4)."""

    parametros_obrigatorios = ("p", "m")

    def __init__(self, nome_verificador: str = "romik-pm", **kwargs):
        super().__init__(nome_verificador, **kwargs)

    def _verificar(self, p: int, m: int, intervalo: range | None = None, **_) -> pd.DataFrame:
        self._exigir_p_3_mod_4(p)
        if intervalo is None:
            limiar = romik_threshold(p, m)
            intervalo = range(limiar, limiar + JANELA_PADRAO)
        self.logger.debug(f"Limiar de d(n) ≡ 0 (mod {p}^{m}): n ≥ {romik_threshold(p, m)}")
        return congruence_scan(p, m, intervalo, progress=self.progresso).to_frame()


class VerificadorRomikP(VerificadorRomik):
    """d(n) ≡ 0 (mod p) para n ≥ (p² + 1)/2 e p ≡ 3 (mod 4)."""

    parametros_obrigatorios = ("p",)

    def __init__(self, **kwargs):
        super().__init__("romik-p", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        if params.setdefault("m", 1) != 1:
            raise ValidationError(f"'romik-p' fixa m = 1, recebeu m = {params['m']}.")
        return params
