import pandas as pd

from ..abstract_verificador import AbstractVerificador
from ..padic import filtration_bound, verify_filtration_witness
from ..qmring import GUARDA, base_gamma14
from ..qseries import form_series
from ..utils import formatar_racional, validar_inteiro, validar_peso

PRECISAO_TESTEMUNHA = 40


class VerificadorFiltracao(AbstractVerificador):
    """
    Cota superior para a filtração mod p^m, com a testemunha de peso menor
    conferida como série q. Com ``peso_esperado``, o peso final também precisa
    coincidir.
    """

    parametros_obrigatorios = ("forma", "p", "m")

    def __init__(self, **kwargs):
        super().__init__("filtration", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        params["precisao"] = validar_inteiro(params.get("precisao", PRECISAO_TESTEMUNHA), "precisao", minimo=1)
        if "peso_esperado" in params:
            params["peso_esperado"] = validar_peso(params["peso_esperado"], "peso_esperado")
        return params

    def _verificar(
        self, forma: str, fatores: dict[str, int], k, p: int, m: int, precisao: int,
        peso_esperado=None, **_
    ) -> pd.DataFrame:
        N = max(precisao, len(base_gamma14(k)) + GUARDA)
        serie = form_series(fatores, N)

        resultado = filtration_bound(serie, k, p, m)
        testemunha = verify_filtration_witness(serie, k, p, m, precision=precisao)
        self.logger.debug(f"Filtração de {forma} mod {p}^{m}: {resultado} após {resultado.drops} quedas")

        satisfeito = testemunha
        if peso_esperado is not None:
            satisfeito = satisfeito and not resultado.is_minus_infinity and resultado.weight == peso_esperado

        linha = {
            "forma": forma,
            "k": formatar_racional(k),
            "p": p,
            "m": m,
            "peso": str(resultado),
            "quedas": resultado.drops,
            "esperado": "" if peso_esperado is None else formatar_racional(peso_esperado),
            "testemunha": testemunha,
            "satisfeito": satisfeito,
        }
        return pd.DataFrame([linha])
