from fractions import Fraction

import pandas as pd
from mpmath import mp, mpf

from ..abstract_verificador import AbstractVerificador
from ..cmtaylor import romik_sequence
from ..oracle import DIGITOS_MINIMOS, cm_values_check, numeric_d_sequence, theta_constants_check
from ..utils import validar_inteiro

TOLERANCIA = "1e-20"


class VerificadorOraculo(AbstractVerificador):
    """
    Confronta o motor exato com o oráculo numérico: constantes teta em i/2,
    valores CM de E₄, F₂, E₂* e d(0), …, d(n_max).

    Parâmetros: ``n_max`` (padrão 5) e ``digits`` (padrão 30 + 10·n_max).
    """

    def __init__(self, **kwargs):
        super().__init__("oracle", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        params["n_max"] = validar_inteiro(params.get("n_max", 5), "n_max")
        padrao = max(DIGITOS_MINIMOS, 30 + 10 * params["n_max"])
        params["digits"] = validar_inteiro(params.get("digits", padrao), "digits", minimo=DIGITOS_MINIMOS)
        return params

    def _verificar(self, n_max: int, digits: int, **_) -> pd.DataFrame:
        constantes = theta_constants_check(digits, TOLERANCIA)
        valores_cm = cm_values_check(digits, TOLERANCIA)

        exatos = romik_sequence(n_max, progress=self.progresso)
        numericos = numeric_d_sequence(n_max, digits)
        tolerancia = mpf(TOLERANCIA)
        linhas = []
        for n, (exato, numerico) in enumerate(zip(exatos, numericos)):
            erro = numerico.diferenca(Fraction(exato))
            self.logger.debug(f"d({n}): exato {exato}, numérico {numerico}")
            linhas.append({
                "nome": f"d({n})",
                "calculado": str(numerico),
                "esperado": str(exato),
                "erro": mp.nstr(erro, 5),
                "satisfeito": bool(erro < tolerancia),
            })
        sequencia = pd.DataFrame(linhas, columns=["nome", "calculado", "esperado", "erro", "satisfeito"])
        return pd.concat([constantes, valores_cm, sequencia], ignore_index=True)
