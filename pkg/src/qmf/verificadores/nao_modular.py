import pandas as pd

from ..abstract_verificador import AbstractVerificador
from ..cmtaylor import ladder_for, nonmodular_min_order
from ..exceptions import ValidationError


class VerificadorNaoModular(AbstractVerificador):
    """
    Os coeficientes da parte não modular de D^{p^e} f são divisíveis por p^e
    (e ∈ {1, 2}); sem ``e`` os dois casos são conferidos.
    """

    parametros_obrigatorios = ("forma", "p")

    def __init__(self, **kwargs):
        super().__init__("nonmodular", **kwargs)

    def _validar_parametros(self, **kwargs):
        params = super()._validar_parametros(**kwargs)
        self._exigir_modular(params)
        if params.get("e", 1) not in (1, 2):
            raise ValidationError(f"'e' deve ser 1 ou 2: {params['e']}.")
        return params

    def _verificar(self, forma: str, f, k, p: int, e: int | None = None, **_) -> pd.DataFrame:
        expoentes = (e,) if e else (1, 2)
        ladder_for(f).extend_to(p ** max(expoentes), progress=self.progresso)

        linhas = []
        for expoente in expoentes:
            n = p ** expoente
            ordem = nonmodular_min_order(f, k, p, n)
            self.logger.debug(f"min ord_{p} da parte não modular de D^{n}({forma}) = {ordem}")
            linhas.append({
                "forma": forma,
                "n": n,
                "ord_p": str(ordem),
                "minimo": expoente,
                "satisfeito": ordem >= expoente,
            })
        return pd.DataFrame(linhas, columns=["forma", "n", "ord_p", "minimo", "satisfeito"])
